use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ridgekit::activations::Activation;
use ridgekit::error::{Error, Result};
use ridgekit::harness::{self, Check, ExperimentConfig, Manifest, Timer};
use ridgekit::network::Network;
use ridgekit::profile::RidgeletProfile;
use ridgekit::sampler::{build_network, StudentTSampler};
use ridgekit::targets::TargetSpec;

#[derive(Parser)]
#[command(
    name = "ridgekit",
    version,
    about = "Ridgelet reconstruction and random-neuron experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV files and the manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct the target from its ridgelet transform on a grid.
    Recon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        activation: Option<Activation>,
    },
    /// Approximation error of random networks against N, with slope fit.
    Rate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Weight constants, norms and Barron estimates with inequality flags.
    AuditSpaces {
        #[arg(long, default_value = "gaussian")]
        target: String,
        /// Range `lo..hi` or list `1,2`.
        #[arg(long, default_value = "1..3")]
        dim: String,
        #[arg(long, default_value = "0,1")]
        gamma: String,
        #[arg(long, default_value = "1,2,3")]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier pairing identities, vanishing moments and admissibility.
    FourierCheck {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a random network and write it in the text format.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 256)]
        neurons: usize,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        activation: Option<Activation>,
    },
    /// Evaluate a saved network (and partials) at points read from a file.
    Eval {
        #[arg(long)]
        network: PathBuf,
        /// One point per line, comma or whitespace separated.
        #[arg(long)]
        points: PathBuf,
        /// Multi-indices such as `1,0;0,1`.
        #[arg(long)]
        partials: Option<String>,
    },
    /// Neuron count ⌈C2 m^C3 ε^{−q/(q−1)}⌉ with q = min(2, p).
    Plan {
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        c3: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
    },
}

fn load_config(common: &Common) -> Result<ExperimentConfig> {
    match &common.config {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn apply_target(cfg: &mut ExperimentConfig, target: Option<String>, dim: Option<usize>) -> Result<()> {
    if target.is_some() || dim.is_some() {
        let name = target.unwrap_or_else(|| "gaussian".into());
        let dim = dim.unwrap_or(cfg.dim());
        cfg.target = TargetSpec::from_cli(&name, dim)?;
        if cfg.domain.as_ref().is_some_and(|d| d.dim() != dim) {
            cfg.domain = None;
        }
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("bad list entry '{x}'")))
        })
        .collect()
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    match s.split_once("..") {
        Some((a, b)) => {
            let lo: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad range '{s}'")))?;
            let hi: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad range '{s}'")))?;
            Ok((lo..=hi).collect())
        }
        None => parse_list(s),
    }
}

fn report(checks: &[Check]) -> bool {
    for c in checks {
        println!("{}", c.line());
    }
    harness::all_pass(checks)
}

fn finish(
    name: &str,
    cfg: &ExperimentConfig,
    dir: Option<&Path>,
    outputs: Vec<String>,
    timer: &Timer,
    ok: bool,
) -> Result<()> {
    if let Some(dir) = dir {
        harness::write_manifest(
            dir,
            &Manifest {
                experiment: name,
                config: cfg,
                seeds: &cfg.seeds,
                version: harness::VERSION,
                wall_time_s: timer.seconds(),
                outputs,
                passed: ok,
            },
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    harness::init_threads()?;
    let timer = Timer::start();
    match cli.cmd {
        Cmd::Recon {
            common,
            target,
            dim,
            activation,
        } => {
            let mut cfg = load_config(&common)?;
            apply_target(&mut cfg, target, dim)?;
            if let Some(a) = activation {
                cfg.activation = a;
            }
            let rows = harness::run_reconstruction_experiment(&cfg)?;
            let ok = report(&harness::recon_checks(&rows));
            let dir = common.out.or(cfg.output.clone());
            if let Some(d) = &dir {
                harness::write_recon_csv(&d.join("recon.csv"), &rows)?;
            }
            finish("recon", &cfg, dir.as_deref(), vec!["recon.csv".into()], &timer, ok)?;
            Ok(ok)
        }
        Cmd::Rate { common, k, p } => {
            let mut cfg = load_config(&common)?;
            if let Some(k) = k {
                cfg.k = k;
            }
            if let Some(p) = p {
                cfg.weight.p = p;
            }
            let rows = harness::run_rate_experiment(&cfg)?;
            for r in &rows {
                println!("N = {:>6}  median error = {:.6e}", r.n, r.median);
            }
            let ok = report(&harness::rate_checks(&cfg, &rows)?);
            let dir = common.out.or(cfg.output.clone());
            if let Some(d) = &dir {
                harness::write_rate_csv(&d.join("rate.csv"), &rows, &cfg.seeds)?;
            }
            finish("rate", &cfg, dir.as_deref(), vec!["rate.csv".into()], &timer, ok)?;
            Ok(ok)
        }
        Cmd::AuditSpaces {
            target,
            dim,
            gamma,
            p,
            out,
        } => {
            let rows = harness::run_space_audit(&target, &parse_dims(&dim)?, &parse_list(&gamma)?, &parse_list(&p)?)?;
            let ok = report(&harness::space_audit_checks(&rows));
            if let Some(d) = &out {
                harness::write_space_audit_csv(&d.join("audit_spaces.csv"), &rows)?;
            }
            Ok(ok)
        }
        Cmd::FourierCheck { out } => {
            let rows = harness::run_fourier_check()?;
            let profile = RidgeletProfile::standard();
            let adm = harness::run_admissibility_check(&profile, &[1, 2, 3])?;
            let ok = report(&harness::fourier_checks(&rows, &profile, &adm));
            if let Some(d) = &out {
                harness::write_fourier_csv(&d.join("fourier_check.csv"), &rows)?;
            }
            Ok(ok)
        }
        Cmd::Sample {
            common,
            seed,
            neurons,
            target,
            dim,
            activation,
        } => {
            let mut cfg = load_config(&common)?;
            apply_target(&mut cfg, target, dim)?;
            if let Some(a) = activation {
                cfg.activation = a;
            }
            let seed = seed.or(cfg.seeds.first().copied()).unwrap_or(1);
            let g = cfg.target.build()?;
            let pair = cfg.pair()?;
            let mut sampler = StudentTSampler::new(cfg.dim(), seed);
            let net = build_network(&pair, g.as_ref(), neurons, &mut sampler)?;
            match common.out.or(cfg.output.clone()) {
                Some(path) => {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir)?;
                    }
                    net.save(&path)?
                }
                None => print!("{}", net.to_text()),
            }
            Ok(true)
        }
        Cmd::Eval {
            network,
            points,
            partials,
        } => {
            let net = Network::load(&network)?;
            let alphas: Vec<Vec<usize>> = match &partials {
                Some(s) => s.split(';').map(parse_list).collect::<Result<_>>()?,
                None => vec![],
            };
            let text = std::fs::read_to_string(&points)?;
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let mut header: Vec<String> = (1..=net.dim_in()).map(|i| format!("u_{i}")).collect();
            header.extend((1..=net.dim_out()).map(|c| format!("phi_{c}")));
            for a in &alphas {
                let tag: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                header.extend((1..=net.dim_out()).map(|c| format!("d[{}]phi_{c}", tag.join(","))));
            }
            w.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
            for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
                let u: Vec<f64> = line
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad coordinate '{t}'")))
                    })
                    .collect::<Result<_>>()?;
                let mut rec: Vec<String> = u.iter().map(|x| format!("{x:.12e}")).collect();
                rec.extend(net.eval(&u)?.iter().map(|x| format!("{x:.12e}")));
                for a in &alphas {
                    rec.extend(net.partial(a, &u)?.iter().map(|x| format!("{x:.12e}")));
                }
                w.write_record(&rec).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
            Ok(true)
        }
        Cmd::Plan { c2, c3, m, p, eps } => {
            println!("{}", harness::plan_neurons(c2, c3, m, p, eps)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
