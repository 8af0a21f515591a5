//! Acceptance run: one PASS/FAIL line per criterion with the measured values.
//!
//! The run always completes and exits 0 so that a failing criterion is
//! reported rather than hidden behind an aborted test binary. Set
//! `RIDGEKIT_STRICT=1` to turn any FAIL into a nonzero exit.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use ridgekit::activations::{Activation, CATALOG};
use ridgekit::error::Result;
use ridgekit::harness::{self, fit_loglog_slope, slope_window, ExperimentConfig, GridSpec, RateRow};
use ridgekit::profile::RidgeletProfile;
use ridgekit::quad::{adaptive_gk, GkOptions};
use ridgekit::ridgelet::{ridgelet_transform_direct, ridgelet_transform_slice, AdmissiblePair, DirectQuad};
use ridgekit::sampler::{draw_neuron, second_moment_audit, student_t_pdf, StudentTSampler};
use ridgekit::spaces::{
    barron_fourier_bound, barron_norm_estimate, product_weight_bound, weight_constant, BarronQuad, Density, Domain,
    WeightSpec,
};
use ridgekit::targets::{HermiteGaussian, Target, TargetSpec};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn fourier_identities() -> Result<Outcome> {
    let rows = harness::run_fourier_check()?;
    let mut parts = Vec::new();
    let mut ok = true;
    for a in CATALOG {
        let mine: Vec<f64> = rows.iter().filter(|r| r.activation == a).map(|r| r.residual).collect();
        let worst = mine.iter().cloned().fold(0.0, f64::max);
        ok &= mine.len() >= 3 && worst <= 1e-6;
        parts.push(format!("{a}: {} fns, max {worst:.1e}", mine.len()));
    }
    outcome(ok, parts.join("; "))
}

fn moments() -> Result<Outcome> {
    let p = RidgeletProfile::standard();
    let worst = (0..=5).map(|j| p.moment(j)).fold(0.0, f64::max);
    outcome(worst <= 1e-6, format!("max_j≤5 |∫s^jψ| = {worst:.2e} (limit 1e-6)"))
}

fn admissibility() -> Result<Outcome> {
    let rows = harness::run_admissibility_check(&RidgeletProfile::standard(), &[1, 2, 3])?;
    let ok = rows.iter().all(|r| r.modulus > 0.0 && r.modulus >= r.lower_bound);
    let slack = rows
        .iter()
        .map(|r| r.modulus / r.lower_bound)
        .fold(f64::INFINITY, f64::min);
    outcome(ok, format!("{} pairs, min |C|/lower bound = {slack:.3}", rows.len()))
}

fn reconstruction() -> Result<Outcome> {
    let cfg1 = ExperimentConfig::default();
    let rows1 = harness::run_reconstruction_experiment(&cfg1)?;
    let scale1 = rows1.iter().map(|r| r.exact.abs()).fold(0.0, f64::max);
    let err1 = rows1.iter().map(|r| r.error).fold(0.0, f64::max);
    let imag1 = rows1.iter().map(|r| r.imag_residue).fold(0.0, f64::max);

    let cfg2 = ExperimentConfig {
        target: TargetSpec::Gaussian {
            dim: 2,
            sigma: 1.0,
            amplitude: 1.0,
        },
        grid: GridSpec {
            lo: -2.0,
            hi: 2.0,
            step: 2.0,
        },
        ..ExperimentConfig::default()
    };
    let rows2 = harness::run_reconstruction_experiment(&cfg2)?;
    let scale2 = rows2.iter().map(|r| r.exact.abs()).fold(0.0, f64::max);
    let err2 = rows2.iter().map(|r| r.error).fold(0.0, f64::max);
    let ok = err1 <= 0.02 * scale1 && imag1 <= 0.01 * scale1 && err2 <= 0.05 * scale2 && rows2.len() == 9;
    outcome(
        ok,
        format!(
            "m=1: max err {:.2e}·max|g|, imag {:.1e}·max|g|; m=2 ({} pts): max err {:.2e}·max|g|",
            err1 / scale1,
            imag1 / scale1,
            rows2.len(),
            err2 / scale2
        ),
    )
}

fn cross_route() -> Result<Outcome> {
    let p = RidgeletProfile::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let mut worst: f64 = 0.0;
    for (m, count) in [(1usize, 100), (2, 25)] {
        let g = HermiteGaussian::gaussian(m);
        for _ in 0..count {
            let a: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
            let b: f64 = rng.random_range(-4.0..4.0);
            let d = ridgelet_transform_direct(&p, &g, &a, b, &DirectQuad::default())?;
            let s = ridgelet_transform_slice(&p, &g, &a, b)?;
            worst = worst.max((d[0] - s[0]).norm() / s[0].norm());
        }
    }
    outcome(worst <= 1e-6, format!("125 random (a,b), max relative gap {worst:.2e}"))
}

fn sampler() -> Result<Outcome> {
    let mut s = StudentTSampler::new(1, 7);
    let mut x: Vec<f64> = (0..1_000_000).map(|_| s.sample()[0]).collect();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    let ks = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let c = 0.5 + v.atan() / PI;
            (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
        })
        .fold(0.0, f64::max);
    let mut mass_err: f64 = 0.0;
    for m in 1..=3usize {
        let sphere = 2.0 * PI.powf(m as f64 / 2.0) / gamma(m as f64 / 2.0);
        let f = |t: f64| {
            let r = t / (1.0 - t);
            let mut a = vec![0.0; m];
            a[0] = r;
            r.powi(m as i32 - 1) * student_t_pdf(m, &a) / (1.0 - t).powi(2)
        };
        let v = sphere * adaptive_gk(f, 0.0, 1.0, &GkOptions::with_abs_tol(1e-12))?.value;
        mass_err = mass_err.max((v - 1.0).abs());
    }
    outcome(
        ks <= 0.002 && mass_err <= 1e-8,
        format!("KS = {ks:.2e} (≤ 2e-3), max |∫p − 1| over m=1..3 = {mass_err:.1e}"),
    )
}

fn unbiasedness() -> Result<Outcome> {
    let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1)?;
    let g = HermiteGaussian::gaussian(1);
    let gt: &dyn Target = &g;
    let pts: Vec<f64> = (-6..=6).map(|i| 0.5 * i as f64).collect();
    let n = 100_000;
    let mut sum = vec![0.0; pts.len()];
    let mut sq = vec![0.0; pts.len()];
    let mut s = StudentTSampler::new(1, 31337);
    for _ in 0..n {
        let d = draw_neuron(&pair, &g, &mut s)?;
        for (i, &u) in pts.iter().enumerate() {
            let v = d.eval(&pair, &[u])[0];
            sum[i] += v;
            sq[i] += v * v;
        }
    }
    let mut worst: f64 = 0.0;
    for (i, &u) in pts.iter().enumerate() {
        let mean = sum[i] / n as f64;
        let var = (sq[i] / n as f64 - mean * mean) * n as f64 / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        worst = worst.max((mean - gt.eval(&[u])[0]).abs() / se);
    }
    outcome(
        worst <= 4.0,
        format!("13 points, 1e5 draws, max |mean − g|/SE = {worst:.2}"),
    )
}

fn second_moment() -> Result<Outcome> {
    let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1)?;
    let g = HermiteGaussian::gaussian(1);
    let w = WeightSpec::new(Density::standard_gaussian(), 0.0, 2.0)?;
    let mut parts = Vec::new();
    let mut ok = true;
    for k in [0, 1] {
        let mut s = StudentTSampler::new(1, 404 + k as u64);
        let a = second_moment_audit(&pair, &g, &w, &Domain::full_space(1), k, 10_000, &mut s)?;
        ok &= a.passes();
        parts.push(format!("k={k}: estimate {:.3e} ≤ bound {:.3e}", a.estimate, a.bound));
    }
    outcome(ok, parts.join("; "))
}

fn slope(rows: &[RateRow]) -> Result<f64> {
    fit_loglog_slope(&rows.iter().map(|r| (r.n as f64, r.median)).collect::<Vec<_>>())
}

fn rate() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, p) in [(0usize, 2.0), (0, 1.5), (1, 2.0)] {
        let mut cfg = ExperimentConfig {
            k,
            ..ExperimentConfig::default()
        };
        cfg.weight.p = p;
        let s = slope(&harness::run_rate_experiment(&cfg)?)?;
        let (lo, hi) = slope_window(p, k);
        ok &= (lo..=hi).contains(&s);
        parts.push(format!("k={k} p={p}: {s:.3} in [{lo}, {hi}]"));
    }
    outcome(ok, parts.join("; "))
}

fn fourier_ordering() -> Result<Outcome> {
    let p = RidgeletProfile::standard();
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, k) in [(1usize, 0usize), (1, 1), (2, 0)] {
        let g = HermiteGaussian::gaussian(m);
        let est = barron_norm_estimate(&p, &g, k, 0.0, &BarronQuad::default())?;
        let bound = barron_fourier_bound(&p, &g, 0.0, k, 64)?;
        ok &= est <= bound;
        parts.push(format!("m={m} k={k}: {est:.3e} ≤ {bound:.3e}"));
    }
    outcome(ok, parts.join("; "))
}

fn product_weight() -> Result<Outcome> {
    let mut ok = true;
    let mut tightest = f64::INFINITY;
    for m in 1..=4 {
        for gam in [0.0, 1.0] {
            for p in [1.0, 2.0] {
                let w = WeightSpec::new(Density::standard_gaussian(), gam, p)?;
                let c = weight_constant(&Domain::full_space(m), &w)?;
                let b = product_weight_bound(&w, m)?;
                ok &= c <= b * (1.0 + 1e-12);
                tightest = tightest.min(b / c);
            }
        }
    }
    outcome(ok, format!("16 cases, min bound/constant = {tightest:.6}"))
}

fn determinism() -> Result<Outcome> {
    let dir = std::env::temp_dir().join(format!("ridgekit-acceptance-{}", std::process::id()));
    let cfg = ExperimentConfig::default();
    let mut texts = Vec::new();
    for threads in [1, 2] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool");
        let (rate, recon, fourier) = pool.install(|| -> Result<_> {
            Ok((
                harness::run_rate_experiment(&cfg)?,
                harness::run_reconstruction_experiment(&cfg)?,
                harness::run_fourier_check()?,
            ))
        })?;
        let rp = dir.join(format!("rate-{threads}.csv"));
        let cp = dir.join(format!("recon-{threads}.csv"));
        let fp = dir.join(format!("fourier-{threads}.csv"));
        harness::write_rate_csv(&rp, &rate, &cfg.seeds)?;
        harness::write_recon_csv(&cp, &recon)?;
        harness::write_fourier_csv(&fp, &fourier)?;
        texts.push((std::fs::read(&rp)?, std::fs::read(&cp)?, std::fs::read(&fp)?));
    }
    let pair = cfg.pair()?;
    let g = cfg.target.build()?;
    let w = cfg.weight;
    let audits: Vec<String> = (0..2)
        .map(|_| {
            let mut s = StudentTSampler::new(1, 404);
            second_moment_audit(&pair, g.as_ref(), &w, &cfg.domain(), 0, 2000, &mut s).map(|a| format!("{a:?}"))
        })
        .collect::<Result<_>>()?;
    let nets: Vec<String> = (0..2)
        .map(|_| {
            let mut s = StudentTSampler::new(1, 77);
            ridgekit::sampler::build_network(&pair, g.as_ref(), 64, &mut s).map(|n| n.to_text())
        })
        .collect::<Result<_>>()?;
    let _ = std::fs::remove_dir_all(&dir);
    let same = texts[0] == texts[1] && nets[0] == nets[1] && audits[0] == audits[1];
    outcome(
        same,
        format!(
            "all CSVs byte-identical across 1 and 2 workers ({} + {} + {} bytes); network text and audit identical",
            texts[0].0.len(),
            texts[0].1.len(),
            texts[0].2.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 12] = [
        ("Fourier pairing identities", fourier_identities),
        ("vanishing moments", moments),
        ("admissibility and lower bound", admissibility),
        ("reconstruction accuracy", reconstruction),
        ("direct vs slice transform", cross_route),
        ("Student-t sampler", sampler),
        ("unbiased random neurons", unbiasedness),
        ("second-moment bound", second_moment),
        ("approximation rate slopes", rate),
        ("Barron estimate under Fourier bound", fourier_ordering),
        ("product-weight inequality", product_weight),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(o) if o.passed => ("PASS", o.detail),
            Ok(o) => ("FAIL", o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} [{:>2}] {name}: {detail} ({:.1} s)",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 && std::env::var("RIDGEKIT_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
