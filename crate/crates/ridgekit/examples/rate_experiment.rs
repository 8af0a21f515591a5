//! Approximation error of random networks against width in the weighted
//! Sobolev norm, with the fitted log-log slope and its checks.

use ridgekit::harness::{fit_loglog_slope, rate_checks, run_rate_experiment, ExperimentConfig};

fn main() -> ridgekit::error::Result<()> {
    for (k, p) in [(0, 2.0), (0, 1.5), (1, 2.0)] {
        let mut cfg = ExperimentConfig {
            k,
            ..ExperimentConfig::default()
        };
        cfg.weight.p = p;
        let rows = run_rate_experiment(&cfg)?;
        println!("k = {k}, p = {p}");
        for r in &rows {
            println!("  N = {:>5}  median error {:.4e}", r.n, r.median);
        }
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.median)).collect();
        println!("  slope {:.3}", fit_loglog_slope(&pts)?);
        for c in rate_checks(&cfg, &rows)? {
            println!("  {}", c.line());
        }
    }
    Ok(())
}
