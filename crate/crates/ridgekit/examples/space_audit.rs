//! Weight constants against their product bound, and the Barron estimate of
//! a Gaussian against its Fourier-side bound.

use ridgekit::harness::{run_space_audit, space_audit_checks};

fn main() -> ridgekit::error::Result<()> {
    let rows = run_space_audit("gaussian", &[1], &[0.0, 1.0], &[1.0, 2.0, 3.0])?;
    println!(
        "{:>2} {:>4} {:>4} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11}",
        "m", "γ", "p", "C_w", "bound", "Sobolev", "C^k", "Barron", "Fourier"
    );
    for r in &rows {
        println!(
            "{:>2} {:>4} {:>4} {:>11.5e} {:>11.5e} {:>11.5e} {:>11.5e} {:>11.5e} {:>11.5e}",
            r.m,
            r.gamma,
            r.p,
            r.weight_constant,
            r.product_bound,
            r.sobolev_norm,
            r.ck_norm,
            r.barron_estimate,
            r.fourier_bound
        );
    }
    for c in space_audit_checks(&rows) {
        println!("{}", c.line());
    }
    Ok(())
}
