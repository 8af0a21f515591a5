//! Reconstructs a Gaussian from its ridgelet transform with a tanh dual and
//! reports the error together with the truncation diagnostic.

use ridgekit::activations::Activation;
use ridgekit::profile::RidgeletProfile;
use ridgekit::ridgelet::{reconstruct_many, AdmissiblePair, Truncation};
use ridgekit::targets::{HermiteGaussian, Target};

fn main() -> ridgekit::error::Result<()> {
    let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1)?;
    let g = HermiteGaussian::gaussian(1);
    let pts: Vec<Vec<f64>> = (-6..=6).map(|i| vec![0.5 * i as f64]).collect();
    let rows = reconstruct_many(&pair, &g, &pts, &Truncation::default())?;
    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>10}",
        "u", "g(u)", "recon", "error", "diag"
    );
    for r in &rows {
        let exact = (&g as &dyn Target).eval(&r.u)[0];
        println!(
            "{:>6.2} {:>12.8} {:>12.8} {:>10.2e} {:>10.2e}",
            r.u[0],
            exact,
            r.value[0],
            (r.value[0] - exact).abs(),
            r.diagnostic
        );
    }

    // Two dimensions, a handful of points.
    let pair2 = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 2)?;
    let g2 = HermiteGaussian::gaussian(2);
    let pts2 = vec![vec![0.0, 0.0], vec![1.0, -0.5], vec![-1.5, 1.0]];
    for r in reconstruct_many(&pair2, &g2, &pts2, &Truncation::default())? {
        let exact = (&g2 as &dyn Target).eval(&r.u)[0];
        println!("m=2 u={:?}: g = {exact:.6}, recon = {:.6}", r.u, r.value[0]);
    }
    Ok(())
}
