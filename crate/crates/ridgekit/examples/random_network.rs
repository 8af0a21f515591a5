//! Builds random tanh networks of growing width for a 1-D Gaussian and prints
//! the sup error on a grid. The last network is written in the text format.
//!
//! |C| is about 3e-3 for tanh in one dimension, so single readouts are large
//! and the error falls like N^{-1/2} only on average over seeds.

use ridgekit::activations::Activation;
use ridgekit::profile::RidgeletProfile;
use ridgekit::ridgelet::AdmissiblePair;
use ridgekit::sampler::{build_network, StudentTSampler};
use ridgekit::targets::{HermiteGaussian, Target};

fn main() -> ridgekit::error::Result<()> {
    let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1)?;
    let g = HermiteGaussian::gaussian(1);
    let gt: &dyn Target = &g;
    let grid: Vec<f64> = (-12..=12).map(|i| 0.25 * i as f64).collect();
    let mut last = None;
    for n in [64, 256, 1024, 4096, 16384] {
        let mut s = StudentTSampler::new(1, 2024);
        let net = build_network(&pair, &g, n, &mut s)?;
        let mut worst: f64 = 0.0;
        for &u in &grid {
            worst = worst.max((net.eval(&[u])?[0] - gt.eval(&[u])[0]).abs());
        }
        println!("N = {n:>5}: max error {worst:.4}");
        last = Some(net);
    }
    let path = std::env::temp_dir().join("ridgekit-example-network.txt");
    let net = last.expect("at least one width");
    net.save(&path)?;
    println!("wrote {} neurons to {}", net.len(), path.display());
    Ok(())
}
