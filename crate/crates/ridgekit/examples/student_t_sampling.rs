//! Draws from the multivariate Student-t proposal and compares a histogram of
//! the first coordinate with the Cauchy density it should follow.

use std::f64::consts::PI;

use ridgekit::sampler::StudentTSampler;

fn main() {
    let n = 200_000;
    let mut s = StudentTSampler::new(1, 42);
    let edges: Vec<f64> = (-8..=8).map(|i| 0.5 * i as f64).collect();
    let mut counts = vec![0usize; edges.len() - 1];
    for _ in 0..n {
        let x = s.sample()[0];
        if let Some(i) = edges.windows(2).position(|w| x >= w[0] && x < w[1]) {
            counts[i] += 1;
        }
    }
    println!("{:>12} {:>10} {:>10}", "bin", "empirical", "exact");
    for (i, w) in edges.windows(2).enumerate() {
        let exact = ((w[1]).atan() - (w[0]).atan()) / PI;
        println!(
            "[{:>4.1},{:>4.1}) {:>10.5} {:>10.5}",
            w[0],
            w[1],
            counts[i] as f64 / n as f64,
            exact
        );
    }

    let mut s3 = StudentTSampler::new(3, 42);
    let a = s3.sample();
    println!("\none draw in m = 3: {a:?}");
}
