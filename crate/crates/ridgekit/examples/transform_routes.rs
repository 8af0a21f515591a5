//! The ridgelet transform computed two ways: direct quadrature over the input
//! space and the one-dimensional Fourier slice.

use ridgekit::profile::RidgeletProfile;
use ridgekit::ridgelet::{ridgelet_transform_direct, ridgelet_transform_slice, DirectQuad};
use ridgekit::targets::HermiteGaussian;

fn main() -> ridgekit::error::Result<()> {
    let p = RidgeletProfile::standard();
    let cases: [(Vec<f64>, f64); 4] = [
        (vec![0.7], 0.3),
        (vec![-1.4], -2.0),
        (vec![0.5, 0.5], 1.0),
        (vec![1.2, -0.3], -0.8),
    ];
    for (a, b) in cases {
        let g = HermiteGaussian::gaussian(a.len());
        let d = ridgelet_transform_direct(&p, &g, &a, b, &DirectQuad::default())?[0];
        let s = ridgelet_transform_slice(&p, &g, &a, b)?[0];
        println!(
            "a = {a:?}, b = {b}: direct {:+.10e}{:+.10e}i  slice {:+.10e}{:+.10e}i  rel gap {:.1e}",
            d.re,
            d.im,
            s.re,
            s.im,
            (d - s).norm() / s.norm()
        );
    }
    Ok(())
}
