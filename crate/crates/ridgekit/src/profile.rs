//! Ridgelet profiles ψ built from a smooth bump ψ̂ supported on [ζ1, ζ2].

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{adaptive_gk, composite_gl, uniform_breaks, GkOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheParams {
    pub s_max: f64,
    pub step: f64,
    /// Gauss–Legendre panels (32 nodes each) for the inverse Fourier integral.
    pub panels: usize,
}

impl Default for CacheParams {
    fn default() -> Self {
        Self {
            s_max: 200.0,
            step: 0.01,
            panels: 32,
        }
    }
}

#[derive(Debug)]
struct PsiTable {
    values: Vec<Complex64>,
    slopes: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct RidgeletProfile {
    zeta1: f64,
    zeta2: f64,
    s_max: f64,
    step: f64,
    half: usize,
    table: Arc<PsiTable>,
}

/// ψ̂(ξ) = exp(−1/((ξ−ζ1)(ζ2−ξ))) inside the support, 0 outside.
pub fn bump(zeta1: f64, zeta2: f64, xi: f64) -> f64 {
    if xi <= zeta1 || xi >= zeta2 {
        0.0
    } else {
        (-1.0 / ((xi - zeta1) * (zeta2 - xi))).exp()
    }
}

/// Taylor coefficients of the bump at ξ up to order n (ψ̂^{(j)}(ξ) = j!·c_j).
fn bump_jet(zeta1: f64, zeta2: f64, xi: f64, n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if xi <= zeta1 || xi >= zeta2 {
        return out;
    }
    let q0 = (xi - zeta1) * (zeta2 - xi);
    let q1 = zeta1 + zeta2 - 2.0 * xi;
    let q2 = -1.0;
    // h = −1/q
    let mut r = vec![0.0; n + 1];
    r[0] = 1.0 / q0;
    for k in 1..=n {
        let mut acc = q1 * r[k - 1];
        if k >= 2 {
            acc += q2 * r[k - 2];
        }
        r[k] = -acc / q0;
    }
    let h: Vec<f64> = r.iter().map(|x| -x).collect();
    out[0] = h[0].exp();
    if out[0] == 0.0 {
        return out;
    }
    for k in 1..=n {
        let mut acc = 0.0;
        for i in 1..=k {
            acc += i as f64 * h[i] * out[k - i];
        }
        out[k] = acc / k as f64;
    }
    out
}

impl RidgeletProfile {
    pub fn build(zeta1: f64, zeta2: f64, params: CacheParams) -> Result<Self> {
        if !(zeta1 > 0.0) || !(zeta2 > zeta1) || !zeta2.is_finite() {
            return Err(Error::InvalidSupport { zeta1, zeta2 });
        }
        if !(params.step > 0.0) || !(params.s_max > params.step) || params.panels == 0 {
            return Err(Error::InvalidInput(format!("bad cache parameters {params:?}")));
        }
        let half = (params.s_max / params.step).round() as usize;
        let step = params.s_max / half as f64;
        let nodes: Vec<(f64, f64)> = composite_gl(&uniform_breaks(zeta1, zeta2, params.panels), 32)
            .into_iter()
            .map(|(x, w)| (x, w * bump(zeta1, zeta2, x) / (2.0 * PI)))
            .collect();

        // ψ(s) = (1/2π)∫ψ̂(ξ)e^{isξ}dξ for s = i·step, i ≥ 0, by rotating each
        // node's phase and resynchronising it periodically.
        let mut values = vec![Complex64::new(0.0, 0.0); half + 1];
        let mut slopes = vec![Complex64::new(0.0, 0.0); half + 1];
        for &(x, w) in &nodes {
            let rot = Complex64::from_polar(1.0, step * x);
            let mut phase = Complex64::new(1.0, 0.0);
            for i in 0..=half {
                if i % 64 == 0 {
                    phase = Complex64::from_polar(1.0, i as f64 * step * x);
                }
                let term = phase * w;
                values[i] += term;
                slopes[i] += term * Complex64::new(0.0, x);
                phase *= rot;
            }
        }
        // Mirror to negative s: ψ(−s) = conj ψ(s), ψ'(−s) = −conj ψ'(s).
        let mut v = Vec::with_capacity(2 * half + 1);
        let mut d = Vec::with_capacity(2 * half + 1);
        for i in (1..=half).rev() {
            v.push(values[i].conj());
            d.push(-slopes[i].conj());
        }
        v.extend_from_slice(&values);
        d.extend_from_slice(&slopes);
        Ok(Self {
            zeta1,
            zeta2,
            s_max: params.s_max,
            step,
            half,
            table: Arc::new(PsiTable { values: v, slopes: d }),
        })
    }

    /// The default profile on [1, 2], built once per process.
    pub fn standard() -> Self {
        static CELL: OnceLock<RidgeletProfile> = OnceLock::new();
        CELL.get_or_init(|| RidgeletProfile::build(1.0, 2.0, CacheParams::default()).expect("default profile"))
            .clone()
    }

    pub fn zeta1(&self) -> f64 {
        self.zeta1
    }

    pub fn zeta2(&self) -> f64 {
        self.zeta2
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn hat_psi(&self, xi: f64) -> f64 {
        bump(self.zeta1, self.zeta2, xi)
    }

    /// ψ̂^{(j)}(ξ).
    pub fn hat_psi_derivative(&self, j: usize, xi: f64) -> f64 {
        let jet = bump_jet(self.zeta1, self.zeta2, xi, j);
        let fact: f64 = (1..=j).map(|i| i as f64).product();
        fact * jet[j]
    }

    /// ∫|ψ̂^{(j)}(ξ)| dξ.
    pub fn hat_psi_derivative_l1(&self, j: usize) -> Result<f64> {
        let opts = GkOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_intervals: 4000,
        };
        Ok(adaptive_gk(|x| self.hat_psi_derivative(j, x).abs(), self.zeta1, self.zeta2, &opts)?.value)
    }

    /// Grid abscissa of table entry i.
    fn node(&self, i: usize) -> f64 {
        (i as f64 - self.half as f64) * self.step
    }

    /// ψ(s) by cubic Hermite interpolation of the table; zero beyond s_max.
    pub fn psi(&self, s: f64) -> Complex64 {
        if !(s.abs() <= self.s_max) {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (s + self.s_max) / self.step;
        let i = (pos.floor() as usize).min(2 * self.half - 1);
        let t = pos - i as f64;
        let (p0, p1) = (self.table.values[i], self.table.values[i + 1]);
        let (m0, m1) = (self.table.slopes[i] * self.step, self.table.slopes[i + 1] * self.step);
        let t2 = t * t;
        let t3 = t2 * t;
        p0 * (2.0 * t3 - 3.0 * t2 + 1.0) + m0 * (t3 - 2.0 * t2 + t) + p1 * (-2.0 * t3 + 3.0 * t2) + m1 * (t3 - t2)
    }

    /// Tabulated samples (s_i, ψ(s_i)).
    pub fn samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.table.values.iter().enumerate().map(|(i, &v)| (self.node(i), v))
    }

    /// |∫ s^j ψ(s) e^{−(s/L)²} ds| with L = s_max/10, by the trapezoid rule on
    /// the table. The Gaussian taper only smooths ψ̂ by a kernel of width 1/L,
    /// so every moment stays exactly zero up to a bias of order exp(−(ζ1·L)²/4).
    pub fn moment(&self, j: usize) -> f64 {
        let l = self.s_max / 10.0;
        let sum: Complex64 = self
            .samples()
            .map(|(s, v)| v * (s.powi(j as i32) * (-(s / l).powi(2)).exp()))
            .sum();
        (sum * self.step).norm()
    }

    /// |∫_{−s_max}^{s_max} s^j ψ(s) ds| by the trapezoid rule, without taper.
    /// Dominated by the truncated tail for j ≥ 3; kept as a diagnostic.
    pub fn truncated_moment(&self, j: usize) -> f64 {
        let last = self.table.values.len() - 1;
        let sum: Complex64 = self
            .samples()
            .enumerate()
            .map(|(i, (s, v))| {
                let w = if i == 0 || i == last { 0.5 } else { 1.0 };
                v * (w * s.powi(j as i32))
            })
            .sum();
        (sum * self.step).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_support() {
        assert!(matches!(
            RidgeletProfile::build(2.0, 1.0, CacheParams::default()),
            Err(Error::InvalidSupport { .. })
        ));
        assert!(matches!(
            RidgeletProfile::build(0.0, 1.0, CacheParams::default()),
            Err(Error::InvalidSupport { .. })
        ));
    }

    #[test]
    fn hat_psi_support_and_sign() {
        let p = RidgeletProfile::standard();
        for i in 0..=400 {
            let x = -1.0 + 0.01 * i as f64;
            let v = p.hat_psi(x);
            assert!(v >= 0.0);
            if !(1.0..=2.0).contains(&x) {
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn psi_at_origin_is_mass_over_two_pi() {
        let p = RidgeletProfile::standard();
        let mass = adaptive_gk(|x| p.hat_psi(x), 1.0, 2.0, &GkOptions::with_abs_tol(1e-15))
            .unwrap()
            .value;
        let v = p.psi(0.0);
        assert!(v.im.abs() < 1e-18);
        assert!(v.re > 0.0);
        assert!((v.re - mass / (2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn psi_matches_direct_quadrature_between_nodes() {
        let p = RidgeletProfile::standard();
        for &s in &[0.005, 1.2345, -7.777, 33.3331, 150.01] {
            let direct = adaptive_gk(
                |x| Complex64::from_polar(p.hat_psi(x), s * x) / (2.0 * PI),
                1.0,
                2.0,
                &GkOptions::with_abs_tol(1e-16),
            )
            .unwrap()
            .value;
            let err = (p.psi(s) - direct).norm();
            assert!(
                err < 1e-9 * direct.norm() + 1e-16,
                "s={s} err={err} ref={}",
                direct.norm()
            );
        }
    }

    #[test]
    fn psi_is_hermitian() {
        let p = RidgeletProfile::standard();
        for i in 0..500 {
            let s = 0.37 * i as f64;
            assert!((p.psi(-s) - p.psi(s).conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn moments_vanish() {
        let p = RidgeletProfile::standard();
        for j in 0..=8 {
            assert!(p.moment(j) <= 1e-6, "j={j} -> {}", p.moment(j));
        }
    }

    #[test]
    fn derivative_jets_match_finite_differences() {
        let p = RidgeletProfile::standard();
        let h = 1e-5;
        for j in 1..=4 {
            for &x in &[1.2, 1.5, 1.77, 1.93] {
                let fd = (p.hat_psi_derivative(j - 1, x + h) - p.hat_psi_derivative(j - 1, x - h)) / (2.0 * h);
                let exact = p.hat_psi_derivative(j, x);
                assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()), "j={j} x={x}");
            }
        }
    }
}
