//! Target functions g: ℝ^m → ℝ^d with closed-form partials and Fourier
//! transforms, plus the [`Differentiable`] interface shared with networks.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything whose partial derivatives can be evaluated pointwise.
pub trait Differentiable: Send + Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    /// Highest available |α|; `None` means unbounded.
    fn max_partial_order(&self) -> Option<usize>;
    /// Writes ∂_α f(u) into `out`. The order must already be validated.
    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]);
}

pub fn check_partial_order(f: &dyn Differentiable, order: usize) -> Result<()> {
    match f.max_partial_order() {
        Some(max) if order > max => Err(Error::MissingDerivatives {
            requested: order,
            available: max,
        }),
        _ => Ok(()),
    }
}

/// A target with an evaluable Fourier transform ĝ(ξ) = ∫ e^{−iξᵀu} g(u) du.
pub trait Target: Differentiable {
    fn fourier_into(&self, xi: &[f64], out: &mut [Complex64]);
    /// Writes ∂_β ĝ(ξ) into `out`. The order must already be validated.
    fn fourier_partial_into(&self, beta: &[usize], xi: &[f64], out: &mut [Complex64]);
    fn max_fourier_order(&self) -> Option<usize>;
    /// Half-width of a box outside of which g is negligible.
    fn spatial_radius(&self) -> f64;
    /// Radius outside of which ĝ is negligible.
    fn frequency_radius(&self) -> f64;
    fn label(&self) -> String;
}

impl dyn Target + '_ {
    pub fn eval(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim_out()];
        self.partial_into(&vec![0; self.dim_in()], u, &mut out);
        out
    }

    pub fn partial(&self, alpha: &[usize], u: &[f64]) -> Result<Vec<f64>> {
        check_dims(alpha.len(), self.dim_in())?;
        check_dims(u.len(), self.dim_in())?;
        check_partial_order(self, alpha.iter().sum())?;
        let mut out = vec![0.0; self.dim_out()];
        self.partial_into(alpha, u, &mut out);
        Ok(out)
    }

    pub fn fourier(&self, xi: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim_out()];
        self.fourier_into(xi, &mut out);
        out
    }

    pub fn fourier_partial(&self, beta: &[usize], xi: &[f64]) -> Result<Vec<Complex64>> {
        check_dims(beta.len(), self.dim_in())?;
        let order: usize = beta.iter().sum();
        if let Some(max) = self.max_fourier_order() {
            if order > max {
                return Err(Error::MissingDerivatives {
                    requested: order,
                    available: max,
                });
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim_out()];
        self.fourier_partial_into(beta, xi, &mut out);
        Ok(out)
    }
}

impl fmt::Debug for dyn Target + '_ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Target({})", self.label())
    }
}

pub(crate) fn check_dims(got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "dimension mismatch: expected {want}, got {got}"
        )))
    }
}

/// Probabilists' Hermite polynomial He_n(x).
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return p0;
    }
    for k in 1..n {
        let p2 = x * p1 - k as f64 * p0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// g(u) = A·Π_l He_{n_l}(u_l/σ)·exp(−‖u‖²/(2σ²)), scalar valued.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteGaussian {
    pub amplitude: f64,
    pub sigma: f64,
    pub orders: Vec<usize>,
}

impl HermiteGaussian {
    pub fn new(amplitude: f64, sigma: f64, orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() || !(sigma > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidInput(format!(
                "Hermite–Gaussian needs m ≥ 1, σ > 0 and a finite amplitude (σ = {sigma})"
            )));
        }
        Ok(Self {
            amplitude,
            sigma,
            orders,
        })
    }

    /// The standard Gaussian exp(−‖u‖²/2) on ℝ^m.
    pub fn gaussian(m: usize) -> Self {
        Self::new(1.0, 1.0, vec![0; m]).expect("valid")
    }

    fn reach(&self) -> f64 {
        let n = *self.orders.iter().max().unwrap_or(&0) as f64;
        10.0 + 2.0 * n.sqrt()
    }
}

// Coefficients of P with d/dξ[P(ξ)e^{−σ²ξ²/2}] = (P' − σ²ξP)e^{−σ²ξ²/2}.
fn gaussian_poly_derivative(p: &[f64], s2: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        if i > 0 {
            out[i - 1] += i as f64 * c;
        }
        out[i + 1] -= s2 * c;
    }
    out
}

impl Differentiable for HermiteGaussian {
    fn dim_in(&self) -> usize {
        self.orders.len()
    }

    fn dim_out(&self) -> usize {
        1
    }

    fn max_partial_order(&self) -> Option<usize> {
        None
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        let mut v = self.amplitude;
        for ((&n, &a), &x) in self.orders.iter().zip(alpha).zip(u) {
            let x = x / self.sigma;
            let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
            v *= sign * self.sigma.powi(-(a as i32)) * hermite(n + a, x) * (-0.5 * x * x).exp();
        }
        out[0] = v;
    }
}

impl Target for HermiteGaussian {
    fn fourier_into(&self, xi: &[f64], out: &mut [Complex64]) {
        let zeros = vec![0; self.orders.len()];
        self.fourier_partial_into(&zeros, xi, out);
    }

    fn fourier_partial_into(&self, beta: &[usize], xi: &[f64], out: &mut [Complex64]) {
        let s = self.sigma;
        let s2 = s * s;
        let mut v = Complex64::new(self.amplitude, 0.0);
        for ((&n, &b), &x) in self.orders.iter().zip(beta).zip(xi) {
            // σ√(2π)(−i)^n σ^n ξ^n e^{−σ²ξ²/2}, differentiated b times
            let mut p = vec![0.0; n + 1];
            p[n] = 1.0;
            for _ in 0..b {
                p = gaussian_poly_derivative(&p, s2);
            }
            let poly = p.iter().rev().fold(0.0, |acc, &c| acc * x + c);
            let phase = Complex64::new(0.0, -1.0).powu(n as u32);
            v *= phase * (s * (2.0 * PI).sqrt() * s.powi(n as i32) * poly * (-0.5 * s2 * x * x).exp());
        }
        out[0] = v;
    }

    fn max_fourier_order(&self) -> Option<usize> {
        None
    }

    fn spatial_radius(&self) -> f64 {
        self.sigma * self.reach()
    }

    fn frequency_radius(&self) -> f64 {
        self.reach() / self.sigma
    }

    fn label(&self) -> String {
        if self.orders.iter().all(|&n| n == 0) {
            format!(
                "gaussian(m={}, sigma={}, A={})",
                self.orders.len(),
                self.sigma,
                self.amplitude
            )
        } else {
            format!("hermite{:?}(sigma={}, A={})", self.orders, self.sigma, self.amplitude)
        }
    }
}

/// g ≡ 0 on ℝ^m with d outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTarget {
    pub m: usize,
    pub d: usize,
}

impl Differentiable for ZeroTarget {
    fn dim_in(&self) -> usize {
        self.m
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn max_partial_order(&self) -> Option<usize> {
        None
    }

    fn partial_into(&self, _: &[usize], _: &[f64], out: &mut [f64]) {
        out.fill(0.0);
    }
}

impl Target for ZeroTarget {
    fn fourier_into(&self, _: &[f64], out: &mut [Complex64]) {
        out.fill(Complex64::new(0.0, 0.0));
    }

    fn fourier_partial_into(&self, _: &[usize], _: &[f64], out: &mut [Complex64]) {
        out.fill(Complex64::new(0.0, 0.0));
    }

    fn max_fourier_order(&self) -> Option<usize> {
        None
    }

    fn spatial_radius(&self) -> f64 {
        1.0
    }

    fn frequency_radius(&self) -> f64 {
        1.0
    }

    fn label(&self) -> String {
        "zero".into()
    }
}

/// c·g.
#[derive(Clone)]
pub struct Scaled {
    pub factor: f64,
    pub inner: Arc<dyn Target>,
}

impl Differentiable for Scaled {
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.inner.dim_out()
    }

    fn max_partial_order(&self) -> Option<usize> {
        self.inner.max_partial_order()
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        self.inner.partial_into(alpha, u, out);
        out.iter_mut().for_each(|x| *x *= self.factor);
    }
}

impl Target for Scaled {
    fn fourier_into(&self, xi: &[f64], out: &mut [Complex64]) {
        self.inner.fourier_into(xi, out);
        out.iter_mut().for_each(|x| *x *= self.factor);
    }

    fn fourier_partial_into(&self, beta: &[usize], xi: &[f64], out: &mut [Complex64]) {
        self.inner.fourier_partial_into(beta, xi, out);
        out.iter_mut().for_each(|x| *x *= self.factor);
    }

    fn max_fourier_order(&self) -> Option<usize> {
        self.inner.max_fourier_order()
    }

    fn spatial_radius(&self) -> f64 {
        self.inner.spatial_radius()
    }

    fn frequency_radius(&self) -> f64 {
        self.inner.frequency_radius()
    }

    fn label(&self) -> String {
        format!("{}*{}", self.factor, self.inner.label())
    }
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Σ_i g_i over terms sharing m and d.
#[derive(Clone)]
pub struct SumTarget {
    terms: Vec<Arc<dyn Target>>,
}

impl SumTarget {
    pub fn new(terms: Vec<Arc<dyn Target>>) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::InvalidInput("empty sum".into()))?;
        let (m, d) = (first.dim_in(), first.dim_out());
        if terms.iter().any(|t| t.dim_in() != m || t.dim_out() != d) {
            return Err(Error::InvalidInput("sum terms disagree on dimensions".into()));
        }
        Ok(Self { terms })
    }
}

impl Differentiable for SumTarget {
    fn dim_in(&self) -> usize {
        self.terms[0].dim_in()
    }

    fn dim_out(&self) -> usize {
        self.terms[0].dim_out()
    }

    fn max_partial_order(&self) -> Option<usize> {
        self.terms
            .iter()
            .fold(None, |acc, t| min_order(acc, t.max_partial_order()))
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        let mut tmp = vec![0.0; out.len()];
        out.fill(0.0);
        for t in &self.terms {
            t.partial_into(alpha, u, &mut tmp);
            out.iter_mut().zip(&tmp).for_each(|(o, x)| *o += x);
        }
    }
}

impl Target for SumTarget {
    fn fourier_into(&self, xi: &[f64], out: &mut [Complex64]) {
        let zeros = vec![0; self.dim_in()];
        self.fourier_partial_into(&zeros, xi, out);
    }

    fn fourier_partial_into(&self, beta: &[usize], xi: &[f64], out: &mut [Complex64]) {
        let mut tmp = vec![Complex64::new(0.0, 0.0); out.len()];
        out.fill(Complex64::new(0.0, 0.0));
        for t in &self.terms {
            t.fourier_partial_into(beta, xi, &mut tmp);
            out.iter_mut().zip(&tmp).for_each(|(o, x)| *o += x);
        }
    }

    fn max_fourier_order(&self) -> Option<usize> {
        self.terms
            .iter()
            .fold(None, |acc, t| min_order(acc, t.max_fourier_order()))
    }

    fn spatial_radius(&self) -> f64 {
        self.terms.iter().map(|t| t.spatial_radius()).fold(0.0, f64::max)
    }

    fn frequency_radius(&self) -> f64 {
        self.terms.iter().map(|t| t.frequency_radius()).fold(0.0, f64::max)
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.label()).collect();
        parts.join("+")
    }
}

/// Vector-valued target whose components are scalar targets on the same ℝ^m.
#[derive(Clone)]
pub struct Stacked {
    parts: Vec<Arc<dyn Target>>,
}

impl Stacked {
    pub fn new(parts: Vec<Arc<dyn Target>>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidInput("empty stack".into()))?;
        let m = first.dim_in();
        if parts.iter().any(|t| t.dim_in() != m) {
            return Err(Error::InvalidInput("stacked parts disagree on m".into()));
        }
        Ok(Self { parts })
    }
}

impl Differentiable for Stacked {
    fn dim_in(&self) -> usize {
        self.parts[0].dim_in()
    }

    fn dim_out(&self) -> usize {
        self.parts.iter().map(|p| p.dim_out()).sum()
    }

    fn max_partial_order(&self) -> Option<usize> {
        self.parts
            .iter()
            .fold(None, |acc, t| min_order(acc, t.max_partial_order()))
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        let mut at = 0;
        for p in &self.parts {
            let d = p.dim_out();
            p.partial_into(alpha, u, &mut out[at..at + d]);
            at += d;
        }
    }
}

impl Target for Stacked {
    fn fourier_into(&self, xi: &[f64], out: &mut [Complex64]) {
        let mut at = 0;
        for p in &self.parts {
            let d = p.dim_out();
            p.fourier_into(xi, &mut out[at..at + d]);
            at += d;
        }
    }

    fn fourier_partial_into(&self, beta: &[usize], xi: &[f64], out: &mut [Complex64]) {
        let mut at = 0;
        for p in &self.parts {
            let d = p.dim_out();
            p.fourier_partial_into(beta, xi, &mut out[at..at + d]);
            at += d;
        }
    }

    fn max_fourier_order(&self) -> Option<usize> {
        self.parts
            .iter()
            .fold(None, |acc, t| min_order(acc, t.max_fourier_order()))
    }

    fn spatial_radius(&self) -> f64 {
        self.parts.iter().map(|t| t.spatial_radius()).fold(0.0, f64::max)
    }

    fn frequency_radius(&self) -> f64 {
        self.parts.iter().map(|t| t.frequency_radius()).fold(0.0, f64::max)
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|t| t.label()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// f − h, used to measure approximation errors.
pub struct Difference<'a> {
    pub f: &'a dyn Differentiable,
    pub h: &'a dyn Differentiable,
}

impl<'a> Difference<'a> {
    pub fn new(f: &'a dyn Differentiable, h: &'a dyn Differentiable) -> Result<Self> {
        check_dims(h.dim_in(), f.dim_in())?;
        check_dims(h.dim_out(), f.dim_out())?;
        Ok(Self { f, h })
    }
}

impl Differentiable for Difference<'_> {
    fn dim_in(&self) -> usize {
        self.f.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.f.dim_out()
    }

    fn max_partial_order(&self) -> Option<usize> {
        min_order(self.f.max_partial_order(), self.h.max_partial_order())
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        let mut tmp = vec![0.0; out.len()];
        self.f.partial_into(alpha, u, out);
        self.h.partial_into(alpha, u, &mut tmp);
        out.iter_mut().zip(&tmp).for_each(|(o, x)| *o -= x);
    }
}

/// Serializable description of a catalog target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetSpec {
    Gaussian {
        dim: usize,
        #[serde(default = "one")]
        sigma: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Hermite {
        orders: Vec<usize>,
        #[serde(default = "one")]
        sigma: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Zero {
        dim: usize,
        #[serde(default = "one_usize")]
        outputs: usize,
    },
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

impl TargetSpec {
    pub fn build(&self) -> Result<Arc<dyn Target>> {
        Ok(match self {
            TargetSpec::Gaussian { dim, sigma, amplitude } => {
                Arc::new(HermiteGaussian::new(*amplitude, *sigma, vec![0; *dim])?)
            }
            TargetSpec::Hermite {
                orders,
                sigma,
                amplitude,
            } => Arc::new(HermiteGaussian::new(*amplitude, *sigma, orders.clone())?),
            TargetSpec::Zero { dim, outputs } => {
                if *dim == 0 || *outputs == 0 {
                    return Err(Error::InvalidInput("zero target needs m, d ≥ 1".into()));
                }
                Arc::new(ZeroTarget { m: *dim, d: *outputs })
            }
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            TargetSpec::Gaussian { dim, .. } | TargetSpec::Zero { dim, .. } => *dim,
            TargetSpec::Hermite { orders, .. } => orders.len(),
        }
    }

    /// Parses the CLI shorthand `gaussian`, `zero` or `hermite:n1,n2,...`.
    pub fn from_cli(name: &str, dim: usize) -> Result<Self> {
        let name = name.trim();
        if name == "gaussian" {
            Ok(TargetSpec::Gaussian {
                dim,
                sigma: 1.0,
                amplitude: 1.0,
            })
        } else if name == "zero" {
            Ok(TargetSpec::Zero { dim, outputs: 1 })
        } else if let Some(rest) = name.strip_prefix("hermite:") {
            let orders = rest
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(TargetSpec::Hermite {
                orders,
                sigma: 1.0,
                amplitude: 1.0,
            })
        } else {
            Err(Error::Parse(format!("unknown target '{name}'")))
        }
    }
}
