//! The activation catalog: sigmoid, tanh, softplus and ReLU, with exact
//! derivatives, polynomial-growth norms and the densities of their
//! distributional Fourier transforms on ℝ∖{0}.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{adaptive_gk, adaptive_gk_breaks, GkOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Sigmoid,
    Tanh,
    Softplus,
    Relu,
}

pub const CATALOG: [Activation; 4] = [
    Activation::Sigmoid,
    Activation::Tanh,
    Activation::Softplus,
    Activation::Relu,
];

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sigmoid" => Ok(Activation::Sigmoid),
            "tanh" => Ok(Activation::Tanh),
            "softplus" => Ok(Activation::Softplus),
            "relu" => Ok(Activation::Relu),
            other => Err(Error::Parse(format!("unknown activation '{other}'"))),
        }
    }
}

/// Logistic function, evaluated without overflow on either side.
pub fn sigmoid(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

// Coefficients (in ascending powers of x) of P_j with σ^{(j)} = P_j(σ),
// from P_{j+1}(x) = P_j'(x)·x(1−x).
fn sigmoid_poly(j: usize) -> Vec<f64> {
    let mut p = vec![0.0, 1.0];
    for _ in 0..j {
        let dp: Vec<f64> = (1..p.len()).map(|i| i as f64 * p[i]).collect();
        let mut next = vec![0.0; dp.len() + 2];
        for (i, c) in dp.iter().enumerate() {
            next[i + 1] += c;
            next[i + 2] -= c;
        }
        p = next;
    }
    p
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// j-th derivative of the logistic function. For j ≥ 1 the derivative has
/// parity (−1)^{j+1}, so positive arguments are reflected to the side where σ
/// is small and the polynomial is evaluated without cancellation.
pub fn sigmoid_derivative(j: usize, s: f64) -> f64 {
    if j == 0 {
        return sigmoid(s);
    }
    let (x, sign) = if s > 0.0 {
        (sigmoid(-s), if j % 2 == 1 { 1.0 } else { -1.0 })
    } else {
        (sigmoid(s), 1.0)
    };
    sign * horner(&sigmoid_poly(j), x)
}

fn softplus(s: f64) -> f64 {
    s.max(0.0) + (-s.abs()).exp().ln_1p()
}

impl Activation {
    pub fn name(&self) -> &'static str {
        match self {
            Activation::Sigmoid => "sigmoid",
            Activation::Tanh => "tanh",
            Activation::Softplus => "softplus",
            Activation::Relu => "relu",
        }
    }

    /// Highest supported derivative order; `None` means unbounded.
    pub fn k_max(&self) -> Option<usize> {
        match self {
            Activation::Relu => Some(0),
            _ => None,
        }
    }

    pub fn gamma_min(&self) -> f64 {
        match self {
            Activation::Sigmoid | Activation::Tanh => 0.0,
            Activation::Softplus | Activation::Relu => 1.0,
        }
    }

    pub fn supports(&self, j: usize) -> bool {
        self.k_max().is_none_or(|k| j <= k)
    }

    pub fn check_order(&self, j: usize) -> Result<()> {
        if self.supports(j) {
            Ok(())
        } else {
            Err(Error::UnsupportedDerivative {
                order: j,
                max: self.k_max().unwrap_or(usize::MAX),
            })
        }
    }

    /// ρ(s).
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Activation::Sigmoid => sigmoid(s),
            Activation::Tanh => s.tanh(),
            Activation::Softplus => softplus(s),
            Activation::Relu => s.max(0.0),
        }
    }

    /// ρ^{(j)}(s) without argument checks. Callers must have validated `j`.
    pub(crate) fn deriv_unchecked(&self, j: usize, s: f64) -> f64 {
        match (self, j) {
            (_, 0) => self.eval(s),
            (Activation::Sigmoid, _) => sigmoid_derivative(j, s),
            // tanh(s) = 2σ(2s) − 1
            (Activation::Tanh, _) => 2f64.powi(j as i32 + 1) * sigmoid_derivative(j, 2.0 * s),
            (Activation::Softplus, _) => sigmoid_derivative(j - 1, s),
            (Activation::Relu, _) => f64::NAN,
        }
    }

    /// ρ^{(j)}(s).
    pub fn deriv(&self, j: usize, s: f64) -> Result<f64> {
        self.check_order(j)?;
        if !s.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite argument {s}")));
        }
        Ok(self.deriv_unchecked(j, s))
    }

    /// Closed-form density of the Fourier transform of ρ on ℝ∖{0}.
    pub fn fourier_density(&self, xi: f64) -> Result<Complex64> {
        if xi == 0.0 {
            return Err(Error::SingularPoint);
        }
        if !xi.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite frequency {xi}")));
        }
        Ok(self.fourier_density_unchecked(xi))
    }

    pub(crate) fn fourier_density_unchecked(&self, xi: f64) -> Complex64 {
        match self {
            Activation::Sigmoid => Complex64::new(0.0, -PI / (PI * xi).sinh()),
            Activation::Tanh => Complex64::new(0.0, -PI / (0.5 * PI * xi).sinh()),
            Activation::Softplus => Complex64::new(-PI / (xi * (PI * xi).sinh()), 0.0),
            Activation::Relu => Complex64::new(-1.0 / (xi * xi), 0.0),
        }
    }

    /// True for softplus and ReLU, whose identity is checked on ξ·g rather than g.
    pub fn premultiplies(&self) -> bool {
        matches!(self, Activation::Softplus | Activation::Relu)
    }

    // lim_{|s|→∞} |ρ^{(j)}(s)| / (1+|s|)^γ, assuming γ ≥ gamma_min.
    fn tail_limit(&self, j: usize, gamma: f64) -> f64 {
        let unit_if = |g: f64| if gamma == g { 1.0 } else { 0.0 };
        match (self, j) {
            (Activation::Sigmoid | Activation::Tanh, 0) => unit_if(0.0),
            (Activation::Softplus, 0) | (Activation::Relu, 0) => unit_if(1.0),
            (Activation::Softplus, 1) => unit_if(0.0),
            _ => 0.0,
        }
    }

    /// max_{j≤k} sup_s |ρ^{(j)}(s)| / (1+|s|)^γ.
    pub fn growth_norm(&self, k: usize, gamma: f64) -> Result<f64> {
        self.check_order(k)?;
        if gamma < self.gamma_min() || gamma.is_nan() {
            return Err(Error::NormDiverges {
                gamma,
                gamma_min: self.gamma_min(),
            });
        }
        let n = 10_000;
        let (lo, hi) = (1e-6f64.ln(), 50f64.ln());
        let mut best = 0.0f64;
        for j in 0..=k {
            let mut sup = self.deriv_unchecked(j, 0.0).abs();
            for i in 0..n {
                let r = (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp();
                let w = (1.0 + r).powf(-gamma);
                sup = sup
                    .max(self.deriv_unchecked(j, r).abs() * w)
                    .max(self.deriv_unchecked(j, -r).abs() * w);
            }
            best = best.max(sup).max(self.tail_limit(j, gamma));
        }
        Ok(best)
    }
}

/// Smooth test functions on ℝ∖{0} for the distributional identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Zero,
    /// exp(4/w² − 1/((ξ−lo)(hi−ξ))) on (lo, hi), peak value 1.
    Bump {
        lo: f64,
        hi: f64,
    },
    /// Bump times cos(ωξ).
    CosBump {
        lo: f64,
        hi: f64,
        omega: f64,
    },
    /// Bump times e^{iωξ}; complex-valued.
    PhaseBump {
        lo: f64,
        hi: f64,
        omega: f64,
    },
}

impl TestFunction {
    pub fn support(&self) -> Option<(f64, f64)> {
        match *self {
            TestFunction::Zero => None,
            TestFunction::Bump { lo, hi }
            | TestFunction::CosBump { lo, hi, .. }
            | TestFunction::PhaseBump { lo, hi, .. } => Some((lo, hi)),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            TestFunction::Zero => "zero".into(),
            TestFunction::Bump { .. } => "bump".into(),
            TestFunction::CosBump { omega, .. } => format!("cos-bump(omega={omega})"),
            TestFunction::PhaseBump { omega, .. } => format!("phase-bump(omega={omega})"),
        }
    }

    fn bump(lo: f64, hi: f64, xi: f64) -> f64 {
        if xi <= lo || xi >= hi {
            return 0.0;
        }
        let w = hi - lo;
        (4.0 / (w * w) - 1.0 / ((xi - lo) * (hi - xi))).exp()
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        match *self {
            TestFunction::Zero => Complex64::new(0.0, 0.0),
            TestFunction::Bump { lo, hi } => Complex64::new(Self::bump(lo, hi, xi), 0.0),
            TestFunction::CosBump { lo, hi, omega } => Complex64::new(Self::bump(lo, hi, xi) * (omega * xi).cos(), 0.0),
            TestFunction::PhaseBump { lo, hi, omega } => Complex64::from_polar(Self::bump(lo, hi, xi), omega * xi),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some((lo, hi)) = self.support() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidTestFunction(format!(
                    "support [{lo}, {hi}] is empty or unbounded"
                )));
            }
            if lo <= 0.0 && hi >= 0.0 {
                return Err(Error::InvalidTestFunction(format!("support [{lo}, {hi}] touches 0")));
            }
        }
        Ok(())
    }
}

/// Quadrature controls for the pairing check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingQuad {
    /// Tolerance for the Fourier transform of the test function.
    pub inner: GkOptions,
    /// Tolerance for both outer integrals.
    pub outer: GkOptions,
    /// ∫ρ·ĝ is truncated to |s| ≤ s_max; ĝ decays like exp(−2√(s/w)).
    pub s_max: f64,
    /// Panel width for the outer integral.
    pub panel: f64,
}

impl Default for PairingQuad {
    fn default() -> Self {
        Self {
            inner: GkOptions::with_abs_tol(1e-10),
            outer: GkOptions {
                abs_tol: 1e-10,
                rel_tol: 1e-12,
                max_intervals: 4000,
            },
            s_max: 400.0,
            panel: 20.0,
        }
    }
}

/// Relative defect of the identity ∫ρ·ĝ = ∫f·g with the catalog density.
pub fn pairing_check(act: Activation, test: &TestFunction, quad: &PairingQuad) -> Result<f64> {
    pairing_defect_with_density(act, test, |xi| act.fourier_density_unchecked(xi), quad)
}

/// As [`pairing_check`] with an arbitrary candidate density, so that competing
/// sign conventions can be tested against the same oracle.
pub fn pairing_defect_with_density<D>(
    act: Activation,
    test: &TestFunction,
    density: D,
    quad: &PairingQuad,
) -> Result<f64>
where
    D: Fn(f64) -> Complex64,
{
    test.validate()?;
    let Some((lo, hi)) = test.support() else {
        return Ok(0.0);
    };
    let pre = act.premultiplies();
    let g = |xi: f64| {
        let v = test.eval(xi);
        if pre {
            v * xi
        } else {
            v
        }
    };

    let rhs = adaptive_gk(|xi| density(xi) * g(xi), lo, hi, &quad.outer)?.value;

    // ĝ(s) = ∫ e^{−isξ} g(ξ) dξ
    let ghat = |s: f64| -> Result<Complex64> {
        Ok(adaptive_gk(|xi| g(xi) * Complex64::from_polar(1.0, -s * xi), lo, hi, &quad.inner)?.value)
    };

    let mut breaks = vec![0.0];
    let mut x = quad.panel;
    while x < quad.s_max {
        breaks.push(x);
        breaks.insert(0, -x);
        x += quad.panel;
    }
    breaks.push(quad.s_max);
    breaks.insert(0, -quad.s_max);

    let mut failure = None;
    let lhs = adaptive_gk_breaks(
        |s| match ghat(s) {
            Ok(v) => v * act.eval(s),
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        &breaks,
        &quad.outer,
    )?
    .value;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((lhs - rhs).norm() / (1.0 + rhs.norm()))
}
