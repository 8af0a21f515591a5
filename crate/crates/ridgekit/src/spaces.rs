//! Weighted norm engines: weight constants, weighted Sobolev and C^k_{pol,γ}
//! norms, and the two Barron-norm estimators.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::RidgeletProfile;
use crate::quad::{breaks_with, composite_gl, gauss_legendre, uniform_breaks};
use crate::ridgelet::{coefficient_row, sphere_rule};
use crate::targets::{check_dims, check_partial_order, Differentiable, Target};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// Product of closed intervals.
    Box { bounds: Vec<(f64, f64)> },
    /// ℝ^m, integrated over [−radius, radius]^m.
    FullSpace { dim: usize, radius: f64 },
}

impl Domain {
    pub fn unit_box(m: usize) -> Self {
        Domain::Box {
            bounds: vec![(0.0, 1.0); m],
        }
    }

    pub fn cube(m: usize, half: f64) -> Self {
        Domain::Box {
            bounds: vec![(-half, half); m],
        }
    }

    pub fn full_space(m: usize) -> Self {
        Domain::FullSpace { dim: m, radius: 12.0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box { bounds } => bounds.len(),
            Domain::FullSpace { dim, .. } => *dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            Domain::Box { bounds } => {
                !bounds.is_empty()
                    && bounds
                        .iter()
                        .all(|&(lo, hi)| lo.is_finite() && hi.is_finite() && lo < hi)
            }
            Domain::FullSpace { dim, radius } => *dim > 0 && radius.is_finite() && *radius > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid domain {self:?}")))
        }
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        match self {
            Domain::Box { bounds } => bounds.clone(),
            Domain::FullSpace { dim, radius } => vec![(-radius, *radius); *dim],
        }
    }
}

/// One-dimensional probability density w0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Density {
    Gaussian { sigma: f64 },
    Uniform { lo: f64, hi: f64 },
    Cauchy { scale: f64 },
}

impl Density {
    pub fn standard_gaussian() -> Self {
        Density::Gaussian { sigma: 1.0 }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            Density::Gaussian { sigma } => (-0.5 * (x / sigma).powi(2)).exp() / (sigma * (2.0 * PI).sqrt()),
            Density::Uniform { lo, hi } => {
                if x >= lo && x <= hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Density::Cauchy { scale } => 1.0 / (PI * scale * (1.0 + (x / scale).powi(2))),
        }
    }

    fn kinks(&self) -> Vec<f64> {
        match *self {
            Density::Uniform { lo, hi } => vec![lo, hi],
            _ => vec![],
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Density::Gaussian { sigma } => sigma > 0.0 && sigma.is_finite(),
            Density::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
            Density::Cauchy { scale } => scale > 0.0 && scale.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid density {self:?}")))
        }
    }
}

/// Product weight w(u) = Π w0(u_l) with growth exponent γ and integrability p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub w0: Density,
    pub gamma: f64,
    pub p: f64,
}

impl WeightSpec {
    pub fn new(w0: Density, gamma: f64, p: f64) -> Result<Self> {
        let w = Self { w0, gamma, p };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        self.w0.validate()?;
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidInput(format!("γ = {} must be ≥ 0", self.gamma)));
        }
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::InvalidInput(format!("p = {} must lie in [1, ∞)", self.p)));
        }
        Ok(())
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        u.iter().map(|&x| self.w0.pdf(x)).product()
    }
}

/// Gauss–Legendre points per segment and axis. Segments are split at 0 and at
/// any kink of the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub nodes: usize,
}

impl QuadSpec {
    /// 64 points per segment up to m = 2, 32 beyond to bound the tensor size.
    pub fn for_dim(m: usize) -> Self {
        let nodes = if m <= 2 { 64 } else { 32 };
        Self { nodes }
    }

    pub fn doubled(&self) -> Self {
        Self { nodes: 2 * self.nodes }
    }
}

fn axis_rules(domain: &Domain, w: Option<&WeightSpec>, quad: &QuadSpec) -> Vec<Vec<(f64, f64)>> {
    let kinks: Vec<f64> = w.map(|w| w.w0.kinks()).unwrap_or_default();
    domain
        .bounds()
        .iter()
        .map(|&(lo, hi)| {
            let mut extra = vec![0.0];
            extra.extend_from_slice(&kinks);
            composite_gl(&breaks_with(lo, hi, &extra), quad.nodes)
        })
        .collect()
}

/// Visits every node of the tensor rule with its point and weight.
fn for_each_node<F: FnMut(&[f64], f64)>(axes: &[Vec<(f64, f64)>], mut f: F) {
    let m = axes.len();
    if axes.iter().any(|a| a.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; m];
    let mut u = vec![0.0; m];
    loop {
        let mut w = 1.0;
        for l in 0..m {
            let (x, wl) = axes[l][idx[l]];
            u[l] = x;
            w *= wl;
        }
        f(&u, w);
        let mut l = 0;
        loop {
            idx[l] += 1;
            if idx[l] < axes[l].len() {
                break;
            }
            idx[l] = 0;
            l += 1;
            if l == m {
                return;
            }
        }
    }
}

fn euclid(u: &[f64]) -> f64 {
    u.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn weight_integral(domain: &Domain, w: &WeightSpec, quad: &QuadSpec) -> f64 {
    let axes = axis_rules(domain, Some(w), quad);
    let gp = w.gamma * w.p;
    let mut acc = 0.0;
    for_each_node(&axes, |u, wt| {
        acc += wt * (1.0 + euclid(u)).powf(gp) * w.eval(u);
    });
    acc
}

/// Integral of (1+‖u‖)^{γp}w over [−R2^L, R2^L]^m split into shells: entry j
/// collects the nodes whose largest coordinate lies in (R2^{j−1}, R2^j]. The
/// inner nodes are shared by every level, so the shells measure the tail alone.
fn weight_shells(dim: usize, radius: f64, levels: usize, w: &WeightSpec, quad: &QuadSpec) -> Vec<f64> {
    let mut edges = vec![0.0, radius];
    for _ in 0..levels {
        edges.push(2.0 * edges[edges.len() - 1]);
    }
    let mut extra: Vec<f64> = w.w0.kinks().iter().map(|k| k.abs()).collect();
    extra.retain(|&k| k > 0.0 && k < radius);
    let rule = gauss_legendre(quad.nodes);
    let mut axis: Vec<(f64, f64)> = Vec::new();
    let mut tags: Vec<usize> = Vec::new();
    for (lvl, pair) in edges.windows(2).enumerate() {
        let mut cuts = vec![pair[0]];
        if lvl == 0 {
            cuts.extend(&extra);
        }
        cuts.push(pair[1]);
        cuts.sort_by(f64::total_cmp);
        for seg in cuts.windows(2) {
            let (c, h) = (0.5 * (seg[0] + seg[1]), 0.5 * (seg[1] - seg[0]));
            for &(x, wx) in rule.iter() {
                for sign in [-1.0, 1.0] {
                    axis.push((sign * (c + h * x), h * wx));
                    tags.push(lvl);
                }
            }
        }
    }
    // Per-node weight including w0, so the recursion only multiplies.
    let nodes: Vec<(f64, f64, usize)> = axis
        .iter()
        .zip(&tags)
        .map(|(&(x, wx), &t)| (x, wx * w.w0.pdf(x), t))
        .filter(|n| n.1 > 0.0)
        .collect();
    let mut shells = vec![0.0; levels + 1];
    shell_sum(&nodes, dim, w.gamma * w.p, 1.0, 0.0, 0, &mut shells);
    shells
}

/// Subtrees whose product weight falls below this are dropped; they cannot
/// move the result at the 1e−9 level used for the convergence test.
const PRUNE: f64 = 1e-30;

fn shell_sum(nodes: &[(f64, f64, usize)], left: usize, gp: f64, wt: f64, r2: f64, lvl: usize, shells: &mut [f64]) {
    if left == 0 {
        shells[lvl] += wt * (1.0 + r2.sqrt()).powf(gp);
        return;
    }
    for &(x, wx, t) in nodes {
        let next = wt * wx;
        if next < PRUNE {
            continue;
        }
        shell_sum(nodes, left - 1, gp, next, r2 + x * x, lvl.max(t), shells);
    }
}

/// C^{(γ,p)}_{U,w} = (∫_U (1+‖u‖)^{γp} w(u) du)^{1/p}.
pub fn weight_constant(domain: &Domain, w: &WeightSpec) -> Result<f64> {
    weight_constant_with(domain, w, &QuadSpec::for_dim(domain.dim()))
}

/// On ℝ^m the radius is doubled up to four times (fewer for m ≥ 3); the value
/// is accepted once a doubling adds less than 1e−9 relative, otherwise the
/// weight is reported as divergent.
pub fn weight_constant_with(domain: &Domain, w: &WeightSpec, quad: &QuadSpec) -> Result<f64> {
    domain.validate()?;
    w.validate()?;
    let value = match domain {
        Domain::Box { .. } => weight_integral(domain, w, quad),
        Domain::FullSpace { dim, radius } => {
            let levels = match dim {
                1 | 2 => 4,
                3 => 3,
                _ => 2,
            };
            let shells = weight_shells(*dim, *radius, levels, w, quad);
            let mut acc = shells[0];
            let mut converged = None;
            for &sh in &shells[1..] {
                acc += sh;
                if sh.abs() <= 1e-9 * acc.abs().max(1e-300) {
                    converged = Some(acc);
                    break;
                }
            }
            converged.ok_or(Error::DivergentWeight)?
        }
    };
    Ok(value.powf(1.0 / w.p))
}

/// C^{(γ,p)}_{ℝ,w0}·m^{γ+1/p}.
pub fn product_weight_bound(w: &WeightSpec, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let c1 = weight_constant(&Domain::full_space(1), w)?;
    Ok(c1 * (m as f64).powf(w.gamma + 1.0 / w.p))
}

/// All multi-indices α ∈ ℕ^m with |α| ≤ k, in graded order.
pub fn multi_indices(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for order in 0..=k {
        let mut cur = vec![0; m];
        fill_indices(&mut cur, 0, order, &mut out);
    }
    out
}

fn fill_indices(cur: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<Vec<usize>>) {
    let m = cur.len();
    if pos + 1 == m {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v;
        fill_indices(cur, pos + 1, left - v, out);
    }
    cur[pos] = 0;
}

/// (Σ_{|α|≤k} ∫_U ‖∂_α f‖^p w du)^{1/p}.
pub fn weighted_sobolev_norm(f: &dyn Differentiable, domain: &Domain, w: &WeightSpec, k: usize) -> Result<f64> {
    weighted_sobolev_norm_with(f, domain, w, k, &QuadSpec::for_dim(domain.dim()))
}

pub fn weighted_sobolev_norm_with(
    f: &dyn Differentiable,
    domain: &Domain,
    w: &WeightSpec,
    k: usize,
    quad: &QuadSpec,
) -> Result<f64> {
    domain.validate()?;
    w.validate()?;
    check_dims(f.dim_in(), domain.dim())?;
    check_partial_order(f, k)?;
    let alphas = multi_indices(f.dim_in(), k);
    let smooth_power = w.p.fract() == 0.0 && (w.p as i64) % 2 == 0;
    if f.dim_in() == 1 && f.dim_out() == 1 && !smooth_power {
        return Ok(scalar_line_norm(f, domain, w, &alphas, quad).powf(1.0 / w.p));
    }
    let axes = axis_rules(domain, Some(w), quad);
    let mut val = vec![0.0; f.dim_out()];
    let mut acc = 0.0;
    for_each_node(&axes, |u, wt| {
        let wu = w.eval(u);
        if wu == 0.0 {
            return;
        }
        for alpha in &alphas {
            f.partial_into(alpha, u, &mut val);
            acc += wt * wu * euclid(&val).powf(w.p);
        }
    });
    Ok(acc.powf(1.0 / w.p))
}

/// Σ_α ∫|∂_α f|^p w on a line. |·|^p is not smooth where ∂_α f changes sign,
/// so those zeros are located by bisection and become panel breaks.
fn scalar_line_norm(
    f: &dyn Differentiable,
    domain: &Domain,
    w: &WeightSpec,
    alphas: &[Vec<usize>],
    quad: &QuadSpec,
) -> f64 {
    let (lo, hi) = domain.bounds()[0];
    let mut extra = vec![0.0];
    extra.extend(w.w0.kinks());
    let base = breaks_with(lo, hi, &extra);
    let mut scan: Vec<f64> = composite_gl(&base, quad.nodes).iter().map(|n| n.0).collect();
    scan.extend(&base);
    scan.sort_by(f64::total_cmp);
    let mut out = [0.0];
    let mut eval = |alpha: &[usize], x: f64| {
        f.partial_into(alpha, &[x], &mut out);
        out[0]
    };
    let mut acc = 0.0;
    for alpha in alphas {
        let vals: Vec<f64> = scan.iter().map(|&x| eval(alpha, x)).collect();
        let mut roots = Vec::new();
        for i in 1..scan.len() {
            if vals[i - 1] * vals[i] < 0.0 {
                let (mut a, mut b, fa) = (scan[i - 1], scan[i], vals[i - 1]);
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    if eval(alpha, mid) * fa > 0.0 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                roots.push(0.5 * (a + b));
            }
        }
        roots.extend(&extra);
        for (x, wx) in composite_gl(&breaks_with(lo, hi, &roots), quad.nodes) {
            let wu = w.w0.pdf(x);
            if wu > 0.0 {
                acc += wx * wu * eval(alpha, x).abs().powf(w.p);
            }
        }
    }
    acc
}

/// Grid points per axis for sup-norms.
pub fn default_grid(m: usize) -> usize {
    match m {
        1 => 2001,
        2 => 201,
        3 => 41,
        _ => 15,
    }
}

/// max_{|α|≤k} sup over a uniform grid of ‖∂_α f(u)‖/(1+‖u‖)^γ.
pub fn weighted_ck_norm(f: &dyn Differentiable, domain: &Domain, gamma: f64, k: usize) -> Result<f64> {
    weighted_ck_norm_with(f, domain, gamma, k, default_grid(domain.dim()))
}

pub fn weighted_ck_norm_with(
    f: &dyn Differentiable,
    domain: &Domain,
    gamma: f64,
    k: usize,
    points_per_axis: usize,
) -> Result<f64> {
    domain.validate()?;
    check_dims(f.dim_in(), domain.dim())?;
    check_partial_order(f, k)?;
    let n = points_per_axis.max(2);
    let axes: Vec<Vec<(f64, f64)>> = domain
        .bounds()
        .iter()
        .map(|&(lo, hi)| {
            (0..n)
                .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64, 1.0))
                .collect()
        })
        .collect();
    let alphas = multi_indices(f.dim_in(), k);
    let mut val = vec![0.0; f.dim_out()];
    let mut best = 0.0f64;
    for_each_node(&axes, |u, _| {
        let scale = (1.0 + euclid(u)).powf(-gamma);
        for alpha in &alphas {
            f.partial_into(alpha, u, &mut val);
            best = best.max(euclid(&val) * scale);
        }
    });
    Ok(best)
}

/// Quadrature for the Barron integral over (a, b) in polar form a = r·v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarronQuad {
    /// Bias window: |b| ≤ b_window + r·R_g.
    pub b_window: f64,
    pub b_step: f64,
    /// Upper radius; defaults to the frequency radius of g over ζ1, beyond
    /// which the coefficient vanishes.
    pub r_max: Option<f64>,
    pub r_panels: usize,
    pub r_nodes: usize,
    pub sphere_nodes: Option<usize>,
}

impl Default for BarronQuad {
    fn default() -> Self {
        Self {
            b_window: 200.0,
            b_step: 0.25,
            r_max: None,
            r_panels: 12,
            r_nodes: 16,
            sphere_nodes: None,
        }
    }
}

impl BarronQuad {
    /// Doubled radial range and bias window.
    pub fn doubled(&self, g: &dyn Target, zeta1: f64) -> Self {
        let r = self.r_max.unwrap_or(g.frequency_radius() / zeta1);
        Self {
            b_window: 2.0 * self.b_window,
            r_max: Some(2.0 * r),
            r_panels: 2 * self.r_panels,
            ..*self
        }
    }
}

/// Square root of ∫∫ (1+‖a‖²)^{γ+k+(m+1)/2} (1+b²)^{γ+1} ‖R₀(a,b)‖² db da
/// for the given representative g. This upper-bounds the Barron norm, which
/// takes an infimum over all representatives.
pub fn barron_norm_estimate(
    profile: &RidgeletProfile,
    g: &dyn Target,
    k: usize,
    gamma: f64,
    quad: &BarronQuad,
) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::InvalidInput(format!("γ = {gamma} must be ≥ 0")));
    }
    let m = g.dim_in();
    let d = g.dim_out();
    let rg = g.spatial_radius();
    let r_max = quad.r_max.unwrap_or(g.frequency_radius() / profile.zeta1());
    let sphere = sphere_rule(m, quad.sphere_nodes.unwrap_or(if m == 2 { 64 } else { 12 }))?;
    let radial = composite_gl(&uniform_breaks(0.0, r_max, quad.r_panels), quad.r_nodes);
    let h = quad.b_step;
    let pa = gamma + k as f64 + 0.5 * (m as f64 + 1.0);
    let mut total = 0.0;
    for (v, wv) in &sphere {
        for &(r, wr) in &radial {
            let a: Vec<f64> = v.iter().map(|x| x * r).collect();
            let half = ((quad.b_window + r * rg) / h).floor() as usize;
            let row = coefficient_row(profile, g, &a, half, h);
            let mut inner = 0.0;
            for j in 0..=2 * half {
                let b = (j as f64 - half as f64) * h;
                let sq: f64 = row[j * d..(j + 1) * d].iter().map(|z| z.norm_sqr()).sum();
                inner += (1.0 + b * b).powf(gamma + 1.0) * sq;
            }
            total += wv * wr * r.powi(m as i32 - 1) * (1.0 + r * r).powf(pa) * inner * h;
        }
    }
    if !total.is_finite() {
        return Err(Error::TruncationFailure("Barron integral is not finite".into()));
    }
    Ok(total.sqrt())
}

/// C_1 = 2^{⌈γ⌉/2} π^{−1/2} (⌈γ⌉+2)! max_{j≤⌈γ⌉+2} ∫|ψ̂^{(j)}|.
pub fn fourier_bound_constant(profile: &RidgeletProfile, gamma: f64) -> Result<f64> {
    let cg = gamma.ceil() as usize;
    let c = cg + 2;
    let fact: f64 = (1..=c).map(|i| i as f64).product();
    let mut best = 0.0f64;
    for j in 0..=c {
        best = best.max(profile.hat_psi_derivative_l1(j)?);
    }
    Ok(2f64.powf(cg as f64 / 2.0) / PI.sqrt() * fact * best)
}

/// (C_1/ζ1^{m/2}) Σ_{|β|≤⌈γ⌉+2} (∫ ‖∂_β ĝ(ξ)‖² (1+‖ξ/ζ1‖²)^{(4⌈γ⌉+2k+m+5)/2} dξ)^{1/2}.
pub fn barron_fourier_bound(
    profile: &RidgeletProfile,
    g: &dyn Target,
    gamma: f64,
    k: usize,
    nodes: usize,
) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::InvalidInput(format!("γ = {gamma} must be ≥ 0")));
    }
    let m = g.dim_in();
    let cg = gamma.ceil() as usize;
    let c = cg + 2;
    if let Some(max) = g.max_fourier_order() {
        if max < c {
            return Err(Error::MissingDerivatives {
                requested: c,
                available: max,
            });
        }
    }
    let z1 = profile.zeta1();
    let c1 = fourier_bound_constant(profile, gamma)?;
    let expo = (4 * cg + 2 * k + m + 5) as f64 / 2.0;
    let fr = g.frequency_radius();
    let axis = composite_gl(&breaks_with(-fr, fr, &[0.0]), nodes);
    let axes = vec![axis; m];
    let mut val = vec![Complex64::new(0.0, 0.0); g.dim_out()];
    let mut sum = 0.0;
    for beta in multi_indices(m, c) {
        let mut acc = 0.0;
        for_each_node(&axes, |xi, w| {
            g.fourier_partial_into(&beta, xi, &mut val);
            let sq: f64 = val.iter().map(|z| z.norm_sqr()).sum();
            let r2: f64 = xi.iter().map(|x| (x / z1).powi(2)).sum();
            acc += w * sq * (1.0 + r2).powf(expo);
        });
        sum += acc.sqrt();
    }
    Ok(c1 / z1.powf(m as f64 / 2.0) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::{HermiteGaussian, Scaled, ZeroTarget};
    use statrs::function::erf::erf;
    use std::sync::Arc;

    struct Affine {
        c0: f64,
        c1: f64,
    }

    impl Differentiable for Affine {
        fn dim_in(&self) -> usize {
            1
        }
        fn dim_out(&self) -> usize {
            1
        }
        fn max_partial_order(&self) -> Option<usize> {
            None
        }
        fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
            out[0] = match alpha[0] {
                0 => self.c0 + self.c1 * u[0],
                1 => self.c1,
                _ => 0.0,
            };
        }
    }

    fn unit_uniform(gamma: f64, p: f64) -> WeightSpec {
        WeightSpec::new(Density::Uniform { lo: 0.0, hi: 1.0 }, gamma, p).unwrap()
    }

    #[test]
    fn weight_constant_examples() {
        let u = Domain::unit_box(1);
        assert!((weight_constant(&u, &unit_uniform(0.0, 2.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((weight_constant(&u, &unit_uniform(1.0, 1.0)).unwrap() - 1.5).abs() < 1e-12);
        let g = WeightSpec::new(Density::standard_gaussian(), 0.0, 3.0).unwrap();
        assert!((weight_constant(&Domain::full_space(2), &g).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn heavy_tailed_weight_diverges() {
        let w = WeightSpec::new(Density::Cauchy { scale: 1.0 }, 1.0, 1.0).unwrap();
        assert_eq!(weight_constant(&Domain::full_space(1), &w), Err(Error::DivergentWeight));
    }

    #[test]
    fn product_bound_examples() {
        let w = WeightSpec::new(Density::standard_gaussian(), 0.0, 2.0).unwrap();
        assert!((product_weight_bound(&w, 4).unwrap() - 2.0).abs() < 1e-10);
        // C^{(1,2)}_{ℝ,N(0,1)} = (E(1+|X|)²)^{1/2} = (2 + 2√(2/π))^{1/2}
        let w = WeightSpec::new(Density::standard_gaussian(), 1.0, 2.0).unwrap();
        let exact = (2.0 + 2.0 * (2.0 / PI).sqrt()).sqrt();
        assert!((product_weight_bound(&w, 1).unwrap() - exact).abs() < 1e-10);
    }

    #[test]
    fn sobolev_norm_examples() {
        let c = Affine { c0: -2.5, c1: 0.0 };
        let n = weighted_sobolev_norm(&c, &Domain::unit_box(1), &unit_uniform(0.0, 2.0), 0).unwrap();
        assert!((n - 2.5).abs() < 1e-12);

        // g = e^{−u²/2} on [−5,5] with w0 = 1/10: ∫(g² + g'²)/10 in closed form.
        let g = HermiteGaussian::gaussian(1);
        let w = WeightSpec::new(Density::Uniform { lo: -5.0, hi: 5.0 }, 0.0, 2.0).unwrap();
        let n = weighted_sobolev_norm(&g, &Domain::cube(1, 5.0), &w, 1).unwrap();
        let sp = PI.sqrt();
        let i0 = sp * erf(5.0);
        let i2 = 0.5 * sp * erf(5.0) - 5.0 * (-25.0f64).exp();
        let exact = ((i0 + i2) / 10.0).sqrt();
        assert!((n - exact).abs() <= 1e-6 * exact, "{n} vs {exact}");
    }

    #[test]
    fn missing_derivatives_reported() {
        let net = crate::network::Network::new(
            crate::activations::Activation::Relu,
            1,
            1,
            vec![crate::network::Neuron {
                y: vec![1.0],
                a: vec![1.0],
                b: 0.0,
            }],
        )
        .unwrap();
        let w = unit_uniform(1.0, 2.0);
        assert!(matches!(
            weighted_sobolev_norm(&net, &Domain::unit_box(1), &w, 1),
            Err(Error::MissingDerivatives { .. })
        ));
    }

    #[test]
    fn ck_norm_examples() {
        let one = Affine { c0: 1.0, c1: 0.0 };
        assert_eq!(weighted_ck_norm(&one, &Domain::unit_box(1), 0.0, 0).unwrap(), 1.0);
        let id = Affine { c0: 0.0, c1: 1.0 };
        assert_eq!(weighted_ck_norm(&id, &Domain::unit_box(1), 0.0, 1).unwrap(), 1.0);
        let g = HermiteGaussian::gaussian(1);
        let coarse = weighted_ck_norm_with(&g, &Domain::cube(1, 5.0), 2.0, 0, 201).unwrap();
        let fine = weighted_ck_norm_with(&g, &Domain::cube(1, 5.0), 2.0, 0, 2001).unwrap();
        assert!((coarse - fine).abs() <= 1e-4 * fine);
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(multi_indices(3, 2).len(), 10);
    }

    #[test]
    fn barron_estimates_zero_and_scaling() {
        let p = RidgeletProfile::standard();
        let z = ZeroTarget { m: 1, d: 1 };
        assert_eq!(
            barron_norm_estimate(&p, &z, 0, 0.0, &BarronQuad::default()).unwrap(),
            0.0
        );
        assert_eq!(barron_fourier_bound(&p, &z, 0.0, 0, 64).unwrap(), 0.0);
        let g: Arc<dyn Target> = Arc::new(HermiteGaussian::gaussian(1));
        let two = Scaled {
            factor: 2.0,
            inner: g.clone(),
        };
        let e1 = barron_norm_estimate(&p, g.as_ref(), 0, 0.0, &BarronQuad::default()).unwrap();
        let e2 = barron_norm_estimate(&p, &two, 0, 0.0, &BarronQuad::default()).unwrap();
        assert!((e2 - 2.0 * e1).abs() <= 1e-12 * e2);
        let f1 = barron_fourier_bound(&p, g.as_ref(), 0.0, 0, 64).unwrap();
        let f2 = barron_fourier_bound(&p, &two, 0.0, 0, 64).unwrap();
        assert!((f2 - 2.0 * f1).abs() <= 1e-12 * f2);
        assert!(e1 > 0.0 && e1 <= f1, "{e1} vs {f1}");
    }
}
