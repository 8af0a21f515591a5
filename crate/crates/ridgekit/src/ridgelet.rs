//! Admissibility constants, the ridgelet transform (direct and Fourier-slice
//! routes) and the truncated reconstruction operator.
//!
//! Two related coefficient functions appear here. The transform itself,
//! `R(a,b) = ∫ conj(ψ(aᵀu − b)) g(u) ‖a‖ du`, and the unweighted coefficient
//! `R₀(a,b) = R(a,b)/‖a‖ = (1/2π)∫ ψ̂(η) ĝ(ηa) e^{iηb} dη`. Integrating
//! `R₀(a,b) ρ(aᵀu − b)` against Lebesgue measure da db gives `C_m g(u)`, so
//! `R₀` is what reconstruction, neuron readouts and Barron norms consume.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::activations::Activation;
use crate::error::{Error, Result};
use crate::profile::RidgeletProfile;
use crate::quad::{adaptive_gk, composite_gl, gauss_legendre, uniform_breaks, GkOptions};
use crate::targets::{check_dims, Target};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// (2π)^{m−1} ∫ ψ̂(ξ) f(ξ)/ξ^m dξ for an arbitrary density f on the support of ψ̂.
pub fn admissibility_integral<F>(profile: &RidgeletProfile, density: F, m: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let opts = GkOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        max_intervals: 2000,
    };
    let r = adaptive_gk(
        |x| density(x) * (profile.hat_psi(x) / x.powi(m as i32)),
        profile.zeta1(),
        profile.zeta2(),
        &opts,
    )?;
    Ok(r.value * (2.0 * PI).powi(m as i32 - 1))
}

/// C_m^{(ψ,ρ)} for a catalog activation.
pub fn admissibility_constant(profile: &RidgeletProfile, act: Activation, m: usize) -> Result<Complex64> {
    let c = admissibility_integral(profile, |x| act.fourier_density_unchecked(x), m)?;
    if c.norm() < 1e-14 {
        return Err(Error::DegenerateAdmissibility(c.norm()));
    }
    Ok(c)
}

/// C_{ψ,ρ} = (2π)^{−1} |∫ ψ̂ f|.
pub fn pairing_constant(profile: &RidgeletProfile, act: Activation) -> Result<f64> {
    let opts = GkOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        max_intervals: 2000,
    };
    let r = adaptive_gk(
        |x| act.fourier_density_unchecked(x) * profile.hat_psi(x),
        profile.zeta1(),
        profile.zeta2(),
        &opts,
    )?;
    Ok(r.value.norm() / (2.0 * PI))
}

/// The lower bound C_{ψ,ρ}·(2π/ζ2)^m on |C_m|.
pub fn admissibility_lower_bound(profile: &RidgeletProfile, act: Activation, m: usize) -> Result<f64> {
    Ok(pairing_constant(profile, act)? * (2.0 * PI / profile.zeta2()).powi(m as i32))
}

/// A profile, an activation and an input dimension with their constant.
#[derive(Debug, Clone)]
pub struct AdmissiblePair {
    pub profile: RidgeletProfile,
    pub activation: Activation,
    pub m: usize,
    pub constant: Complex64,
}

impl AdmissiblePair {
    pub fn new(profile: RidgeletProfile, activation: Activation, m: usize) -> Result<Self> {
        let constant = admissibility_constant(&profile, activation, m)?;
        Ok(Self {
            profile,
            activation,
            m,
            constant,
        })
    }
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// R₀ vanishes to working precision outside this region.
fn coefficient_negligible(profile: &RidgeletProfile, g: &dyn Target, anorm: f64, b: f64) -> bool {
    profile.zeta1() * anorm > g.frequency_radius() || b.abs() > profile.s_max() + anorm * g.spatial_radius()
}

/// R₀(a,b) = (1/2π)∫_{ζ1}^{ζ2} ψ̂(η) ĝ(ηa) e^{iηb} dη by composite Gauss–Legendre,
/// with panel count following the phase rate |b| + ‖a‖·R_g.
pub fn ridgelet_coefficient(profile: &RidgeletProfile, g: &dyn Target, a: &[f64], b: f64) -> Result<Vec<Complex64>> {
    check_dims(a.len(), g.dim_in())?;
    if !b.is_finite() || a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite (a, b)".into()));
    }
    let d = g.dim_out();
    let mut out = vec![ZERO; d];
    let anorm = norm(a);
    if coefficient_negligible(profile, g, anorm, b) {
        return Ok(out);
    }
    let (z1, z2) = (profile.zeta1(), profile.zeta2());
    let rate = b.abs() + anorm * g.spatial_radius();
    let panels = ((z2 - z1) * rate / 6.0).ceil().max(4.0) as usize;
    let mut xi = vec![0.0; a.len()];
    let mut gh = vec![ZERO; d];
    for (eta, w) in composite_gl(&uniform_breaks(z1, z2, panels), 32) {
        let hp = profile.hat_psi(eta);
        if hp == 0.0 {
            continue;
        }
        xi.iter_mut().zip(a).for_each(|(x, &ai)| *x = eta * ai);
        g.fourier_into(&xi, &mut gh);
        let phase = Complex64::from_polar(w * hp / (2.0 * PI), eta * b);
        out.iter_mut().zip(&gh).for_each(|(o, v)| *o += v * phase);
    }
    Ok(out)
}

/// Fourier-slice route: with v = a/‖a‖, s = 1/‖a‖, t = b/‖a‖ this is
/// (1/2π)∫ ĝ(ξv) ψ̂(ξs) e^{iξt} dξ, evaluated after the substitution ξ = η/s.
pub fn ridgelet_transform_slice(
    profile: &RidgeletProfile,
    g: &dyn Target,
    a: &[f64],
    b: f64,
) -> Result<Vec<Complex64>> {
    let anorm = norm(a);
    if anorm == 0.0 {
        return Err(Error::InvalidDirection);
    }
    let mut r = ridgelet_coefficient(profile, g, a, b)?;
    r.iter_mut().for_each(|x| *x *= anorm);
    Ok(r)
}

/// Quadrature controls for the direct route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectQuad {
    /// Half-width of the integration box; defaults to the target's spatial radius.
    pub radius: Option<f64>,
    pub gk: GkOptions,
}

impl Default for DirectQuad {
    fn default() -> Self {
        Self {
            radius: None,
            gk: GkOptions {
                abs_tol: 1e-13,
                rel_tol: 1e-10,
                max_intervals: 4000,
            },
        }
    }
}

/// Direct route: ∫ conj(ψ(aᵀu − b)) g(u) ‖a‖ du over a box, by nested
/// adaptive Gauss–Kronrod (m ≤ 3).
pub fn ridgelet_transform_direct(
    profile: &RidgeletProfile,
    g: &dyn Target,
    a: &[f64],
    b: f64,
    quad: &DirectQuad,
) -> Result<Vec<Complex64>> {
    let m = g.dim_in();
    check_dims(a.len(), m)?;
    if m > 3 {
        return Err(Error::UseSliceRoute(m));
    }
    let d = g.dim_out();
    let anorm = norm(a);
    if anorm == 0.0 {
        return Ok(vec![ZERO; d]);
    }
    let r = quad.radius.unwrap_or_else(|| g.spatial_radius());
    let zeros = vec![0usize; m];
    let mut out = Vec::with_capacity(d);
    for c in 0..d {
        let mut gv = vec![0.0; d];
        let mut integrand = |u: &[f64]| {
            g.partial_into(&zeros, u, &mut gv);
            let s: f64 = a.iter().zip(u).map(|(x, y)| x * y).sum::<f64>() - b;
            profile.psi(s).conj() * gv[c]
        };
        let v = nested_integral(&mut integrand, m, r, &quad.gk)?;
        out.push(v * anorm);
    }
    Ok(out)
}

fn nested_integral<F>(f: &mut F, m: usize, r: f64, opts: &GkOptions) -> Result<Complex64>
where
    F: FnMut(&[f64]) -> Complex64,
{
    let mut u = vec![0.0; m];
    nested_level(f, &mut u, 0, r, opts)
}

fn nested_level<F>(f: &mut F, u: &mut Vec<f64>, level: usize, r: f64, opts: &GkOptions) -> Result<Complex64>
where
    F: FnMut(&[f64]) -> Complex64,
{
    let m = u.len();
    let mut failure = None;
    let res = adaptive_gk(
        |x| {
            u[level] = x;
            if level + 1 == m {
                f(u)
            } else {
                match nested_level(f, u, level + 1, r, opts) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        ZERO
                    }
                }
            }
        },
        -r,
        r,
        opts,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(res.value),
    }
}

/// Quadrature nodes (v, weight) on 𝕊^{m−1}.
pub fn sphere_rule(m: usize, n: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    let n = n.max(1);
    match m {
        1 => Ok(vec![(vec![-1.0], 1.0), (vec![1.0], 1.0)]),
        2 => Ok((0..n)
            .map(|j| {
                let t = 2.0 * PI * (j as f64 + 0.5) / n as f64;
                (vec![t.cos(), t.sin()], 2.0 * PI / n as f64)
            })
            .collect()),
        3 => {
            // Gauss–Legendre in cos θ times a uniform grid in φ.
            let nphi = 2 * n;
            let mut out = Vec::with_capacity(n * nphi);
            for &(z, wz) in gauss_legendre(n).iter() {
                let rho = (1.0 - z * z).sqrt();
                for k in 0..nphi {
                    let phi = 2.0 * PI * (k as f64 + 0.5) / nphi as f64;
                    out.push((vec![rho * phi.cos(), rho * phi.sin(), z], wz * 2.0 * PI / nphi as f64));
                }
            }
            Ok(out)
        }
        _ => Err(Error::InvalidInput(format!(
            "sphere quadrature is provided for m ≤ 3, got m = {m}"
        ))),
    }
}

/// Truncation of the reconstruction integral in polar coordinates a = v/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Smallest scale s; s is further clipped where ζ1/s exceeds the target's
    /// frequency radius.
    pub delta1: f64,
    /// Largest scale, rounded up to δ1·2^K so that refinements nest.
    pub delta2: f64,
    /// Bias window: |b| ≤ t_max + ‖a‖·R_g, with R_g the target's spatial radius.
    pub t_max: f64,
    /// Trapezoid step in b.
    pub b_step: f64,
    /// Gauss–Legendre nodes per octave of s.
    pub s_nodes_per_octave: usize,
    /// Resolution of the sphere rule; `None` picks a default per m.
    pub sphere_nodes: Option<usize>,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            delta1: 0.05,
            delta2: 1000.0,
            t_max: 40.0,
            b_step: 0.25,
            s_nodes_per_octave: 8,
            sphere_nodes: None,
        }
    }
}

impl Truncation {
    /// δ1/2, 2δ2, 2·t_max.
    pub fn refined(&self) -> Self {
        Self {
            delta1: 0.5 * self.delta1,
            delta2: 2.0 * self.delta2,
            t_max: 2.0 * self.t_max,
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.delta1 > 0.0
            && self.delta2 > self.delta1
            && self.delta2.is_finite()
            && self.t_max > 0.0
            && self.b_step > 0.0
            && self.s_nodes_per_octave > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid truncation {self:?}")))
        }
    }

    fn octaves(&self) -> usize {
        let mut k = 0;
        let mut top = self.delta1;
        while top < self.delta2 {
            top *= 2.0;
            k += 1;
        }
        k
    }

    fn sphere(&self, m: usize) -> Result<Vec<(Vec<f64>, f64)>> {
        let n = self.sphere_nodes.unwrap_or(match m {
            2 => 64,
            3 => 12,
            _ => 1,
        });
        sphere_rule(m, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub u: Vec<f64>,
    pub value: Vec<f64>,
    /// max over components of |Im| of the reconstruction before the real part is taken.
    pub imag_residue: f64,
    /// Real contribution of the next refinement shell: s ∈ [δ1/2, δ1] ∪ [δ2, 2δ2]
    /// and the doubled bias window.
    pub shell: Vec<f64>,
    /// max|shell| + imag_residue; bounds the change under one refinement step.
    pub diagnostic: f64,
}

impl Reconstruction {
    /// Value the refined truncation would return.
    pub fn refined_value(&self) -> Vec<f64> {
        self.value.iter().zip(&self.shell).map(|(v, s)| v + s).collect()
    }

    pub fn warns(&self) -> bool {
        let mag = norm(&self.value);
        self.imag_residue > 0.05 * mag && self.imag_residue > 1e-12
    }
}

/// R₀(a, jh) for |j| ≤ J, d components per row, from a uniform η-trapezoid
/// whose aliasing period exceeds the support of R₀ in b.
pub(crate) fn coefficient_row(
    profile: &RidgeletProfile,
    g: &dyn Target,
    a: &[f64],
    half: usize,
    h: f64,
) -> Vec<Complex64> {
    let d = g.dim_out();
    let anorm = norm(a);
    let mut row = vec![ZERO; (2 * half + 1) * d];
    if profile.zeta1() * anorm > g.frequency_radius() {
        return row;
    }
    let (z1, z2) = (profile.zeta1(), profile.zeta2());
    let period = half as f64 * h + anorm * g.spatial_radius() + profile.s_max();
    let n = ((z2 - z1) * period / (2.0 * PI)).ceil().max(16.0) as usize;
    let de = (z2 - z1) / n as f64;
    let b0 = -(half as f64) * h;
    let mut xi = vec![0.0; a.len()];
    let mut gh = vec![ZERO; d];
    for k in 1..n {
        let eta = z1 + k as f64 * de;
        let hp = profile.hat_psi(eta);
        if hp == 0.0 {
            continue;
        }
        xi.iter_mut().zip(a).for_each(|(x, &ai)| *x = eta * ai);
        g.fourier_into(&xi, &mut gh);
        let scale = hp * de / (2.0 * PI);
        let rot = Complex64::from_polar(1.0, eta * h);
        let mut phase = ZERO;
        for j in 0..=2 * half {
            if j % 64 == 0 {
                phase = Complex64::from_polar(scale, eta * (b0 + j as f64 * h));
            }
            let cell = &mut row[j * d..(j + 1) * d];
            cell.iter_mut().zip(&gh).for_each(|(o, v)| *o += v * phase);
            phase *= rot;
        }
    }
    row
}

struct Node {
    v: Vec<f64>,
    s: f64,
    weight: f64,
    in_main: bool,
}

/// (1/C)∫∫ R₀(a,b) ρ(aᵀu − b) db da at several points, in polar form
/// da = s^{−(m+1)} ds dσ(v).
pub fn reconstruct_many(
    pair: &AdmissiblePair,
    g: &dyn Target,
    points: &[Vec<f64>],
    trunc: &Truncation,
) -> Result<Vec<Reconstruction>> {
    trunc.validate()?;
    let m = g.dim_in();
    check_dims(pair.m, m)?;
    for u in points {
        check_dims(u.len(), m)?;
    }
    let d = g.dim_out();
    let act = pair.activation;
    let profile = &pair.profile;
    let h = trunc.b_step;
    let rg = g.spatial_radius();
    let fr = g.frequency_radius();

    let sphere = trunc.sphere(m)?;
    let octaves = trunc.octaves() as i64;
    let rule = gauss_legendre(trunc.s_nodes_per_octave);
    let mut nodes = Vec::new();
    for (v, wv) in &sphere {
        for j in -1..=octaves {
            let lo = (trunc.delta1 * 2f64.powi(j as i32)).ln();
            let hi = lo + 2f64.ln();
            for &(x, wx) in rule.iter() {
                let s = (0.5 * (lo + hi) + 0.5 * (hi - lo) * x).exp();
                if profile.zeta1() / s > fr {
                    continue;
                }
                // ds = s dx, da = s^{−(m+1)} ds dσ
                let weight = wv * 0.5 * (hi - lo) * wx * s.powi(-(m as i32));
                nodes.push(Node {
                    v: v.clone(),
                    s,
                    weight,
                    in_main: (0..octaves).contains(&j),
                });
            }
        }
    }

    // Each node contributes (main, shell) per point and component.
    let contributions: Vec<Vec<(Complex64, Complex64)>> = nodes
        .par_iter()
        .map(|node| {
            let anorm = 1.0 / node.s;
            let a: Vec<f64> = node.v.iter().map(|x| x * anorm).collect();
            let b_main = trunc.t_max + anorm * rg;
            let b_ext = 2.0 * trunc.t_max + anorm * rg;
            let j_main = (b_main / h).floor() as usize;
            let j_ext = (b_ext / h).floor() as usize;
            let row = coefficient_row(profile, g, &a, j_ext, h);
            let mut out = vec![(ZERO, ZERO); points.len() * d];
            for (pi, u) in points.iter().enumerate() {
                let c: f64 = a.iter().zip(u).map(|(x, y)| x * y).sum();
                for j in 0..=2 * j_ext {
                    let off = j as i64 - j_ext as i64;
                    let r = act.eval(c - off as f64 * h) * h * node.weight;
                    let main = node.in_main && off.unsigned_abs() as usize <= j_main;
                    for comp in 0..d {
                        let term = row[j * d + comp] * r;
                        let slot = &mut out[pi * d + comp];
                        if main {
                            slot.0 += term;
                        } else {
                            slot.1 += term;
                        }
                    }
                }
            }
            out
        })
        .collect();

    let mut main = vec![ZERO; points.len() * d];
    let mut shell = vec![ZERO; points.len() * d];
    for c in &contributions {
        for (i, (x, y)) in c.iter().enumerate() {
            main[i] += x;
            shell[i] += y;
        }
    }

    let inv = 1.0 / pair.constant;
    Ok(points
        .iter()
        .enumerate()
        .map(|(pi, u)| {
            let vals: Vec<Complex64> = (0..d).map(|c| main[pi * d + c] * inv).collect();
            let sh: Vec<f64> = (0..d).map(|c| (shell[pi * d + c] * inv).re).collect();
            let imag_residue = vals.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let shell_mag = sh.iter().map(|x| x.abs()).fold(0.0, f64::max);
            Reconstruction {
                u: u.clone(),
                value: vals.iter().map(|z| z.re).collect(),
                imag_residue,
                shell: sh,
                diagnostic: shell_mag + imag_residue,
            }
        })
        .collect())
}

/// Reconstruction at a single point. A large imaginary residue is reported as
/// [`Error::TruncationWarning`], which still carries the value.
pub fn reconstruct(pair: &AdmissiblePair, g: &dyn Target, u: &[f64], trunc: &Truncation) -> Result<Vec<f64>> {
    let r = reconstruct_many(pair, g, &[u.to_vec()], trunc)?.remove(0);
    if r.warns() {
        return Err(Error::TruncationWarning {
            value: r.value,
            residue: r.imag_residue,
        });
    }
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activations::CATALOG;
    use crate::targets::{HermiteGaussian, Scaled, ZeroTarget};
    use std::sync::Arc;

    fn gaussian(m: usize) -> Arc<dyn Target> {
        Arc::new(HermiteGaussian::gaussian(m))
    }

    #[test]
    fn constant_matches_fixed_order_reference() {
        let p = RidgeletProfile::standard();
        let c = admissibility_constant(&p, Activation::Tanh, 1).unwrap();
        let reference: Complex64 = composite_gl(&uniform_breaks(1.0, 2.0, 40), 64)
            .into_iter()
            .map(|(x, w)| Activation::Tanh.fourier_density_unchecked(x) * (w * p.hat_psi(x) / x))
            .sum();
        assert!((c - reference).norm() <= 1e-8 * reference.norm());
        assert!(c.norm() > 0.0);
    }

    #[test]
    fn polynomial_activation_is_not_admissible() {
        let p = RidgeletProfile::standard();
        let c = admissibility_integral(&p, |_| ZERO, 2).unwrap();
        assert_eq!(c, ZERO);
    }

    #[test]
    fn doubling_density_doubles_constant() {
        let p = RidgeletProfile::standard();
        let act = Activation::Sigmoid;
        let c1 = admissibility_integral(&p, |x| act.fourier_density_unchecked(x), 2).unwrap();
        let c2 = admissibility_integral(&p, |x| act.fourier_density_unchecked(x) * 2.0, 2).unwrap();
        assert_eq!(c2, c1 * 2.0);
    }

    #[test]
    fn lower_bound_holds() {
        let p = RidgeletProfile::standard();
        for act in CATALOG {
            for m in 1..=3 {
                let c = admissibility_constant(&p, act, m).unwrap().norm();
                let lb = admissibility_lower_bound(&p, act, m).unwrap();
                assert!(c >= lb, "{act} m={m}: {c} < {lb}");
            }
        }
    }

    #[test]
    fn zero_and_degenerate_inputs() {
        let p = RidgeletProfile::standard();
        let z: Arc<dyn Target> = Arc::new(ZeroTarget { m: 1, d: 1 });
        assert_eq!(
            ridgelet_transform_slice(&p, z.as_ref(), &[1.0], 0.3).unwrap(),
            vec![ZERO]
        );
        assert_eq!(
            ridgelet_transform_direct(&p, z.as_ref(), &[1.0], 0.3, &DirectQuad::default()).unwrap(),
            vec![ZERO]
        );
        let g = gaussian(1);
        assert_eq!(
            ridgelet_transform_direct(&p, g.as_ref(), &[0.0], 0.3, &DirectQuad::default()).unwrap(),
            vec![ZERO]
        );
        assert_eq!(
            ridgelet_transform_slice(&p, g.as_ref(), &[0.0], 0.3),
            Err(Error::InvalidDirection)
        );
        let g4 = gaussian(4);
        assert_eq!(
            ridgelet_transform_direct(&p, g4.as_ref(), &[1.0; 4], 0.0, &DirectQuad::default()),
            Err(Error::UseSliceRoute(4))
        );
    }

    #[test]
    fn routes_agree_for_gaussian() {
        let p = RidgeletProfile::standard();
        let g = gaussian(1);
        for &(a, b) in &[(1.0, 0.0), (0.4, -2.0), (2.7, 1.3), (-1.5, 0.7)] {
            let d = ridgelet_transform_direct(&p, g.as_ref(), &[a], b, &DirectQuad::default()).unwrap();
            let s = ridgelet_transform_slice(&p, g.as_ref(), &[a], b).unwrap();
            assert!(
                (d[0] - s[0]).norm() <= 1e-6 * s[0].norm(),
                "a={a} b={b}: {} vs {}",
                d[0],
                s[0]
            );
        }
    }

    #[test]
    fn slice_is_linear() {
        let p = RidgeletProfile::standard();
        let g = gaussian(2);
        let two: Arc<dyn Target> = Arc::new(Scaled {
            factor: 2.0,
            inner: g.clone(),
        });
        let a = [0.8, -0.3];
        let one = ridgelet_transform_slice(&p, g.as_ref(), &a, 0.4).unwrap();
        let dbl = ridgelet_transform_slice(&p, two.as_ref(), &a, 0.4).unwrap();
        assert_eq!(dbl[0], one[0] * 2.0);
    }

    #[test]
    fn coefficient_row_matches_pointwise_coefficient() {
        let p = RidgeletProfile::standard();
        let g = gaussian(1);
        let a = [1.7];
        let row = coefficient_row(&p, g.as_ref(), &a, 200, 0.25);
        for j in [0usize, 37, 200, 311, 400] {
            let b = (j as f64 - 200.0) * 0.25;
            let pt = ridgelet_coefficient(&p, g.as_ref(), &a, b).unwrap()[0];
            assert!((row[j] - pt).norm() < 1e-12, "b={b}: {} vs {pt}", row[j]);
        }
    }

    #[test]
    fn sphere_rules_integrate_constants() {
        for (m, area) in [(1, 2.0), (2, 2.0 * PI), (3, 4.0 * PI)] {
            let s: f64 = sphere_rule(m, 10).unwrap().iter().map(|(_, w)| w).sum();
            assert!((s - area).abs() < 1e-12);
        }
        // ∫ v_z² dσ = 4π/3 on 𝕊²
        let z2: f64 = sphere_rule(3, 8).unwrap().iter().map(|(v, w)| w * v[2] * v[2]).sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_target_reconstructs_to_zero() {
        let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1).unwrap();
        let z = ZeroTarget { m: 1, d: 1 };
        let v = reconstruct(&pair, &z, &[0.3], &Truncation::default()).unwrap();
        assert_eq!(v, vec![0.0]);
    }
}
