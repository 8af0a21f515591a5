//! Student-t (ν = 1) sampling of hidden weights, randomized neurons, network
//! assembly and the Monte-Carlo second-moment audit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::network::{Network, Neuron};
use crate::ridgelet::{ridgelet_coefficient, AdmissiblePair};
use crate::spaces::{barron_norm_estimate, weight_constant, weighted_sobolev_norm, BarronQuad, Domain, WeightSpec};
use crate::targets::{check_dims, Target};

/// Γ((m+1)/2)/π^{(m+1)/2}·(1+‖a‖²)^{−(m+1)/2}.
pub fn student_t_pdf(m: usize, a: &[f64]) -> f64 {
    let h = 0.5 * (m as f64 + 1.0);
    let r2: f64 = a.iter().map(|x| x * x).sum();
    (ln_gamma(h) - h * PI.ln() - h * (1.0 + r2).ln()).exp()
}

/// Deterministic ν = 1 multivariate-t sampler: z/|w| with z ~ N(0, I_m) and
/// w ~ N(0, 1). Job streams are selected with [`StudentTSampler::with_stream`].
#[derive(Debug, Clone)]
pub struct StudentTSampler {
    m: usize,
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl StudentTSampler {
    pub fn new(m: usize, seed: u64) -> Self {
        Self::with_stream(m, seed, 0)
    }

    /// ChaCha8 seeded from `seed`, switched to stream `stream`.
    pub fn with_stream(m: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { m, seed, stream, rng }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    fn draw(&mut self, n: usize) -> Vec<f64> {
        let mut z: Vec<f64> = (0..n).map(|_| self.rng.sample(StandardNormal)).collect();
        let w: f64 = self.rng.sample(StandardNormal);
        let inv = 1.0 / w.abs();
        z.iter_mut().for_each(|x| *x *= inv);
        z
    }

    /// One draw from t_m.
    pub fn sample(&mut self) -> Vec<f64> {
        self.draw(self.m)
    }

    /// One draw from t_1.
    pub fn sample_scalar(&mut self) -> f64 {
        self.draw(1)[0]
    }
}

pub fn sample_student_t(sampler: &mut StudentTSampler) -> Vec<f64> {
    sampler.sample()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeuronDraw {
    pub a: Vec<f64>,
    pub b: f64,
    pub y: Vec<f64>,
}

impl NeuronDraw {
    pub fn into_neuron(self, scale: f64) -> Neuron {
        Neuron {
            y: self.y.into_iter().map(|v| v * scale).collect(),
            a: self.a,
            b: self.b,
        }
    }

    /// R(u) = y·ρ(aᵀu − b).
    pub fn eval(&self, pair: &AdmissiblePair, u: &[f64]) -> Vec<f64> {
        let s: f64 = self.a.iter().zip(u).map(|(a, x)| a * x).sum::<f64>() - self.b;
        let r = pair.activation.eval(s);
        self.y.iter().map(|y| y * r).collect()
    }
}

/// (a, b) ~ t_m ⊗ t_1 and y = Re(R₀(a,b)/(C·p_a(a)·p_b(b))).
pub fn draw_neuron(pair: &AdmissiblePair, g: &dyn Target, sampler: &mut StudentTSampler) -> Result<NeuronDraw> {
    check_dims(sampler.dim(), g.dim_in())?;
    check_dims(pair.m, g.dim_in())?;
    let a = sampler.sample();
    let b = sampler.sample_scalar();
    let coef = ridgelet_coefficient(&pair.profile, g, &a, b)?;
    let denom = pair.constant * (student_t_pdf(a.len(), &a) * student_t_pdf(1, &[b]));
    let y: Vec<f64> = coef.iter().map(|z: &Complex64| (z / denom).re).collect();
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite readout at a={a:?}, b={b}")));
    }
    Ok(NeuronDraw { a, b, y })
}

/// φ_N = (1/N)Σ R_n with the 1/N folded into the readouts.
pub fn build_network(
    pair: &AdmissiblePair,
    g: &dyn Target,
    n: usize,
    sampler: &mut StudentTSampler,
) -> Result<Network> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let scale = 1.0 / n as f64;
    let neurons = (0..n)
        .map(|_| draw_neuron(pair, g, sampler).map(|d| d.into_neuron(scale)))
        .collect::<Result<Vec<_>>>()?;
    Network::new(pair.activation, g.dim_in(), g.dim_out(), neurons)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondMomentAudit {
    /// 𝔼[‖R₁‖²_{W^{k,p}(U,w)}]^{1/2} by Monte Carlo.
    pub estimate: f64,
    /// Standard error of the Monte-Carlo mean of ‖R₁‖².
    pub mean_square_se: f64,
    pub bound: f64,
    pub rho_norm: f64,
    pub weight_constant: f64,
    pub barron: f64,
    /// Largest single ‖R₁‖² seen; a heavy-tail diagnostic.
    pub max_sample: f64,
}

impl SecondMomentAudit {
    /// mean − 3·SE ≤ bound², i.e. the estimate is compatible with the bound.
    pub fn passes(&self) -> bool {
        self.estimate * self.estimate - 3.0 * self.mean_square_se <= self.bound * self.bound
    }
}

/// Compares the Monte-Carlo second moment of one randomized neuron with
/// 2^{4+1/p} π ‖ρ‖ C^{(γ,p)}_{U,w} m^{k/p} π^{(m+1)/4} / (|C| Γ((m+1)/2)^{1/2}) · B,
/// where B is the representative-based Barron estimate and γ comes from `w`.
pub fn second_moment_audit(
    pair: &AdmissiblePair,
    g: &dyn Target,
    w: &WeightSpec,
    domain: &Domain,
    k: usize,
    n_samples: usize,
    sampler: &mut StudentTSampler,
) -> Result<SecondMomentAudit> {
    if n_samples < 2 {
        return Err(Error::InvalidInput("audit needs at least two samples".into()));
    }
    let m = g.dim_in();
    let p = w.p;
    let gamma_w = w.gamma;
    let rho_norm = pair.activation.growth_norm(k, gamma_w)?;
    let cw = weight_constant(domain, w)?;
    let barron = barron_norm_estimate(&pair.profile, g, k, gamma_w, &BarronQuad::default())?;
    let mf = m as f64;
    let bound = 2f64.powf(4.0 + 1.0 / p) * PI * rho_norm * cw * mf.powf(k as f64 / p) * PI.powf((mf + 1.0) / 4.0)
        / (pair.constant.norm() * gamma((mf + 1.0) / 2.0).sqrt())
        * barron;

    let mut squares = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let draw = draw_neuron(pair, g, sampler)?;
        let sq = if draw.y.iter().all(|&v| v == 0.0) {
            0.0
        } else {
            let net = Network::new(pair.activation, m, g.dim_out(), vec![draw.into_neuron(1.0)])?;
            weighted_sobolev_norm(&net, domain, w, k)?.powi(2)
        };
        squares.push(sq);
    }
    let n = squares.len() as f64;
    let mean = pairwise_sum(&squares) / n;
    let var = pairwise_sum(&squares.iter().map(|x| (x - mean).powi(2)).collect::<Vec<_>>()) / (n - 1.0);
    Ok(SecondMomentAudit {
        estimate: mean.sqrt(),
        mean_square_se: (var / n).sqrt(),
        bound,
        rho_norm,
        weight_constant: cw,
        barron,
        max_sample: squares.iter().cloned().fold(0.0, f64::max),
    })
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 32 {
        x.iter().sum()
    } else {
        let (l, r) = x.split_at(x.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activations::Activation;
    use crate::profile::RidgeletProfile;
    use crate::quad::{adaptive_gk, GkOptions};
    use crate::targets::{HermiteGaussian, ZeroTarget};
    use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor};

    #[test]
    fn pdf_closed_forms() {
        assert!((student_t_pdf(1, &[0.0]) - 1.0 / PI).abs() < 1e-15);
        assert!((student_t_pdf(1, &[1.0]) - 0.5 / PI).abs() < 1e-15);
    }

    #[test]
    fn pdf_normalised() {
        // radial integral |S^{m−1}| ∫ r^{m−1} p(r) dr after r = t/(1−t)
        for m in 1..=3usize {
            let sphere = 2.0 * PI.powf(m as f64 / 2.0) / gamma(m as f64 / 2.0);
            let f = |t: f64| {
                let r = t / (1.0 - t);
                let mut a = vec![0.0; m];
                a[0] = r;
                r.powi(m as i32 - 1) * student_t_pdf(m, &a) / (1.0 - t).powi(2)
            };
            let opts = GkOptions::with_abs_tol(1e-12);
            let v = sphere * adaptive_gk(f, 0.0, 1.0, &opts).unwrap().value;
            assert!((v - 1.0).abs() < 1e-8, "m={m}: {v}");
        }
    }

    #[test]
    fn cauchy_marginal_ks_and_median() {
        let mut s = StudentTSampler::new(1, 7);
        let mut x: Vec<f64> = (0..1_000_000).map(|_| s.sample()[0]).collect();
        x.sort_by(f64::total_cmp);
        let n = x.len() as f64;
        let ks = x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let c = 0.5 + v.atan() / PI;
                (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks <= 0.002, "KS = {ks}");
        let mut abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        abs.sort_by(f64::total_cmp);
        let med = abs[abs.len() / 2];
        assert!((0.99..=1.01).contains(&med), "median {med}");
    }

    #[test]
    fn radial_law_chi_square() {
        // ‖a‖²/m ~ F(m, 1) for the ν = 1 multivariate t.
        for m in 2..=3usize {
            let f = FisherSnedecor::new(m as f64, 1.0).unwrap();
            let bins = 20;
            let n = 200_000;
            let mut counts = vec![0usize; bins];
            let mut s = StudentTSampler::new(m, 11 + m as u64);
            for _ in 0..n {
                let a = s.sample();
                let q = f.cdf(a.iter().map(|x| x * x).sum::<f64>() / m as f64);
                counts[((q * bins as f64) as usize).min(bins - 1)] += 1;
            }
            let e = n as f64 / bins as f64;
            let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
            let pval = 1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(chi2);
            assert!(pval > 1e-3, "m={m}: χ²={chi2}, p={pval}");
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = StudentTSampler::with_stream(2, 5, 3);
        let mut b = StudentTSampler::with_stream(2, 5, 3);
        let mut c = StudentTSampler::with_stream(2, 5, 4);
        let xa: Vec<_> = (0..100).map(|_| a.sample()).collect();
        let xb: Vec<_> = (0..100).map(|_| b.sample()).collect();
        let xc: Vec<_> = (0..100).map(|_| c.sample()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[test]
    fn zero_target_gives_zero_readouts() {
        let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1).unwrap();
        let z = ZeroTarget { m: 1, d: 1 };
        let mut s = StudentTSampler::new(1, 1);
        let net = build_network(&pair, &z, 1, &mut s).unwrap();
        assert_eq!(net.len(), 1);
        assert_eq!(net.eval(&[0.3]).unwrap(), vec![0.0]);
    }

    #[test]
    fn neurons_are_unbiased_at_origin() {
        let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1).unwrap();
        let g = HermiteGaussian::gaussian(1);
        let mut s = StudentTSampler::new(1, 2024);
        let n = 20_000;
        let vals: Vec<f64> = (0..n)
            .map(|_| draw_neuron(&pair, &g, &mut s).unwrap().eval(&pair, &[0.0])[0])
            .collect();
        let mean = vals.iter().sum::<f64>() / n as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        let se = sd / (n as f64).sqrt();
        assert!((mean - 1.0).abs() <= 4.0 * se, "mean {mean} ± {se}");
    }

    #[test]
    fn audit_zero_and_gaussian() {
        let pair = AdmissiblePair::new(RidgeletProfile::standard(), Activation::Tanh, 1).unwrap();
        let w = WeightSpec::new(crate::spaces::Density::standard_gaussian(), 0.0, 2.0).unwrap();
        let dom = Domain::full_space(1);
        let z = ZeroTarget { m: 1, d: 1 };
        let mut s = StudentTSampler::new(1, 3);
        let a = second_moment_audit(&pair, &z, &w, &dom, 0, 100, &mut s).unwrap();
        assert_eq!((a.estimate, a.bound), (0.0, 0.0));
        let g = HermiteGaussian::gaussian(1);
        let a = second_moment_audit(&pair, &g, &w, &dom, 0, 2000, &mut s).unwrap();
        assert!(a.estimate > 0.0 && a.passes(), "{a:?}");
    }
}
