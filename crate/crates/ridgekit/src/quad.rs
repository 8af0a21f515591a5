//! Quadrature building blocks: an adaptive 21-point Gauss–Kronrod integrator
//! for real and complex integrands, and cached Gauss–Legendre rules for the
//! fixed-order tensor products used by the norm engines.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: a vector space over f64 with a magnitude.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

// Kronrod abscissae, decreasing; odd indices are the embedded 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_411_136_480,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for GkOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl GkOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abserr: f64,
    pub intervals: usize,
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

/// One 21-point Kronrod step on [a, b] with the QUADPACK error heuristic.
pub fn gk21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let ahalf = half.abs();

    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = T::default();
    let mut res_abs = fc.magnitude() * WGK[10];
    let mut fv1 = [T::default(); 10];
    let mut fv2 = [T::default(); 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        res_k = res_k + sum * WGK[j];
        if j % 2 == 1 {
            res_g = res_g + sum * WG[j / 2];
        }
        res_abs += WGK[j] * (f1.magnitude() + f2.magnitude());
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let result = res_k * half;
    res_abs *= ahalf;
    res_asc *= ahalf;
    let mut err = ((res_k - res_g) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

/// Adaptive bisection driven by the largest local error estimate.
pub fn adaptive_gk<T, F>(mut f: F, a: f64, b: f64, opts: &GkOptions) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if a == b {
        return Ok(QuadResult {
            value: T::default(),
            abserr: 0.0,
            intervals: 0,
        });
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    let (value, err) = gk21(&mut f, a, b);
    let mut panels = vec![Panel { a, b, value, err }];
    let min_width = (b - a).abs() * 1e-13;

    loop {
        let total = panels.iter().fold(T::default(), |acc, p| acc + p.value);
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let tol = opts.abs_tol.max(opts.rel_tol * total.magnitude());
        if total_err <= tol {
            return Ok(QuadResult {
                value: total,
                abserr: total_err,
                intervals: panels.len(),
            });
        }
        // Pick the worst panel that can still be split.
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| (p.b - p.a).abs() > min_width)
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::QuadratureFailure { abserr: total_err, tol });
        };
        if panels.len() >= opts.max_intervals {
            return Err(Error::QuadratureFailure { abserr: total_err, tol });
        }
        let p = panels.swap_remove(i);
        let mid = 0.5 * (p.a + p.b);
        let (v1, e1) = gk21(&mut f, p.a, mid);
        let (v2, e2) = gk21(&mut f, mid, p.b);
        panels.push(Panel {
            a: p.a,
            b: mid,
            value: v1,
            err: e1,
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            err: e2,
        });
    }
}

/// Sum of adaptive integrals over consecutive breakpoints.
pub fn adaptive_gk_breaks<T, F>(mut f: F, breaks: &[f64], opts: &GkOptions) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let mut out = QuadResult {
        value: T::default(),
        abserr: 0.0,
        intervals: 0,
    };
    for w in breaks.windows(2) {
        let r = adaptive_gk(&mut f, w[0], w[1], opts)?;
        out.value = out.value + r.value;
        out.abserr += r.abserr;
        out.intervals += r.intervals;
    }
    Ok(out)
}

type RuleCache = Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>;

/// Gauss–Legendre nodes and weights on [-1, 1], computed once per order.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("rule cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let n = NonZeroUsize::new(n).expect("Gauss-Legendre order must be positive");
            let mut pairs = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
            pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
            Arc::new(pairs)
        })
        .clone()
}

/// Composite Gauss–Legendre nodes on the segments between consecutive breakpoints.
pub fn composite_gl(breaks: &[f64], nodes_per_segment: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(nodes_per_segment);
    let mut out = Vec::with_capacity(rule.len() * breaks.len().saturating_sub(1));
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        out.extend(rule.iter().map(|&(x, wt)| (c + h * x, h * wt)));
    }
    out
}

/// `panels` equal segments of [a, b].
pub fn uniform_breaks(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let panels = panels.max(1);
    (0..=panels).map(|i| a + (b - a) * i as f64 / panels as f64).collect()
}

/// Sorted, deduplicated breakpoints of [a, b] including any interior extras.
pub fn breaks_with(a: f64, b: f64, extras: &[f64]) -> Vec<f64> {
    let mut v = vec![a, b];
    v.extend(extras.iter().copied().filter(|&x| x > a && x < b));
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((s - 2.0).abs() < 1e-14);
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_exact_for_degree_30_gauss_for_18() {
        let mut f = |x: f64| x.powi(30);
        let (v, _) = gk21(&mut f, -1.0, 1.0);
        assert!((v - 2.0 / 31.0).abs() < 1e-14, "{v}");
        // The embedded Gauss rule is checked through the error estimate: for
        // degree 18 both rules are exact so the estimate collapses to roundoff.
        let mut g = |x: f64| x.powi(18);
        let (v, e) = gk21(&mut g, -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        assert!(e < 1e-12, "{e}");
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let r = adaptive_gk(|x: f64| (50.0 * x).cos(), 0.0, 3.0, &GkOptions::default()).unwrap();
        assert!((r.value - (150.0f64).sin() / 50.0).abs() < 1e-10);
    }

    #[test]
    fn adaptive_complex() {
        let r = adaptive_gk(
            |x: f64| Complex64::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            &GkOptions::default(),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn adaptive_reports_failure() {
        let opts = GkOptions {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_intervals: 4,
        };
        let r = adaptive_gk(|x: f64| (1.0 / x.abs().max(1e-300)).sqrt(), -1.0, 1.0, &opts);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }

    #[test]
    fn gl_nodes_sorted_and_exact() {
        let rule = gauss_legendre(8);
        assert!(rule.windows(2).all(|w| w[0].0 < w[1].0));
        let v: f64 = composite_gl(&[0.0, 1.0, 3.0], 8)
            .iter()
            .map(|&(x, w)| w * x.powi(15))
            .sum();
        assert!((v - 3f64.powi(16) / 16.0).abs() < 1e-6);
    }
}
