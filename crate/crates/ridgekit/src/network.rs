//! Single-hidden-layer networks φ(u) = Σ_n y_n ρ(a_nᵀu − b_n).

use std::fmt::Write as _;
use std::path::Path;

use crate::activations::Activation;
use crate::error::{Error, Result};
use crate::targets::{check_dims, Differentiable};

const HEADER: &str = "ridgekit-network v1";

#[derive(Debug, Clone, PartialEq)]
pub struct Neuron {
    pub y: Vec<f64>,
    pub a: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    activation: Activation,
    m: usize,
    d: usize,
    neurons: Vec<Neuron>,
}

impl Network {
    pub fn new(activation: Activation, m: usize, d: usize, neurons: Vec<Neuron>) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::InvalidInput("network needs m ≥ 1 and d ≥ 1".into()));
        }
        if neurons.is_empty() {
            return Err(Error::InvalidInput("network needs at least one neuron".into()));
        }
        for (i, n) in neurons.iter().enumerate() {
            if n.a.len() != m || n.y.len() != d {
                return Err(Error::InvalidInput(format!(
                    "neuron {i} has shape (a: {}, y: {}), expected ({m}, {d})",
                    n.a.len(),
                    n.y.len()
                )));
            }
            if !n.b.is_finite() || n.a.iter().chain(&n.y).any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("neuron {i} has non-finite parameters")));
            }
        }
        Ok(Self {
            activation,
            m,
            d,
            neurons,
        })
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn dim_in(&self) -> usize {
        self.m
    }

    pub fn dim_out(&self) -> usize {
        self.d
    }

    pub fn neurons(&self) -> &[Neuron] {
        &self.neurons
    }

    pub fn len(&self) -> usize {
        self.neurons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neurons.is_empty()
    }

    pub fn eval(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.partial(&vec![0; self.m], u)
    }

    /// Σ_n y_n ρ^{(|α|)}(a_nᵀu − b_n) a_n^α.
    pub fn partial(&self, alpha: &[usize], u: &[f64]) -> Result<Vec<f64>> {
        check_dims(u.len(), self.m)?;
        check_dims(alpha.len(), self.m)?;
        self.activation.check_order(alpha.iter().sum())?;
        let mut out = vec![0.0; self.d];
        self.accumulate(alpha, u, &mut out);
        Ok(out)
    }

    fn accumulate(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let order: usize = alpha.iter().sum();
        for n in &self.neurons {
            let pre: f64 = n.a.iter().zip(u).map(|(a, x)| a * x).sum::<f64>() - n.b;
            let mono: f64 = n.a.iter().zip(alpha).map(|(a, &k)| a.powi(k as i32)).product();
            let r = self.activation.deriv_unchecked(order, pre) * mono;
            out.iter_mut().zip(&n.y).for_each(|(o, y)| *o += y * r);
        }
    }

    /// The network whose output is the sum of both.
    pub fn concat(&self, other: &Network) -> Result<Network> {
        if self.activation != other.activation || self.m != other.m || self.d != other.d {
            return Err(Error::InvalidInput("networks differ in activation or shape".into()));
        }
        let mut neurons = self.neurons.clone();
        neurons.extend_from_slice(&other.neurons);
        Network::new(self.activation, self.m, self.d, neurons)
    }

    /// Plain-text form: a header, the shape, then `y.. a.. b` per neuron with
    /// 17 significant digits so parsing restores every bit.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{HEADER}");
        let _ = writeln!(s, "activation {}", self.activation.name());
        let _ = writeln!(s, "m {}", self.m);
        let _ = writeln!(s, "d {}", self.d);
        let _ = writeln!(s, "neurons {}", self.neurons.len());
        for n in &self.neurons {
            let fields: Vec<String> =
                n.y.iter()
                    .chain(&n.a)
                    .chain(std::iter::once(&n.b))
                    .map(|x| format!("{x:.16e}"))
                    .collect();
            let _ = writeln!(s, "{}", fields.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(Error::Parse(format!("missing '{HEADER}' header")));
        }
        let mut field = |key: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
            line.trim()
                .strip_prefix(key)
                .map(|v| v.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected '{key}', got '{line}'")))
        };
        let activation: Activation = field("activation")?.parse()?;
        let parse_usize = |v: String| v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()));
        let m = parse_usize(field("m")?)?;
        let d = parse_usize(field("d")?)?;
        let count = parse_usize(field("neurons")?)?;
        let mut neurons = Vec::with_capacity(count);
        for line in lines {
            let vals: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("'{t}': {e}"))))
                .collect::<Result<_>>()?;
            if vals.len() != d + m + 1 {
                return Err(Error::Parse(format!(
                    "neuron line has {} fields, expected {}",
                    vals.len(),
                    d + m + 1
                )));
            }
            neurons.push(Neuron {
                y: vals[..d].to_vec(),
                a: vals[d..d + m].to_vec(),
                b: vals[d + m],
            });
        }
        if neurons.len() != count {
            return Err(Error::Parse(format!(
                "header announces {count} neurons, found {}",
                neurons.len()
            )));
        }
        Network::new(activation, m, d, neurons)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

impl Differentiable for Network {
    fn dim_in(&self) -> usize {
        self.m
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn max_partial_order(&self) -> Option<usize> {
        self.activation.k_max()
    }

    fn partial_into(&self, alpha: &[usize], u: &[f64], out: &mut [f64]) {
        self.accumulate(alpha, u, out);
    }
}
