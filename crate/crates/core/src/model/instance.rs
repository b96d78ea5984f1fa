use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default inequity-aversion weight.
pub const DEFAULT_LAMBDA: f64 = 0.5;

fn default_lambda() -> f64 {
    DEFAULT_LAMBDA
}

/// A relief distribution problem: one depot (node 0) and `n` shelters
/// (nodes `1..=n`).
///
/// `demands[i - 1]` is the demand of shelter `i`; `travel[i][j]` is the
/// travel time from node `i` to node `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "Q")]
    pub capacity: f64,
    #[serde(rename = "C")]
    pub supply: f64,
    pub psi: f64,
    pub epsilon: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    pub demands: Vec<f64>,
    pub travel: Vec<Vec<f64>>,
}

impl Instance {
    /// Demand of shelter `node` (1-based).
    #[inline]
    pub fn demand(&self, node: usize) -> f64 {
        self.demands[node - 1]
    }

    #[inline]
    pub fn t(&self, from: usize, to: usize) -> f64 {
        self.travel[from][to]
    }

    pub fn total_demand(&self) -> f64 {
        self.demands.iter().sum()
    }

    pub fn shelters(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Largest entry of the travel matrix.
    pub fn max_travel(&self) -> f64 {
        self.travel
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(0.0, f64::max)
    }

    /// Round-trip time depot -> `node` -> depot.
    pub fn round_trip(&self, node: usize) -> f64 {
        self.t(0, node) + self.t(node, 0)
    }

    /// Duration of the route `0 -> nodes[0] -> ... -> nodes[k-1] -> 0`.
    pub fn route_duration(&self, nodes: &[usize]) -> f64 {
        let mut prev = 0;
        let mut total = 0.0;
        for &node in nodes {
            total += self.t(prev, node);
            prev = node;
        }
        if !nodes.is_empty() {
            total += self.t(prev, 0);
        }
        total
    }

    /// Checks every structural and numerical invariant of the instance.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.n == 0 {
            return bad("instance has no shelters".into());
        }
        if self.m == 0 {
            return bad("fleet size m must be at least 1".into());
        }
        if self.demands.len() != self.n {
            return bad(format!(
                "expected {} demands, found {}",
                self.n,
                self.demands.len()
            ));
        }
        if self.travel.len() != self.n + 1 {
            return bad(format!(
                "travel matrix must have {} rows, found {}",
                self.n + 1,
                self.travel.len()
            ));
        }
        for (i, row) in self.travel.iter().enumerate() {
            if row.len() != self.n + 1 {
                return bad(format!(
                    "travel row {i} must have {} entries, found {}",
                    self.n + 1,
                    row.len()
                ));
            }
            for (j, &t) in row.iter().enumerate() {
                if !t.is_finite() || t < 0.0 {
                    return bad(format!(
                        "travel[{i}][{j}] = {t} is not a nonnegative number"
                    ));
                }
            }
            if row[i] != 0.0 {
                return bad(format!("travel[{i}][{i}] must be 0"));
            }
        }
        for (i, &d) in self.demands.iter().enumerate() {
            if !d.is_finite() || d <= 0.0 {
                return bad(format!(
                    "demand of shelter {} must be positive, found {d}",
                    i + 1
                ));
            }
        }
        for (name, value) in [
            ("Q", self.capacity),
            ("C", self.supply),
            ("psi", self.psi),
            ("epsilon", self.epsilon),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return bad(format!("{name} must be positive, found {value}"));
            }
        }
        if !(0.0..=0.5).contains(&self.lambda) {
            return bad(format!(
                "lambda must lie in [0, 1/2], found {}",
                self.lambda
            ));
        }
        let total = self.total_demand();
        if self.supply >= total {
            return bad(format!(
                "supply C = {} must be smaller than total demand {}",
                self.supply, total
            ));
        }
        let scale = 1.0 + self.max_travel();
        for i in 0..=self.n {
            for j in 0..=self.n {
                for k in 0..=self.n {
                    let direct = self.travel[i][j];
                    let via = self.travel[i][k] + self.travel[k][j];
                    if direct > via + 1e-9 * scale {
                        return bad(format!(
                            "triangle inequality violated: t({i},{j}) = {direct} > t({i},{k}) + t({k},{j}) = {via}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses and validates an instance from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let inst: Instance = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let text = fs::read_to_string(path)?;
    Instance::from_json(&text)
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let mut text = inst.to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
