//! Inequity-averse aggregation of unsatisfied demand.
//!
//! Every beneficiary at shelter `i` carries the cost `1 - v_i / d_i`. The
//! aggregate used throughout the solver is `D * (mu + lambda * Delta)`,
//! where `mu` is the mean cost and `Delta` is Gini's mean absolute
//! difference over all pairs of beneficiaries.

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::error::{Error, Result};

/// Weights of the delivery objective
/// `unmet_weight * sum(d_i - v_i) + (lambda / D) * sum_ij |d_i v_j - d_j v_i|`.
///
/// The IAAF objective is `unmet_weight = 1`; minimising total unsatisfied
/// demand is `lambda = 0`; minimising `D * Delta` alone is
/// `unmet_weight = 0, lambda = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objective {
    pub unmet_weight: f64,
    pub lambda: f64,
}

impl Objective {
    pub fn iaaf(lambda: f64) -> Self {
        Self {
            unmet_weight: 1.0,
            lambda,
        }
    }

    pub fn min_unmet() -> Self {
        Self::iaaf(0.0)
    }

    pub fn min_gini() -> Self {
        Self {
            unmet_weight: 0.0,
            lambda: 1.0,
        }
    }

    /// True when the objective is strictly monotone in every delivery, the
    /// regime in which the closed-form allocation rules are optimal.
    pub fn is_inequity_averse(&self) -> bool {
        self.unmet_weight > 0.0 && self.lambda <= 0.5 * self.unmet_weight + 1e-12
    }

    /// Evaluates the objective without range checks.
    pub fn evaluate(&self, demands: &[f64], v: &[f64]) -> f64 {
        let total: f64 = demands.iter().sum();
        let unmet: f64 = demands.iter().zip(v).map(|(d, v)| d - v).sum();
        let mut value = self.unmet_weight * unmet;
        if self.lambda != 0.0 {
            value += self.lambda / total * pairwise_abs_sum(demands, v);
        }
        value
    }
}

/// `sum_i sum_j |d_i v_j - d_j v_i|` in `O(n log n)`.
///
/// Each term equals `d_i d_j |r_j - r_i|` with `r = v / d`; after sorting by
/// ratio the double sum collapses to prefix sums.
pub fn pairwise_abs_sum(demands: &[f64], v: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..demands.len()).collect();
    let ratio = |k: usize| v[k] / demands[k];
    order.sort_by(|&a, &b| ratio(a).total_cmp(&ratio(b)));
    let mut weight_below = 0.0;
    let mut delivered_below = 0.0;
    let mut sum = 0.0;
    for &k in &order {
        sum += demands[k] * (ratio(k) * weight_below - delivered_below);
        weight_below += demands[k];
        delivered_below += v[k];
    }
    2.0 * sum
}

fn check_deliveries(inst: &Instance, v: &[f64]) -> Result<()> {
    if v.len() != inst.n {
        return Err(Error::DimensionMismatch {
            expected: inst.n,
            got: v.len(),
        });
    }
    for (k, (&value, &demand)) in v.iter().zip(&inst.demands).enumerate() {
        let tol = 1e-9 * demand.max(1.0);
        if !value.is_finite() || value < -tol || value > demand + tol {
            return Err(Error::DeliveryOutOfRange {
                shelter: k + 1,
                value,
                demand,
            });
        }
    }
    Ok(())
}

/// `D * I(v)` for the instance's `lambda`.
pub fn evaluate_iaaf(inst: &Instance, v: &[f64]) -> Result<f64> {
    check_deliveries(inst, v)?;
    Ok(Objective::iaaf(inst.lambda).evaluate(&inst.demands, v))
}

/// Mean unsatisfied demand per beneficiary, `mu`.
pub fn mean_unmet(inst: &Instance, v: &[f64]) -> Result<f64> {
    check_deliveries(inst, v)?;
    let total = inst.total_demand();
    Ok(inst.demands.iter().zip(v).map(|(d, v)| d - v).sum::<f64>() / total)
}

/// Gini's mean absolute difference of beneficiary costs, `Delta`.
pub fn gini_mean_difference(inst: &Instance, v: &[f64]) -> Result<f64> {
    check_deliveries(inst, v)?;
    let total = inst.total_demand();
    Ok(pairwise_abs_sum(&inst.demands, v) / (total * total))
}

/// Gini index `Delta / (2 mu)`; defined as 0 when every demand is met.
pub fn gini_index(inst: &Instance, v: &[f64]) -> Result<f64> {
    let mu = mean_unmet(inst, v)?;
    let delta = gini_mean_difference(inst, v)?;
    if mu <= 1e-15 {
        return Ok(0.0);
    }
    Ok(delta / (2.0 * mu))
}

/// Ordered weighted averaging weights of `mu + lambda * Delta` over `count`
/// sorted costs: `(2 / N^2) (N / 2 + lambda (2i - N - 1))`, `i = 1..=N`.
pub fn owa_weights(count: usize, lambda: f64) -> Vec<f64> {
    let n = count as f64;
    (1..=count)
        .map(|i| 2.0 / (n * n) * (n / 2.0 + lambda * (2.0 * i as f64 - n - 1.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(demands: Vec<f64>, lambda: f64) -> Instance {
        let n = demands.len();
        Instance {
            n,
            m: 1,
            capacity: 1.0,
            supply: 1.0,
            psi: 1.0,
            epsilon: 1.0,
            lambda,
            demands,
            travel: vec![vec![0.0; n + 1]; n + 1],
        }
    }

    #[test]
    fn full_coverage_is_zero() {
        let i = inst(vec![1.0, 1.0], 0.5);
        assert_eq!(evaluate_iaaf(&i, &[1.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn hand_evaluated_cases() {
        let i = inst(vec![1.0, 1.0], 0.5);
        assert!((evaluate_iaaf(&i, &[1.0, 0.0]).unwrap() - 1.5).abs() < 1e-12);
        let i = inst(vec![3.0, 1.0], 0.5);
        assert!((evaluate_iaaf(&i, &[1.5, 0.5]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gini_examples() {
        let i = inst(vec![1.0, 1.0], 0.5);
        assert!(gini_index(&i, &[0.5, 0.5]).unwrap().abs() < 1e-12);
        assert!((gini_index(&i, &[1.0, 0.0]).unwrap() - 0.5).abs() < 1e-12);
        let i = inst(vec![2.0, 2.0], 0.5);
        assert_eq!(gini_index(&i, &[2.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_vectors() {
        let i = inst(vec![1.0, 1.0], 0.5);
        assert!(matches!(
            evaluate_iaaf(&i, &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            evaluate_iaaf(&i, &[1.5, 0.0]),
            Err(Error::DeliveryOutOfRange { shelter: 1, .. })
        ));
        assert!(evaluate_iaaf(&i, &[-0.1, 0.0]).is_err());
    }

    #[test]
    fn owa_weights_sum_to_one() {
        let w = owa_weights(7, 0.5);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.windows(2).all(|p| p[0] <= p[1]));
    }
}
