//! Column generation subproblem: find route-deliveries with negative reduced
//! cost under the current master duals.
//!
//! The reduced cost of a column with node set `S`, deliveries `q` and
//! duration `t` is
//! `sum_i kappa_i q_i - sum_{i in S} pi3_i - pi4 + (gamma/theta - pi2) t`,
//! where `kappa_i = -(pi5 + w) - sum_j (pi1_ij - pi1_ji) d_j`.

mod exact;
mod grasp;

use serde::{Deserialize, Serialize};

use crate::master::DualPrices;
use crate::model::{BranchConstraints, Instance, RouteDelivery};

pub use exact::{price_exact, RouteTable, EXACT_LIMIT};
pub use grasp::{price_grasp, GraspConfig};

/// How deliveries are chosen for a fixed node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeliveryRule {
    /// Demand-proportional, total either the vehicle capacity or within
    /// `[(C / D) D_S, min(Q, D_S)]`; the closed-form optimum over that set.
    LoadBounds,
    /// Demand-proportional, total anywhere in `[0, min(Q, D_S)]`.
    Proportional,
    /// Any `0 <= q_i <= d_i` with `sum q_i <= Q`.
    Knapsack,
}

/// Everything the pricing routines need for one column-generation round.
#[derive(Debug, Clone)]
pub struct PricingContext<'a> {
    pub inst: &'a Instance,
    pub duals: &'a DualPrices,
    pub gamma_over_theta: f64,
    pub unmet_weight: f64,
    pub constraints: &'a BranchConstraints,
    pub rule: DeliveryRule,
    pub max_grasp: usize,
    pub max_exact: usize,
    /// `kappa[i - 1]` is the delivery coefficient of shelter `i`.
    pub kappa: Vec<f64>,
}

impl<'a> PricingContext<'a> {
    pub fn new(
        inst: &'a Instance,
        duals: &'a DualPrices,
        gamma_over_theta: f64,
        unmet_weight: f64,
        constraints: &'a BranchConstraints,
        rule: DeliveryRule,
    ) -> Self {
        let n = inst.n;
        let kappa = (1..=n)
            .map(|i| {
                let pair: f64 = (1..=n)
                    .map(|j| (duals.pi1(i, j) - duals.pi1(j, i)) * inst.demand(j))
                    .sum();
                -(duals.pi5 + unmet_weight) - pair
            })
            .collect();
        Self {
            inst,
            duals,
            gamma_over_theta,
            unmet_weight,
            constraints,
            rule,
            max_grasp: 10,
            max_exact: 2,
            kappa,
        }
    }

    #[inline]
    pub fn kappa(&self, i: usize) -> f64 {
        self.kappa[i - 1]
    }

    /// Coefficient of the route duration in the reduced cost.
    #[inline]
    pub fn time_coefficient(&self) -> f64 {
        self.gamma_over_theta - self.duals.pi2
    }

    /// Node scores `kappa_i - pi3_i`.
    pub fn node_scores(&self) -> Vec<f64> {
        (1..=self.inst.n)
            .map(|i| self.kappa(i) - self.duals.pi3[i - 1])
            .collect()
    }

    /// Reduced cost of `nodes` with deliveries `q` (aligned) and duration `t`.
    pub fn reduced_cost_of(&self, nodes: &[usize], q: &[f64], t: f64) -> f64 {
        let mut rc = -self.duals.pi4 + self.time_coefficient() * t;
        for (&i, &qi) in nodes.iter().zip(q) {
            rc += self.kappa(i) * qi - self.duals.pi3[i - 1];
        }
        rc
    }

    /// Builds the column for `nodes` with deliveries from the context's rule.
    pub fn column(&self, nodes: Vec<usize>) -> RouteDelivery {
        let q = optimal_deliveries_for_route(self, &nodes);
        RouteDelivery::new(self.inst, nodes, q)
    }
}

/// Reduced cost of a column, evaluated term by term from the duals.
pub fn reduced_cost(ctx: &PricingContext<'_>, rd: &RouteDelivery) -> f64 {
    let inst = ctx.inst;
    let n = inst.n;
    let duals = ctx.duals;
    let mut q = vec![0.0; n + 1];
    for (&i, &qi) in rd.nodes.iter().zip(&rd.deliveries) {
        q[i] = qi;
    }
    let mut rc = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            rc -= (inst.demand(j) * q[i] - inst.demand(i) * q[j]) * duals.pi1(i, j);
        }
    }
    rc -= rd.duration * duals.pi2;
    for &i in &rd.nodes {
        rc -= duals.pi3[i - 1];
    }
    rc -= duals.pi4;
    for i in 1..=n {
        rc -= (duals.pi5 + ctx.unmet_weight) * q[i];
    }
    rc + ctx.gamma_over_theta * rd.duration
}

/// Route load for a node set with demand `dr` whose delivery coefficient
/// per unit of load is `slope` (that is `sum kappa_i d_i / dr`).
pub(crate) fn best_load(ctx: &PricingContext<'_>, dr: f64, slope: f64) -> f64 {
    let inst = ctx.inst;
    let (q, c, d) = (inst.capacity, inst.supply, inst.total_demand());
    match ctx.rule {
        DeliveryRule::LoadBounds => {
            if dr * c >= q * d {
                q
            } else if slope < 0.0 {
                dr.min(q)
            } else {
                c / d * dr
            }
        }
        DeliveryRule::Proportional | DeliveryRule::Knapsack => {
            if slope < 0.0 {
                dr.min(q)
            } else {
                0.0
            }
        }
    }
}

/// Deliveries (aligned with `nodes`) minimising the reduced cost for the
/// fixed node set under the context's delivery rule.
///
/// For the load-bounds rule: when `D_S / D >= Q / C` the load is `Q`;
/// otherwise the sign of `c = sum kappa_i d_i / d_min` picks the upper end
/// `min(D_S, Q)` (negative) or the lower end `(C / D) D_S`.
pub fn optimal_deliveries_for_route(ctx: &PricingContext<'_>, nodes: &[usize]) -> Vec<f64> {
    if nodes.is_empty() {
        return Vec::new();
    }
    let inst = ctx.inst;
    if ctx.rule == DeliveryRule::Knapsack {
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| {
            ctx.kappa(nodes[a])
                .total_cmp(&ctx.kappa(nodes[b]))
                .then(nodes[a].cmp(&nodes[b]))
        });
        let mut q = vec![0.0; nodes.len()];
        let mut room = inst.capacity;
        for k in order {
            let i = nodes[k];
            if ctx.kappa(i) >= 0.0 || room <= 0.0 {
                break;
            }
            q[k] = inst.demand(i).min(room);
            room -= q[k];
        }
        return q;
    }
    let dr: f64 = nodes.iter().map(|&i| inst.demand(i)).sum();
    let hat = nodes
        .iter()
        .copied()
        .min_by(|&a, &b| inst.demand(a).total_cmp(&inst.demand(b)).then(a.cmp(&b)))
        .unwrap();
    let c_hat: f64 = nodes
        .iter()
        .map(|&i| ctx.kappa(i) * inst.demand(i))
        .sum::<f64>()
        / inst.demand(hat);
    let xi = best_load(ctx, dr, c_hat);
    nodes
        .iter()
        .map(|&i| (xi * inst.demand(i) / dr).min(inst.demand(i)))
        .collect()
}
