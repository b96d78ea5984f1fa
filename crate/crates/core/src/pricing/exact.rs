//! Exact pricing.
//!
//! For a fixed node set the delivery part of the reduced cost depends only on
//! the set, and the time part grows with the tour length, so the best column
//! for a set uses its shortest admissible tour. A Held-Karp table over all
//! subsets gives those tours once per tree node; pricing is then a scan over
//! subsets.

use super::{best_load, DeliveryRule, PricingContext};
use crate::error::{Error, Result};
use crate::model::{BranchConstraints, Instance, RouteDelivery};

/// Largest shelter count handled by the subset table.
pub const EXACT_LIMIT: usize = 20;

const NONE: u8 = u8::MAX;

/// Shortest admissible depot-to-depot tour for every shelter subset.
#[derive(Debug, Clone)]
pub struct RouteTable {
    n: usize,
    /// Bit `i - 1` of the index marks shelter `i`.
    tour: Vec<f64>,
    last: Vec<u8>,
    pred: Vec<u8>,
}

impl RouteTable {
    /// Builds the table honouring forbidden arcs, forced adjacencies and
    /// forced first/last positions; tours longer than `psi` are dropped.
    pub fn build(inst: &Instance, cons: &BranchConstraints) -> Result<Self> {
        let n = inst.n;
        if n > EXACT_LIMIT {
            return Err(Error::TooLarge {
                what: "exact pricing",
                n,
                limit: EXACT_LIMIT,
            });
        }
        let size = 1usize << n;
        let tol = 1e-9 * (1.0 + inst.psi);
        let limit = inst.psi + tol;
        let bit = |i: usize| 1usize << (i - 1);
        let partner_mask: Vec<usize> = (0..=n)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    cons.partners(i).iter().fold(0, |m, &p| m | bit(p))
                }
            })
            .collect();
        let last_mask = (1..=n)
            .filter(|&i| cons.must_be_last(i))
            .fold(0, |m, i| m | bit(i));

        let mut dp = vec![f64::INFINITY; size * n];
        let mut pred = vec![NONE; size * n];
        for w in 1..=n {
            if cons.arc_allowed(0, w) && inst.round_trip(w) <= limit {
                dp[bit(w) * n + (w - 1)] = inst.t(0, w);
            }
        }
        let mut tour = vec![f64::INFINITY; size];
        let mut last = vec![NONE; size];
        for mask in 1..size {
            for u in 1..=n {
                if mask & bit(u) == 0 {
                    continue;
                }
                let cur = dp[mask * n + (u - 1)];
                if !cur.is_finite() {
                    continue;
                }
                let missing = partner_mask[u] & !mask;
                // Close the route at u.
                if missing == 0 && cons.arc_allowed(u, 0) && last_mask & mask & !bit(u) == 0 {
                    let total = cur + inst.t(u, 0);
                    if total <= limit && total < tour[mask] {
                        tour[mask] = total;
                        last[mask] = u as u8;
                    }
                }
                if cons.must_be_last(u) || missing.count_ones() > 1 {
                    continue;
                }
                for w in 1..=n {
                    if mask & bit(w) != 0 || (missing != 0 && missing != bit(w)) {
                        continue;
                    }
                    if !cons.arc_allowed(u, w) || cons.must_be_first(w) {
                        continue;
                    }
                    if partner_mask[w] & mask & !bit(u) != 0 {
                        continue;
                    }
                    let next = cur + inst.t(u, w);
                    if next + inst.t(w, 0) > limit {
                        continue;
                    }
                    let k = (mask | bit(w)) * n + (w - 1);
                    if next < dp[k] {
                        dp[k] = next;
                        pred[k] = u as u8;
                    }
                }
            }
        }
        Ok(Self {
            n,
            tour,
            last,
            pred,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tour length of the subset, infinite when no admissible tour exists.
    pub fn tour(&self, mask: usize) -> f64 {
        self.tour[mask]
    }

    /// Shelters of the shortest admissible tour of `mask`, in order.
    pub fn route(&self, mask: usize) -> Option<Vec<usize>> {
        if !self.tour[mask].is_finite() {
            return None;
        }
        let n = self.n;
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        let mut u = self.last[mask] as usize;
        while m != 0 {
            out.push(u);
            let p = self.pred[m * n + (u - 1)];
            m &= !(1usize << (u - 1));
            if p == NONE {
                break;
            }
            u = p as usize;
        }
        debug_assert_eq!(m, 0);
        out.reverse();
        Some(out)
    }

    /// Subsets with an admissible tour.
    pub fn feasible_masks(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.tour.len()).filter(|&m| self.tour[m].is_finite())
    }
}

/// Result of one exact pricing round.
#[derive(Debug, Clone)]
pub struct ExactOutcome {
    /// Up to `max_exact` columns with reduced cost below `-1e-7`, best first.
    pub columns: Vec<RouteDelivery>,
    /// Smallest reduced cost over all admissible columns; infinite when no
    /// admissible route exists.
    pub min_reduced_cost: f64,
}

/// Scans every subset with an admissible tour and returns the best columns.
pub fn price_exact(ctx: &PricingContext<'_>, table: &RouteTable) -> ExactOutcome {
    let inst = ctx.inst;
    let n = inst.n;
    let size = 1usize << n;
    let duals = ctx.duals;
    let coef = ctx.time_coefficient();

    let mut demand = vec![0.0; size];
    let mut kd = vec![0.0; size];
    let mut pi3 = vec![0.0; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let i = low + 1;
        demand[mask] = demand[rest] + inst.demand(i);
        kd[mask] = kd[rest] + ctx.kappa(i) * inst.demand(i);
        pi3[mask] = pi3[rest] + duals.pi3[low];
    }
    let mut by_kappa: Vec<usize> = (1..=n).collect();
    by_kappa.sort_by(|&a, &b| ctx.kappa(a).total_cmp(&ctx.kappa(b)).then(a.cmp(&b)));

    let keep = ctx.max_exact.max(1);
    let mut best: Vec<(f64, usize)> = Vec::with_capacity(keep + 1);
    let mut min_rc = f64::INFINITY;
    for mask in table.feasible_masks() {
        let delivery = match ctx.rule {
            DeliveryRule::Knapsack => {
                let mut room = inst.capacity;
                let mut value = 0.0;
                for &i in &by_kappa {
                    if mask & (1 << (i - 1)) == 0 {
                        continue;
                    }
                    if ctx.kappa(i) >= 0.0 || room <= 0.0 {
                        break;
                    }
                    let qi = inst.demand(i).min(room);
                    value += ctx.kappa(i) * qi;
                    room -= qi;
                }
                value
            }
            _ => {
                let slope = kd[mask] / demand[mask];
                best_load(ctx, demand[mask], slope) * slope
            }
        };
        let rc = delivery - pi3[mask] - duals.pi4 + coef * table.tour(mask);
        min_rc = min_rc.min(rc);
        if rc < -1e-7 && (best.len() < keep || rc < best[best.len() - 1].0) {
            let pos = best.partition_point(|&(v, _)| v <= rc);
            best.insert(pos, (rc, mask));
            best.truncate(keep);
        }
    }
    let columns = best
        .into_iter()
        .filter_map(|(_, mask)| table.route(mask))
        .map(|nodes| ctx.column(nodes))
        .collect();
    ExactOutcome {
        columns,
        min_reduced_cost: min_rc,
    }
}
