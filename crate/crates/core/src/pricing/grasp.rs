//! Randomised constructive pricing with local improvement.
//!
//! Routes are built from units, the forced chains of the branching
//! constraints (single shelters when nothing is forced), so every route the
//! heuristic touches keeps forced partners adjacent.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::PricingContext;
use crate::master::{ColumnPool, PoolKey};
use crate::model::RouteDelivery;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspConfig {
    /// Restricted candidate list: units with score `<= alpha * min score`.
    pub alpha: f64,
    pub restarts: usize,
}

impl Default for GraspConfig {
    fn default() -> Self {
        Self {
            alpha: 0.8,
            restarts: 5,
        }
    }
}

/// A route as an ordered list of `(unit, reversed)`.
type Plan = Vec<(usize, bool)>;

struct Search<'c, 'a> {
    ctx: &'c PricingContext<'a>,
    units: Vec<Vec<usize>>,
    found: BTreeMap<PoolKey, (f64, RouteDelivery)>,
}

impl Search<'_, '_> {
    fn nodes(&self, plan: &Plan) -> Vec<usize> {
        let mut out = Vec::new();
        for &(u, rev) in plan {
            if rev {
                out.extend(self.units[u].iter().rev());
            } else {
                out.extend(&self.units[u]);
            }
        }
        out
    }

    /// Reduced cost of the plan, or `None` when the route is inadmissible.
    /// Negative routes are recorded.
    fn evaluate(&mut self, plan: &Plan) -> Option<f64> {
        let nodes = self.nodes(plan);
        if nodes.is_empty() {
            return Some(-self.ctx.duals.pi4);
        }
        let inst = self.ctx.inst;
        if inst.route_duration(&nodes) > inst.psi + 1e-9 * (1.0 + inst.psi) {
            return None;
        }
        if !self.ctx.constraints.route_admissible(&nodes) {
            return None;
        }
        let rd = self.ctx.column(nodes);
        let rc = self
            .ctx
            .reduced_cost_of(&rd.nodes, &rd.deliveries, rd.duration);
        if rc < -1e-7 {
            self.found.entry(ColumnPool::key(&rd)).or_insert((rc, rd));
        }
        Some(rc)
    }

    /// Best admissible way to put unit `u` into `plan` at index `slot` (or
    /// at any index when `slot` is `None`).
    fn best_insertion(
        &mut self,
        plan: &Plan,
        u: usize,
        slot: Option<usize>,
    ) -> Option<(f64, Plan)> {
        let orientations: &[bool] = if self.units[u].len() > 1 {
            &[false, true]
        } else {
            &[false]
        };
        let positions: Vec<usize> = match slot {
            Some(p) => vec![p],
            None => (0..=plan.len()).collect(),
        };
        let mut best: Option<(f64, Plan)> = None;
        for &pos in &positions {
            for &rev in orientations {
                let mut next = plan.clone();
                next.insert(pos, (u, rev));
                if let Some(rc) = self.evaluate(&next) {
                    if best.as_ref().is_none_or(|(b, _)| rc < *b) {
                        best = Some((rc, next));
                    }
                }
            }
        }
        best
    }

    fn construct(&mut self, scores: &[f64], alpha: f64, rng: &mut impl Rng) -> (f64, Plan) {
        let mut plan: Plan = Vec::new();
        let mut rc = -self.ctx.duals.pi4;
        let mut open: Vec<usize> = (0..self.units.len()).filter(|&u| scores[u] < 0.0).collect();
        while !open.is_empty() {
            let smin = open
                .iter()
                .map(|&u| scores[u])
                .fold(f64::INFINITY, f64::min);
            let rcl: Vec<usize> = open
                .iter()
                .copied()
                .filter(|&u| scores[u] <= alpha * smin)
                .collect();
            let u = rcl[rng.gen_range(0..rcl.len())];
            open.retain(|&x| x != u);
            if let Some((new_rc, next)) = self.best_insertion(&plan, u, None) {
                if new_rc <= rc {
                    rc = new_rc;
                    plan = next;
                }
            }
        }
        (rc, plan)
    }

    /// Swaps one unit of the route for an outside unit at the same place.
    fn best_exchange(&mut self, plan: &Plan) -> Option<(f64, Plan)> {
        let outside = self.outside(plan);
        let mut best: Option<(f64, Plan)> = None;
        for k in 0..plan.len() {
            let mut base = plan.clone();
            base.remove(k);
            for &u in &outside {
                if let Some((rc, next)) = self.best_insertion(&base, u, Some(k)) {
                    if best.as_ref().is_none_or(|(b, _)| rc < *b) {
                        best = Some((rc, next));
                    }
                }
            }
        }
        best
    }

    fn best_addition(&mut self, plan: &Plan) -> Option<(f64, Plan)> {
        let mut best: Option<(f64, Plan)> = None;
        for u in self.outside(plan) {
            if let Some((rc, next)) = self.best_insertion(plan, u, None) {
                if best.as_ref().is_none_or(|(b, _)| rc < *b) {
                    best = Some((rc, next));
                }
            }
        }
        best
    }

    fn outside(&self, plan: &Plan) -> Vec<usize> {
        (0..self.units.len())
            .filter(|u| !plan.iter().any(|p| p.0 == *u))
            .collect()
    }

    fn improve(&mut self, mut rc: f64, mut plan: Plan) {
        let tol = 1e-12;
        loop {
            let mut moved = false;
            if let Some((new_rc, next)) = self.best_exchange(&plan) {
                if new_rc < rc - tol {
                    rc = new_rc;
                    plan = next;
                    moved = true;
                }
            }
            if let Some((new_rc, next)) = self.best_addition(&plan) {
                if new_rc < rc - tol {
                    rc = new_rc;
                    plan = next;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
    }
}

/// Up to `ctx.max_grasp` distinct admissible columns with reduced cost below
/// `-1e-7`, sorted by reduced cost. Returns nothing when no shelter has a
/// negative score.
pub fn price_grasp(
    ctx: &PricingContext<'_>,
    cfg: &GraspConfig,
    rng: &mut impl Rng,
) -> Vec<RouteDelivery> {
    let node_scores = ctx.node_scores();
    let units = ctx.constraints.units();
    let scores: Vec<f64> = units
        .iter()
        .map(|u| u.iter().map(|&i| node_scores[i - 1]).sum())
        .collect();
    if scores.iter().all(|&s| s >= 0.0) {
        return Vec::new();
    }
    let mut search = Search {
        ctx,
        units,
        found: BTreeMap::new(),
    };
    for _ in 0..cfg.restarts.max(1) {
        let (rc, plan) = search.construct(&scores, cfg.alpha, rng);
        search.improve(rc, plan);
    }
    let mut out: Vec<(f64, PoolKey, RouteDelivery)> = search
        .found
        .into_iter()
        .map(|(k, (rc, rd))| (rc, k, rd))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out.truncate(ctx.max_grasp);
    out.into_iter().map(|(_, _, rd)| rd).collect()
}
