//! Optimal delivery amounts when the routes are fixed.
//!
//! With routes fixed, only the load `xi_k` of each route matters: inside a
//! route the supply is split in proportion to demand, and the loads follow
//! from an iterative water-filling rule that caps overloaded routes at the
//! vehicle capacity and shares the rest of the supply in proportion to
//! route demand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linprog::{solve_lp, LinearProgram, RowKind};
use crate::model::{Instance, Objective};

/// Node sets of a routing, one per vehicle used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RoutePartition {
    pub node_sets: Vec<Vec<usize>>,
}

impl RoutePartition {
    /// Checks that the sets are nonempty, disjoint and cover every shelter.
    pub fn new(inst: &Instance, node_sets: Vec<Vec<usize>>) -> Result<Self> {
        let partition = Self { node_sets };
        partition.validate(inst)?;
        Ok(partition)
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.node_sets.is_empty() {
            return Err(Error::InvalidPartition("partition has no routes".into()));
        }
        let mut seen = vec![false; inst.n + 1];
        for (k, set) in self.node_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidPartition(format!("route {k} is empty")));
            }
            for &i in set {
                if i == 0 || i > inst.n {
                    return Err(Error::InvalidPartition(format!(
                        "node {i} is not a shelter"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!(
                        "shelter {i} appears twice"
                    )));
                }
            }
        }
        if let Some(i) = (1..=inst.n).find(|&i| !seen[i]) {
            return Err(Error::InvalidPartition(format!(
                "shelter {i} is not covered"
            )));
        }
        Ok(())
    }

    /// `D_k` for every set.
    pub fn demand_totals(&self, inst: &Instance) -> Vec<f64> {
        self.node_sets
            .iter()
            .map(|s| s.iter().map(|&i| inst.demand(i)).sum())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationResult {
    pub v: Vec<f64>,
    pub xi: Vec<f64>,
    pub objective: f64,
}

/// Route loads for route demands `totals`, capacity `q` and supply `c`.
///
/// Each round computes the remaining demand `D'` and supply
/// `C' = min(C - fixed, D')`; routes with `D_k / D' > q / C'` are capped at
/// `q` and removed. When no route exceeds the ratio, the remaining routes
/// get `(C' / D') D_k`. Ties are not capped.
pub fn route_loads(totals: &[f64], q: f64, c: f64) -> Vec<f64> {
    let mut xi = vec![0.0; totals.len()];
    let mut open: Vec<usize> = (0..totals.len()).collect();
    let mut fixed = 0.0;
    while !open.is_empty() {
        let d_rem: f64 = open.iter().map(|&k| totals[k]).sum();
        let c_rem = (c - fixed).clamp(0.0, d_rem);
        let before = open.len();
        open.retain(|&k| {
            if totals[k] * c_rem > q * d_rem {
                xi[k] = q;
                fixed += q;
                false
            } else {
                true
            }
        });
        if open.len() == before {
            let share = if d_rem > 0.0 { c_rem / d_rem } else { 0.0 };
            for &k in &open {
                xi[k] = share * totals[k];
            }
            break;
        }
        assert!(open.len() < before, "capped route set must shrink");
    }
    xi
}

/// Demand-proportional deliveries for the given route loads.
pub fn proportional_deliveries(
    inst: &Instance,
    partition: &RoutePartition,
    xi: &[f64],
) -> Vec<f64> {
    let totals = partition.demand_totals(inst);
    let mut v = vec![0.0; inst.n];
    for ((set, &load), &total) in partition.node_sets.iter().zip(xi).zip(&totals) {
        for &i in set {
            v[i - 1] = (load * inst.demand(i) / total).min(inst.demand(i));
        }
    }
    v
}

/// Optimal deliveries for a fixed routing under the instance's IAAF.
pub fn allocate_optimal(inst: &Instance, partition: &RoutePartition) -> Result<AllocationResult> {
    partition.validate(inst)?;
    let totals = partition.demand_totals(inst);
    let xi = route_loads(&totals, inst.capacity, inst.supply);
    let v = proportional_deliveries(inst, partition, &xi);
    let objective = Objective::iaaf(inst.lambda).evaluate(&inst.demands, &v);
    Ok(AllocationResult { v, xi, objective })
}

/// Optimal deliveries for a fixed routing under `objective`: the closed form
/// when the objective is inequity averse, the LP otherwise.
pub fn allocate(
    inst: &Instance,
    partition: &RoutePartition,
    objective: &Objective,
) -> Result<AllocationResult> {
    if !objective.is_inequity_averse() {
        return allocate_lp(inst, partition, objective);
    }
    partition.validate(inst)?;
    let totals = partition.demand_totals(inst);
    let xi = route_loads(&totals, inst.capacity, inst.supply);
    let v = proportional_deliveries(inst, partition, &xi);
    let value = objective.evaluate(&inst.demands, &v);
    Ok(AllocationResult {
        v,
        xi,
        objective: value,
    })
}

/// The allocation problem as an explicit LP over `v` with the absolute
/// differences split into positive and negative parts; solved with the
/// instance's IAAF weights.
pub fn allocate_oracle(inst: &Instance, partition: &RoutePartition) -> Result<AllocationResult> {
    allocate_lp(inst, partition, &Objective::iaaf(inst.lambda))
}

/// As [`allocate_oracle`] with arbitrary objective weights.
pub fn allocate_lp(
    inst: &Instance,
    partition: &RoutePartition,
    objective: &Objective,
) -> Result<AllocationResult> {
    partition.validate(inst)?;
    let (lp, n) = allocation_lp(inst, partition, objective);
    let res = solve_lp(&lp);
    if !res.is_optimal() {
        return Err(Error::Lp(format!(
            "allocation LP ended with {:?}",
            res.status
        )));
    }
    let v: Vec<f64> = (0..n)
        .map(|i| res.x[i].clamp(0.0, inst.demands[i]))
        .collect();
    let xi = partition
        .node_sets
        .iter()
        .map(|s| s.iter().map(|&i| v[i - 1]).sum())
        .collect();
    let value = objective.evaluate(&inst.demands, &v);
    Ok(AllocationResult {
        v,
        xi,
        objective: value,
    })
}

/// LP over `v_1..v_n` (indices `0..n`) and pair variables; the objective
/// omits the constant `w * D`.
pub(crate) fn allocation_lp(
    inst: &Instance,
    partition: &RoutePartition,
    objective: &Objective,
) -> (LinearProgram, usize) {
    let n = inst.n;
    let total = inst.total_demand();
    let d = &inst.demands;
    let mut lp = LinearProgram::new();
    for i in 0..n {
        lp.add_var(-objective.unmet_weight, 0.0, d[i]);
    }
    let pair_cost = 2.0 * objective.lambda / total;
    for i in 0..n {
        for j in i + 1..n {
            let plus = lp.add_var(pair_cost, 0.0, f64::INFINITY);
            let minus = lp.add_var(pair_cost, 0.0, f64::INFINITY);
            lp.add_row(
                vec![(j, d[i]), (i, -d[j]), (plus, -1.0), (minus, 1.0)],
                RowKind::Eq,
                0.0,
            );
        }
    }
    for set in &partition.node_sets {
        lp.add_row(
            set.iter().map(|&i| (i - 1, 1.0)).collect(),
            RowKind::Le,
            inst.capacity,
        );
    }
    lp.add_row((0..n).map(|i| (i, 1.0)).collect(), RowKind::Le, inst.supply);
    (lp, n)
}

/// True when every route load is either the vehicle capacity or lies between
/// its equal-share value `(C / D) D_k` and its demand `D_k`.
pub fn check_corollary1(
    inst: &Instance,
    partition: &RoutePartition,
    result: &AllocationResult,
) -> bool {
    let total = inst.total_demand();
    let totals = partition.demand_totals(inst);
    result.xi.iter().zip(&totals).all(|(&xi, &dk)| {
        let tol = 1e-9 * (1.0 + dk);
        let at_capacity = (xi - inst.capacity).abs() <= tol;
        let in_band = xi >= inst.supply / total * dk - tol && xi <= dk + tol;
        at_capacity || in_band
    })
}
