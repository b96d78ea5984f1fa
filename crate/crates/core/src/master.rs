//! Restricted master problem over route-delivery columns.
//!
//! Variable layout: `tau+` for the `n(n-1)/2` shelter pairs `i < j`, then
//! `tau-`, then one `y_r` per pool column, then (feasibility mode only) one
//! artificial per cover row. Row layout: the pair rows, the total-time row,
//! the `n` cover rows, the fleet row and the supply row. The pair `(j, i)`
//! would repeat the row of `(i, j)` up to sign, so each unordered pair
//! carries twice the weight instead.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::allocation::{allocate, RoutePartition};
use crate::error::{Error, Result};
use crate::linprog::{
    solve_lp_from, Basis, BasisVar, LinearProgram, LpStatus, RowKind, SimplexOptions,
};
use crate::model::{Instance, Objective, RouteDelivery, Solution};

pub type PoolKey = (u64, Vec<i64>);

/// Deduplicated set of route-delivery columns.
#[derive(Debug, Clone, Default)]
pub struct ColumnPool {
    columns: Vec<RouteDelivery>,
    masks: Vec<u64>,
    index: HashMap<PoolKey, usize>,
}

impl ColumnPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[RouteDelivery] {
        &self.columns
    }

    pub fn get(&self, r: usize) -> &RouteDelivery {
        &self.columns[r]
    }

    pub fn mask(&self, r: usize) -> u64 {
        self.masks[r]
    }

    /// Node set plus deliveries rounded to 1e-9, in shelter order.
    pub fn key(rd: &RouteDelivery) -> PoolKey {
        let mut pairs: Vec<(usize, f64)> = rd
            .nodes
            .iter()
            .copied()
            .zip(rd.deliveries.iter().copied())
            .collect();
        pairs.sort_by_key(|p| p.0);
        let q = pairs
            .iter()
            .map(|&(_, q)| (q * 1e9).round() as i64)
            .collect();
        (rd.node_mask(), q)
    }

    /// Adds a column. A column whose key is already present only replaces the
    /// stored one when it is strictly shorter. Returns whether the pool
    /// changed.
    pub fn add(&mut self, rd: RouteDelivery) -> bool {
        let key = Self::key(&rd);
        if let Some(&r) = self.index.get(&key) {
            if rd.duration < self.columns[r].duration - 1e-9 {
                self.columns[r] = rd;
                return true;
            }
            return false;
        }
        self.index.insert(key, self.columns.len());
        self.masks.push(rd.node_mask());
        self.columns.push(rd);
        true
    }

    /// True when a column with the same key and no longer duration is
    /// stored, so adding `rd` would not change the pool.
    pub fn contains(&self, rd: &RouteDelivery) -> bool {
        self.index
            .get(&Self::key(rd))
            .is_some_and(|&r| self.columns[r].duration <= rd.duration + 1e-9)
    }

    /// Columns satisfying `keep`, in their original order.
    pub fn filtered(&self, mut keep: impl FnMut(&RouteDelivery) -> bool) -> ColumnPool {
        let mut out = ColumnPool::new();
        for rd in &self.columns {
            if keep(rd) {
                out.add(rd.clone());
            }
        }
        out
    }
}

/// Row multipliers of the restricted master.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPrices {
    pub n: usize,
    /// Pair rows, index `(i - 1) * n + (j - 1)`; zero unless `i < j`.
    pub pi1: Vec<f64>,
    pub pi2: f64,
    /// Cover rows, index `i - 1`.
    pub pi3: Vec<f64>,
    pub pi4: f64,
    pub pi5: f64,
}

impl DualPrices {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            pi1: vec![0.0; n * n],
            pi2: 0.0,
            pi3: vec![0.0; n],
            pi4: 0.0,
            pi5: 0.0,
        }
    }

    #[inline]
    pub fn pi1(&self, i: usize, j: usize) -> f64 {
        self.pi1[(i - 1) * self.n + (j - 1)]
    }
}

/// Objective and epsilon-constraint data of one master solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmpParams {
    pub epsilon: f64,
    pub gamma: f64,
    pub theta: f64,
    pub objective: Objective,
}

impl RmpParams {
    pub fn gamma_over_theta(&self) -> f64 {
        self.gamma / self.theta
    }
}

/// Augmented objective `f(v) - gamma (epsilon - T) / theta`.
pub fn augmented_value(inst: &Instance, params: &RmpParams, v: &[f64], total_time: f64) -> f64 {
    params.objective.evaluate(&inst.demands, v)
        - params.gamma * (params.epsilon - total_time) / params.theta
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RmpMode {
    /// The master objective.
    Optimize,
    /// Zero costs plus a unit-cost artificial on every cover row.
    Feasibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RmpLayout {
    pub n: usize,
    pub columns: usize,
    pub artificial: bool,
}

impl RmpLayout {
    /// Number of pair rows.
    pub fn pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Pair row of shelters `i < j` (1-based).
    pub fn pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        let (i, j) = (i - 1, j - 1);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn y(&self, r: usize) -> usize {
        2 * self.pairs() + r
    }

    pub fn art(&self, i: usize) -> usize {
        2 * self.pairs() + self.columns + i
    }

    pub fn time_row(&self) -> usize {
        self.pairs()
    }

    pub fn cover_row(&self, i: usize) -> usize {
        self.pairs() + 1 + i
    }

    pub fn fleet_row(&self) -> usize {
        self.pairs() + self.n + 1
    }

    pub fn supply_row(&self) -> usize {
        self.pairs() + self.n + 2
    }

    /// Maps a basis of an LP with layout `from` onto this layout. Pool
    /// columns must keep their indices; columns beyond `self.columns` are
    /// dropped and the basis is then rejected by the solver.
    pub fn translate(&self, from: &RmpLayout, basis: &Basis) -> Basis {
        let nn2 = 2 * self.pairs();
        let map = |j: usize| -> Option<BasisVar> {
            if j < nn2 {
                Some(BasisVar::Structural(j))
            } else if j < nn2 + from.columns {
                let r = j - nn2;
                (r < self.columns).then(|| BasisVar::Structural(self.y(r)))
            } else {
                let i = j - nn2 - from.columns;
                Some(if self.artificial {
                    BasisVar::Structural(self.art(i))
                } else {
                    BasisVar::Artificial(self.cover_row(i))
                })
            }
        };
        let basic = basis
            .basic
            .iter()
            .filter_map(|&bv| match bv {
                BasisVar::Structural(j) => map(j),
                other => Some(other),
            })
            .collect();
        let at_upper = basis
            .at_upper
            .iter()
            .filter_map(|&j| match map(j) {
                Some(BasisVar::Structural(k)) => Some(k),
                _ => None,
            })
            .collect();
        Basis { basic, at_upper }
    }
}

#[derive(Debug, Clone)]
pub struct Rmp {
    pub lp: LinearProgram,
    /// Added to the LP optimum to obtain the master objective value.
    pub constant: f64,
    pub layout: RmpLayout,
}

impl Rmp {
    pub fn var_names(&self) -> Vec<String> {
        let n = self.layout.n;
        let mut names = Vec::with_capacity(self.lp.num_vars());
        for sign in ["p", "m"] {
            for i in 1..=n {
                for j in i + 1..=n {
                    names.push(format!("tau{sign}_{i}_{j}"));
                }
            }
        }
        names.extend((0..self.layout.columns).map(|r| format!("y_{r}")));
        if self.layout.artificial {
            names.extend((1..=n).map(|i| format!("art_{i}")));
        }
        names
    }

    pub fn row_names(&self) -> Vec<String> {
        let n = self.layout.n;
        let mut names = Vec::with_capacity(self.lp.num_rows());
        for i in 1..=n {
            for j in i + 1..=n {
                names.push(format!("gini_{i}_{j}"));
            }
        }
        names.push("time".into());
        names.extend((1..=n).map(|i| format!("cover_{i}")));
        names.push("fleet".into());
        names.push("supply".into());
        names
    }

    /// The master in CPLEX LP text format.
    pub fn to_lp_text(&self) -> String {
        self.lp.to_lp_text(&self.var_names(), &self.row_names())
    }
}

/// Builds the LP relaxation of the master over `pool`.
pub fn build_rmp(
    inst: &Instance,
    pool: &ColumnPool,
    params: &RmpParams,
    mode: RmpMode,
) -> Result<Rmp> {
    if !(params.theta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "theta must be positive, got {}",
            params.theta
        )));
    }
    let n = inst.n;
    let d = &inst.demands;
    let total = inst.total_demand();
    let optimize = mode == RmpMode::Optimize;
    let layout = RmpLayout {
        n,
        columns: pool.len(),
        artificial: !optimize,
    };
    let mut lp = LinearProgram::new();
    let tau_cost = if optimize {
        2.0 * params.objective.lambda / total
    } else {
        0.0
    };
    let pairs = layout.pairs();
    for _ in 0..2 * pairs {
        lp.add_var(tau_cost, 0.0, f64::INFINITY);
    }
    let got = params.gamma_over_theta();
    let w = params.objective.unmet_weight;
    for rd in pool.columns() {
        let cost = if optimize {
            -w * rd.total_delivery() + got * rd.duration
        } else {
            0.0
        };
        lp.add_var(cost, 0.0, f64::INFINITY);
    }
    if !optimize {
        for _ in 0..n {
            lp.add_var(1.0, 0.0, f64::INFINITY);
        }
    }

    // Dense per-column delivery vectors for the pair rows.
    let qs: Vec<Vec<f64>> = pool
        .columns()
        .iter()
        .map(|rd| {
            let mut q = vec![0.0; n];
            for (&i, &qi) in rd.nodes.iter().zip(&rd.deliveries) {
                q[i - 1] = qi;
            }
            q
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let k = layout.pair(i + 1, j + 1);
            let mut coeffs = vec![(k, 1.0), (pairs + k, -1.0)];
            for (r, q) in qs.iter().enumerate() {
                let a = d[j] * q[i] - d[i] * q[j];
                if a != 0.0 {
                    coeffs.push((layout.y(r), a));
                }
            }
            lp.add_row(coeffs, RowKind::Eq, 0.0);
        }
    }
    lp.add_row(
        pool.columns()
            .iter()
            .enumerate()
            .map(|(r, rd)| (layout.y(r), rd.duration))
            .collect(),
        RowKind::Le,
        params.epsilon,
    );
    for i in 1..=n {
        let mut coeffs: Vec<(usize, f64)> = pool
            .columns()
            .iter()
            .enumerate()
            .filter(|(r, _)| pool.mask(*r) & (1u64 << (i - 1)) != 0)
            .map(|(r, _)| (layout.y(r), 1.0))
            .collect();
        if !optimize {
            coeffs.push((layout.art(i - 1), 1.0));
        }
        lp.add_row(coeffs, RowKind::Eq, 1.0);
    }
    lp.add_row(
        (0..pool.len()).map(|r| (layout.y(r), 1.0)).collect(),
        RowKind::Le,
        inst.m as f64,
    );
    lp.add_row(
        pool.columns()
            .iter()
            .enumerate()
            .map(|(r, rd)| (layout.y(r), rd.total_delivery()))
            .collect(),
        RowKind::Le,
        inst.supply,
    );
    let constant = if optimize {
        w * total - params.gamma * params.epsilon / params.theta
    } else {
        0.0
    };
    Ok(Rmp {
        lp,
        constant,
        layout,
    })
}

#[derive(Debug, Clone)]
pub struct RmpSolution {
    pub status: LpStatus,
    /// LP optimum plus the constant; the node bound in optimize mode.
    pub bound: f64,
    pub y: Vec<f64>,
    /// Sum of artificials (feasibility mode).
    pub artificial: f64,
    pub duals: DualPrices,
    pub basis: Option<Basis>,
    pub layout: RmpLayout,
}

impl RmpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Builds and solves the master, optionally warm-started from a basis of a
/// previous solve (translated to the current layout).
pub fn solve_rmp(
    inst: &Instance,
    pool: &ColumnPool,
    params: &RmpParams,
    mode: RmpMode,
    warm: Option<(&RmpLayout, &Basis)>,
) -> Result<RmpSolution> {
    let rmp = build_rmp(inst, pool, params, mode)?;
    Ok(solve_built(&rmp, warm))
}

pub(crate) fn solve_built(rmp: &Rmp, warm: Option<(&RmpLayout, &Basis)>) -> RmpSolution {
    let layout = rmp.layout;
    let basis = warm.map(|(from, b)| layout.translate(from, b));
    let mut res = solve_lp_from(&rmp.lp, basis.as_ref(), &SimplexOptions::default());
    if basis.is_some()
        && matches!(
            res.status,
            LpStatus::IterationLimit | LpStatus::NumericalFailure
        )
    {
        res = solve_lp_from(&rmp.lp, None, &SimplexOptions::default());
    }
    let n = layout.n;
    let mut duals = DualPrices::zero(n);
    let mut y = vec![0.0; layout.columns];
    let mut artificial = 0.0;
    if res.is_optimal() {
        for i in 1..=n {
            for j in i + 1..=n {
                duals.pi1[(i - 1) * n + (j - 1)] = res.duals[layout.pair(i, j)];
            }
        }
        duals.pi2 = res.duals[layout.time_row()];
        for i in 0..n {
            duals.pi3[i] = res.duals[layout.cover_row(i)];
        }
        duals.pi4 = res.duals[layout.fleet_row()];
        duals.pi5 = res.duals[layout.supply_row()];
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = res.x[layout.y(r)];
        }
        if layout.artificial {
            artificial = (0..n).map(|i| res.x[layout.art(i)]).sum();
        }
    }
    RmpSolution {
        status: res.status,
        bound: res.objective + rmp.constant,
        y,
        artificial,
        duals,
        basis: res.basis,
        layout,
    }
}

/// Best routing assembled from pool routes by the restricted integer master.
#[derive(Debug, Clone)]
pub struct IntegerMasterResult {
    pub sequences: Vec<Vec<usize>>,
    pub solution: Solution,
    /// Augmented objective with re-optimised deliveries.
    pub value: f64,
    /// False when `max_steps` cut the search short.
    pub complete: bool,
}

/// Exact search over sets of disjoint pool routes that cover every shelter
/// with at most `m` routes and total duration within `params.epsilon`.
/// Deliveries are re-optimised by [`allocate`] for each routing and only the
/// shortest stored tour of each node set is used. Routings not below
/// `cutoff` are discarded. The search visits at most `max_steps` partial
/// routings.
pub fn solve_restricted_integer_master(
    inst: &Instance,
    pool: &ColumnPool,
    params: &RmpParams,
    max_steps: usize,
    cutoff: Option<f64>,
) -> Result<Option<IntegerMasterResult>> {
    let mut shortest: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
    for (r, rd) in pool.columns().iter().enumerate() {
        let entry = shortest.entry(pool.mask(r)).or_insert((rd.duration, r));
        if rd.duration < entry.0 {
            *entry = (rd.duration, r);
        }
    }
    // Routes grouped by their lowest shelter, shortest first.
    let mut by_low: Vec<Vec<(u64, f64, usize)>> = vec![Vec::new(); inst.n];
    for (&mask, &(dur, r)) in &shortest {
        by_low[mask.trailing_zeros() as usize].push((mask, dur, r));
    }
    for list in &mut by_low {
        list.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    }
    let full = if inst.n == 64 {
        u64::MAX
    } else {
        (1u64 << inst.n) - 1
    };
    let mut search = Search {
        inst,
        pool,
        params,
        by_low,
        eps: params.epsilon + 1e-9 * (1.0 + params.epsilon.abs()),
        steps: 0,
        max_steps,
        best: cutoff.map(|c| (c, Vec::new())),
        found: false,
    };
    search.descend(full, 0.0, &mut Vec::new())?;
    let complete = search.steps < max_steps;
    if !search.found {
        return Ok(None);
    }
    let (_, columns) = search.best.expect("found implies a best routing");
    let sequences: Vec<Vec<usize>> = columns.iter().map(|&r| pool.get(r).nodes.clone()).collect();
    let partition = RoutePartition::new(inst, sequences.clone())?;
    let alloc = allocate(inst, &partition, &params.objective)?;
    let routes: Vec<RouteDelivery> = sequences
        .iter()
        .map(|nodes| {
            let q = nodes.iter().map(|&i| alloc.v[i - 1]).collect();
            RouteDelivery::new(inst, nodes.clone(), q)
        })
        .collect();
    let solution = Solution::from_routes(inst, routes);
    let value = augmented_value(inst, params, &solution.deliveries, solution.total_time);
    Ok(Some(IntegerMasterResult {
        sequences,
        solution,
        value,
        complete,
    }))
}

struct Search<'a> {
    inst: &'a Instance,
    pool: &'a ColumnPool,
    params: &'a RmpParams,
    by_low: Vec<Vec<(u64, f64, usize)>>,
    eps: f64,
    steps: usize,
    max_steps: usize,
    best: Option<(f64, Vec<usize>)>,
    found: bool,
}

impl Search<'_> {
    fn descend(&mut self, uncovered: u64, time: f64, chosen: &mut Vec<usize>) -> Result<()> {
        if uncovered == 0 {
            let sets = chosen
                .iter()
                .map(|&r| self.pool.get(r).nodes.clone())
                .collect();
            let alloc = allocate(
                self.inst,
                &RoutePartition { node_sets: sets },
                &self.params.objective,
            )?;
            let value = augmented_value(self.inst, self.params, &alloc.v, time);
            if self
                .best
                .as_ref()
                .is_none_or(|b| value < b.0 - 1e-12 * (1.0 + value.abs()))
            {
                self.best = Some((value, chosen.clone()));
                self.found = true;
            }
            return Ok(());
        }
        if chosen.len() == self.inst.m {
            return Ok(());
        }
        let low = uncovered.trailing_zeros() as usize;
        for k in 0..self.by_low[low].len() {
            if self.steps >= self.max_steps {
                return Ok(());
            }
            let (mask, dur, r) = self.by_low[low][k];
            if mask & !uncovered != 0 || time + dur > self.eps {
                continue;
            }
            self.steps += 1;
            chosen.push(r);
            self.descend(uncovered & !mask, time + dur, chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}
