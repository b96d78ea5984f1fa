//! Branch-and-price over the route-delivery master.
//!
//! Each tree node runs column generation (heuristic pricing first, exact
//! pricing to prove convergence), branches on the aggregated arc value
//! closest to one half and is explored best-bound first. Feasible routings
//! come from the construction heuristics, from nodes whose arc values are
//! integral and from a periodic integer solve over the column pool.

mod branching;
mod brute;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::allocation::{allocate, RoutePartition};
use crate::construction::{
    clarke_wright, is_feasible_routing, routes_to_solution, tabu_search, TabuConfig,
};
use crate::error::{Error, Result};
use crate::linprog::LpStatus;
use crate::master::{
    augmented_value, solve_restricted_integer_master, solve_rmp, ColumnPool, DualPrices, RmpMode,
    RmpParams,
};
use crate::model::{BranchConstraints, BranchObject, Instance, RouteDelivery, Solution};
use crate::pricing::{
    price_exact, price_grasp, DeliveryRule, GraspConfig, PricingContext, RouteTable, EXACT_LIMIT,
};

pub use branching::{aggregate_arc_values, branch, filter_pool, select_branching_object};
pub use brute::feasible_routings;
pub use brute::{brute_force_solve, BRUTE_FORCE_LIMIT};

/// Reduced-cost threshold below which a column is considered improving.
pub const RC_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BnpConfig {
    /// A restricted integer master is solved every `chi` processed nodes.
    pub chi: usize,
    /// Relative gap `(UB - LB) / UB` at which the search stops.
    pub gap_tolerance: f64,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    pub grasp: GraspConfig,
    pub use_grasp: bool,
    pub use_tabu: bool,
    /// When false, pricing may choose any deliveries within capacity and
    /// demand instead of the demand-proportional structured loads.
    pub valid_inequalities: bool,
    /// Partial routings visited per restricted integer master.
    pub integer_master_steps: usize,
    pub max_cg_iterations: usize,
}

impl Default for BnpConfig {
    fn default() -> Self {
        Self {
            chi: 2,
            gap_tolerance: 1e-4,
            time_limit: None,
            seed: 0,
            grasp: GraspConfig::default(),
            use_grasp: true,
            use_tabu: true,
            valid_inequalities: true,
            integer_master_steps: 200_000,
            max_cg_iterations: 100_000,
        }
    }
}

impl BnpConfig {
    pub fn delivery_rule(&self, params: &RmpParams) -> DeliveryRule {
        if !self.valid_inequalities {
            DeliveryRule::Knapsack
        } else if params.objective.is_inequity_averse() {
            DeliveryRule::LoadBounds
        } else {
            DeliveryRule::Proportional
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CgStatus {
    Optimal,
    Infeasible,
    IterationLimit,
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub status: CgStatus,
    /// Master objective at the last solve; a node lower bound only when
    /// `status` is `Optimal`.
    pub bound: f64,
    pub y: Vec<f64>,
    pub duals: DualPrices,
    /// Minimum reduced cost from the last exact pricing call.
    pub min_reduced_cost: f64,
    pub iterations: usize,
    pub columns_exact: usize,
    pub columns_grasp: usize,
    /// Columns added to the pool, in insertion order.
    pub added: Vec<RouteDelivery>,
}

/// Settings shared by every column-generation call of one search.
#[derive(Debug, Clone, Copy)]
pub struct CgSettings {
    pub rule: DeliveryRule,
    pub use_grasp: bool,
    pub grasp: GraspConfig,
    pub max_iterations: usize,
    pub deadline: Option<Instant>,
}

enum Priced {
    Columns(Vec<RouteDelivery>, bool),
    Converged(f64),
}

fn price(
    ctx: &PricingContext<'_>,
    table: &RouteTable,
    pool: &ColumnPool,
    settings: &CgSettings,
    rng: &mut ChaCha8Rng,
) -> Priced {
    if settings.use_grasp {
        let cols: Vec<RouteDelivery> = price_grasp(ctx, &settings.grasp, rng)
            .into_iter()
            .filter(|c| !pool.contains(c))
            .collect();
        if !cols.is_empty() {
            return Priced::Columns(cols, false);
        }
    }
    let out = price_exact(ctx, table);
    if out.min_reduced_cost >= -RC_TOLERANCE {
        return Priced::Converged(out.min_reduced_cost);
    }
    let cols: Vec<RouteDelivery> = out
        .columns
        .into_iter()
        .filter(|c| !pool.contains(c))
        .collect();
    if cols.is_empty() {
        // Negative reduced cost only through round-off on an existing column.
        return Priced::Converged(out.min_reduced_cost);
    }
    Priced::Columns(cols, true)
}

/// Column generation at one tree node. A first phase with artificial cover
/// variables runs when the pool does not support a feasible master; the
/// node is infeasible when no column can drive the artificials out. The
/// second phase stops when exact pricing finds no column with reduced cost
/// below `-RC_TOLERANCE`.
pub fn column_generation(
    inst: &Instance,
    pool: &mut ColumnPool,
    params: &RmpParams,
    cons: &BranchConstraints,
    table: &RouteTable,
    settings: &CgSettings,
    rng: &mut ChaCha8Rng,
) -> Result<CgOutcome> {
    let mut out = CgOutcome {
        status: CgStatus::Optimal,
        bound: f64::INFINITY,
        y: Vec::new(),
        duals: DualPrices::zero(inst.n),
        min_reduced_cost: f64::NEG_INFINITY,
        iterations: 0,
        columns_exact: 0,
        columns_grasp: 0,
        added: Vec::new(),
    };
    let out_of_time = || settings.deadline.is_some_and(|d| Instant::now() >= d);
    let add = |pool: &mut ColumnPool,
               cols: Vec<RouteDelivery>,
               exact: bool,
               out: &mut CgOutcome|
     -> bool {
        let mut any = false;
        for c in cols {
            if pool.add(c.clone()) {
                any = true;
                out.added.push(c);
                if exact {
                    out.columns_exact += 1;
                } else {
                    out.columns_grasp += 1;
                }
            }
        }
        any
    };

    let mut sol = solve_rmp(inst, pool, params, RmpMode::Optimize, None)?;
    if sol.status == LpStatus::Infeasible {
        let mut warm = None;
        loop {
            let phase1 = solve_rmp(
                inst,
                pool,
                params,
                RmpMode::Feasibility,
                warm.as_ref().map(|(l, b)| (l, b)),
            )?;
            if !phase1.is_optimal() {
                return Err(Error::Lp(format!(
                    "feasibility master ended with {:?}",
                    phase1.status
                )));
            }
            if phase1.artificial <= 1e-9 {
                break;
            }
            if out_of_time() {
                out.status = CgStatus::TimeLimit;
                return Ok(out);
            }
            if out.iterations >= settings.max_iterations {
                out.status = CgStatus::IterationLimit;
                return Ok(out);
            }
            out.iterations += 1;
            let ctx = PricingContext::new(inst, &phase1.duals, 0.0, 0.0, cons, settings.rule);
            match price(&ctx, table, pool, settings, rng) {
                Priced::Converged(rc) => {
                    out.min_reduced_cost = rc;
                    out.status = CgStatus::Infeasible;
                    return Ok(out);
                }
                Priced::Columns(cols, exact) => {
                    if !add(pool, cols, exact, &mut out) {
                        out.status = CgStatus::Infeasible;
                        return Ok(out);
                    }
                }
            }
            warm = phase1.basis.map(|b| (phase1.layout, b));
        }
        sol = solve_rmp(inst, pool, params, RmpMode::Optimize, None)?;
    }
    loop {
        match sol.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => {
                out.status = CgStatus::Infeasible;
                return Ok(out);
            }
            other => return Err(Error::Lp(format!("master ended with {other:?}"))),
        }
        out.bound = sol.bound;
        out.y = sol.y.clone();
        out.duals = sol.duals.clone();
        if out_of_time() {
            out.status = CgStatus::TimeLimit;
            return Ok(out);
        }
        if out.iterations >= settings.max_iterations {
            out.status = CgStatus::IterationLimit;
            return Ok(out);
        }
        let ctx = PricingContext::new(
            inst,
            &sol.duals,
            params.gamma_over_theta(),
            params.objective.unmet_weight,
            cons,
            settings.rule,
        );
        match price(&ctx, table, pool, settings, rng) {
            Priced::Converged(rc) => {
                out.min_reduced_cost = rc;
                return Ok(out);
            }
            Priced::Columns(cols, exact) => {
                out.iterations += 1;
                if !add(pool, cols, exact, &mut out) {
                    return Ok(out);
                }
            }
        }
        let warm = sol.basis.take().map(|b| (sol.layout, b));
        sol = solve_rmp(
            inst,
            pool,
            params,
            RmpMode::Optimize,
            warm.as_ref().map(|(l, b)| (l, b)),
        )?;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BnpStatus {
    /// Search finished or reached the gap tolerance.
    Optimal,
    /// No routing satisfies the constraints.
    Infeasible,
    /// Stopped by the time limit or the column-generation iteration limit.
    TimeLimit,
}

/// How a processed node ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeOutcome {
    Infeasible,
    /// Bound not below the incumbent.
    Pruned,
    /// Arc values integral; the routing was evaluated directly.
    Integral,
    Branched,
    Stopped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub depth: usize,
    pub parent_bound: f64,
    pub bound: f64,
    /// Minimum reduced cost of the final exact pricing call.
    pub min_reduced_cost: f64,
    pub outcome: NodeOutcome,
    pub branched_on: Option<BranchObject>,
    pub upper_bound: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BnpReport {
    pub status: BnpStatus,
    pub solution: Option<Solution>,
    /// Augmented objective of the incumbent, infinite when none.
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub gap_percent: f64,
    /// Objective value without the travel-time augmentation.
    pub objective: f64,
    pub total_time: f64,
    pub nodes: usize,
    pub avg_columns: f64,
    pub columns_initial: usize,
    pub columns_exact: usize,
    pub columns_grasp: usize,
    pub cg_iterations: usize,
    pub root_bound: f64,
    pub wall_time_s: f64,
    pub trace: Vec<NodeRecord>,
}

impl BnpReport {
    pub const CSV_HEADER: [&'static str; 10] = [
        "status",
        "UB",
        "LB",
        "Gap%",
        "Time",
        "#Nodes",
        "Avg.Columns",
        "#Columns exact",
        "#Columns GRASP",
        "root LB",
    ];

    /// One CSV row; the time column is left empty unless `with_time`.
    pub fn csv_record(&self, with_time: bool) -> Vec<String> {
        vec![
            format!("{:?}", self.status),
            fmt_num(self.upper_bound),
            fmt_num(self.lower_bound),
            fmt_num(self.gap_percent),
            if with_time {
                format!("{:.3}", self.wall_time_s)
            } else {
                String::new()
            },
            self.nodes.to_string(),
            fmt_num(self.avg_columns),
            self.columns_exact.to_string(),
            self.columns_grasp.to_string(),
            fmt_num(self.root_bound),
        ]
    }

    pub fn write_csv(&self, out: impl Write, with_time: bool) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        w.write_record(self.csv_record(with_time))?;
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.9}")
    } else {
        v.to_string()
    }
}

/// Percentage gap `(UB - LB) / UB * 100`, with `|UB|` guarded away from 0.
pub fn gap_percent(ub: f64, lb: f64) -> f64 {
    if !ub.is_finite() {
        return f64::INFINITY;
    }
    ((ub - lb) / ub.abs().max(1e-9) * 100.0).max(0.0)
}

struct Node {
    id: usize,
    depth: usize,
    bound: f64,
    cons: BranchConstraints,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // Max-heap order: smallest bound first, then smallest id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(other.id.cmp(&self.id))
    }
}

struct Incumbent {
    value: f64,
    solution: Option<Solution>,
}

impl Incumbent {
    /// Re-optimises deliveries for the routing and keeps it when feasible
    /// and better.
    fn offer(
        &mut self,
        inst: &Instance,
        params: &RmpParams,
        sequences: Vec<Vec<usize>>,
    ) -> Result<bool> {
        if !is_feasible_routing(inst, &sequences, params.epsilon) {
            return Ok(false);
        }
        let Ok(partition) = RoutePartition::new(inst, sequences) else {
            return Ok(false);
        };
        let alloc = allocate(inst, &partition, &params.objective)?;
        let total: f64 = partition
            .node_sets
            .iter()
            .map(|r| inst.route_duration(r))
            .sum();
        let value = augmented_value(inst, params, &alloc.v, total);
        if value < self.value - 1e-12 * (1.0 + value.abs()) {
            let routes = partition
                .node_sets
                .into_iter()
                .map(|nodes| {
                    let q = nodes.iter().map(|&i| alloc.v[i - 1]).collect();
                    RouteDelivery::new(inst, nodes, q)
                })
                .collect();
            self.value = value;
            self.solution = Some(Solution::from_routes(inst, routes));
            return Ok(true);
        }
        Ok(false)
    }
}

/// Initial routings at a node: the savings solution and the tabu search
/// solutions started from it.
fn heuristic_routings(
    inst: &Instance,
    params: &RmpParams,
    cons: &BranchConstraints,
    use_tabu: bool,
    seed: u64,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let cw = match clarke_wright(inst, cons, &params.objective) {
        Ok(s) => s,
        Err(Error::Unreachable(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut out = vec![cw.node_sequences()];
    if use_tabu {
        let cfg = TabuConfig::for_instance(inst);
        let res = tabu_search(inst, &cw.node_sequences(), &cfg, cons, params, seed)?;
        out.extend(res.feasible.iter().map(Solution::node_sequences));
    }
    Ok(out)
}

/// Routes with the deliveries of `allocate` for a whole routing.
fn routing_columns(
    inst: &Instance,
    params: &RmpParams,
    sequences: &[Vec<usize>],
) -> Result<Vec<RouteDelivery>> {
    let sol = routes_to_solution(inst, sequences.to_vec(), &params.objective)?;
    Ok(sol.routes)
}

/// Node sequences of the positive columns when they form a routing.
fn integral_routing(inst: &Instance, pool: &ColumnPool, y: &[f64]) -> Option<Vec<Vec<usize>>> {
    let mut seqs: Vec<Vec<usize>> = Vec::new();
    for (r, &yr) in y.iter().enumerate() {
        if yr > 1e-6 && !seqs.contains(&pool.get(r).nodes) {
            seqs.push(pool.get(r).nodes.clone());
        }
    }
    RoutePartition::new(inst, seqs.clone()).ok().map(|_| seqs)
}

fn node_seed(seed: u64, id: usize) -> u64 {
    seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Solves the epsilon-constrained problem with objective and bound
/// `params` to the gap tolerance.
pub fn solve(inst: &Instance, params: &RmpParams, cfg: &BnpConfig) -> Result<BnpReport> {
    let start = Instant::now();
    inst.validate()?;
    if inst.n > EXACT_LIMIT {
        return Err(Error::TooLarge {
            what: "branch-and-price",
            n: inst.n,
            limit: EXACT_LIMIT,
        });
    }
    if !(params.theta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "theta must be positive, got {}",
            params.theta
        )));
    }
    let deadline = cfg.time_limit.map(|t| start + t);
    let settings = CgSettings {
        rule: cfg.delivery_rule(params),
        use_grasp: cfg.use_grasp,
        grasp: cfg.grasp,
        max_iterations: cfg.max_cg_iterations,
        deadline,
    };
    let mut report = BnpReport {
        status: BnpStatus::Optimal,
        solution: None,
        upper_bound: f64::INFINITY,
        lower_bound: f64::NEG_INFINITY,
        gap_percent: f64::INFINITY,
        objective: f64::NAN,
        total_time: f64::NAN,
        nodes: 0,
        avg_columns: 0.0,
        columns_initial: 0,
        columns_exact: 0,
        columns_grasp: 0,
        cg_iterations: 0,
        root_bound: f64::NAN,
        wall_time_s: 0.0,
        trace: Vec::new(),
    };
    let mut incumbent = Incumbent {
        value: f64::INFINITY,
        solution: None,
    };
    let mut pool = ColumnPool::new();
    let finish = |mut report: BnpReport, incumbent: Incumbent, lb: f64| -> BnpReport {
        report.upper_bound = incumbent.value;
        report.lower_bound = lb.min(incumbent.value);
        report.gap_percent = gap_percent(report.upper_bound, report.lower_bound);
        if let Some(sol) = &incumbent.solution {
            report.objective = params.objective.evaluate(&inst.demands, &sol.deliveries);
            report.total_time = sol.total_time;
        } else if report.status == BnpStatus::Optimal {
            report.status = BnpStatus::Infeasible;
        }
        report.solution = incumbent.solution;
        report.wall_time_s = start.elapsed().as_secs_f64();
        report
    };
    if (1..=inst.n).any(|i| inst.round_trip(i) > inst.psi + 1e-9 * (1.0 + inst.psi)) {
        return Ok(finish(report, incumbent, f64::INFINITY));
    }

    let mut heap = BinaryHeap::new();
    heap.push(Node {
        id: 0,
        depth: 0,
        bound: f64::NEG_INFINITY,
        cons: BranchConstraints::new(inst.n),
    });
    let mut next_id = 1;
    let mut columns_sum = 0usize;
    let mut processed_since_master = 0usize;
    let mut final_lb = None;

    while let Some(node) = heap.pop() {
        let open_lb = heap.peek().map_or(f64::INFINITY, |n| n.bound);
        let lb = node.bound.min(open_lb);
        if incumbent.value.is_finite() {
            let tol = 1e-9 * (1.0 + incumbent.value.abs());
            if node.bound >= incumbent.value - tol {
                continue;
            }
            if gap_percent(incumbent.value, lb) < cfg.gap_tolerance * 100.0 {
                final_lb = Some(lb);
                break;
            }
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            report.status = BnpStatus::TimeLimit;
            final_lb = Some(lb);
            break;
        }
        report.nodes += 1;
        let seed = node_seed(cfg.seed, node.id);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        if node.id == 0 || cfg.use_tabu {
            for seqs in heuristic_routings(inst, params, &node.cons, cfg.use_tabu, seed)? {
                for c in routing_columns(inst, params, &seqs)? {
                    if pool.add(c) {
                        report.columns_initial += 1;
                    }
                }
                incumbent.offer(inst, params, seqs)?;
            }
        }

        let mut node_pool = filter_pool(&pool, &node.cons);
        let table = RouteTable::build(inst, &node.cons)?;
        let cg = column_generation(
            inst,
            &mut node_pool,
            params,
            &node.cons,
            &table,
            &settings,
            &mut rng,
        )?;
        for c in &cg.added {
            pool.add(c.clone());
        }
        columns_sum += node_pool.len();
        report.columns_exact += cg.columns_exact;
        report.columns_grasp += cg.columns_grasp;
        report.cg_iterations += cg.iterations;
        processed_since_master += 1;

        let mut record = NodeRecord {
            id: node.id,
            depth: node.depth,
            parent_bound: node.bound,
            bound: cg.bound,
            min_reduced_cost: cg.min_reduced_cost,
            outcome: NodeOutcome::Branched,
            branched_on: None,
            upper_bound: 0.0,
            lower_bound: 0.0,
        };
        match cg.status {
            CgStatus::Infeasible => record.outcome = NodeOutcome::Infeasible,
            CgStatus::TimeLimit | CgStatus::IterationLimit => {
                record.outcome = NodeOutcome::Stopped;
                record.bound = node.bound;
                report.status = BnpStatus::TimeLimit;
                heap.push(Node {
                    cons: node.cons.clone(),
                    ..node
                });
            }
            CgStatus::Optimal => {
                if node.id == 0 {
                    report.root_bound = cg.bound;
                }
                let bound = cg.bound.max(node.bound);
                let tol = 1e-9 * (1.0 + incumbent.value.abs());
                if incumbent.value.is_finite() && bound >= incumbent.value - tol {
                    record.outcome = NodeOutcome::Pruned;
                } else if let Some(seqs) = integral_routing(inst, &node_pool, &cg.y) {
                    record.outcome = NodeOutcome::Integral;
                    incumbent.offer(inst, params, seqs)?;
                } else {
                    let values = aggregate_arc_values(&node_pool, &cg.y);
                    match select_branching_object(&values) {
                        Some(object) => {
                            record.branched_on = Some(object);
                            let (left, right) = branch(&node.cons, object);
                            for cons in [left, right].into_iter().flatten() {
                                heap.push(Node {
                                    id: next_id,
                                    depth: node.depth + 1,
                                    bound,
                                    cons,
                                });
                                next_id += 1;
                            }
                        }
                        None => {
                            // Integral arc values whose columns differ only in
                            // deliveries: the routing is fixed.
                            record.outcome = NodeOutcome::Integral;
                            let seqs = routes_from_arcs(&values);
                            incumbent.offer(inst, params, seqs)?;
                        }
                    }
                }
            }
        }

        if cfg.chi > 0 && processed_since_master >= cfg.chi {
            processed_since_master = 0;
            let cutoff = incumbent.value.is_finite().then_some(incumbent.value);
            if let Some(im) = solve_restricted_integer_master(
                inst,
                &pool,
                params,
                cfg.integer_master_steps,
                cutoff,
            )? {
                incumbent.offer(inst, params, im.sequences)?;
            }
        }

        let open_lb = heap.peek().map_or(f64::INFINITY, |n| n.bound);
        record.upper_bound = incumbent.value;
        record.lower_bound = open_lb.min(incumbent.value);
        report.trace.push(record);
        if report.status == BnpStatus::TimeLimit {
            break;
        }
    }
    let lb = final_lb.unwrap_or_else(|| heap.iter().map(|n| n.bound).fold(f64::INFINITY, f64::min));
    report.avg_columns = if report.nodes > 0 {
        columns_sum as f64 / report.nodes as f64
    } else {
        0.0
    };
    Ok(finish(report, incumbent, lb))
}

/// Routes traced through integral arc values.
fn routes_from_arcs(values: &[(BranchObject, f64)]) -> Vec<Vec<usize>> {
    let used: Vec<BranchObject> = values
        .iter()
        .filter(|(_, x)| *x > 0.5)
        .map(|&(o, _)| o)
        .collect();
    let mut routes = Vec::new();
    for &o in &used {
        let BranchObject::DepotOut(first) = o else {
            continue;
        };
        let mut route = vec![first];
        let mut prev = 0;
        let mut cur = first;
        loop {
            let next = used.iter().find_map(|&u| match u {
                BranchObject::Edge(a, b) if a == cur && b != prev && !route.contains(&b) => Some(b),
                BranchObject::Edge(a, b) if b == cur && a != prev && !route.contains(&a) => Some(a),
                _ => None,
            });
            match next {
                Some(nx) => {
                    route.push(nx);
                    prev = cur;
                    cur = nx;
                }
                None => break,
            }
        }
        routes.push(route);
    }
    routes
}
