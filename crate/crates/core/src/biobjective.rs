//! Augmented epsilon-constraint sweep over the travel-time bound.
//!
//! The sweep starts at the travel time of the equity-optimal solution and
//! lowers the bound below the travel time of each new point until the
//! minimum-time relaxation proves the remaining range empty.

use std::io::Write;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::allocation::{allocate, RoutePartition};
use crate::bnp::{
    column_generation, feasible_routings, fmt_num, solve, BnpConfig, BnpReport, BnpStatus,
    CgSettings, CgStatus,
};
use crate::error::Result;
use crate::master::{ColumnPool, RmpParams};
use crate::model::{BranchConstraints, Instance, Objective, Solution};
use crate::pricing::{DeliveryRule, RouteTable};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParetoConfig {
    pub bnp: BnpConfig,
    pub objective: Objective,
    pub gamma: f64,
    /// Decrement of the travel-time bound between points.
    pub delta: f64,
    /// Time budget of each epsilon-constrained solve.
    pub point_time_limit: Option<Duration>,
}

impl Default for ParetoConfig {
    fn default() -> Self {
        Self {
            bnp: BnpConfig::default(),
            objective: Objective::iaaf(0.5),
            gamma: 1e-4,
            delta: 1.0,
            point_time_limit: Some(Duration::from_secs(600)),
        }
    }
}

impl ParetoConfig {
    fn point_config(&self) -> BnpConfig {
        BnpConfig {
            time_limit: self.point_time_limit,
            ..self.bnp
        }
    }
}

/// Travel-time range of the instance.
#[derive(Debug, Clone)]
pub struct ThetaInfo {
    /// Minimum total travel time of the master relaxation; infinite when
    /// no routing exists.
    pub f2_min: f64,
    /// Travel time of the equity-optimal solution.
    pub f2_max: f64,
    pub theta: f64,
    /// The equity-optimal solve under the instance bound.
    pub first: BnpReport,
}

/// Lower bound on the total travel time of any routing: column generation
/// with travel time as the only cost. `None` when no routing exists.
pub fn min_travel_time_bound(inst: &Instance, cfg: &BnpConfig) -> Result<Option<f64>> {
    let epsilon = inst.m as f64 * inst.psi;
    let params = RmpParams {
        epsilon,
        gamma: 1.0,
        theta: 1.0,
        objective: Objective {
            unmet_weight: 0.0,
            lambda: 0.0,
        },
    };
    let cons = BranchConstraints::new(inst.n);
    let table = RouteTable::build(inst, &cons)?;
    let settings = CgSettings {
        rule: DeliveryRule::Knapsack,
        use_grasp: cfg.use_grasp,
        grasp: cfg.grasp,
        max_iterations: cfg.max_cg_iterations,
        deadline: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pool = ColumnPool::new();
    let cg = column_generation(inst, &mut pool, &params, &cons, &table, &settings, &mut rng)?;
    Ok(match cg.status {
        CgStatus::Infeasible => None,
        _ => Some(cg.bound + epsilon),
    })
}

/// Normalisation for a single solve under `epsilon`: the width of the
/// range between the minimum-time bound and `epsilon`, at least one.
pub fn theta_for_bound(inst: &Instance, epsilon: f64, cfg: &BnpConfig) -> Result<f64> {
    let theta = match min_travel_time_bound(inst, cfg)? {
        Some(f2_min) => epsilon - f2_min,
        None => epsilon,
    };
    Ok(if theta.is_finite() {
        theta.max(1.0)
    } else {
        1.0
    })
}

/// Travel-time range and normalisation `theta = f2_max - f2_min`, falling
/// back to `max(1, f2_max)` when the range is degenerate.
pub fn compute_theta(inst: &Instance, cfg: &ParetoConfig) -> Result<ThetaInfo> {
    inst.validate()?;
    let f2_min = min_travel_time_bound(inst, &cfg.bnp)?.unwrap_or(f64::INFINITY);
    let provisional = (inst.epsilon - f2_min).max(1.0);
    let params = RmpParams {
        epsilon: inst.epsilon,
        gamma: cfg.gamma,
        theta: if provisional.is_finite() {
            provisional
        } else {
            1.0
        },
        objective: cfg.objective,
    };
    let first = solve(inst, &params, &cfg.point_config())?;
    let f2_max = if first.solution.is_some() {
        first.total_time
    } else {
        f64::INFINITY
    };
    let range = f2_max - f2_min;
    let theta = if range.is_finite() && range > 1e-9 {
        range
    } else {
        f2_max.max(1.0)
    };
    Ok(ThetaInfo {
        f2_min,
        f2_max,
        theta,
        first,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub epsilon: f64,
    pub f1: f64,
    pub f2: f64,
    pub gap_percent: f64,
    /// `TimeLimit` marks a point whose solve hit its budget.
    pub status: BnpStatus,
    pub wall_time_s: f64,
    pub solution: Solution,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParetoFront {
    /// Mutually non-dominated points, travel time decreasing.
    pub points: Vec<ParetoPoint>,
    /// Epsilon-constrained problems solved with a solution.
    pub solved: usize,
    /// Share of `solved` that survived the non-dominance filter.
    pub nondominated_share: f64,
    pub f2_min: f64,
    pub f2_max: f64,
    pub theta: f64,
}

impl ParetoFront {
    pub const CSV_HEADER: [&'static str; 6] = ["epsilon", "f1", "f2", "gap", "time", "status"];

    /// One row per point; the time column is left empty unless `with_time`.
    pub fn write_csv(&self, out: impl Write, with_time: bool) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for p in &self.points {
            w.write_record([
                fmt_num(p.epsilon),
                fmt_num(p.f1),
                fmt_num(p.f2),
                fmt_num(p.gap_percent),
                if with_time {
                    format!("{:.3}", p.wall_time_s)
                } else {
                    String::new()
                },
                format!("{:?}", p.status),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn point(epsilon: f64, report: BnpReport) -> Option<ParetoPoint> {
    let solution = report.solution?;
    Some(ParetoPoint {
        epsilon,
        f1: report.objective,
        f2: solution.total_time,
        gap_percent: report.gap_percent,
        status: report.status,
        wall_time_s: report.wall_time_s,
        solution,
    })
}

/// Keeps the points no other point dominates, sorted by travel time
/// decreasing. Of points equal in both objectives the first is kept.
pub fn nondominated<T>(items: Vec<T>, f: impl Fn(&T) -> (f64, f64)) -> Vec<T> {
    let tol = |a: f64| 1e-9 * (1.0 + a.abs());
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, fb) = (f(&items[a]), f(&items[b]));
        fa.1.total_cmp(&fb.1)
            .then(fa.0.total_cmp(&fb.0))
            .then(a.cmp(&b))
    });
    let mut keep = vec![false; items.len()];
    let mut best_f1 = f64::INFINITY;
    for &k in &order {
        let f1 = f(&items[k]).0;
        if f1 < best_f1 - tol(best_f1) || !best_f1.is_finite() {
            keep[k] = true;
            best_f1 = f1;
        }
    }
    let mut kept: Vec<(usize, T)> = items
        .into_iter()
        .enumerate()
        .filter(|(k, _)| keep[*k])
        .collect();
    kept.sort_by(|a, b| f(&b.1).1.total_cmp(&f(&a.1).1).then(a.0.cmp(&b.0)));
    kept.into_iter().map(|(_, t)| t).collect()
}

/// Sweeps the travel-time bound from the equity-optimal travel time down
/// to the minimum-time bound, taking `eps = min(eps - delta, f2 - delta)`
/// after each point.
pub fn pareto_front(inst: &Instance, cfg: &ParetoConfig) -> Result<ParetoFront> {
    let info = compute_theta(inst, cfg)?;
    let mut front = ParetoFront {
        points: Vec::new(),
        solved: 0,
        nondominated_share: 0.0,
        f2_min: info.f2_min,
        f2_max: info.f2_max,
        theta: info.theta,
    };
    let Some(first) = point(info.f2_max, info.first) else {
        return Ok(front);
    };
    let delta = cfg.delta;
    let mut epsilon = first.epsilon;
    let mut last_f2 = first.f2;
    let mut points = vec![first];
    let floor = info.f2_min - 1e-9 * (1.0 + info.f2_min.abs());
    loop {
        epsilon = (epsilon - delta).min(last_f2 - delta);
        if epsilon < floor {
            break;
        }
        let params = RmpParams {
            epsilon,
            gamma: cfg.gamma,
            theta: info.theta,
            objective: cfg.objective,
        };
        let report = solve(inst, &params, &cfg.point_config())?;
        let Some(p) = point(epsilon, report) else {
            break;
        };
        last_f2 = p.f2;
        points.push(p);
    }
    front.solved = points.len();
    front.points = nondominated(points, |p| (p.f1, p.f2));
    front.nondominated_share = front.points.len() as f64 / front.solved as f64;
    Ok(front)
}

/// Exhaustive reference front: every feasible routing under the instance
/// bound with deliveries optimal for `objective`, as `(f1, f2)` pairs after
/// the non-dominance filter.
pub fn enumerate_front(inst: &Instance, objective: &Objective) -> Result<Vec<(f64, f64)>> {
    let mut all = Vec::new();
    for (total, sequences) in feasible_routings(inst, inst.epsilon) {
        let partition = RoutePartition {
            node_sets: sequences,
        };
        let alloc = allocate(inst, &partition, objective)?;
        all.push((objective.evaluate(&inst.demands, &alloc.v), total));
    }
    Ok(nondominated(all, |&p| p))
}
