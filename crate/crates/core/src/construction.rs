//! Initial solutions: savings-based route merging, intra-route local search
//! and a relocate tabu search over penalised fitness.
//!
//! All routines work on units, the forced chains of the branching
//! constraints, so the solutions they return are admissible at the tree node
//! they were built for.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::allocation::{allocate, AllocationResult, RoutePartition};
use crate::error::{Error, Result};
use crate::master::RmpParams;
use crate::model::{
    pairwise_abs_sum, BranchConstraints, Instance, Objective, RouteDelivery, Solution,
};

/// Weight of the equity change in the merge saving.
pub const GINI_SAVING_WEIGHT: f64 = 1.0;

fn duration_ok(inst: &Instance, t: f64) -> bool {
    t <= inst.psi + 1e-9 * (1.0 + inst.psi)
}

/// Builds a solution from node sequences with deliveries optimal for
/// `objective`.
pub fn routes_to_solution(
    inst: &Instance,
    sequences: Vec<Vec<usize>>,
    objective: &Objective,
) -> Result<Solution> {
    let partition = RoutePartition::new(inst, sequences)?;
    let alloc = allocate(inst, &partition, objective)?;
    Ok(solution_from_allocation(inst, partition.node_sets, &alloc))
}

fn solution_from_allocation(
    inst: &Instance,
    sequences: Vec<Vec<usize>>,
    alloc: &AllocationResult,
) -> Solution {
    let routes = sequences
        .into_iter()
        .map(|nodes| {
            let q = nodes.iter().map(|&i| alloc.v[i - 1]).collect();
            RouteDelivery::new(inst, nodes, q)
        })
        .collect();
    Solution::from_routes(inst, routes)
}

/// The admissible orientation of a unit as a route on its own, if any.
fn unit_route(inst: &Instance, cons: &BranchConstraints, unit: &[usize]) -> Option<Vec<usize>> {
    let forward = unit.to_vec();
    let mut backward = forward.clone();
    backward.reverse();
    [forward, backward]
        .into_iter()
        .filter(|r| cons.route_admissible(r) && duration_ok(inst, inst.route_duration(r)))
        .min_by(|a, b| inst.route_duration(a).total_cmp(&inst.route_duration(b)))
}

fn equity_term(inst: &Instance, objective: &Objective, sequences: &[Vec<usize>]) -> Result<f64> {
    if objective.lambda == 0.0 {
        return Ok(0.0);
    }
    let partition = RoutePartition {
        node_sets: sequences.to_vec(),
    };
    let alloc = allocate(inst, &partition, objective)?;
    Ok(objective.lambda / inst.total_demand() * pairwise_abs_sum(&inst.demands, &alloc.v))
}

/// Parallel savings heuristic. Starts from one route per unit and keeps
/// applying the admissible merge with the largest saving, negative savings
/// included, until no merge fits within the maximum route duration. The
/// saving is the travel-time saving plus the drop in the equity term of the
/// objective; vehicle capacity and fleet size are ignored. Each final route
/// is then improved by [`improve_route`].
pub fn clarke_wright(
    inst: &Instance,
    cons: &BranchConstraints,
    objective: &Objective,
) -> Result<Solution> {
    let mut routes = Vec::new();
    for unit in cons.units() {
        match unit_route(inst, cons, &unit) {
            Some(r) => routes.push(r),
            None => return Err(Error::Unreachable(unit[0])),
        }
    }
    loop {
        let base_equity = equity_term(inst, objective, &routes)?;
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..routes.len() {
            for b in 0..routes.len() {
                if a == b {
                    continue;
                }
                let merged: Vec<usize> = routes[a].iter().chain(&routes[b]).copied().collect();
                let t = inst.route_duration(&merged);
                if !duration_ok(inst, t) || !cons.route_admissible(&merged) {
                    continue;
                }
                let mut saving =
                    inst.route_duration(&routes[a]) + inst.route_duration(&routes[b]) - t;
                if objective.lambda != 0.0 {
                    let mut after: Vec<Vec<usize>> = routes
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != a && k != b)
                        .map(|(_, r)| r.clone())
                        .collect();
                    after.push(merged);
                    saving +=
                        GINI_SAVING_WEIGHT * (base_equity - equity_term(inst, objective, &after)?);
                }
                if best.is_none_or(|(s, _, _)| saving > s) {
                    best = Some((saving, a, b));
                }
            }
        }
        let Some((_, a, b)) = best else { break };
        let tail = routes[b].clone();
        routes[a].extend(tail);
        routes.remove(b);
    }
    let routes = routes
        .into_iter()
        .map(|r| improve_route(inst, cons, &r))
        .collect();
    routes_to_solution(inst, routes, objective)
}

/// 2-opt and Or-opt (segments of up to three shelters) to a local optimum.
/// Only admissible orders are accepted and the duration never increases.
pub fn improve_route(inst: &Instance, cons: &BranchConstraints, nodes: &[usize]) -> Vec<usize> {
    let mut cur = nodes.to_vec();
    let mut cur_t = inst.route_duration(&cur);
    let len = cur.len();
    if len < 2 {
        return cur;
    }
    loop {
        let mut best: Option<(f64, Vec<usize>)> = None;
        let consider = |cand: Vec<usize>, best: &mut Option<(f64, Vec<usize>)>| {
            let t = inst.route_duration(&cand);
            let bound = best.as_ref().map_or(cur_t, |b| b.0);
            if t < bound - 1e-9 * (1.0 + bound) && cons.route_admissible(&cand) {
                *best = Some((t, cand));
            }
        };
        for i in 0..len {
            for j in i + 1..len {
                let mut cand = cur.clone();
                cand[i..=j].reverse();
                consider(cand, &mut best);
            }
        }
        for seg in 1..=3.min(len - 1) {
            for start in 0..=len - seg {
                let mut rest = cur.clone();
                let moved: Vec<usize> = rest.drain(start..start + seg).collect();
                for pos in 0..=rest.len() {
                    if pos == start {
                        continue;
                    }
                    let mut cand = rest.clone();
                    cand.splice(pos..pos, moved.iter().copied());
                    consider(cand, &mut best);
                }
            }
        }
        match best {
            Some((t, cand)) => {
                cur = cand;
                cur_t = t;
            }
            None => return cur,
        }
    }
}

/// Applies [`improve_route`] to every route; node sets and deliveries are
/// kept.
pub fn improve_routes(inst: &Instance, cons: &BranchConstraints, sol: &Solution) -> Solution {
    let routes = sol
        .routes
        .iter()
        .map(|r| {
            let nodes = improve_route(inst, cons, &r.nodes);
            let q = nodes.iter().map(|&i| r.delivery_to(i)).collect();
            RouteDelivery::new(inst, nodes, q)
        })
        .collect();
    let mut out = Solution::from_routes(inst, routes);
    out.iaaf = sol.iaaf;
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TabuConfig {
    /// Shelters sampled per iteration.
    pub eta: usize,
    /// Size of each shelter's neighbour list.
    pub n_near: usize,
    pub tenure_min: usize,
    pub tenure_max: usize,
    /// Consecutive iterations without an accepted move before stopping.
    pub it_no: usize,
    pub penalty_length: f64,
    pub penalty_fleet: f64,
    /// Hard cap on iterations; equal-fitness moves reset the stall counter.
    pub max_iterations: usize,
}

impl TabuConfig {
    pub fn for_instance(inst: &Instance) -> Self {
        let penalty = 10.0 * inst.max_travel();
        Self {
            eta: inst.n.div_ceil(5).max(1),
            n_near: inst.n.div_ceil(3).max(1),
            tenure_min: 2,
            tenure_max: 6,
            it_no: 20,
            penalty_length: penalty,
            penalty_fleet: penalty,
            max_iterations: 1000,
        }
    }
}

/// Terms of the penalised fitness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessBreakdown {
    pub iaaf: f64,
    /// `(gamma / theta) * max(0, total time - epsilon)`.
    pub overrun: f64,
    /// `nu_MLR * sum max(0, t_r - Psi)`.
    pub route_length: f64,
    /// `nu_NV * max(0, routes - m)`.
    pub fleet: f64,
}

impl FitnessBreakdown {
    pub fn total(&self) -> f64 {
        self.iaaf + self.overrun + self.route_length + self.fleet
    }

    pub fn is_penalty_free(&self) -> bool {
        self.route_length == 0.0 && self.fleet == 0.0
    }
}

/// Fitness of a routing with deliveries from [`allocate`].
pub fn fitness(
    inst: &Instance,
    sequences: &[Vec<usize>],
    params: &RmpParams,
    cfg: &TabuConfig,
) -> Result<(FitnessBreakdown, AllocationResult)> {
    let partition = RoutePartition {
        node_sets: sequences.to_vec(),
    };
    let alloc = allocate(inst, &partition, &params.objective)?;
    let times: Vec<f64> = sequences.iter().map(|r| inst.route_duration(r)).collect();
    let total: f64 = times.iter().sum();
    let breakdown = FitnessBreakdown {
        iaaf: alloc.objective,
        overrun: params.gamma_over_theta() * (total - params.epsilon).max(0.0),
        route_length: cfg.penalty_length
            * times.iter().map(|&t| (t - inst.psi).max(0.0)).sum::<f64>(),
        fleet: cfg.penalty_fleet * sequences.len().saturating_sub(inst.m) as f64,
    };
    Ok((breakdown, alloc))
}

/// True when every route fits within the maximum duration, the fleet
/// suffices and the total time is within `epsilon`.
pub fn is_feasible_routing(inst: &Instance, sequences: &[Vec<usize>], epsilon: f64) -> bool {
    let times: Vec<f64> = sequences.iter().map(|r| inst.route_duration(r)).collect();
    let total: f64 = times.iter().sum();
    sequences.len() <= inst.m
        && times.iter().all(|&t| duration_ok(inst, t))
        && total <= epsilon + 1e-9 * (1.0 + epsilon)
}

/// One accepted tabu move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabuStep {
    pub iteration: usize,
    /// First shelter of the relocated unit.
    pub node: usize,
    /// Identity of the destination route, stable while the route exists.
    pub route_token: usize,
    pub tenure: usize,
    /// The move was tabu and admitted by the aspiration criterion.
    pub aspiration: bool,
}

#[derive(Debug, Clone)]
pub struct TabuResult {
    /// Feasible solutions found, each post-optimised by [`improve_routes`].
    pub feasible: Vec<Solution>,
    pub trace: Vec<TabuStep>,
}

#[derive(Clone)]
struct State {
    /// `(token, shelters)` per route.
    routes: Vec<(usize, Vec<usize>)>,
    fit: f64,
    feasible: bool,
}

impl State {
    fn sequences(&self) -> Vec<Vec<usize>> {
        self.routes.iter().map(|r| r.1.clone()).collect()
    }
}

/// Relocate tabu search. Each iteration samples `eta` shelters; the unit of
/// each is moved to the best position next to one of its near neighbours in
/// every other route containing such a neighbour, or alone onto an idle
/// vehicle when fewer than `m` routes are in use. The best admitted
/// neighbour replaces the incumbent when it is no worse. A tabu move is
/// admitted only when it improves the best solution or the best feasible
/// solution.
pub fn tabu_search(
    inst: &Instance,
    initial: &[Vec<usize>],
    cfg: &TabuConfig,
    cons: &BranchConstraints,
    params: &RmpParams,
    seed: u64,
) -> Result<TabuResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = inst.n;
    let units = cons.units();
    let mut unit_of = vec![0; n + 1];
    for (u, unit) in units.iter().enumerate() {
        for &i in unit {
            unit_of[i] = u;
        }
    }
    let near: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            if i == 0 {
                return Vec::new();
            }
            let mut others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| {
                (inst.t(i, a) + inst.t(a, i))
                    .total_cmp(&(inst.t(i, b) + inst.t(b, i)))
                    .then(a.cmp(&b))
            });
            others.truncate(cfg.n_near);
            others
        })
        .collect();

    let evaluate = |routes: Vec<(usize, Vec<usize>)>| -> Result<State> {
        let seqs: Vec<Vec<usize>> = routes.iter().map(|r| r.1.clone()).collect();
        let (fb, _) = fitness(inst, &seqs, params, cfg)?;
        Ok(State {
            feasible: is_feasible_routing(inst, &seqs, params.epsilon),
            fit: fb.total(),
            routes,
        })
    };

    let start = evaluate(initial.iter().cloned().enumerate().collect())?;
    let mut best = start.clone();
    let mut best_feasible: Option<State> = None;
    let mut found: Vec<State> = Vec::new();
    if start.feasible {
        best_feasible = Some(start.clone());
        found.push(start.clone());
    }
    let mut incumbent = start;
    let mut tabu: HashMap<(usize, usize), usize> = HashMap::new();
    let mut trace = Vec::new();
    let mut stall = 0;
    let mut step = 0;
    while stall <= cfg.it_no && step < cfg.max_iterations {
        step += 1;
        let picks = sample(&mut rng, n, cfg.eta.min(n));
        let mut candidates: Vec<(State, usize, usize, bool)> = Vec::new();
        for pick in picks.iter() {
            let i = pick + 1;
            let unit = &units[unit_of[i]];
            let Some(src) = incumbent.routes.iter().position(|r| r.1.contains(&i)) else {
                continue;
            };
            let mut source = incumbent.routes[src].1.clone();
            source.retain(|x| !unit.contains(x));
            if !source.is_empty() && !cons.route_admissible(&source) {
                continue;
            }
            for (k, (token, target)) in incumbent.routes.iter().enumerate() {
                if k == src || !target.iter().any(|x| near[i].contains(x)) {
                    continue;
                }
                let Some(inserted) = best_insertion(inst, cons, target, unit, &near[i]) else {
                    continue;
                };
                let mut routes = incumbent.routes.clone();
                routes[k].1 = inserted;
                if source.is_empty() {
                    routes.remove(src);
                } else {
                    routes[src].1 = source.clone();
                }
                let cand = evaluate(routes)?;
                let is_tabu = tabu
                    .get(&(unit[0], *token))
                    .is_some_and(|&until| until > step);
                let aspires = cand.fit < best.fit
                    || (cand.feasible && best_feasible.as_ref().is_none_or(|b| cand.fit < b.fit));
                if !is_tabu || aspires {
                    candidates.push((cand, unit[0], *token, is_tabu));
                }
            }
            // An idle vehicle is a route with no shelters.
            if incumbent.routes.len() < inst.m && !source.is_empty() && cons.route_admissible(unit)
            {
                let token = (0..)
                    .find(|t| incumbent.routes.iter().all(|r| r.0 != *t))
                    .unwrap_or(0);
                let mut routes = incumbent.routes.clone();
                routes[src].1 = source.clone();
                routes.push((token, unit.clone()));
                let cand = evaluate(routes)?;
                let is_tabu = tabu
                    .get(&(unit[0], token))
                    .is_some_and(|&until| until > step);
                let aspires = cand.fit < best.fit
                    || (cand.feasible && best_feasible.as_ref().is_none_or(|b| cand.fit < b.fit));
                if !is_tabu || aspires {
                    candidates.push((cand, unit[0], token, is_tabu));
                }
            }
        }
        let Some(min_idx) = (0..candidates.len())
            .min_by(|&a, &b| candidates[a].0.fit.total_cmp(&candidates[b].0.fit))
        else {
            stall += 1;
            continue;
        };
        if candidates[min_idx].0.fit < best.fit {
            best = candidates[min_idx].0.clone();
        }
        let feasible_min = candidates
            .iter()
            .filter(|c| c.0.feasible)
            .min_by(|a, b| a.0.fit.total_cmp(&b.0.fit));
        if let Some(f) = feasible_min {
            if best_feasible.as_ref().is_none_or(|b| f.0.fit < b.fit) {
                best_feasible = Some(f.0.clone());
                found.push(f.0.clone());
            }
        }
        let (cand, node, token, was_tabu) = candidates.swap_remove(min_idx);
        if cand.fit <= incumbent.fit {
            incumbent = cand;
            stall = 0;
            let tenure = rng.gen_range(cfg.tenure_min..=cfg.tenure_max);
            tabu.insert((node, token), step + tenure);
            trace.push(TabuStep {
                iteration: step,
                node,
                route_token: token,
                tenure,
                aspiration: was_tabu,
            });
        } else {
            stall += 1;
        }
        tabu.retain(|_, &mut until| until > step);
    }

    let mut feasible: Vec<Solution> = Vec::new();
    for state in found {
        let seqs: Vec<Vec<usize>> = state
            .sequences()
            .iter()
            .map(|r| improve_route(inst, cons, r))
            .collect();
        let sol = routes_to_solution(inst, seqs, &params.objective)?;
        if !feasible
            .iter()
            .any(|f| f.node_sequences() == sol.node_sequences())
        {
            feasible.push(sol);
        }
    }
    Ok(TabuResult { feasible, trace })
}

/// Cheapest admissible insertion of `unit` into `target` directly before or
/// after one of the shelters in `anchors`.
fn best_insertion(
    inst: &Instance,
    cons: &BranchConstraints,
    target: &[usize],
    unit: &[usize],
    anchors: &[usize],
) -> Option<Vec<usize>> {
    let mut positions: Vec<usize> = target
        .iter()
        .enumerate()
        .filter(|(_, x)| anchors.contains(x))
        .flat_map(|(p, _)| [p, p + 1])
        .collect();
    positions.sort_unstable();
    positions.dedup();
    let mut reversed = unit.to_vec();
    reversed.reverse();
    let orientations: Vec<&[usize]> = if unit.len() > 1 {
        vec![unit, &reversed]
    } else {
        vec![unit]
    };
    let mut best: Option<(f64, Vec<usize>)> = None;
    for &pos in &positions {
        for o in &orientations {
            let mut cand = target.to_vec();
            cand.splice(pos..pos, o.iter().copied());
            if !cons.route_admissible(&cand) {
                continue;
            }
            let t = inst.route_duration(&cand);
            if best.as_ref().is_none_or(|b| t < b.0) {
                best = Some((t, cand));
            }
        }
    }
    best.map(|b| b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_instance, validate_solution, BranchObject, InstanceType};

    fn params(inst: &Instance) -> RmpParams {
        RmpParams {
            epsilon: inst.epsilon,
            gamma: 1e-4,
            theta: 100.0,
            objective: Objective::iaaf(inst.lambda),
        }
    }

    fn planar(points: &[(f64, f64)], demands: Vec<f64>, psi: f64) -> Instance {
        let travel = points
            .iter()
            .map(|a| {
                points
                    .iter()
                    .map(|b| (a.0 - b.0).hypot(a.1 - b.1))
                    .collect()
            })
            .collect();
        let total: f64 = demands.iter().sum();
        Instance {
            n: points.len() - 1,
            m: 2,
            capacity: total,
            supply: 0.7 * total,
            psi,
            epsilon: 1e6,
            lambda: 0.5,
            demands,
            travel,
        }
    }

    #[test]
    fn classic_saving() {
        let inst = Instance {
            n: 2,
            m: 1,
            capacity: 10.0,
            supply: 5.0,
            psi: 100.0,
            epsilon: 100.0,
            lambda: 0.0,
            demands: vec![4.0, 4.0],
            travel: vec![
                vec![0.0, 5.0, 5.0],
                vec![5.0, 0.0, 2.0],
                vec![5.0, 2.0, 0.0],
            ],
        };
        let sol = clarke_wright(&inst, &BranchConstraints::new(2), &Objective::iaaf(0.0)).unwrap();
        assert_eq!(sol.routes.len(), 1);
        assert!((sol.total_time - 12.0).abs() < 1e-12);
    }

    #[test]
    fn tight_psi_keeps_singletons() {
        let mut inst = planar(
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)],
            vec![1.0, 2.0, 3.0],
            2.5,
        );
        inst.m = 3;
        let sol = clarke_wright(&inst, &BranchConstraints::new(3), &Objective::iaaf(0.5)).unwrap();
        assert_eq!(sol.routes.len(), 3);
        inst.psi = 1.0;
        assert!(matches!(
            clarke_wright(&inst, &BranchConstraints::new(3), &Objective::iaaf(0.5)),
            Err(Error::Unreachable(_))
        ));
    }

    #[test]
    fn savings_routes_respect_psi_and_constraints() {
        let inst = generate_instance(4, 5, 2, InstanceType::T).unwrap();
        let mut cons = BranchConstraints::new(5);
        cons.force(BranchObject::edge(1, 4));
        cons.forbid(BranchObject::edge(2, 3));
        let sol = clarke_wright(&inst, &cons, &Objective::iaaf(0.5)).unwrap();
        for r in &sol.routes {
            assert!(r.duration <= inst.psi + 1e-9);
            assert!(cons.route_admissible(&r.nodes));
        }
    }

    #[test]
    fn improve_uncrosses_to_best_order() {
        let inst = planar(
            &[(0.0, 0.0), (1.0, 1.0), (3.0, 1.0), (3.0, -1.0), (1.0, -1.0)],
            vec![1.0; 4],
            100.0,
        );
        let cons = BranchConstraints::new(4);
        let crossed = vec![1, 3, 2, 4];
        let out = improve_route(&inst, &cons, &crossed);
        let mut best = f64::INFINITY;
        let mut perm = vec![1, 2, 3, 4];
        permute(&mut perm, 0, &mut |p| {
            best = best.min(inst.route_duration(p))
        });
        assert!(inst.route_duration(&out) < inst.route_duration(&crossed) - 1e-9);
        assert!((inst.route_duration(&out) - best).abs() < 1e-9);
        assert_eq!(improve_route(&inst, &cons, &out), out);
        assert_eq!(improve_route(&inst, &cons, &[2, 1]).len(), 2);
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for s in k..p.len() {
            p.swap(k, s);
            permute(p, k + 1, f);
            p.swap(k, s);
        }
    }

    #[test]
    fn tabu_output_is_feasible() {
        for (seed, kind) in [
            (1, InstanceType::A),
            (2, InstanceType::VT),
            (3, InstanceType::VTL),
        ] {
            let inst = generate_instance(seed, 8, 3, kind).unwrap();
            let cons = BranchConstraints::new(8);
            let cw = clarke_wright(&inst, &cons, &Objective::iaaf(0.5)).unwrap();
            let res = tabu_search(
                &inst,
                &cw.node_sequences(),
                &TabuConfig::for_instance(&inst),
                &cons,
                &params(&inst),
                seed,
            )
            .unwrap();
            for sol in &res.feasible {
                validate_solution(&inst, sol, inst.epsilon).unwrap();
            }
        }
    }

    #[test]
    fn tabu_reduces_fleet() {
        let inst = planar(
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)],
            vec![2.0, 3.0, 4.0, 5.0],
            100.0,
        );
        let cons = BranchConstraints::new(4);
        let initial = vec![vec![1], vec![2], vec![3, 4]];
        let cfg = TabuConfig {
            n_near: 3,
            eta: 4,
            ..TabuConfig::for_instance(&inst)
        };
        let res = tabu_search(&inst, &initial, &cfg, &cons, &params(&inst), 5).unwrap();
        assert!(!res.feasible.is_empty());
        assert!(res.feasible.iter().all(|s| s.routes.len() <= inst.m));
    }

    #[test]
    fn feasible_fitness_is_objective() {
        let inst = generate_instance(7, 6, 3, InstanceType::A).unwrap();
        let cons = BranchConstraints::new(6);
        let cw = clarke_wright(&inst, &cons, &Objective::iaaf(0.5)).unwrap();
        let seqs = cw.node_sequences();
        let cfg = TabuConfig::for_instance(&inst);
        let mut p = params(&inst);
        p.epsilon = 1e9;
        let (fb, alloc) = fitness(&inst, &seqs, &p, &cfg).unwrap();
        if is_feasible_routing(&inst, &seqs, p.epsilon) {
            assert_eq!(fb.total(), alloc.objective);
        }
        assert!((fb.total() - (fb.iaaf + fb.overrun + fb.route_length + fb.fleet)).abs() < 1e-12);
    }

    #[test]
    fn tenure_is_respected() {
        let inst = generate_instance(11, 10, 3, InstanceType::T).unwrap();
        let cons = BranchConstraints::new(10);
        let cw = clarke_wright(&inst, &cons, &Objective::iaaf(0.5)).unwrap();
        let res = tabu_search(
            &inst,
            &cw.node_sequences(),
            &TabuConfig::for_instance(&inst),
            &cons,
            &params(&inst),
            4,
        )
        .unwrap();
        for (k, a) in res.trace.iter().enumerate() {
            for b in &res.trace[k + 1..] {
                if (b.node, b.route_token) == (a.node, a.route_token)
                    && b.iteration < a.iteration + a.tenure
                {
                    assert!(b.aspiration);
                }
            }
        }
    }
}
