//! Exhaustive reference solver for tiny instances.

use crate::allocation::{allocate, RoutePartition};
use crate::error::{Error, Result};
use crate::master::{augmented_value, RmpParams};
use crate::model::{Instance, RouteDelivery, Solution};

/// Largest shelter count accepted by [`brute_force_solve`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Shortest depot tour of every subset by trying all orders.
pub(crate) fn shortest_tours(inst: &Instance) -> Vec<(f64, Vec<usize>)> {
    let n = inst.n;
    let mut out = vec![(f64::INFINITY, Vec::new()); 1 << n];
    for (mask, slot) in out.iter_mut().enumerate().skip(1) {
        let mut nodes: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        permutations(&mut nodes, 0, &mut |p| {
            let t = inst.route_duration(p);
            if t < slot.0 {
                *slot = (t, p.to_vec());
            }
        });
    }
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for s in k..p.len() {
        p.swap(k, s);
        permutations(p, k + 1, f);
        p.swap(k, s);
    }
}

/// Calls `f` with every partition of `0..n` into at most `max_blocks`
/// blocks, each block given as a bit mask.
pub(crate) fn for_each_partition(n: usize, max_blocks: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        i: usize,
        n: usize,
        max_blocks: usize,
        blocks: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if i == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            rec(i + 1, n, max_blocks, blocks, f);
            blocks[b] &= !(1 << i);
        }
        if blocks.len() < max_blocks {
            blocks.push(1 << i);
            rec(i + 1, n, max_blocks, blocks, f);
            blocks.pop();
        }
    }
    rec(0, n, max_blocks, &mut Vec::new(), f);
}

/// Every routing that respects the route duration, fleet size and `epsilon`,
/// with its shortest tours: `(total time, sequences)`.
pub fn feasible_routings(inst: &Instance, epsilon: f64) -> Vec<(f64, Vec<Vec<usize>>)> {
    let tours = shortest_tours(inst);
    let tol = |v: f64| 1e-9 * (1.0 + v);
    let mut out = Vec::new();
    for_each_partition(inst.n, inst.m, &mut |blocks| {
        if blocks
            .iter()
            .any(|&b| tours[b].0 > inst.psi + tol(inst.psi))
        {
            return;
        }
        let total: f64 = blocks.iter().map(|&b| tours[b].0).sum();
        if total > epsilon + tol(epsilon) {
            return;
        }
        out.push((total, blocks.iter().map(|&b| tours[b].1.clone()).collect()));
    });
    out
}

/// Minimises the augmented objective over all partitions of the shelters
/// into at most `m` routes, each route the shortest tour of its block.
/// Returns `None` when no routing satisfies the duration, fleet and
/// `params.epsilon` limits.
pub fn brute_force_solve(inst: &Instance, params: &RmpParams) -> Result<Option<Solution>> {
    if inst.n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute force",
            n: inst.n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best: Option<(f64, Solution)> = None;
    for (total, sequences) in feasible_routings(inst, params.epsilon) {
        let partition = RoutePartition {
            node_sets: sequences,
        };
        let alloc = allocate(inst, &partition, &params.objective)?;
        let value = augmented_value(inst, params, &alloc.v, total);
        if best.as_ref().is_none_or(|b| value < b.0) {
            let routes = partition
                .node_sets
                .into_iter()
                .map(|nodes| {
                    let q = nodes.iter().map(|&i| alloc.v[i - 1]).collect();
                    RouteDelivery::new(inst, nodes, q)
                })
                .collect();
            best = Some((value, Solution::from_routes(inst, routes)));
        }
    }
    Ok(best.map(|b| b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Objective;

    #[test]
    fn partition_counts_are_bell_numbers() {
        let mut count = 0;
        for_each_partition(5, 5, &mut |_| count += 1);
        assert_eq!(count, 52);
        count = 0;
        for_each_partition(4, 2, &mut |_| count += 1);
        assert_eq!(count, 8);
    }

    #[test]
    fn single_shelter() {
        let inst = Instance {
            n: 1,
            m: 1,
            capacity: 3.0,
            supply: 4.0,
            psi: 10.0,
            epsilon: 10.0,
            lambda: 0.5,
            demands: vec![5.0],
            travel: vec![vec![0.0, 2.0], vec![2.0, 0.0]],
        };
        let params = RmpParams {
            epsilon: 10.0,
            gamma: 1e-4,
            theta: 1.0,
            objective: Objective::iaaf(0.5),
        };
        let sol = brute_force_solve(&inst, &params).unwrap().unwrap();
        assert_eq!(sol.deliveries, vec![3.0]);
        let mut tight = params;
        tight.epsilon = 3.0;
        assert!(brute_force_solve(&inst, &tight).unwrap().is_none());
    }
}
