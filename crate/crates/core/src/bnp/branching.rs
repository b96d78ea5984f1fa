//! Aggregated arc values, branching-object selection and child creation.

use std::collections::BTreeMap;

use crate::master::ColumnPool;
use crate::model::{BranchConstraints, BranchObject};

/// Values `x` of every branching object used by a column with positive
/// `y`, sorted by object key. Shelter edges add both directions.
pub fn aggregate_arc_values(pool: &ColumnPool, y: &[f64]) -> Vec<(BranchObject, f64)> {
    let mut values: BTreeMap<(usize, usize), (BranchObject, f64)> = BTreeMap::new();
    for (r, &yr) in y.iter().enumerate() {
        if yr <= 1e-12 {
            continue;
        }
        for (from, to) in pool.get(r).arcs() {
            let object = BranchObject::of_arc(from, to);
            values.entry(object.key()).or_insert((object, 0.0)).1 += yr;
        }
    }
    values.into_values().collect()
}

/// The object whose value is closest to one half among those at least
/// `1e-6` away from an integer; ties go to the smallest key. `None` when
/// every value is integral.
pub fn select_branching_object(values: &[(BranchObject, f64)]) -> Option<BranchObject> {
    let tol = 1e-6;
    values
        .iter()
        .filter(|(_, x)| (x - x.round()).abs() > tol)
        .min_by(|a, b| {
            (a.1 - 0.5)
                .abs()
                .total_cmp(&(b.1 - 0.5).abs())
                .then(a.0.key().cmp(&b.0.key()))
        })
        .map(|&(o, _)| o)
}

/// Left child forbids the object, right child forces it. A child whose
/// constraints are contradictory is `None`.
pub fn branch(
    cons: &BranchConstraints,
    object: BranchObject,
) -> (Option<BranchConstraints>, Option<BranchConstraints>) {
    let mut left = cons.clone();
    left.forbid(object);
    let mut right = cons.clone();
    right.force(object);
    (
        left.is_consistent().then_some(left),
        right.is_consistent().then_some(right),
    )
}

/// Columns admissible under `cons`.
pub fn filter_pool(pool: &ColumnPool, cons: &BranchConstraints) -> ColumnPool {
    pool.filtered(|rd| cons.route_admissible(&rd.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Instance, RouteDelivery};

    fn inst() -> Instance {
        Instance {
            n: 3,
            m: 3,
            capacity: 10.0,
            supply: 5.0,
            psi: 100.0,
            epsilon: 100.0,
            lambda: 0.5,
            demands: vec![2.0, 2.0, 2.0],
            travel: vec![vec![0.0, 1.0, 1.0, 1.0]; 4]
                .into_iter()
                .enumerate()
                .map(|(i, mut r)| {
                    r[i] = 0.0;
                    if i > 0 {
                        r[0] = 1.0;
                    }
                    r
                })
                .collect(),
        }
    }

    #[test]
    fn picks_value_closest_to_half() {
        let v = vec![
            (BranchObject::edge(1, 2), 0.3),
            (BranchObject::edge(1, 3), 0.5),
        ];
        assert_eq!(select_branching_object(&v), Some(BranchObject::edge(1, 3)));
        let v = vec![
            (BranchObject::edge(2, 3), 0.6),
            (BranchObject::edge(1, 3), 0.4),
        ];
        assert_eq!(select_branching_object(&v), Some(BranchObject::edge(1, 3)));
        let v = vec![
            (BranchObject::edge(1, 2), 1.0),
            (BranchObject::DepotOut(1), 0.0),
        ];
        assert_eq!(select_branching_object(&v), None);
    }

    #[test]
    fn opposite_forcing_is_infeasible() {
        let mut cons = BranchConstraints::new(3);
        cons.force(BranchObject::edge(1, 2));
        cons.force(BranchObject::edge(2, 3));
        let (left, right) = branch(&cons, BranchObject::edge(1, 3));
        assert!(left.is_some());
        assert!(right.is_none());
    }

    #[test]
    fn pool_filters() {
        let i = inst();
        let mut pool = ColumnPool::new();
        pool.add(RouteDelivery::new(&i, vec![1, 2], vec![1.0, 1.0]));
        pool.add(RouteDelivery::new(&i, vec![1, 3, 2], vec![1.0, 1.0, 1.0]));
        pool.add(RouteDelivery::new(&i, vec![3], vec![1.0]));
        let (left, right) = branch(&BranchConstraints::new(3), BranchObject::edge(1, 2));
        let left = filter_pool(&pool, &left.unwrap());
        let right = filter_pool(&pool, &right.unwrap());
        assert!(left.columns().iter().all(|c| c.nodes != vec![1, 2]));
        assert!(left.columns().iter().any(|c| c.nodes == vec![1, 3, 2]));
        assert!(right.columns().iter().all(|c| c.nodes != vec![1, 3, 2]));
        assert!(right.columns().iter().any(|c| c.nodes == vec![3]));
    }

    #[test]
    fn aggregates_both_directions() {
        let i = inst();
        let mut pool = ColumnPool::new();
        pool.add(RouteDelivery::new(&i, vec![1, 2], vec![1.0, 1.0]));
        pool.add(RouteDelivery::new(&i, vec![2, 1], vec![0.5, 0.5]));
        let v = aggregate_arc_values(&pool, &[0.5, 0.5]);
        let edge = v
            .iter()
            .find(|(o, _)| *o == BranchObject::edge(1, 2))
            .unwrap();
        assert!((edge.1 - 1.0).abs() < 1e-12);
        let out1 = v
            .iter()
            .find(|(o, _)| *o == BranchObject::DepotOut(1))
            .unwrap();
        assert!((out1.1 - 0.5).abs() < 1e-12);
    }
}
