use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Instance, Objective};

/// One vehicle route plus the amounts it delivers.
///
/// `nodes` lists shelters (1-based) in visiting order; the depot is implicit
/// at both ends. `deliveries[k]` is the amount left at `nodes[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteDelivery {
    pub nodes: Vec<usize>,
    #[serde(rename = "q")]
    pub deliveries: Vec<f64>,
    pub duration: f64,
}

impl RouteDelivery {
    pub fn new(inst: &Instance, nodes: Vec<usize>, deliveries: Vec<f64>) -> Self {
        debug_assert_eq!(nodes.len(), deliveries.len());
        let duration = inst.route_duration(&nodes);
        Self {
            nodes,
            deliveries,
            duration,
        }
    }

    pub fn total_delivery(&self) -> f64 {
        self.deliveries.iter().sum()
    }

    /// Bit `i - 1` is set for every visited shelter `i`.
    pub fn node_mask(&self) -> u64 {
        self.nodes.iter().fold(0u64, |m, &i| m | (1u64 << (i - 1)))
    }

    /// Delivery to shelter `node`, zero when not visited.
    pub fn delivery_to(&self, node: usize) -> f64 {
        self.nodes
            .iter()
            .position(|&i| i == node)
            .map_or(0.0, |k| self.deliveries[k])
    }

    /// Arcs traversed, depot as node 0.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let first = self.nodes.first().map(|&f| (0, f));
        let last = self.nodes.last().map(|&l| (l, 0));
        first
            .into_iter()
            .chain(self.nodes.windows(2).map(|w| (w[0], w[1])))
            .chain(last)
    }

    /// Checks the stand-alone feasibility of a route-delivery.
    pub fn check(&self, inst: &Instance) -> Result<(), Violation> {
        if self.nodes.is_empty() {
            return Err(Violation::new("route_nonempty", "route visits no shelter"));
        }
        if self.nodes.len() != self.deliveries.len() {
            return Err(Violation::new(
                "delivery_vector",
                format!(
                    "{} nodes but {} delivery amounts",
                    self.nodes.len(),
                    self.deliveries.len()
                ),
            ));
        }
        let mut seen = vec![false; inst.n + 1];
        for &i in &self.nodes {
            if i == 0 || i > inst.n {
                return Err(Violation::new(
                    "node_range",
                    format!("node {i} is not a shelter"),
                ));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Violation::new(
                    "distinct_nodes",
                    format!("shelter {i} repeated"),
                ));
            }
        }
        let duration = inst.route_duration(&self.nodes);
        if (duration - self.duration).abs() > 1e-6 * (1.0 + duration) {
            return Err(Violation::new(
                "route_duration",
                format!("stated {} but route takes {duration}", self.duration),
            ));
        }
        if duration > inst.psi + 1e-9 * (1.0 + inst.psi) {
            return Err(Violation::new(
                "route_length",
                format!("duration {duration} exceeds psi {}", inst.psi),
            ));
        }
        for (&i, &q) in self.nodes.iter().zip(&self.deliveries) {
            let d = inst.demand(i);
            if !(q >= -1e-9 && q <= d + 1e-9 * (1.0 + d)) {
                return Err(Violation::new(
                    "demand_bound",
                    format!("delivery {q} to shelter {i} outside [0, {d}]"),
                ));
            }
        }
        let load = self.total_delivery();
        if load > inst.capacity + 1e-9 * (1.0 + inst.capacity) {
            return Err(Violation::new(
                "capacity",
                format!("load {load} exceeds capacity {}", inst.capacity),
            ));
        }
        Ok(())
    }
}

/// A complete plan: routes that partition the shelters, the delivery vector
/// and both objective values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub routes: Vec<RouteDelivery>,
    #[serde(rename = "v")]
    pub deliveries: Vec<f64>,
    pub total_time: f64,
    /// `D * I(v)` under the instance's `lambda`.
    pub iaaf: f64,
}

impl Solution {
    /// Assembles a solution; `v` is read off the route deliveries.
    pub fn from_routes(inst: &Instance, routes: Vec<RouteDelivery>) -> Self {
        let mut v = vec![0.0; inst.n];
        for r in &routes {
            for (&i, &q) in r.nodes.iter().zip(&r.deliveries) {
                v[i - 1] += q;
            }
        }
        let total_time = routes.iter().map(|r| r.duration).sum();
        let iaaf = Objective::iaaf(inst.lambda).evaluate(&inst.demands, &v);
        Self {
            routes,
            deliveries: v,
            total_time,
            iaaf,
        }
    }

    pub fn objective_value(&self, inst: &Instance, objective: &Objective) -> f64 {
        objective.evaluate(&inst.demands, &self.deliveries)
    }

    pub fn total_delivery(&self) -> f64 {
        self.deliveries.iter().sum()
    }

    pub fn node_sequences(&self) -> Vec<Vec<usize>> {
        self.routes.iter().map(|r| r.nodes.clone()).collect()
    }
}

/// Sum of route durations.
pub fn total_time(inst: &Instance, solution: &Solution) -> f64 {
    solution
        .routes
        .iter()
        .map(|r| inst.route_duration(&r.nodes))
        .sum()
}

/// A named constraint that a solution breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: &'static str,
    pub detail: String,
}

impl Violation {
    pub fn new(constraint: &'static str, detail: impl Into<String>) -> Self {
        Self {
            constraint,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.constraint, self.detail)
    }
}

impl std::error::Error for Violation {}

/// Full feasibility check of a solution against the instance with the
/// total-travel-time bound `epsilon`.
pub fn validate_solution(inst: &Instance, sol: &Solution, epsilon: f64) -> Result<(), Violation> {
    let mut covered = vec![0usize; inst.n + 1];
    for r in &sol.routes {
        r.check(inst)?;
        for &i in &r.nodes {
            covered[i] += 1;
        }
    }
    if let Some(i) = (1..=inst.n).find(|&i| covered[i] != 1) {
        return Err(Violation::new(
            "cover",
            format!("shelter {i} visited {} times", covered[i]),
        ));
    }
    if sol.routes.len() > inst.m {
        return Err(Violation::new(
            "fleet",
            format!("{} routes but only {} vehicles", sol.routes.len(), inst.m),
        ));
    }
    if sol.deliveries.len() != inst.n {
        return Err(Violation::new(
            "delivery_vector",
            format!(
                "v has {} entries, expected {}",
                sol.deliveries.len(),
                inst.n
            ),
        ));
    }
    for r in &sol.routes {
        for (&i, &q) in r.nodes.iter().zip(&r.deliveries) {
            if (sol.deliveries[i - 1] - q).abs() > 1e-9 * (1.0 + q.abs()) {
                return Err(Violation::new(
                    "delivery_vector",
                    format!(
                        "v[{i}] = {} but its route delivers {q}",
                        sol.deliveries[i - 1]
                    ),
                ));
            }
        }
    }
    let supplied: f64 = sol.deliveries.iter().sum();
    if supplied > inst.supply + 1e-9 * (1.0 + inst.supply) {
        return Err(Violation::new(
            "supply",
            format!("delivers {supplied} but supply is {}", inst.supply),
        ));
    }
    let time = total_time(inst, sol);
    if (time - sol.total_time).abs() > 1e-6 * (1.0 + time) {
        return Err(Violation::new(
            "total_time_value",
            format!(
                "stated total time {} but routes take {time}",
                sol.total_time
            ),
        ));
    }
    if time > epsilon + 1e-9 * (1.0 + epsilon.abs()) {
        return Err(Violation::new(
            "total_time",
            format!("total time {time} exceeds epsilon {epsilon}"),
        ));
    }
    let iaaf = Objective::iaaf(inst.lambda).evaluate(&inst.demands, &sol.deliveries);
    if (iaaf - sol.iaaf).abs() > 1e-6 * (1.0 + iaaf) {
        return Err(Violation::new(
            "objective",
            format!("stated iaaf {} but deliveries evaluate to {iaaf}", sol.iaaf),
        ));
    }
    Ok(())
}
