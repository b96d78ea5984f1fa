//! Branching restrictions shared by pricing, construction and the tree search.

use serde::{Deserialize, Serialize};

/// Something the tree search can branch on.
///
/// `Edge(i, j)` with `i < j` is the undirected shelter edge whose value is
/// `x_ij + x_ji`. Depot arcs stay directed: `DepotOut(j)` is `(0, j)` and
/// `DepotIn(j)` is `(j, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchObject {
    Edge(usize, usize),
    DepotOut(usize),
    DepotIn(usize),
}

impl BranchObject {
    pub fn edge(i: usize, j: usize) -> Self {
        Self::Edge(i.min(j), i.max(j))
    }

    /// The arc-style pair used for lexicographic tie-breaking.
    pub fn key(&self) -> (usize, usize) {
        match *self {
            Self::Edge(i, j) => (i, j),
            Self::DepotOut(j) => (0, j),
            Self::DepotIn(j) => (j, 0),
        }
    }

    /// Branch object for the arc `(from, to)`.
    pub fn of_arc(from: usize, to: usize) -> Self {
        match (from, to) {
            (0, j) => Self::DepotOut(j),
            (i, 0) => Self::DepotIn(i),
            (i, j) => Self::edge(i, j),
        }
    }
}

/// Forbidden arcs and forced adjacencies active at a tree node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchConstraints {
    n: usize,
    forbidden: Vec<Vec<bool>>,
    partners: Vec<Vec<usize>>,
    first: Vec<bool>,
    last: Vec<bool>,
}

impl BranchConstraints {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            forbidden: vec![vec![false; n + 1]; n + 1],
            partners: vec![Vec::new(); n + 1],
            first: vec![false; n + 1],
            last: vec![false; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.forbidden.iter().flatten().all(|f| !f)
            && self.partners.iter().all(Vec::is_empty)
            && !self.first.iter().any(|&f| f)
            && !self.last.iter().any(|&f| f)
    }

    #[inline]
    pub fn arc_allowed(&self, from: usize, to: usize) -> bool {
        !self.forbidden[from][to]
    }

    /// Shelters that must sit next to `node` in its route.
    #[inline]
    pub fn partners(&self, node: usize) -> &[usize] {
        &self.partners[node]
    }

    /// `node` must be the first shelter of its route.
    #[inline]
    pub fn must_be_first(&self, node: usize) -> bool {
        self.first[node]
    }

    /// `node` must be the last shelter of its route.
    #[inline]
    pub fn must_be_last(&self, node: usize) -> bool {
        self.last[node]
    }

    pub fn has_forced(&self, node: usize) -> bool {
        !self.partners[node].is_empty() || self.first[node] || self.last[node]
    }

    pub fn forbid(&mut self, object: BranchObject) {
        match object {
            BranchObject::Edge(i, j) => {
                self.forbidden[i][j] = true;
                self.forbidden[j][i] = true;
            }
            BranchObject::DepotOut(j) => self.forbidden[0][j] = true,
            BranchObject::DepotIn(j) => self.forbidden[j][0] = true,
        }
    }

    pub fn force(&mut self, object: BranchObject) {
        match object {
            BranchObject::Edge(i, j) => {
                if !self.partners[i].contains(&j) {
                    self.partners[i].push(j);
                    self.partners[j].push(i);
                }
            }
            BranchObject::DepotOut(j) => self.first[j] = true,
            BranchObject::DepotIn(j) => self.last[j] = true,
        }
    }

    /// Detects contradictions that make every route set infeasible: a shelter
    /// with more than two forced neighbours, forced shelter edges closing a
    /// cycle that avoids the depot, a chain with two forced starts or ends, or
    /// a forced adjacency whose arcs are all forbidden.
    pub fn is_consistent(&self) -> bool {
        for v in 1..=self.n {
            let degree = self.partners[v].len() + self.first[v] as usize + self.last[v] as usize;
            if degree > 2 {
                return false;
            }
            if self.first[v] && self.forbidden[0][v] {
                return false;
            }
            if self.last[v] && self.forbidden[v][0] {
                return false;
            }
            for &p in &self.partners[v] {
                if self.forbidden[v][p] && self.forbidden[p][v] {
                    return false;
                }
            }
        }
        let mut seen = vec![false; self.n + 1];
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let component = self.component(start, &mut seen);
            let edges: usize = component
                .iter()
                .map(|&v| self.partners[v].len())
                .sum::<usize>()
                / 2;
            if edges >= component.len() {
                return false;
            }
            let firsts = component.iter().filter(|&&v| self.first[v]).count();
            let lasts = component.iter().filter(|&&v| self.last[v]).count();
            if firsts > 1 || lasts > 1 {
                return false;
            }
        }
        true
    }

    fn component(&self, start: usize, seen: &mut [bool]) -> Vec<usize> {
        let mut stack = vec![start];
        let mut out = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            out.push(v);
            for &p in &self.partners[v] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        out
    }

    /// Forced chains as ordered paths covering every shelter. A chain with a
    /// forced first shelter starts with it; otherwise a chain with a forced
    /// last shelter ends with it. Requires `is_consistent()`.
    pub fn units(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut units = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let component = self.component(start, &mut seen);
            let end = component
                .iter()
                .copied()
                .filter(|&v| self.partners[v].len() <= 1)
                .min()
                .unwrap_or(start);
            let mut path = vec![end];
            let mut prev = 0;
            let mut cur = end;
            while let Some(&next) = self.partners[cur].iter().find(|&&p| p != prev) {
                path.push(next);
                prev = cur;
                cur = next;
            }
            let head = path[0];
            let tail = *path.last().unwrap();
            let wrong_way = (self.first[tail] && !self.first[head])
                || (self.last[head] && !self.last[tail] && !self.first[head]);
            if wrong_way {
                path.reverse();
            }
            units.push(path);
        }
        units.sort_by_key(|u| u[0]);
        units
    }

    /// True when `nodes` (depot implicit at both ends) uses no forbidden arc,
    /// keeps every forced partner adjacent and honours forced first/last
    /// positions.
    pub fn route_admissible(&self, nodes: &[usize]) -> bool {
        let Some((&head, &tail)) = nodes.first().zip(nodes.last()) else {
            return true;
        };
        if !self.arc_allowed(0, head) || !self.arc_allowed(tail, 0) {
            return false;
        }
        if nodes.windows(2).any(|w| !self.arc_allowed(w[0], w[1])) {
            return false;
        }
        for (k, &v) in nodes.iter().enumerate() {
            if self.first[v] && k != 0 {
                return false;
            }
            if self.last[v] && k + 1 != nodes.len() {
                return false;
            }
            for &p in &self.partners[v] {
                let before = k > 0 && nodes[k - 1] == p;
                let after = k + 1 < nodes.len() && nodes[k + 1] == p;
                if !before && !after {
                    return false;
                }
            }
        }
        true
    }
}
