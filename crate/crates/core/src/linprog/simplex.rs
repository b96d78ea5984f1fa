//! Revised primal simplex for bounded variables.
//!
//! Every row `i` gets a slack `s_i` so that `A x + s = b`, with `s_i` in
//! `[0, inf)` for `<=`, `(-inf, 0]` for `>=` and `[0, 0]` for `=`. Rows whose
//! slack cannot absorb the initial residual get an artificial `sigma_i e_i`
//! and phase 1 drives the artificials to zero. The basis inverse is kept
//! explicitly and refreshed by Gauss-Jordan elimination every few dozen
//! pivots. Pricing is Dantzig with a Harris two-pass ratio test. A first run
//! of degenerate pivots widens every finite bound by a small pseudo-random
//! amount; the widened problem is a relaxation, so its optimum is still a
//! valid lower bound. At its optimum the original bounds are restored when
//! the basis stays feasible under them. Later degenerate runs switch to
//! Bland's rule until progress resumes.

use super::{Basis, BasisVar, LinearProgram, LpResult, LpStatus, RowKind};

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    pub refactor_every: usize,
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200_000,
            refactor_every: 64,
            feasibility_tol: 1e-9,
            optimality_tol: 1e-9,
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> LpResult {
    solve_lp_from(lp, None, &SimplexOptions::default())
}

/// Solves `lp`, starting from `warm` when it yields a primal feasible basis.
pub fn solve_lp_from(lp: &LinearProgram, warm: Option<&Basis>, opts: &SimplexOptions) -> LpResult {
    if let Err(msg) = lp.check() {
        debug_assert!(false, "malformed LP: {msg}");
        return failure(lp, LpStatus::NumericalFailure, 0);
    }
    let mut engine = Engine::new(lp, *opts);
    let warm_ok = warm.is_some_and(|b| engine.warm_start(b));
    if !warm_ok {
        engine.cold_start();
        if engine.needs_phase_one() {
            match engine.run() {
                LpStatus::Optimal => {}
                status => return failure(lp, status, engine.iterations),
            }
            let infeasibility: f64 = (0..engine.m).map(|i| engine.x[engine.art(i)]).sum();
            let scale = 1.0 + lp.rows.iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
            if infeasibility > 1e-8 * scale {
                return failure(lp, LpStatus::Infeasible, engine.iterations);
            }
        }
    }
    engine.enter_phase_two();
    let status = engine.run();
    engine.result(status)
}

fn failure(lp: &LinearProgram, status: LpStatus, iterations: usize) -> LpResult {
    LpResult {
        status,
        x: vec![0.0; lp.num_vars()],
        duals: vec![0.0; lp.num_rows()],
        objective: f64::NAN,
        iterations,
        basis: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic,
    Lower,
    Upper,
    Free,
}

struct Engine<'a> {
    lp: &'a LinearProgram,
    opts: SimplexOptions,
    m: usize,
    ns: usize,
    cols: Vec<Vec<(usize, f64)>>,
    art_sign: Vec<f64>,
    lo: Vec<f64>,
    up: Vec<f64>,
    cost: Vec<f64>,
    b: Vec<f64>,
    x: Vec<f64>,
    state: Vec<State>,
    head: Vec<usize>,
    binv: Vec<f64>,
    iterations: usize,
    since_refactor: usize,
    phase_one: bool,
    /// Original bounds while the bounds are widened.
    saved_bounds: Option<(Vec<f64>, Vec<f64>)>,
    may_perturb: bool,
}

impl<'a> Engine<'a> {
    fn new(lp: &'a LinearProgram, opts: SimplexOptions) -> Self {
        let m = lp.num_rows();
        let ns = lp.num_vars();
        let nv = ns + 2 * m;
        let mut cols = vec![Vec::new(); ns];
        for (i, row) in lp.rows.iter().enumerate() {
            for &(j, a) in &row.coeffs {
                if a != 0.0 {
                    cols[j].push((i, a));
                }
            }
        }
        let mut lo = lp.lower.clone();
        let mut up = lp.upper.clone();
        lo.resize(nv, 0.0);
        up.resize(nv, 0.0);
        for (i, row) in lp.rows.iter().enumerate() {
            let (l, u) = match row.kind {
                RowKind::Le => (0.0, f64::INFINITY),
                RowKind::Ge => (f64::NEG_INFINITY, 0.0),
                RowKind::Eq => (0.0, 0.0),
            };
            lo[ns + i] = l;
            up[ns + i] = u;
        }
        Self {
            lp,
            opts,
            m,
            ns,
            cols,
            art_sign: vec![1.0; m],
            lo,
            up,
            cost: vec![0.0; nv],
            b: lp.rows.iter().map(|r| r.rhs).collect(),
            x: vec![0.0; nv],
            state: vec![State::Lower; nv],
            head: Vec::with_capacity(m),
            binv: vec![0.0; m * m],
            iterations: 0,
            since_refactor: 0,
            phase_one: false,
            saved_bounds: None,
            may_perturb: true,
        }
    }

    #[inline]
    fn slack(&self, i: usize) -> usize {
        self.ns + i
    }

    #[inline]
    fn art(&self, i: usize) -> usize {
        self.ns + self.m + i
    }

    fn for_each_entry(&self, j: usize, mut f: impl FnMut(usize, f64)) {
        if j < self.ns {
            for &(i, a) in &self.cols[j] {
                f(i, a);
            }
        } else if j < self.ns + self.m {
            f(j - self.ns, 1.0);
        } else {
            let i = j - self.ns - self.m;
            f(i, self.art_sign[i]);
        }
    }

    fn col_dot(&self, j: usize, y: &[f64]) -> f64 {
        let mut s = 0.0;
        self.for_each_entry(j, |i, a| s += a * y[i]);
        s
    }

    fn nonbasic_state(&self, j: usize) -> (State, f64) {
        if self.lo[j].is_finite() {
            (State::Lower, self.lo[j])
        } else if self.up[j].is_finite() {
            (State::Upper, self.up[j])
        } else {
            (State::Free, 0.0)
        }
    }

    fn cold_start(&mut self) {
        let nv = self.ns + 2 * self.m;
        for j in 0..nv {
            let (s, v) = self.nonbasic_state(j);
            self.state[j] = s;
            self.x[j] = v;
        }
        for i in 0..self.m {
            let a = self.art(i);
            self.lo[a] = 0.0;
            self.up[a] = f64::INFINITY;
            self.state[a] = State::Lower;
            self.x[a] = 0.0;
        }
        let residual = self.residual();
        self.head.clear();
        self.binv.iter_mut().for_each(|v| *v = 0.0);
        for (i, &r) in residual.iter().enumerate() {
            let s = self.slack(i);
            let slack_fits = r >= self.lo[s] && r <= self.up[s];
            if slack_fits {
                self.head.push(s);
                self.state[s] = State::Basic;
                self.x[s] = r;
                self.binv[i * self.m + i] = 1.0;
            } else {
                let a = self.art(i);
                let sign = if r < 0.0 { -1.0 } else { 1.0 };
                self.art_sign[i] = sign;
                self.head.push(a);
                self.state[a] = State::Basic;
                self.x[a] = r.abs();
                self.binv[i * self.m + i] = sign;
            }
        }
        for i in 0..self.m {
            let a = self.art(i);
            self.cost[a] = 1.0;
        }
        for j in 0..self.ns + self.m {
            self.cost[j] = 0.0;
        }
        self.since_refactor = 0;
        self.phase_one = true;
    }

    fn needs_phase_one(&self) -> bool {
        (0..self.m).any(|i| self.state[self.art(i)] == State::Basic)
    }

    fn enter_phase_two(&mut self) {
        self.phase_one = false;
        for i in 0..self.m {
            let a = self.art(i);
            self.lo[a] = 0.0;
            self.up[a] = 0.0;
            self.cost[a] = 0.0;
            if self.state[a] != State::Basic {
                self.state[a] = State::Lower;
                self.x[a] = 0.0;
            }
        }
        for j in 0..self.ns {
            self.cost[j] = self.lp.objective[j];
        }
        for i in 0..self.m {
            let s = self.slack(i);
            self.cost[s] = 0.0;
        }
    }

    fn warm_start(&mut self, basis: &Basis) -> bool {
        if basis.basic.len() != self.m {
            return false;
        }
        let nv = self.ns + 2 * self.m;
        for i in 0..self.m {
            let a = self.art(i);
            self.lo[a] = 0.0;
            self.up[a] = 0.0;
            self.art_sign[i] = 1.0;
        }
        for j in 0..nv {
            let (s, v) = self.nonbasic_state(j);
            self.state[j] = s;
            self.x[j] = v;
        }
        for &j in &basis.at_upper {
            if j < self.ns && self.up[j].is_finite() {
                self.state[j] = State::Upper;
                self.x[j] = self.up[j];
            }
        }
        self.head.clear();
        for &bv in &basis.basic {
            let j = match bv {
                BasisVar::Structural(j) if j < self.ns => j,
                BasisVar::Slack(i) if i < self.m => self.slack(i),
                BasisVar::Artificial(i) if i < self.m => self.art(i),
                _ => return false,
            };
            if self.state[j] == State::Basic {
                return false;
            }
            self.state[j] = State::Basic;
            self.head.push(j);
        }
        if !self.refactor() {
            return false;
        }
        let tol = 1e-9;
        self.head.iter().all(|&j| {
            self.x[j] >= self.lo[j] - tol * (1.0 + self.lo[j].abs())
                && self.x[j] <= self.up[j] + tol * (1.0 + self.up[j].abs())
        })
    }

    /// `b - N x_N` over nonbasic variables.
    fn residual(&self) -> Vec<f64> {
        let mut r = self.b.clone();
        for j in 0..self.ns + 2 * self.m {
            if self.state[j] != State::Basic && self.x[j] != 0.0 {
                let xj = self.x[j];
                self.for_each_entry(j, |i, a| r[i] -= a * xj);
            }
        }
        r
    }

    /// Rebuilds the basis inverse and the basic values. False when singular.
    fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (c, &j) in self.head.iter().enumerate() {
            let mut col = vec![0.0; m];
            self.for_each_entry(j, |i, v| col[i] = v);
            for (i, v) in col.into_iter().enumerate() {
                a[i * m + c] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&r1, &r2| a[r1 * m + c].abs().total_cmp(&a[r2 * m + c].abs()))
                .unwrap();
            if a[p * m + c].abs() < 1e-11 {
                return false;
            }
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                    inv.swap(p * m + k, c * m + k);
                }
            }
            let piv = a[c * m + c];
            for k in 0..m {
                a[c * m + k] /= piv;
                inv[c * m + k] /= piv;
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c];
                if f != 0.0 {
                    for k in 0..m {
                        a[r * m + k] -= f * a[c * m + k];
                        inv[r * m + k] -= f * inv[c * m + k];
                    }
                }
            }
        }
        // Row c of inv now maps b to the value of the basic variable in slot c.
        self.binv = inv;
        let r = self.residual();
        for c in 0..m {
            let v: f64 = (0..m).map(|i| self.binv[c * m + i] * r[i]).sum();
            self.x[self.head[c]] = v;
        }
        self.since_refactor = 0;
        true
    }

    fn duals(&self) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (r, &j) in self.head.iter().enumerate() {
            let c = self.cost[j];
            if c != 0.0 {
                for i in 0..m {
                    y[i] += c * self.binv[r * m + i];
                }
            }
        }
        y
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut alpha = vec![0.0; m];
        self.for_each_entry(j, |i, a| {
            for (r, al) in alpha.iter_mut().enumerate() {
                *al += self.binv[r * m + i] * a;
            }
        });
        alpha
    }

    /// Entering variable, direction and reduced cost magnitude.
    fn price(&self, y: &[f64], bland: bool) -> Option<(usize, f64, f64)> {
        let tol = self.opts.optimality_tol;
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.ns + 2 * self.m {
            let s = self.state[j];
            if s == State::Basic || self.lo[j] == self.up[j] {
                continue;
            }
            let d = self.cost[j] - self.col_dot(j, y);
            let dir = if d < -tol && matches!(s, State::Lower | State::Free) {
                1.0
            } else if d > tol && matches!(s, State::Upper | State::Free) {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir, d.abs()));
            }
            if best.is_none_or(|(_, _, bd)| d.abs() > bd) {
                best = Some((j, dir, d.abs()));
            }
        }
        best
    }

    fn current_objective(&self) -> f64 {
        (0..self.ns + 2 * self.m)
            .map(|j| self.cost[j] * self.x[j])
            .sum()
    }

    /// Moves nonbasic variables onto their current bounds and recomputes the
    /// basic values.
    fn reposition(&mut self) -> bool {
        for j in 0..self.ns + 2 * self.m {
            match self.state[j] {
                State::Lower => self.x[j] = self.lo[j],
                State::Upper => self.x[j] = self.up[j],
                State::Basic | State::Free => {}
            }
        }
        self.refactor()
    }

    /// Widens the finite bounds of structurals and slacks by pseudo-random
    /// amounts between 1e-8 and 2e-8 relative to the bound.
    fn widen_bounds(&mut self) -> bool {
        self.saved_bounds = Some((self.lo.clone(), self.up.clone()));
        let mut h: u64 = 0x2545_F491_4F6C_DD1D;
        for j in 0..self.ns + self.m {
            h ^= h << 13;
            h ^= h >> 7;
            h ^= h << 17;
            let u = 1.0 + (h >> 11) as f64 / (1u64 << 53) as f64;
            if self.lo[j].is_finite() {
                self.lo[j] -= 1e-8 * u * (1.0 + self.lo[j].abs());
            }
            if self.up[j].is_finite() {
                self.up[j] += 1e-8 * u * (1.0 + self.up[j].abs());
            }
        }
        self.reposition()
    }

    /// Restores the original bounds. Returns false, keeping the widened
    /// bounds and the current point, when the basis would become infeasible.
    fn restore_bounds(&mut self) -> bool {
        let Some((lo, up)) = self.saved_bounds.take() else {
            return false;
        };
        let widened = (
            std::mem::replace(&mut self.lo, lo),
            std::mem::replace(&mut self.up, up),
        );
        let x = self.x.clone();
        let tol = self.opts.feasibility_tol;
        let feasible = self.reposition()
            && self.head.iter().all(|&j| {
                self.x[j] >= self.lo[j] - tol * (1.0 + self.lo[j].abs())
                    && self.x[j] <= self.up[j] + tol * (1.0 + self.up[j].abs())
            });
        if !feasible {
            (self.lo, self.up) = widened;
            self.x = x;
            self.refactor();
        }
        feasible
    }

    fn run(&mut self) -> LpStatus {
        let mut degenerate = 0usize;
        let mut bland = false;
        let mut confirmed = false;
        let mut objective = self.current_objective();
        let rhs_scale = 1.0 + self.b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        loop {
            if self.iterations >= self.opts.max_iterations {
                return LpStatus::IterationLimit;
            }
            let mut optimal = false;
            if self.phase_one {
                let infeasibility: f64 = (0..self.m).map(|i| self.x[self.art(i)]).sum();
                optimal = infeasibility <= 1e-11 * rhs_scale;
            }
            let y = self.duals();
            let entering = if optimal { None } else { self.price(&y, bland) };
            let Some((q, dir, dq)) = entering else {
                if optimal || self.since_refactor == 0 || confirmed {
                    if self.saved_bounds.is_some() && self.restore_bounds() {
                        objective = self.current_objective();
                        degenerate = 0;
                        bland = false;
                        confirmed = false;
                        continue;
                    }
                    return LpStatus::Optimal;
                }
                if !self.refactor() {
                    return LpStatus::NumericalFailure;
                }
                confirmed = true;
                continue;
            };
            confirmed = false;
            let alpha = self.ftran(q);
            let amax = alpha.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
            let piv_tol = 1e-9 * amax.max(1.0);
            let ftol = self.opts.feasibility_tol;

            // Pass 1: largest step with bounds relaxed by the feasibility tolerance.
            let mut theta_max = f64::INFINITY;
            for (r, &a) in alpha.iter().enumerate() {
                let g = -dir * a;
                let k = self.head[r];
                if g < -piv_tol && self.lo[k].is_finite() {
                    theta_max = theta_max.min((self.x[k] - self.lo[k] + ftol) / -g);
                } else if g > piv_tol && self.up[k].is_finite() {
                    theta_max = theta_max.min((self.up[k] - self.x[k] + ftol) / g);
                }
            }
            // Pass 2: among rows blocking within theta_max, the largest pivot.
            let mut leave: Option<(usize, f64)> = None;
            let mut best_key = (f64::NEG_INFINITY, usize::MAX);
            for (r, &a) in alpha.iter().enumerate() {
                let g = -dir * a;
                let k = self.head[r];
                let ratio = if g < -piv_tol && self.lo[k].is_finite() {
                    (self.x[k] - self.lo[k]) / -g
                } else if g > piv_tol && self.up[k].is_finite() {
                    (self.up[k] - self.x[k]) / g
                } else {
                    continue;
                };
                if bland {
                    let better = match leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - 1e-12 || (ratio <= lratio + 1e-12 && k < self.head[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                } else if ratio <= theta_max {
                    let key = (g.abs(), usize::MAX - k);
                    if key.0 > best_key.0 || (key.0 == best_key.0 && key.1 > best_key.1) {
                        best_key = key;
                        leave = Some((r, ratio));
                    }
                }
            }
            let range = self.up[q] - self.lo[q];
            let blocking = leave.map_or(f64::INFINITY, |(_, ratio)| ratio.max(0.0));
            let flip = range.is_finite() && range <= blocking;
            if leave.is_none() && !range.is_finite() {
                return LpStatus::Unbounded;
            }
            let step = if flip || leave.is_none() {
                range
            } else {
                blocking
            };

            self.x[q] += dir * step;
            if step != 0.0 {
                for (r, &a) in alpha.iter().enumerate() {
                    if a != 0.0 {
                        let k = self.head[r];
                        self.x[k] -= dir * a * step;
                    }
                }
            }
            if flip || leave.is_none() {
                if dir > 0.0 {
                    self.state[q] = State::Upper;
                    self.x[q] = self.up[q];
                } else {
                    self.state[q] = State::Lower;
                    self.x[q] = self.lo[q];
                }
            } else {
                let (p, _) = leave.unwrap();
                let k = self.head[p];
                if -dir * alpha[p] < 0.0 {
                    self.state[k] = State::Lower;
                    self.x[k] = self.lo[k];
                } else {
                    self.state[k] = State::Upper;
                    self.x[k] = self.up[k];
                }
                self.head[p] = q;
                self.state[q] = State::Basic;
                self.pivot(p, &alpha);
            }
            self.iterations += 1;
            self.since_refactor += 1;

            // Pivots whose objective gain is negligible count as degenerate so
            // that tiny numerical moves cannot mask cycling.
            let gain = dq * step;
            objective -= gain;
            if step <= ftol || gain <= 1e-10 * (1.0 + objective.abs()) {
                degenerate += 1;
                if degenerate > 3 * self.m.max(1) {
                    if self.may_perturb {
                        self.may_perturb = false;
                        if !self.widen_bounds() {
                            return LpStatus::NumericalFailure;
                        }
                        objective = self.current_objective();
                        degenerate = 0;
                        continue;
                    }
                    bland = true;
                }
            } else {
                degenerate = 0;
                bland = false;
            }
            if self.since_refactor >= self.opts.refactor_every && !self.refactor() {
                return LpStatus::NumericalFailure;
            }
        }
    }

    fn pivot(&mut self, p: usize, alpha: &[f64]) {
        let m = self.m;
        let piv = alpha[p];
        for k in 0..m {
            self.binv[p * m + k] /= piv;
        }
        let (before, rest) = self.binv.split_at_mut(p * m);
        let (prow, after) = rest.split_at_mut(m);
        for (r, chunk) in before.chunks_mut(m).enumerate() {
            let f = alpha[r];
            if f != 0.0 {
                for k in 0..m {
                    chunk[k] -= f * prow[k];
                }
            }
        }
        for (off, chunk) in after.chunks_mut(m).enumerate() {
            let f = alpha[p + 1 + off];
            if f != 0.0 {
                for k in 0..m {
                    chunk[k] -= f * prow[k];
                }
            }
        }
    }

    fn result(mut self, status: LpStatus) -> LpResult {
        if status == LpStatus::Optimal && self.since_refactor > 0 && !self.refactor() {
            return failure(self.lp, LpStatus::NumericalFailure, self.iterations);
        }
        let x: Vec<f64> = self.x[..self.ns].to_vec();
        let duals = if status == LpStatus::Optimal {
            self.duals()
        } else {
            vec![0.0; self.m]
        };
        let objective = if status == LpStatus::Optimal {
            self.lp.objective_value(&x)
        } else if status == LpStatus::Unbounded {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        };
        let basis = (status == LpStatus::Optimal).then(|| Basis {
            basic: self
                .head
                .iter()
                .map(|&j| {
                    if j < self.ns {
                        BasisVar::Structural(j)
                    } else if j < self.ns + self.m {
                        BasisVar::Slack(j - self.ns)
                    } else {
                        BasisVar::Artificial(j - self.ns - self.m)
                    }
                })
                .collect(),
            at_upper: (0..self.ns)
                .filter(|&j| self.state[j] == State::Upper)
                .collect(),
        });
        LpResult {
            status,
            x,
            duals,
            objective,
            iterations: self.iterations,
            basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn single_upper_bound_row() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0, 0.0, INF);
        lp.add_row(vec![(x, 1.0)], RowKind::Le, 1.0);
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.x[0] - 1.0).abs() < 1e-12);
        assert!((r.objective + 1.0).abs() < 1e-12);
        assert!((r.duals[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_row() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0, 0.0, INF);
        lp.add_row(vec![(x, 1.0)], RowKind::Le, -1.0);
        assert_eq!(solve_lp(&lp).status, LpStatus::Infeasible);
    }

    #[test]
    fn symmetric_pair() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0, 0.0, INF);
        let y = lp.add_var(-1.0, 0.0, INF);
        lp.add_row(vec![(x, 1.0), (y, 1.0)], RowKind::Le, 1.0);
        let r = solve_lp(&lp);
        assert!((r.objective + 1.0).abs() < 1e-12);
        assert!((r.duals[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0, 0.0, INF);
        let y = lp.add_var(0.0, 0.0, INF);
        lp.add_row(vec![(x, 1.0), (y, -1.0)], RowKind::Le, 1.0);
        assert_eq!(solve_lp(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        let mut lp = LinearProgram::new();
        let x4 = lp.add_var(-0.75, 0.0, INF);
        let x5 = lp.add_var(20.0, 0.0, INF);
        let x6 = lp.add_var(-0.5, 0.0, INF);
        let x7 = lp.add_var(6.0, 0.0, INF);
        lp.add_row(
            vec![(x4, 0.25), (x5, -8.0), (x6, -1.0), (x7, 9.0)],
            RowKind::Le,
            0.0,
        );
        lp.add_row(
            vec![(x4, 0.5), (x5, -12.0), (x6, -0.5), (x7, 3.0)],
            RowKind::Le,
            0.0,
        );
        lp.add_row(vec![(x6, 1.0)], RowKind::Le, 1.0);
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!((r.objective + 1.25).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows_with_free_variable() {
        // min x + 2y s.t. x + y = 3, x - y >= -1, y free, x in [0, 10]
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0, 0.0, 10.0);
        let y = lp.add_var(2.0, f64::NEG_INFINITY, INF);
        lp.add_row(vec![(x, 1.0), (y, 1.0)], RowKind::Eq, 3.0);
        lp.add_row(vec![(x, 1.0), (y, -1.0)], RowKind::Le, 10.0);
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Optimal);
        // y as small as possible: x = 10, y = -7 hits the bound on x and x - y = 17 > 10,
        // so the <= row binds: x - y = 10, x + y = 3 -> x = 6.5, y = -3.5.
        assert!((r.x[0] - 6.5).abs() < 1e-9);
        assert!((r.x[1] + 3.5).abs() < 1e-9);
        assert!((r.objective + 0.5).abs() < 1e-9);
    }

    #[test]
    fn upper_bounds_flip() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0, 0.0, 2.0);
        let y = lp.add_var(-1.0, 0.0, 2.0);
        lp.add_row(vec![(x, 1.0), (y, 1.0)], RowKind::Le, 10.0);
        let r = solve_lp(&lp);
        assert!((r.objective + 4.0).abs() < 1e-12);
        assert!(r.duals[0].abs() < 1e-12);
    }

    #[test]
    fn warm_start_after_adding_a_column() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0, 0.0, INF);
        lp.add_row(vec![(x, 2.0)], RowKind::Le, 4.0);
        lp.add_row(vec![(x, 1.0)], RowKind::Ge, 0.5);
        let first = solve_lp(&lp);
        assert!((first.objective + 2.0).abs() < 1e-12);
        let y = lp.add_var(-3.0, 0.0, INF);
        lp.rows[0].coeffs.push((y, 1.0));
        let warm = solve_lp_from(&lp, first.basis.as_ref(), &SimplexOptions::default());
        let cold = solve_lp(&lp);
        assert_eq!(warm.status, LpStatus::Optimal);
        assert!((warm.objective - cold.objective).abs() < 1e-12);
        assert!((warm.objective + 9.5).abs() < 1e-12);
    }
}
