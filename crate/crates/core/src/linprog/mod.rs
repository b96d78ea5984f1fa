//! Dense bounded-variable linear programming.
//!
//! Problems are stated as `min c'x` subject to sparse rows tagged `<=`, `=`
//! or `>=` and per-variable bounds. The solver is a revised primal simplex
//! with an explicit basis inverse; see [`simplex`].

mod simplex;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use simplex::{solve_lp, solve_lp_from, SimplexOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub kind: RowKind,
    pub rhs: f64,
}

/// `min objective'x` over the rows and `lower <= x <= upper`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a variable and returns its index.
    pub fn add_var(&mut self, cost: f64, lower: f64, upper: f64) -> usize {
        self.objective.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        self.objective.len() - 1
    }

    /// Adds a row and returns its index.
    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, kind: RowKind, rhs: f64) -> usize {
        self.rows.push(Row { coeffs, kind, rhs });
        self.rows.len() - 1
    }

    /// Structural checks: finite data, consistent bounds, indices in range.
    pub fn check(&self) -> Result<(), String> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err("bound vectors do not match the objective length".into());
        }
        for j in 0..n {
            if !self.objective[j].is_finite() {
                return Err(format!("objective coefficient {j} is not finite"));
            }
            if self.lower[j].is_nan() || self.upper[j].is_nan() || self.lower[j] > self.upper[j] {
                return Err(format!(
                    "variable {j} has bounds [{}, {}]",
                    self.lower[j], self.upper[j]
                ));
            }
            if self.lower[j] == f64::INFINITY || self.upper[j] == f64::NEG_INFINITY {
                return Err(format!("variable {j} has an empty bound interval"));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if !row.rhs.is_finite() {
                return Err(format!("row {i} has a non-finite right-hand side"));
            }
            for &(j, a) in &row.coeffs {
                if j >= n {
                    return Err(format!("row {i} references variable {j} of {n}"));
                }
                if !a.is_finite() {
                    return Err(format!("row {i} has a non-finite coefficient"));
                }
            }
        }
        Ok(())
    }

    /// Row activities `A x`.
    pub fn activities(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.coeffs.iter().map(|&(j, a)| a * x[j]).sum())
            .collect()
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    /// Renders the problem in CPLEX LP text format.
    pub fn to_lp_text(&self, var_names: &[String], row_names: &[String]) -> String {
        let name = |j: usize| var_names.get(j).cloned().unwrap_or_else(|| format!("x{j}"));
        let mut out = String::from("Minimize\n obj:");
        let term = |out: &mut String, a: f64, j: usize| {
            let sign = if a < 0.0 { '-' } else { '+' };
            let _ = write!(out, " {sign} {} {}", a.abs(), name(j));
        };
        for (j, &c) in self.objective.iter().enumerate() {
            if c != 0.0 {
                term(&mut out, c, j);
            }
        }
        out.push_str("\nSubject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            let rname = row_names.get(i).cloned().unwrap_or_else(|| format!("r{i}"));
            let _ = write!(out, " {rname}:");
            if row.coeffs.is_empty() {
                out.push_str(" 0");
            }
            for &(j, a) in &row.coeffs {
                term(&mut out, a, j);
            }
            let op = match row.kind {
                RowKind::Le => "<=",
                RowKind::Eq => "=",
                RowKind::Ge => ">=",
            };
            let _ = writeln!(out, " {op} {}", row.rhs);
        }
        out.push_str("Bounds\n");
        for j in 0..self.num_vars() {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            let lo_s = if lo == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                lo.to_string()
            };
            let hi_s = if hi == f64::INFINITY {
                "+inf".to_string()
            } else {
                hi.to_string()
            };
            let _ = writeln!(out, " {lo_s} <= {} <= {hi_s}", name(j));
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalFailure,
}

/// A basic variable: a structural column, a row slack or a row artificial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisVar {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

/// Basis snapshot for warm starts: one basic variable per row plus the
/// structural variables resting at their upper bound.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub basic: Vec<BasisVar>,
    pub at_upper: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// One multiplier per row. For a minimisation, `<=` rows carry
    /// nonpositive and `>=` rows nonnegative multipliers.
    pub duals: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub basis: Option<Basis>,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Reduced cost `c_j - y'A_j` of every variable.
    pub fn reduced_costs(&self, lp: &LinearProgram) -> Vec<f64> {
        let mut d = lp.objective.clone();
        for (row, &y) in lp.rows.iter().zip(&self.duals) {
            for &(j, a) in &row.coeffs {
                d[j] -= y * a;
            }
        }
        d
    }
}
