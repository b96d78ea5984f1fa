//! Objective variants, price of fairness and time/equity trade-offs.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::biobjective::ParetoPoint;
use crate::bnp::{fmt_num, solve, BnpConfig, BnpStatus};
use crate::error::{Error, Result};
use crate::master::RmpParams;
use crate::model::{gini_index, Instance, Objective, Solution};

/// Weight of total unmet demand in the equity-only variant. Without it any
/// uniform scaling of the deliveries is optimal, including delivering
/// nothing.
pub const GINI_TIE_BREAK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    MinUnD,
    MinGini,
    MinIAAF,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::MinUnD, Variant::MinGini, Variant::MinIAAF];

    pub fn objective(self, lambda: f64) -> Objective {
        match self {
            Variant::MinUnD => Objective::min_unmet(),
            Variant::MinGini => Objective {
                unmet_weight: GINI_TIE_BREAK,
                lambda: 1.0,
            },
            Variant::MinIAAF => Objective::iaaf(lambda),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::MinUnD => "MinUnD",
            Variant::MinGini => "MinGini",
            Variant::MinIAAF => "MinIAAF",
        };
        f.write_str(s)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub bnp: BnpConfig,
    /// Equity weight of the IAAF variant and of the reported `D * IAAF`.
    pub lambda: f64,
    pub gamma: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            bnp: BnpConfig::default(),
            lambda: 0.5,
            gamma: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantResult {
    pub variant: Variant,
    pub epsilon: f64,
    pub status: BnpStatus,
    pub solution: Option<Solution>,
    /// Total unmet demand.
    pub und: f64,
    pub gini: f64,
    /// `D * IAAF` with the configured equity weight.
    pub d_iaaf: f64,
}

/// Solves one objective variant under travel-time bound `epsilon`. Every
/// variant keeps the route duration, fleet and supply limits.
pub fn solve_variant(
    inst: &Instance,
    variant: Variant,
    epsilon: f64,
    cfg: &AnalysisConfig,
) -> Result<VariantResult> {
    let params = RmpParams {
        epsilon,
        gamma: cfg.gamma,
        theta: epsilon.max(1.0),
        objective: variant.objective(cfg.lambda),
    };
    let report = solve(inst, &params, &cfg.bnp)?;
    let (und, gini, d_iaaf) = match &report.solution {
        Some(sol) => (
            Objective::min_unmet().evaluate(&inst.demands, &sol.deliveries),
            gini_index(inst, &sol.deliveries)?,
            Objective::iaaf(cfg.lambda).evaluate(&inst.demands, &sol.deliveries),
        ),
        None => (f64::NAN, f64::NAN, f64::NAN),
    };
    Ok(VariantResult {
        variant,
        epsilon,
        status: report.status,
        solution: report.solution,
        und,
        gini,
        d_iaaf,
    })
}

pub fn write_variants_csv(results: &[VariantResult], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["variant", "epsilon", "status", "UnD", "Gini", "D*IAAF"])?;
    for r in results {
        w.write_record([
            r.variant.to_string(),
            fmt_num(r.epsilon),
            format!("{:?}", r.status),
            fmt_num(r.und),
            fmt_num(r.gini),
            fmt_num(r.d_iaaf),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Percentage increase of `und` over the efficient `und_min`; `None` when
/// the efficient value is zero or either value is missing.
pub fn pof(und: f64, und_min: f64) -> Option<f64> {
    (und.is_finite() && und_min.is_finite() && und_min > 1e-9)
        .then(|| (und / und_min - 1.0) * 100.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PofRow {
    pub epsilon: f64,
    pub und_min_und: f64,
    pub und_min_gini: f64,
    pub und_min_iaaf: f64,
    pub pof_gini: Option<f64>,
    pub pof_iaaf: Option<f64>,
}

/// Price of fairness of the equity variants at each travel-time bound.
pub fn price_of_fairness(
    inst: &Instance,
    epsilons: &[f64],
    cfg: &AnalysisConfig,
) -> Result<Vec<PofRow>> {
    let mut rows = Vec::new();
    for &epsilon in epsilons {
        let und = |v| solve_variant(inst, v, epsilon, cfg).map(|r| r.und);
        let (a, b, c) = (
            und(Variant::MinUnD)?,
            und(Variant::MinGini)?,
            und(Variant::MinIAAF)?,
        );
        rows.push(PofRow {
            epsilon,
            und_min_und: a,
            und_min_gini: b,
            und_min_iaaf: c,
            pof_gini: pof(b, a),
            pof_iaaf: pof(c, a),
        });
    }
    Ok(rows)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), fmt_num)
}

pub fn write_pof_csv(rows: &[PofRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "epsilon",
        "UnD MinUnD",
        "UnD MinGini",
        "UnD MinIAAF",
        "PoF MinGini",
        "PoF MinIAAF",
    ])?;
    for r in rows {
        w.write_record([
            fmt_num(r.epsilon),
            fmt_num(r.und_min_und),
            fmt_num(r.und_min_gini),
            fmt_num(r.und_min_iaaf),
            fmt_opt(r.pof_gini),
            fmt_opt(r.pof_iaaf),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffRow {
    pub epsilon: f64,
    pub f1: f64,
    pub f2: f64,
    pub time_increase_pct: f64,
    pub iaaf_decrease_pct: f64,
    /// Equity gain larger than the travel-time cost.
    pub favorable: bool,
}

/// Changes relative to the minimum travel-time point of `(epsilon, f1, f2)`
/// triples.
pub fn tradeoff_rows(points: &[(f64, f64, f64)]) -> Vec<TradeoffRow> {
    let Some(&(_, f1_ref, f2_ref)) = points.iter().min_by(|a, b| a.2.total_cmp(&b.2)) else {
        return Vec::new();
    };
    let pct = |delta: f64, base: f64| {
        if base.abs() > 1e-12 {
            delta / base * 100.0
        } else {
            0.0
        }
    };
    points
        .iter()
        .map(|&(epsilon, f1, f2)| {
            let time_increase_pct = pct(f2 - f2_ref, f2_ref);
            let iaaf_decrease_pct = pct(f1_ref - f1, f1_ref);
            TradeoffRow {
                epsilon,
                f1,
                f2,
                time_increase_pct,
                iaaf_decrease_pct,
                favorable: iaaf_decrease_pct > time_increase_pct,
            }
        })
        .collect()
}

pub fn tradeoff_table(front: &[ParetoPoint]) -> Vec<TradeoffRow> {
    let points: Vec<(f64, f64, f64)> = front.iter().map(|p| (p.epsilon, p.f1, p.f2)).collect();
    tradeoff_rows(&points)
}

pub fn write_tradeoff_csv(rows: &[TradeoffRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "epsilon",
        "f1",
        "f2",
        "time increase %",
        "IAAF decrease %",
        "favorable",
    ])?;
    for r in rows {
        w.write_record([
            fmt_num(r.epsilon),
            fmt_num(r.f1),
            fmt_num(r.f2),
            fmt_num(r.time_increase_pct),
            fmt_num(r.iaaf_decrease_pct),
            r.favorable.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
