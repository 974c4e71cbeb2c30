//! Built-in benchmark models and the statistics report.

use std::fmt;

use serde::Serialize;

use crate::engine::ScheduleMode;
use crate::expr::{parse_model, CspModel};
use crate::interval::OpCounters;
use crate::rewrite::{Approach, Compiled};
use crate::search::{SearchMode, SearchOutcome};

#[derive(Clone, Debug)]
pub struct BenchmarkDef {
    pub name: &'static str,
    pub source: String,
    pub mode: SearchMode,
    /// Reference node counts, keyed by approach label. The label `3` covers
    /// 3a, 3b and 3c.
    pub reference_nodes: &'static [(&'static str, u64)],
}

impl BenchmarkDef {
    pub fn model(&self) -> CspModel {
        parse_model(&self.source).expect("built-in model parses")
    }

    pub fn reference_for(&self, a: Approach) -> Option<u64> {
        let family = &a.name()[..1];
        self.reference_nodes
            .iter()
            .find(|(label, _)| *label == a.name() || (*label == "3" && family == "3"))
            .map(|r| r.1)
    }
}

const DIGITS: [&str; 9] = ["A", "B", "C", "D", "E", "F", "G", "H", "I"];

fn all_different(vars: &[&str]) -> String {
    let mut out = String::new();
    for (i, a) in vars.iter().enumerate() {
        for b in &vars[i + 1..] {
            out.push_str(&format!("{a} != {b};\n"));
        }
    }
    out
}

fn digit_decls() -> String {
    DIGITS
        .iter()
        .map(|d| format!("var {d} in [1..9];\n"))
        .collect()
}

fn cubes() -> String {
    "var x1 in Z;\nvar x2 in Z;\nvar x3 in Z;\nvar x4 in Z;\nvar n in [1..1000];\n\
     1 <= x1;\nx1 <= x2 - 1;\nx2 <= x3 - 1;\nx3 <= x4 - 1;\nx4 <= n;\n\
     x1^3 + x2^3 + x3^3 + x4^3 = n;\n"
        .to_string()
}

fn opt() -> String {
    "var x in [1..100000];\nvar y in [1..100000];\nvar z in [1..100000];\n\
     x^3 + y^2 = z^3;\nmaximize 2*x*y - z;\n"
        .to_string()
}

/// `A/BC + D/EF + G/HI = 1` with every fraction multiplied out.
fn fractions1() -> String {
    let (bc, ef, hi) = ("(10*B + C)", "(10*E + F)", "(10*H + I)");
    format!(
        "{}A*{ef}*{hi} + D*{bc}*{hi} + G*{bc}*{ef} = {bc}*{ef}*{hi};\n\
         A*{ef} >= D*{bc};\nD*{hi} >= G*{ef};\n3*A >= {bc};\n3*G <= {hi};\n{}",
        digit_decls(),
        all_different(&DIGITS)
    )
}

/// Same puzzle with the two-digit denominators as variables.
fn fractions2() -> String {
    format!(
        "{}var BC in [10..99];\nvar EF in [10..99];\nvar HI in [10..99];\n\
         BC = 10*B + C;\nEF = 10*E + F;\nHI = 10*H + I;\n\
         A*EF*HI + D*BC*HI + G*BC*EF = BC*EF*HI;\n\
         A*EF >= D*BC;\nD*HI >= G*EF;\n3*A >= BC;\n3*G <= HI;\n{}",
        digit_decls(),
        all_different(&DIGITS)
    )
}

/// `KYOTO + KYOTO + KYOTO = TOKYO` in base `n`.
fn kyoto() -> String {
    format!(
        "var n in [2..100];\nvar T in [1..99];\nvar O in [0..99];\nvar K in [1..99];\nvar Y in [0..99];\n\
         3*(K*n^4 + Y*n^3 + O*n^2 + T*n + O) = T*n^4 + O*n^3 + K*n^2 + Y*n + O;\n\
         K <= n - 1;\nY <= n - 1;\nO <= n - 1;\nT <= n - 1;\n{}",
        all_different(&["K", "Y", "O", "T"])
    )
}

pub fn builtin_models() -> Vec<BenchmarkDef> {
    vec![
        BenchmarkDef {
            name: "cubes",
            source: cubes(),
            mode: SearchMode::AllSolutions,
            reference_nodes: &[("1a", 167), ("2a", 167), ("3a", 359), ("3b", 227)],
        },
        BenchmarkDef {
            name: "opt",
            source: opt(),
            mode: SearchMode::Maximize,
            reference_nodes: &[("1a", 115_469), ("2a", 115_469), ("3b", 5_065_137)],
        },
        BenchmarkDef {
            name: "fractions1",
            source: fractions1(),
            mode: SearchMode::AllSolutions,
            reference_nodes: &[
                ("1a", 11_289),
                ("1b", 7_879),
                ("2a", 11_289),
                ("2b", 11_289),
                ("3", 11_131),
            ],
        },
        BenchmarkDef {
            name: "fractions2",
            source: fractions2(),
            mode: SearchMode::AllSolutions,
            reference_nodes: &[
                ("1a", 2_449),
                ("1b", 989),
                ("2a", 2_449),
                ("2b", 2_449),
                ("3", 1_525),
            ],
        },
        BenchmarkDef {
            name: "kyoto",
            source: kyoto(),
            mode: SearchMode::AllSolutions,
            reference_nodes: &[
                ("1a", 87_085),
                ("1b", 87_085),
                ("2a", 87_085),
                ("2b", 87_085),
                ("3a", 87_087),
                ("3b", 87_085),
                ("3c", 87_085),
            ],
        },
    ]
}

pub fn builtin(name: &str) -> Option<BenchmarkDef> {
    builtin_models().into_iter().find(|b| b.name == name)
}

pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// One run: a model solved under one approach.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsRow {
    pub benchmark: String,
    pub approach: String,
    pub schedule: ScheduleMode,
    pub nvar: usize,
    pub ndrf: usize,
    pub nodes: u64,
    pub activated: u64,
    pub effective: u64,
    /// `100 · effective / activated`, two decimals.
    pub percent_effective: f64,
    /// Seconds.
    pub elapsed: f64,
    pub solutions: usize,
    /// Objective value of the best solution, when maximizing.
    pub best: Option<String>,
    pub complete: bool,
    #[serde(flatten)]
    pub ops: OpCounters,
    pub total: u64,
}

impl StatsRow {
    pub fn new(
        benchmark: &str,
        compiled: &Compiled,
        schedule: ScheduleMode,
        outcome: &SearchOutcome,
    ) -> Self {
        let s = &outcome.stats;
        StatsRow {
            benchmark: benchmark.to_string(),
            approach: compiled.approach.name().to_string(),
            schedule,
            nvar: compiled.nvar(),
            ndrf: compiled.ndrf(),
            nodes: s.nodes,
            activated: s.activations,
            effective: s.effective,
            percent_effective: round2(s.percent_effective()),
            elapsed: s.elapsed.as_secs_f64(),
            solutions: outcome.solutions.len(),
            best: outcome.best.as_ref().map(ToString::to_string),
            complete: outcome.complete,
            ops: s.ops,
            total: s.ops.total(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StatsReport {
    pub rows: Vec<StatsRow>,
}

impl StatsReport {
    pub fn push(&mut self, row: StatsRow) {
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("stats serialize")
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<11} {:<3} {:>5} {:>5} {:>10} {:>12} {:>7} {:>9} | {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>8} {:>8} {:>10}",
            "benchmark", "", "nvar", "nDRF", "nodes", "activated", "%eff", "elapsed",
            "root", "exp", "div", "multI", "multF", "sum", "divQ", "sumQ", "total"
        )?;
        for r in &self.rows {
            let o = &r.ops;
            writeln!(
                f,
                "{:<11} {:<3} {:>5} {:>5} {:>10} {:>12} {:>7.2} {:>9.3} | {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>8} {:>8} {:>10}",
                r.benchmark, r.approach, r.nvar, r.ndrf, r.nodes, r.activated,
                r.percent_effective, r.elapsed, o.root, o.exp, o.div, o.mult_i, o.mult_f,
                o.sum, o.div_q, o.sum_q, r.total
            )?;
        }
        Ok(())
    }
}
