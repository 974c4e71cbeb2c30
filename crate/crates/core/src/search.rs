//! Branch-and-infer search.
//!
//! Depth-first, leftmost first: propagate, then bisect the first
//! non-singleton variable in declaration order (auxiliaries last) at
//! `⌊(a+b)/2⌋`. Every visited node counts, failures and solutions included.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{Engine, PropagationStats, ScheduleMode, Status};
use crate::expr::{CspModel, VarId};
use crate::interval::{Bound, IntInterval, OpCounters};
use crate::rewrite::{compile, Approach, Compiled};
use crate::rules::DomainStore;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    #[default]
    AllSolutions,
    /// Branch and bound on the model's objective.
    Maximize,
}

#[derive(Clone, Debug, Default)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub schedule: ScheduleMode,
    /// Stop after this many nodes; the outcome is then marked incomplete.
    pub node_limit: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    pub nodes: u64,
    pub activations: u64,
    pub effective: u64,
    pub ops: OpCounters,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunStats {
    /// Percentage of activations that changed a domain.
    pub fn percent_effective(&self) -> f64 {
        if self.activations == 0 {
            0.0
        } else {
            100.0 * self.effective as f64 / self.activations as f64
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Assignments to the model's variables. In maximize mode these are the
    /// successive improving solutions, best last.
    pub solutions: Vec<Vec<BigInt>>,
    pub best: Option<BigInt>,
    pub stats: RunStats,
    /// False when the node limit cut the search short.
    pub complete: bool,
}

impl SearchOutcome {
    pub fn best_solution(&self) -> Option<&[BigInt]> {
        self.solutions.last().map(Vec::as_slice)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("variable `{0}` is unbounded when selected for branching: {1}")]
    Unbounded(String, IntInterval),
    #[error("maximize requested but the model has no objective")]
    NoObjective,
    #[error("a fixpoint with singleton domains violates the model at {0:?}")]
    UnsoundLeaf(Vec<BigInt>),
}

/// Direct evaluation of every constraint at a point over the model's variables.
pub fn verify_solution(model: &CspModel, assignment: &[BigInt]) -> bool {
    model.satisfied_by(assignment)
}

pub fn solve(
    model: &CspModel,
    approach: Approach,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    solve_compiled(model, &compile(model, approach), config)
}

/// Search on an already compiled model; `compiled` must come from `model`.
pub fn solve_compiled(
    model: &CspModel,
    compiled: &Compiled,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let start = Instant::now();
    let obj = match config.mode {
        SearchMode::AllSolutions => None,
        SearchMode::Maximize => Some(compiled.objective.ok_or(SearchError::NoObjective)?),
    };
    let mut out = SearchOutcome {
        solutions: Vec::new(),
        best: None,
        stats: RunStats::default(),
        complete: true,
    };
    let mut prop = PropagationStats::default();
    let mut engine = Engine::new(compiled, config.schedule);

    // `None` as the changed variable marks the root
    let mut stack: Vec<(DomainStore, Option<VarId>)> = vec![(compiled.initial_store(), None)];
    if compiled.trivially_false {
        stack.clear();
        out.stats.nodes = 1;
    }
    while let Some((mut store, branched)) = stack.pop() {
        if config.node_limit.is_some_and(|n| out.stats.nodes >= n) {
            out.complete = false;
            break;
        }
        out.stats.nodes += 1;

        let mut changed: Vec<VarId> = branched.into_iter().collect();
        if let (Some(o), Some(best)) = (obj, &out.best) {
            let bound = store.get(o).intersect(&IntInterval::at_least(best + 1));
            if bound != *store.get(o) {
                store.set(o, bound);
                changed.push(o);
            }
        }
        let status = match branched {
            None => engine.propagate_all(&mut store, &mut prop),
            Some(_) => engine.propagate_from(&mut store, &changed, &mut prop),
        };
        if status == Status::Failed {
            continue;
        }

        match select(&store) {
            Some(v) => {
                let (lo, hi) = match store.get(v).bounds() {
                    Some((Bound::Finite(a), Bound::Finite(b))) => (a.clone(), b.clone()),
                    _ => {
                        return Err(SearchError::Unbounded(
                            compiled.name(v).to_string(),
                            store.get(v).clone(),
                        ))
                    }
                };
                let mid = (&lo + &hi).div_floor(&BigInt::from(2));
                let mut right = store.clone();
                right.set(
                    v,
                    IntInterval::from_bounds(Bound::Finite(&mid + 1), Bound::Finite(hi)),
                );
                store.set(
                    v,
                    IntInterval::from_bounds(Bound::Finite(lo), Bound::Finite(mid)),
                );
                stack.push((right, Some(v)));
                stack.push((store, Some(v)));
            }
            None => {
                let point: Vec<BigInt> = (0..compiled.num_user)
                    .map(|i| {
                        store
                            .get(VarId(i))
                            .singleton_value()
                            .expect("singleton")
                            .clone()
                    })
                    .collect();
                if !verify_solution(model, &point) {
                    return Err(SearchError::UnsoundLeaf(point));
                }
                if let Some(o) = obj {
                    out.best = Some(store.get(o).singleton_value().expect("singleton").clone());
                }
                out.solutions.push(point);
            }
        }
    }

    out.stats.activations = prop.activations;
    out.stats.effective = prop.effective;
    out.stats.ops = prop.ops;
    out.stats.elapsed = start.elapsed();
    Ok(out)
}

fn select(store: &DomainStore) -> Option<VarId> {
    store
        .domains()
        .iter()
        .position(|d| !d.is_singleton())
        .map(VarId)
}
