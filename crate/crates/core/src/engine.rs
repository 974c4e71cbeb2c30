//! Propagation to the fixpoint of a set of DRFs.
//!
//! DRFs are visited in a fixed cyclic order (the DRF list, or the
//! hierarchical schedule) and applied only while flagged. Whenever a DRF
//! shrinks its target, every DRF reading that variable is flagged again,
//! itself included. Propagation ends when no flag is left or some domain
//! becomes empty.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::expr::VarId;
use crate::interval::OpCounters;
use crate::rewrite::Compiled;
use crate::rules::{DomainStore, Drf};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    /// Sweep the DRFs in the order they were generated.
    Cycling,
    /// Sweep the hierarchical schedule; same as `Cycling` without auxiliaries.
    #[default]
    Hierarchical,
}

impl fmt::Display for ScheduleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleMode::Cycling => "cycling",
            ScheduleMode::Hierarchical => "hierarchical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown schedule `{0}` (expected cycling or hierarchical)")]
pub struct UnknownSchedule(pub String);

impl FromStr for ScheduleMode {
    type Err = UnknownSchedule;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycling" => Ok(ScheduleMode::Cycling),
            "hierarchical" => Ok(ScheduleMode::Hierarchical),
            _ => Err(UnknownSchedule(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Fixpoint,
    /// Some domain became empty.
    Failed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropagationStats {
    pub activations: u64,
    /// Activations that changed the target domain.
    pub effective: u64,
    pub ops: OpCounters,
}

impl PropagationStats {
    pub fn absorb(&mut self, other: &PropagationStats) {
        self.activations += other.activations;
        self.effective += other.effective;
        self.ops += other.ops;
    }
}

pub struct Engine<'a> {
    drfs: &'a [Drf],
    order: Vec<usize>,
    dependents: &'a [Vec<usize>],
    flagged: Vec<bool>,
    pending: usize,
}

impl<'a> Engine<'a> {
    pub fn new(compiled: &'a Compiled, mode: ScheduleMode) -> Self {
        let order = match (&compiled.schedule, mode) {
            (Some(s), ScheduleMode::Hierarchical) => s.clone(),
            _ => (0..compiled.drfs.len()).collect(),
        };
        Self::with_order(&compiled.drfs, order, &compiled.dependents)
    }

    /// `order` must contain every DRF index at least once.
    pub fn with_order(drfs: &'a [Drf], order: Vec<usize>, dependents: &'a [Vec<usize>]) -> Self {
        Engine {
            drfs,
            order,
            dependents,
            flagged: vec![false; drfs.len()],
            pending: 0,
        }
    }

    fn flag(&mut self, i: usize) {
        if !self.flagged[i] {
            self.flagged[i] = true;
            self.pending += 1;
        }
    }

    fn clear(&mut self) {
        self.flagged.iter_mut().for_each(|f| *f = false);
        self.pending = 0;
    }

    /// Propagates with every DRF flagged.
    pub fn propagate_all(
        &mut self,
        store: &mut DomainStore,
        stats: &mut PropagationStats,
    ) -> Status {
        self.clear();
        for i in 0..self.drfs.len() {
            self.flag(i);
        }
        self.run(store, stats)
    }

    /// Propagates with only the DRFs reading one of `changed` flagged.
    pub fn propagate_from(
        &mut self,
        store: &mut DomainStore,
        changed: &[VarId],
        stats: &mut PropagationStats,
    ) -> Status {
        self.clear();
        for v in changed {
            for k in 0..self.dependents[v.0].len() {
                self.flag(self.dependents[v.0][k]);
            }
        }
        self.run(store, stats)
    }

    fn run(&mut self, store: &mut DomainStore, stats: &mut PropagationStats) -> Status {
        if store.has_empty() {
            self.clear();
            return Status::Failed;
        }
        while self.pending > 0 {
            for pos in 0..self.order.len() {
                let i = self.order[pos];
                if !self.flagged[i] {
                    continue;
                }
                self.flagged[i] = false;
                self.pending -= 1;
                let drf = &self.drfs[i];
                stats.activations += 1;
                let new = drf.apply(store, &mut stats.ops);
                if new == *store.get(drf.target) {
                    continue;
                }
                debug_assert!(
                    new.is_subset(store.get(drf.target)),
                    "{} widened a domain",
                    drf.kind
                );
                stats.effective += 1;
                let target = drf.target;
                let empty = new.is_empty();
                store.set(target, new);
                if empty {
                    self.clear();
                    return Status::Failed;
                }
                for k in 0..self.dependents[target.0].len() {
                    self.flag(self.dependents[target.0][k]);
                }
            }
        }
        Status::Fixpoint
    }
}
