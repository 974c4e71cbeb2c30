//! Hierarchical DRF schedule for models with auxiliary variables.

use std::collections::HashSet;

use super::AuxDef;
use crate::expr::VarId;
use crate::rules::{Drf, Role};

struct Tables<'a> {
    defs: Vec<Option<&'a AuxDef>>,
    forward: Vec<Option<usize>>,
    backward: Vec<Vec<usize>>,
}

impl Tables<'_> {
    fn forward_chain(&self, v: VarId, seen: &mut HashSet<usize>, out: &mut Vec<usize>) {
        let Some(def) = self.defs.get(v.0).copied().flatten() else {
            return;
        };
        for w in def.operands() {
            self.forward_chain(w, seen, out);
        }
        if let Some(i) = self.forward[v.0] {
            if seen.insert(i) {
                out.push(i);
            }
        }
    }

    fn backward_chain(
        &self,
        v: VarId,
        drfs: &[Drf],
        seen: &mut HashSet<usize>,
        out: &mut Vec<usize>,
    ) {
        if self.defs.get(v.0).copied().flatten().is_none() {
            return;
        }
        let fresh: Vec<usize> = self.backward[v.0]
            .iter()
            .copied()
            .filter(|i| seen.insert(*i))
            .collect();
        out.extend(&fresh);
        for i in fresh {
            self.backward_chain(drfs[i].target, drfs, seen, out);
        }
    }
}

/// Every user DRF is preceded by the forward DRFs of the auxiliaries it reads
/// (innermost first) and, when it targets an auxiliary, followed by the
/// backward DRFs from that auxiliary down to the user variables. DRFs not
/// reached this way are appended at the end.
///
/// An auxiliary's variable id is larger than those of its operands, which is
/// how a definition DRF is matched to its auxiliary.
pub fn hierarchical_schedule(drfs: &[Drf], aux: &[AuxDef]) -> Vec<usize> {
    let nvars = drfs
        .iter()
        .flat_map(|d| d.depends_on.iter().map(|v| v.0 + 1))
        .chain(aux.iter().map(|a| a.aux().0 + 1))
        .max()
        .unwrap_or(0);
    let mut t = Tables {
        defs: vec![None; nvars],
        forward: vec![None; nvars],
        backward: vec![Vec::new(); nvars],
    };
    for a in aux {
        t.defs[a.aux().0] = Some(a);
    }
    for (i, d) in drfs.iter().enumerate() {
        let owner = d.depends_on.iter().max().copied();
        match (d.role, owner) {
            (Role::Forward, _) => t.forward[d.target.0] = Some(i),
            (Role::Backward, Some(u)) => t.backward[u.0].push(i),
            _ => {}
        }
    }

    let mut schedule = Vec::new();
    for (i, d) in drfs.iter().enumerate() {
        if d.role != Role::User {
            continue;
        }
        let mut seen = HashSet::new();
        for &v in &d.depends_on {
            t.forward_chain(v, &mut seen, &mut schedule);
        }
        schedule.push(i);
        let mut seen = HashSet::new();
        t.backward_chain(d.target, drfs, &mut seen, &mut schedule);
    }
    let present: HashSet<usize> = schedule.iter().copied().collect();
    schedule.extend((0..drfs.len()).filter(|i| !present.contains(i)));
    schedule
}
