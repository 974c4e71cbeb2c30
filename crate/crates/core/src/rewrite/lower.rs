//! Lowering of power products to atomic definitions (approach 3).

use super::{Approach, AuxDef, Builder};
use crate::expr::VarId;

impl Builder {
    /// Variable standing for the power product `powers`, creating the
    /// auxiliaries on the way. Factors are combined left to right in the
    /// given order, and every intermediate product is pooled, so `x·y·u` and
    /// `x·y·v` share `x·y`.
    pub(super) fn lower(&mut self, powers: &[(VarId, u32)]) -> VarId {
        if let [(v, 1)] = powers {
            return *v;
        }
        let mut key = powers.to_vec();
        key.sort();
        if let Some(&v) = self.pool.get(&key) {
            return v;
        }
        let name = self.pp_name(&key);
        let v = match *powers {
            [(x, e)] => self.lower_power(name, x, e),
            _ => {
                let (last, prefix) = powers.split_last().expect("non-empty power product");
                let a = self.lower(prefix);
                let b = self.lower(std::slice::from_ref(last));
                self.push_aux(name, |aux| AuxDef::Product { aux, x: a, y: b })
            }
        };
        self.pool.insert(key, v);
        v
    }

    fn lower_power(&mut self, name: String, x: VarId, e: u32) -> VarId {
        match self.approach {
            Approach::A3c => self.push_aux(name, |aux| AuxDef::Power { aux, base: x, n: e }),
            Approach::A3b if e == 2 => {
                self.push_aux(name, |aux| AuxDef::Power { aux, base: x, n: 2 })
            }
            _ if e.is_multiple_of(2) => {
                let h = self.lower(&[(x, e / 2)]);
                if self.approach == Approach::A3b {
                    self.push_aux(name, |aux| AuxDef::Power { aux, base: h, n: 2 })
                } else {
                    self.push_aux(name, |aux| AuxDef::Product { aux, x: h, y: h })
                }
            }
            _ => {
                let h = self.lower(&[(x, e - 1)]);
                self.push_aux(name, |aux| AuxDef::Product { aux, x: h, y: x })
            }
        }
    }
}
