//! Choosing a translation by the guarantee it gives.

use std::fmt;

use serde::Serialize;

use super::{x1, x2, x2_check, xstar, TranslationResult};
use crate::error::{Error, Result};
use crate::structure::is_acyclic_system;
use crate::xor::{xor_sat, XorSolution, XorSystem};

/// Default largest number of constraints for which `auto` uses X*.
pub const DEFAULT_XSTAR_CAP: usize = 12;

/// What a translation guarantees about unit propagation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Guarantee {
    /// Propagation-complete: p-hardness ≤ 1 over all variables.
    Pc,
    /// Arc-consistent: p-hardness ≤ 1 over the original variables.
    Ac,
    /// Nothing beyond correctness.
    None,
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guarantee::Pc => "PC",
            Guarantee::Ac => "AC",
            Guarantee::None => "none",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AutoChoice {
    pub result: TranslationResult,
    pub guarantee: Guarantee,
    /// Why this translation was picked.
    pub reason: String,
}

/// Picks the translation with the strongest guarantee available:
/// acyclic → X1 (PC); two constraints meeting the X2 preconditions → X2
/// (PC); at most `xstar_cap` constraints → X* (AC); otherwise X1 without
/// a guarantee. Unsatisfiable systems are rejected.
pub fn translate_auto(s: &XorSystem, xstar_cap: usize) -> Result<AutoChoice> {
    if let XorSolution::Unsat(certificate) = xor_sat(s) {
        return Err(Error::Unsatisfiable { certificate });
    }
    if is_acyclic_system(s) {
        return Ok(AutoChoice { result: x1(s), guarantee: Guarantee::Pc, reason: "acyclic incidence graph".into() });
    }
    if s.len() == 2 {
        let (c, d) = (s.get(0).unwrap(), s.get(1).unwrap());
        if x2_check(c, d).is_ok() {
            return Ok(AutoChoice {
                result: x2(c, d)?,
                guarantee: Guarantee::Pc,
                reason: "two constraints with a shared part".into(),
            });
        }
    }
    if s.len() <= xstar_cap {
        return Ok(AutoChoice {
            result: xstar(s)?,
            guarantee: Guarantee::Ac,
            reason: format!("{} constraints, closure is small", s.len()),
        });
    }
    Ok(AutoChoice {
        result: x1(s),
        guarantee: Guarantee::None,
        reason: format!("cyclic system with {} constraints exceeds the X* cap {xstar_cap}", s.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Var;
    use crate::translate::Method;
    use crate::xor::XorConstraint;

    fn x(vars: &[u32], rhs: bool) -> XorConstraint {
        XorConstraint::new(vars.iter().map(|&i| Var::new(i)), rhs)
    }

    #[test]
    fn dispatch() {
        let chain: XorSystem = [x(&[1, 2], false), x(&[2, 3], true)].into_iter().collect();
        let a = translate_auto(&chain, 4).unwrap();
        assert_eq!((a.result.method, a.guarantee), (Method::X1, Guarantee::Pc));

        let pair: XorSystem = [x(&[1, 2, 3, 4], false), x(&[1, 2, 3, 5], false)].into_iter().collect();
        let a = translate_auto(&pair, 4).unwrap();
        assert_eq!((a.result.method, a.guarantee), (Method::X2, Guarantee::Pc));

        let tri: XorSystem = [x(&[1, 2], false), x(&[2, 3], false), x(&[1, 3, 4], false)].into_iter().collect();
        let a = translate_auto(&tri, 4).unwrap();
        assert_eq!((a.result.method, a.guarantee), (Method::XStar, Guarantee::Ac));
        let a = translate_auto(&tri, 2).unwrap();
        assert_eq!((a.result.method, a.guarantee), (Method::X1, Guarantee::None));

        let unsat: XorSystem = [x(&[1, 2], false), x(&[1, 2], true)].into_iter().collect();
        assert!(matches!(translate_auto(&unsat, 4), Err(Error::Unsatisfiable { .. })));
    }
}
