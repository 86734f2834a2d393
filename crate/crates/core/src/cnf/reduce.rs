//! Unit-clause propagation and the reduction hierarchy rk_k.

use std::collections::BTreeSet;

use super::{apply, oracle, ClauseSet, Lit, PartialAssignment};
use crate::engine;

/// Unit-clause propagation to its fixed point. Returns {⊥} iff a
/// contradiction is derived.
pub fn rk1(f: &ClauseSet) -> ClauseSet {
    rk1_with(f, |_| 0)
}

/// Unit-clause propagation where `choose` picks which of the currently
/// available unit literals to assign next (by index into the slice). The
/// result does not depend on the choices.
pub fn rk1_with(f: &ClauseSet, mut choose: impl FnMut(&[Lit]) -> usize) -> ClauseSet {
    let mut f = f.clone();
    loop {
        if f.has_empty_clause() {
            return ClauseSet::bottom();
        }
        let units: Vec<Lit> =
            f.iter().filter(|c| c.len() == 1).map(|c| c.lits()[0]).collect::<BTreeSet<_>>().into_iter().collect();
        if units.is_empty() {
            return f;
        }
        let x = units[choose(&units) % units.len()];
        let phi = PartialAssignment::from_lits([x]).expect("single literal");
        f = apply(&phi, &f);
    }
}

/// The generalised reduction rk_k: rk_0(F) = {⊥} if ⊥ ∈ F, else F; for
/// k ≥ 1, while some literal x has rk_{k-1}(⟨x→0⟩*F) = {⊥}, continue with
/// ⟨x→1⟩*F. Literals are tried by ascending variable, positive first.
///
/// Clause-sets with more than 512 variables are processed by the plain
/// recursive definition, which is exponential in k.
pub fn rk(k: usize, f: &ClauseSet) -> ClauseSet {
    match k {
        0 if f.has_empty_clause() => ClauseSet::bottom(),
        0 => f.clone(),
        1 => rk1(f),
        _ => engine::rk(k, f).unwrap_or_else(|_| rk_by_definition(k, f)),
    }
}

pub(crate) fn rk_by_definition(k: usize, f: &ClauseSet) -> ClauseSet {
    if k <= 1 {
        return rk(k, f);
    }
    let mut f = f.clone();
    'scan: loop {
        if f.has_empty_clause() {
            return ClauseSet::bottom();
        }
        for v in f.vars() {
            for x in [v.pos(), v.neg()] {
                let zero = PartialAssignment::new().with(x, false).expect("fresh");
                if rk_by_definition(k - 1, &apply(&zero, &f)).is_bottom() {
                    let one = PartialAssignment::new().with(x, true).expect("fresh");
                    f = apply(&one, &f);
                    continue 'scan;
                }
            }
        }
        return f;
    }
}

/// r∞(F), computed as rk_{n(F)}(F).
pub fn r_infty(f: &ClauseSet) -> ClauseSet {
    rk(f.num_vars().max(1), f)
}

/// r∞(F) by brute force: apply every forced literal, found with the
/// backtracking oracle (at most 24 variables).
pub fn r_infty_by_forced(f: &ClauseSet) -> ClauseSet {
    match oracle::forced_literals(f) {
        None => ClauseSet::bottom(),
        Some(forced) => {
            let phi = PartialAssignment::from_lits(forced).expect("forced literals are consistent");
            apply(&phi, f)
        }
    }
}
