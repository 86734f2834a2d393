//! Prime implicates by the subset method: every prime implicate of F is
//! the set of pure literals of some G ⊆ F, so it suffices to test those
//! 2^{c(F)} candidates for being implicates and remove subsumed ones.

use std::collections::BTreeSet;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::engine::{with_mask, Packed, State};
use crate::error::{Error, Result};

/// Largest c(F) accepted by [`prime_implicates`].
pub const PRIME_SUBSET_MAX_CLAUSES: usize = 16;

/// prime_0(F), clauses sorted; {⊥} iff F is unsatisfiable. Has at most
/// 2^{c(F)} − 1 clauses for satisfiable F.
pub fn prime_implicates(f: &ClauseSet) -> Result<ClauseSet> {
    let c = f.len();
    if c > PRIME_SUBSET_MAX_CLAUSES {
        return Err(Error::cap("clauses for the subset prime-implicate method", PRIME_SUBSET_MAX_CLAUSES, c));
    }
    let clauses: Vec<&Clause> = f.iter().collect();
    let mut candidates: BTreeSet<Clause> = BTreeSet::new();
    for subset in 0u32..(1u32 << c) {
        let lits: BTreeSet<Lit> =
            (0..c).filter(|&i| subset >> i & 1 == 1).flat_map(|i| clauses[i].lits().iter().copied()).collect();
        let pure: Vec<Lit> = lits.iter().copied().filter(|l| !lits.contains(&!*l)).collect();
        candidates.insert(Clause::new(pure).expect("pure literals are complement-free"));
    }
    let implicates: Vec<Clause> = with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        candidates
            .into_iter()
            .filter(|cand| {
                // C is an implicate iff F with C falsified is unsatisfiable
                let mut s = State::<M>::default();
                for l in cand.lits() {
                    s = s.with(p.index_of(l.var()).unwrap(), !l.is_positive());
                }
                p.satisfiable(s).is_none()
            })
            .collect::<Vec<_>>()
    })?;
    let mut minimal: Vec<Clause> =
        implicates.iter().filter(|c| !implicates.iter().any(|d| d != *c && d.is_subset_of(c))).cloned().collect();
    minimal.sort();
    Ok(minimal.into_iter().collect())
}
