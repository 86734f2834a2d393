//! Resolution saturation on packed clauses: full (prime implicates),
//! k-resolution (one parent of length ≤ k) and width-bounded (every clause
//! of length ≤ k). Subsumed clauses are dropped as soon as they appear,
//! which preserves refutability for all three calculi.

use std::collections::VecDeque;

use crate::cnf::{Clause, ClauseSet};
use crate::engine::{with_mask, Mask, Packed};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MClause<M> {
    pub p: M,
    pub n: M,
}

impl<M: Mask> MClause<M> {
    pub fn len(self) -> u32 {
        (self.p | self.n).count()
    }

    pub fn is_empty(self) -> bool {
        (self.p | self.n).is_zero()
    }

    pub fn subsumes(self, other: MClause<M>) -> bool {
        (self.p & !other.p).is_zero() && (self.n & !other.n).is_zero()
    }

    /// The resolvent, if the clauses clash in exactly one variable.
    pub fn resolve(self, other: MClause<M>) -> Option<MClause<M>> {
        let clash = (self.p & other.n) | (self.n & other.p);
        if clash.count() != 1 {
            return None;
        }
        Some(MClause { p: (self.p | other.p) & !clash, n: (self.n | other.n) & !clash })
    }
}

/// Which resolution steps are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Calculus {
    Full,
    /// At least one parent has length ≤ k.
    Asymmetric(u32),
    /// Axioms and resolvents have length ≤ k.
    Width(u32),
}

impl Calculus {
    fn axiom_ok<M: Mask>(self, c: MClause<M>) -> bool {
        match self {
            Calculus::Width(k) => c.len() <= k,
            _ => true,
        }
    }

    fn step_ok<M: Mask>(self, a: MClause<M>, b: MClause<M>, r: MClause<M>) -> bool {
        match self {
            Calculus::Full => true,
            Calculus::Asymmetric(k) => a.len().min(b.len()) <= k,
            Calculus::Width(k) => r.len() <= k,
        }
    }
}

/// Saturation result: `None` when ⊥ was derived, else the subsumption-free
/// closure.
pub(crate) fn saturate<M: Mask>(
    axioms: impl IntoIterator<Item = MClause<M>>,
    calculus: Calculus,
) -> Option<Vec<MClause<M>>> {
    let mut kept: Vec<MClause<M>> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut queue = VecDeque::new();

    // false if ⊥ arrived
    let insert = |c: MClause<M>, kept: &mut Vec<MClause<M>>, alive: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if c.is_empty() {
            return false;
        }
        if kept.iter().zip(alive.iter()).any(|(k, &a)| a && k.subsumes(c)) {
            return true;
        }
        for (k, a) in kept.iter().zip(alive.iter_mut()) {
            if *a && c.subsumes(*k) {
                *a = false;
            }
        }
        kept.push(c);
        alive.push(true);
        queue.push_back(kept.len() - 1);
        true
    };

    for c in axioms {
        if calculus.axiom_ok(c) && !insert(c, &mut kept, &mut alive, &mut queue) {
            return None;
        }
    }
    while let Some(i) = queue.pop_front() {
        if !alive[i] {
            continue;
        }
        let c = kept[i];
        let mut j = 0;
        while j < kept.len() {
            if alive[i] && alive[j] && i != j {
                let d = kept[j];
                if let Some(r) = c.resolve(d) {
                    if calculus.step_ok(c, d, r) && !insert(r, &mut kept, &mut alive, &mut queue) {
                        return None;
                    }
                }
            }
            j += 1;
        }
    }
    Some(kept.into_iter().zip(alive).filter_map(|(c, a)| a.then_some(c)).collect())
}

pub(crate) fn refutes<M: Mask>(clauses: &[(M, M)], calculus: Calculus) -> bool {
    saturate(clauses.iter().map(|&(p, n)| MClause { p, n }), calculus).is_none()
}

fn packed_clauses<M: Mask>(p: &Packed<M>, f: &ClauseSet) -> Vec<MClause<M>> {
    f.iter()
        .map(|c| {
            let mut m = MClause { p: M::zero(), n: M::zero() };
            for l in c.lits() {
                let b = M::bit(p.index_of(l.var()).unwrap());
                if l.is_positive() {
                    m.p |= b;
                } else {
                    m.n |= b;
                }
            }
            m
        })
        .collect()
}

fn unpack<M: Mask>(p: &Packed<M>, c: MClause<M>) -> Clause {
    let mut lits: Vec<_> = c.p.ones().map(|i| p.lit(i, true)).chain(c.n.ones().map(|i| p.lit(i, false))).collect();
    lits.sort_unstable();
    Clause::new(lits).expect("saturation never builds tautologies")
}

/// Does resolution in which every step has a parent of length ≤ k refute F?
pub fn k_resolution_refutes(f: &ClauseSet, k: usize) -> Result<bool> {
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        saturate(packed_clauses(&p, f), Calculus::Asymmetric(k as u32)).is_none()
    })
}

/// Is there a refutation of F using only clauses of length ≤ k?
pub fn width_refutes(f: &ClauseSet, k: usize) -> Result<bool> {
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        saturate(packed_clauses(&p, f), Calculus::Width(k as u32)).is_none()
    })
}

/// prime_0(F) by saturating F under resolution with subsumption
/// elimination; {⊥} for unsatisfiable F. Clauses are returned sorted.
pub fn prime_implicates_by_resolution(f: &ClauseSet) -> Result<ClauseSet> {
    if f.has_empty_clause() {
        return Ok(ClauseSet::bottom());
    }
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        match saturate(packed_clauses(&p, f), Calculus::Full) {
            None => ClauseSet::bottom(),
            Some(cl) => {
                let mut v: Vec<Clause> = cl.into_iter().map(|c| unpack(&p, c)).collect();
                v.sort();
                v.into_iter().collect()
            }
        }
    })
}
