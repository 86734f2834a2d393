//! Bitset evaluation of clause-sets under partial assignments.
//!
//! The measurement sweeps visit very many instantiations φ*F of one fixed
//! clause-set F, so instead of materialising each φ*F they keep F packed as
//! pairs of literal masks and represent φ by two variable masks. All
//! reductions here are exact re-implementations of the definitions in
//! [`crate::cnf`]; the tests cross-check them against those.

mod mask;

pub(crate) use mask::Mask;
use mask::Wide;

use crate::cnf::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::Result;

/// Largest n(F) the engine handles.
pub(crate) const ENGINE_MAX_VARS: usize = 512;

/// A partial assignment over the dense variable indices of a [`Packed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct State<M> {
    pub t: M,
    pub f: M,
}

impl<M: Mask> State<M> {
    #[inline]
    pub fn assigned(self) -> M {
        self.t | self.f
    }

    #[inline]
    pub fn with(self, i: usize, value: bool) -> Self {
        let b = M::bit(i);
        if value {
            State { t: self.t | b, f: self.f }
        } else {
            State { t: self.t, f: self.f | b }
        }
    }
}

/// A clause-set with variables renumbered densely in ascending order.
#[derive(Clone, Debug)]
pub(crate) struct Packed<M> {
    pub vars: Vec<Var>,
    clauses: Vec<(M, M)>,
}

/// Runs `$body` with `$m` bound to the narrowest mask type holding `$n`
/// variables; evaluates to `Err(CapExceeded)` beyond [`ENGINE_MAX_VARS`].
macro_rules! with_mask {
    ($n:expr, $m:ident => $body:expr) => {{
        let n: usize = $n;
        if n <= 64 {
            type $m = u64;
            Ok($body)
        } else if n <= 128 {
            type $m = u128;
            Ok($body)
        } else if n <= 256 {
            type $m = $crate::engine::WideMask<4>;
            Ok($body)
        } else if n <= $crate::engine::ENGINE_MAX_VARS {
            type $m = $crate::engine::WideMask<8>;
            Ok($body)
        } else {
            Err($crate::error::Error::cap("variable count for bitset evaluation", $crate::engine::ENGINE_MAX_VARS, n))
        }
    }};
}
#[allow(unused_imports)]
pub(crate) use with_mask;

pub(crate) type WideMask<const W: usize> = Wide<W>;

impl<M: Mask> Packed<M> {
    pub fn new(f: &ClauseSet) -> Packed<M> {
        let vars: Vec<Var> = f.vars().into_iter().collect();
        assert!(vars.len() <= M::BITS, "mask too narrow for clause-set");
        let clauses = f
            .iter()
            .map(|c| {
                let mut p = M::zero();
                let mut n = M::zero();
                for l in c.lits() {
                    let i = vars.binary_search(&l.var()).unwrap();
                    if l.is_positive() {
                        p |= M::bit(i);
                    } else {
                        n |= M::bit(i);
                    }
                }
                (p, n)
            })
            .collect();
        Packed { vars, clauses }
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    /// Dense mask of the given variables (those outside var(F) are ignored).
    pub fn mask_of(&self, vars: impl IntoIterator<Item = Var>) -> M {
        let mut m = M::zero();
        for v in vars {
            if let Some(i) = self.index_of(v) {
                m |= M::bit(i);
            }
        }
        m
    }

    /// The state of φ restricted to var(F).
    pub fn state_of(&self, phi: &PartialAssignment) -> State<M> {
        let mut s = State::default();
        for (v, b) in phi.iter() {
            if let Some(i) = self.index_of(v) {
                s = s.with(i, b);
            }
        }
        s
    }

    pub fn assignment(&self, s: State<M>) -> PartialAssignment {
        let mut phi = PartialAssignment::new();
        for i in s.assigned().ones() {
            phi.bind(self.vars[i], s.t.has(i)).unwrap();
        }
        phi
    }

    pub fn lit(&self, i: usize, value: bool) -> Lit {
        Lit::new(self.vars[i], value)
    }

    /// Some clause has all literals falsified (⊥ ∈ φ*F).
    pub fn conflict(&self, s: State<M>) -> bool {
        let free = !s.assigned();
        self.clauses.iter().any(|&(p, n)| (p & s.t).is_zero() && (n & s.f).is_zero() && ((p | n) & free).is_zero())
    }

    /// Unit-clause propagation to the fixed point; `None` on a conflict.
    pub fn propagate(&self, mut s: State<M>) -> Option<State<M>> {
        loop {
            let mut changed = false;
            for &(p, n) in &self.clauses {
                if !(p & s.t).is_zero() || !(n & s.f).is_zero() {
                    continue;
                }
                let free = !s.assigned();
                let fp = p & free;
                let fn_ = n & free;
                match (fp | fn_).count() {
                    0 => return None,
                    1 => {
                        if fp.is_zero() {
                            s.f |= fn_;
                        } else {
                            s.t |= fp;
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(s);
            }
        }
    }

    /// Free variables occurring in clauses not yet satisfied: var(φ*F).
    pub fn open(&self, s: State<M>) -> M {
        let free = !s.assigned();
        let mut m = M::zero();
        for &(p, n) in &self.clauses {
            if (p & s.t).is_zero() && (n & s.f).is_zero() {
                m |= (p | n) & free;
            }
        }
        m
    }

    /// A (possibly partial) state extending `s` that satisfies every clause.
    pub fn satisfiable(&self, s: State<M>) -> Option<State<M>> {
        let s = self.propagate(s)?;
        let Some(i) = self.branch_var(s) else {
            return Some(s);
        };
        self.satisfiable(s.with(i, true)).or_else(|| self.satisfiable(s.with(i, false)))
    }

    /// Lowest free variable of a shortest open clause.
    fn branch_var(&self, s: State<M>) -> Option<usize> {
        let free = !s.assigned();
        let mut best: Option<(u32, usize)> = None;
        for &(p, n) in &self.clauses {
            if !(p & s.t).is_zero() || !(n & s.f).is_zero() {
                continue;
            }
            let open = (p | n) & free;
            let len = open.count();
            if best.is_none_or(|(l, _)| len < l) {
                best = Some((len, open.lowest().unwrap()));
                if len == 2 {
                    break;
                }
            }
        }
        best.map(|(_, i)| i)
    }

    /// rk_j(φ*F) = {⊥}? Uses that rk_j refutes every unsatisfiable
    /// clause-set with at most j variables.
    pub fn refutes(&self, j: usize, s: State<M>) -> bool {
        if j == 0 {
            return self.conflict(s);
        }
        let Some(s) = self.propagate(s) else {
            return true;
        };
        if j == 1 {
            return false;
        }
        if j >= self.open(s).count() as usize {
            return self.satisfiable(s).is_none();
        }
        self.rk(j, s).is_none()
    }

    /// rk_k on φ*F; the returned state ψ ⊇ φ satisfies rk_k(φ*F) = ψ*F,
    /// `None` stands for {⊥}.
    pub fn rk(&self, k: usize, s: State<M>) -> Option<State<M>> {
        if k == 0 {
            return (!self.conflict(s)).then_some(s);
        }
        let mut s = self.propagate(s)?;
        if k == 1 {
            return Some(s);
        }
        'scan: loop {
            for i in self.open(s).ones() {
                for value in [true, false] {
                    if self.refutes(k - 1, s.with(i, !value)) {
                        s = self.propagate(s.with(i, value))?;
                        continue 'scan;
                    }
                }
            }
            return Some(s);
        }
    }

    /// Forced literals of φ*F as (index, value); `None` if unsatisfiable.
    pub fn forced(&self, s: State<M>) -> Option<Vec<(usize, bool)>> {
        let m = self.satisfiable(s)?;
        let mut cand = self.open(s) & m.assigned();
        let mut out = Vec::new();
        while let Some(i) = cand.lowest() {
            cand &= !M::bit(i);
            let b = m.t.has(i);
            match self.satisfiable(s.with(i, !b)) {
                None => out.push((i, b)),
                Some(m2) => cand &= (m.t & m2.t) | (m.f & m2.f),
            }
        }
        Some(out)
    }

    /// φ*F as a clause-set, in the clause order of F.
    pub fn residual(&self, s: State<M>) -> ClauseSet {
        let free = !s.assigned();
        let mut out = ClauseSet::top();
        for &(p, n) in &self.clauses {
            if !(p & s.t).is_zero() || !(n & s.f).is_zero() {
                continue;
            }
            let mut lits: Vec<Lit> = (p & free)
                .ones()
                .map(|i| self.lit(i, true))
                .chain((n & free).ones().map(|i| self.lit(i, false)))
                .collect();
            lits.sort_unstable();
            out.insert(Clause::from_sorted_unchecked(lits));
        }
        out
    }

    /// Clauses of φ*F as (positive, negative) masks over the free variables.
    pub fn residual_masks(&self, s: State<M>) -> Vec<(M, M)> {
        let free = !s.assigned();
        let mut out: Vec<(M, M)> = self
            .clauses
            .iter()
            .filter(|&&(p, n)| (p & s.t).is_zero() && (n & s.f).is_zero())
            .map(|&(p, n)| (p & free, n & free))
            .collect();
        out.sort_unstable_by_key(|&(p, n)| (p | n).count());
        out.dedup();
        out
    }
}

/// rk_k(F) through the engine.
pub(crate) fn rk(k: usize, f: &ClauseSet) -> Result<ClauseSet> {
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        match p.rk(k, State::default()) {
            None => ClauseSet::bottom(),
            Some(s) => p.residual(s),
        }
    })
}

/// Satisfiability by DPLL with unit propagation (up to 512 variables).
pub(crate) fn is_satisfiable(f: &ClauseSet) -> Result<bool> {
    with_mask!(f.num_vars(), M => Packed::<M>::new(f).satisfiable(State::default()).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{apply, oracle};
    use proptest::prelude::*;

    fn cls(v: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_dimacs(v).unwrap()
    }

    fn arb_clause_set(max_var: i32, max_clauses: usize) -> impl Strategy<Value = ClauseSet> {
        let clause = prop::collection::btree_map(1..=max_var, any::<bool>(), 0..4usize)
            .prop_map(|m| Clause::new(m.into_iter().map(|(v, b)| Lit::new(Var::new(v as u32), b))).unwrap());
        prop::collection::vec(clause, 0..max_clauses).prop_map(ClauseSet::from_iter)
    }

    #[test]
    fn propagation_chain() {
        let f = cls(&[&[1], &[-1, 2], &[-2]]);
        let p = Packed::<u64>::new(&f);
        assert!(p.propagate(State::default()).is_none());
        let g = cls(&[&[1], &[-1, 2]]);
        let p = Packed::<u64>::new(&g);
        let s = p.propagate(State::default()).unwrap();
        assert!(p.residual(s).is_top());
    }

    #[test]
    fn wide_masks_match_narrow() {
        let f = cls(&[&[1, 2, -3], &[-1, 4], &[-4, -2], &[3, 2]]);
        let a = Packed::<u64>::new(&f);
        let b = Packed::<Wide<4>>::new(&f);
        for k in 0..4 {
            let ra = a.rk(k, State::default()).map(|s| a.residual(s));
            let rb = b.rk(k, State::default()).map(|s| b.residual(s));
            assert_eq!(ra, rb);
        }
    }

    proptest! {
        #[test]
        fn residual_is_apply(f in arb_clause_set(6, 8), bits in prop::collection::vec(0u8..3, 6)) {
            let mut phi = PartialAssignment::new();
            for (i, b) in bits.iter().enumerate() {
                if *b < 2 {
                    phi.bind(Var::new(i as u32 + 1), *b == 1).unwrap();
                }
            }
            let p = Packed::<u64>::new(&f);
            let s = p.state_of(&phi);
            prop_assert_eq!(p.residual(s), apply(&phi, &f));
            prop_assert_eq!(p.conflict(s), apply(&phi, &f).has_empty_clause());
        }

        #[test]
        fn satisfiable_matches_oracle(f in arb_clause_set(7, 14)) {
            let p = Packed::<u64>::new(&f);
            let m = p.satisfiable(State::default());
            prop_assert_eq!(m.is_some(), oracle::is_satisfiable(&f));
            if let Some(m) = m {
                prop_assert!(apply(&p.assignment(m), &f).is_top());
            }
        }

        #[test]
        fn forced_matches_oracle(f in arb_clause_set(6, 10)) {
            let p = Packed::<u64>::new(&f);
            let ours = p
                .forced(State::default())
                .map(|v| v.into_iter().map(|(i, b)| p.lit(i, b)).collect());
            prop_assert_eq!(ours, oracle::forced_literals(&f));
        }
    }
}
