//! XOR constraints and systems of them.
//!
//! A constraint is kept as its canonical pair (variable set, right-hand
//! side): ⊕ vars = rhs. An ordinary clause C read as an XOR-clause means
//! ⊕_{x∈C} x = 0, i.e. ⊕ var(C) = (number of complemented literals) mod 2,
//! so equivalent XOR-clauses map to the same pair.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::alloc::VarAllocator;
use crate::cnf::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::{Error, Result};

mod gf2;
pub mod xnf;

pub use gf2::{closure_star, normalize_basis, xor_implies, xor_sat, XorSolution, CLOSURE_MAX_CONSTRAINTS};

/// ⊕ vars = rhs over GF(2), with `vars` sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct XorConstraint {
    vars: Vec<Var>,
    rhs: bool,
}

impl XorConstraint {
    /// Builds ⊕ vars = rhs; a variable listed twice cancels out.
    pub fn new(vars: impl IntoIterator<Item = Var>, rhs: bool) -> XorConstraint {
        let mut vs: Vec<Var> = vars.into_iter().collect();
        vs.sort_unstable();
        let mut out: Vec<Var> = Vec::with_capacity(vs.len());
        for v in vs {
            if out.last() == Some(&v) {
                out.pop();
            } else {
                out.push(v);
            }
        }
        XorConstraint { vars: out, rhs }
    }

    /// ⊕ of the given literals = `rhs`; complemented literals flip the
    /// right-hand side.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>, rhs: bool) -> XorConstraint {
        let mut parity = rhs;
        let vars: Vec<Var> = lits
            .into_iter()
            .map(|l| {
                parity ^= !l.is_positive();
                l.var()
            })
            .collect();
        XorConstraint::new(vars, parity)
    }

    /// The XOR-clause reading of C: ⊕_{x∈C} x = 0.
    pub fn from_clause(c: &Clause) -> XorConstraint {
        XorConstraint { vars: c.vars().collect(), rhs: c.complements() % 2 == 1 }
    }

    /// The inconsistent constraint 0 = 1.
    pub fn inconsistent() -> XorConstraint {
        XorConstraint { vars: Vec::new(), rhs: true }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn rhs(&self) -> bool {
        self.rhs
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// 0 = 0.
    pub fn is_trivial(&self) -> bool {
        self.vars.is_empty() && !self.rhs
    }

    /// 0 = 1.
    pub fn is_inconsistent(&self) -> bool {
        self.vars.is_empty() && self.rhs
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    /// The GF(2) sum of two constraints.
    pub fn sum(&self, other: &XorConstraint) -> XorConstraint {
        XorConstraint::new(self.vars.iter().chain(other.vars.iter()).copied(), self.rhs ^ other.rhs)
    }

    /// Evaluates under φ; `None` if some variable is unassigned.
    pub fn eval(&self, phi: &PartialAssignment) -> Option<bool> {
        let mut parity = false;
        for &v in &self.vars {
            parity ^= phi.get(v)?;
        }
        Some(parity == self.rhs)
    }

    /// A representative XOR-clause: all literals positive when rhs = 0,
    /// otherwise the smallest variable complemented. Fails for 0 = 1, which
    /// no single XOR-clause expresses.
    pub fn to_clause(&self) -> Result<Clause> {
        if self.is_inconsistent() {
            return Err(Error::InconsistentConstraint(self.clone()));
        }
        let lits = self.vars.iter().enumerate().map(|(i, &v)| Lit::new(v, !(i == 0 && self.rhs))).collect();
        Ok(Clause::from_sorted_unchecked(lits))
    }
}

impl fmt::Display for XorConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "0 = {}", u8::from(self.rhs));
        }
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, " ^ ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " = {}", u8::from(self.rhs))
    }
}

/// The componentwise sum ⊕G of a family of constraints; (∅,0) when empty.
pub fn xor_sum<'a>(g: impl IntoIterator<Item = &'a XorConstraint>) -> XorConstraint {
    let mut vars = BTreeSet::new();
    let mut rhs = false;
    for c in g {
        for &v in &c.vars {
            if !vars.remove(&v) {
                vars.insert(v);
            }
        }
        rhs ^= c.rhs;
    }
    XorConstraint { vars: vars.into_iter().collect(), rhs }
}

/// A finite set of XOR constraints in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XorSystem {
    constraints: IndexSet<XorConstraint>,
}

impl XorSystem {
    pub fn new() -> XorSystem {
        XorSystem::default()
    }

    /// Reads every clause as an XOR-clause.
    pub fn from_xor_clauses(f: &ClauseSet) -> XorSystem {
        f.iter().map(XorConstraint::from_clause).collect()
    }

    pub fn insert(&mut self, c: XorConstraint) -> bool {
        self.constraints.insert(c)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &XorConstraint> + '_ {
        self.constraints.iter()
    }

    pub fn get(&self, i: usize) -> Option<&XorConstraint> {
        self.constraints.get_index(i)
    }

    pub fn contains(&self, c: &XorConstraint) -> bool {
        self.constraints.contains(c)
    }

    /// c(S)
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.constraints.iter().flat_map(|c| c.vars.iter().copied()).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.vars().len()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.vars().last().copied()
    }

    /// Constraints sorted canonically.
    pub fn sorted(&self) -> Vec<XorConstraint> {
        let mut v: Vec<_> = self.constraints.iter().cloned().collect();
        v.sort();
        v
    }

    /// Whether a total assignment satisfies every constraint; `None` if
    /// some variable is unassigned.
    pub fn eval(&self, phi: &PartialAssignment) -> Option<bool> {
        let mut all = true;
        for c in &self.constraints {
            all &= c.eval(phi)?;
        }
        Some(all)
    }

    /// The matrix view A·v = b: the sorted variable list (columns) and one
    /// row per constraint.
    pub fn matrix(&self) -> (Vec<Var>, Vec<(Vec<bool>, bool)>) {
        let cols: Vec<Var> = self.vars().into_iter().collect();
        let rows = self.constraints.iter().map(|c| (cols.iter().map(|&v| c.contains(v)).collect(), c.rhs)).collect();
        (cols, rows)
    }

    /// The XOR-clause view; fails on a 0 = 1 constraint.
    pub fn to_xor_clauses(&self) -> Result<ClauseSet> {
        self.constraints.iter().map(XorConstraint::to_clause).collect()
    }
}

impl FromIterator<XorConstraint> for XorSystem {
    fn from_iter<T: IntoIterator<Item = XorConstraint>>(iter: T) -> Self {
        XorSystem { constraints: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a XorSystem {
    type Item = &'a XorConstraint;
    type IntoIter = indexmap::set::Iter<'a, XorConstraint>;
    fn into_iter(self) -> Self::IntoIter {
        self.constraints.iter()
    }
}

impl fmt::Display for XorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Adds one fresh positive literal to every clause (fresh variables in
/// clause order, taken from `alloc`). Works for either reading of F.
pub fn dope(f: &ClauseSet, alloc: &mut VarAllocator) -> ClauseSet {
    f.iter()
        .map(|c| {
            let z = alloc.fresh();
            let mut lits = c.lits().to_vec();
            lits.push(z.pos());
            Clause::new(lits).expect("fresh variable cannot clash")
        })
        .collect()
}

/// Adds one fresh variable to every constraint, keeping the right-hand
/// sides.
pub fn dope_system(s: &XorSystem, alloc: &mut VarAllocator) -> XorSystem {
    s.iter()
        .map(|c| {
            let z = alloc.fresh();
            XorConstraint::new(c.vars.iter().copied().chain([z]), c.rhs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    fn x(vars: &[u32], rhs: bool) -> XorConstraint {
        XorConstraint::new(vars.iter().map(|&i| v(i)), rhs)
    }

    #[test]
    fn clause_view_matrix() {
        // {{v1,-v2},{-v2,-v3},{v1,v3}} -> (110|1), (011|0), (101|0)
        let f = ClauseSet::from_dimacs([&[1, -2][..], &[-2, -3], &[1, 3]]).unwrap();
        let s = XorSystem::from_xor_clauses(&f);
        let (cols, rows) = s.matrix();
        assert_eq!(cols, vec![v(1), v(2), v(3)]);
        assert_eq!(
            rows,
            vec![(vec![true, true, false], true), (vec![false, true, true], false), (vec![true, false, true], false),]
        );
        assert!(XorSystem::from_xor_clauses(&ClauseSet::top()).is_empty());
    }

    #[test]
    fn unit_pair_is_inconsistent_pair() {
        let f = ClauseSet::from_dimacs([&[1][..], &[-1]]).unwrap();
        let s = XorSystem::from_xor_clauses(&f);
        assert_eq!(s.sorted(), vec![x(&[1], false), x(&[1], true)]);
    }

    #[test]
    fn equivalent_xor_clauses_collapse() {
        let a = Clause::from_dimacs(&[-1, -2, 3]).unwrap();
        let b = Clause::from_dimacs(&[1, 2, 3]).unwrap();
        assert_eq!(XorConstraint::from_clause(&a), XorConstraint::from_clause(&b));
        let c = XorConstraint::from_clause(&Clause::from_dimacs(&[-1, 2]).unwrap());
        assert_eq!(XorConstraint::from_clause(&c.to_clause().unwrap()), c);
    }

    #[test]
    fn sums() {
        let c = x(&[1, 2, 3, 4], false);
        let d = x(&[1, 2, 3, 5], false);
        assert_eq!(xor_sum([&c, &d]), x(&[4, 5], false));
        assert!(xor_sum(std::iter::empty()).is_trivial());
        assert!(xor_sum([&x(&[1, 2], false), &x(&[1, 2], true)]).is_inconsistent());
        assert_eq!(c.sum(&d), x(&[4, 5], false));
    }

    #[test]
    fn sign_convention() {
        assert_eq!(x(&[2, 5], true).to_clause().unwrap(), Clause::from_dimacs(&[-2, 5]).unwrap());
        assert_eq!(x(&[2, 5], false).to_clause().unwrap(), Clause::from_dimacs(&[2, 5]).unwrap());
        assert!(XorConstraint::inconsistent().to_clause().is_err());
    }

    #[test]
    fn doping() {
        // y1 ^ y2 = 1, y1 = 0, y2 = 0
        let s: XorSystem = [x(&[1, 2], true), x(&[1], false), x(&[2], false)].into_iter().collect();
        let mut alloc = VarAllocator::after(s.max_var());
        let d = dope_system(&s, &mut alloc);
        assert_eq!(
            d.iter().cloned().collect::<Vec<_>>(),
            vec![x(&[1, 2, 3], true), x(&[1, 4], false), x(&[2, 5], false)]
        );
        let f = s.to_xor_clauses().unwrap();
        let mut alloc = VarAllocator::after(f.max_var());
        let g = dope(&f, &mut alloc);
        assert_eq!(g.len(), f.len());
        assert_eq!(g.num_lits(), f.num_lits() + f.len());
        assert_eq!(XorSystem::from_xor_clauses(&g), d);
        assert!(dope(&ClauseSet::top(), &mut alloc).is_top());
    }

    #[test]
    fn canonical_form_is_sound_for_small_clauses() {
        // every clause over 1..=4 variables; every total assignment
        for mask in 0u32..81 {
            let mut lits = Vec::new();
            let mut m = mask;
            for i in 1..=4 {
                match m % 3 {
                    1 => lits.push(v(i).pos()),
                    2 => lits.push(v(i).neg()),
                    _ => {}
                }
                m /= 3;
            }
            let c = Clause::new(lits).unwrap();
            let canon = XorConstraint::from_clause(&c);
            for bits in 0u32..16 {
                let mut phi = PartialAssignment::new();
                for i in 1..=4 {
                    phi.bind(v(i), bits >> (i - 1) & 1 == 1).unwrap();
                }
                let ones = c.lits().iter().filter(|&&l| phi.lit_value(l) == Some(true)).count();
                assert_eq!(canon.eval(&phi), Some(ones % 2 == 0));
            }
        }
    }
}
