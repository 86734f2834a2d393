//! Clauses, clause-sets and partial assignments.
//!
//! A [`Clause`] is a complement-free set of literals, a [`ClauseSet`] a set of
//! clauses. Both have set semantics; [`ClauseSet`] keeps insertion order so
//! that translations and file output are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod dimacs;
pub mod oracle;
pub(crate) mod reduce;

pub use reduce::{r_infty, r_infty_by_forced, rk, rk1, rk1_with};

/// A propositional variable, identified by a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variables are numbered from 1");
        Var(index)
    }

    pub fn try_new(index: u32) -> Result<Var> {
        if index == 0 {
            Err(Error::ZeroVariable)
        } else {
            Ok(Var(index))
        }
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal in DIMACS encoding: `v` or `-v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        let v = var.0 as i32;
        Lit(if positive { v } else { -v })
    }

    pub fn from_dimacs(value: i32) -> Result<Lit> {
        if value == 0 {
            Err(Error::ZeroVariable)
        } else {
            Ok(Lit(value))
        }
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn complement(self) -> Lit {
        Lit(-self.0)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        self.complement()
    }
}

// Ordered by variable, positive literal first.
impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.var(), !self.is_positive()).cmp(&(other.var(), !other.is_positive()))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A complement-free, duplicate-free set of literals, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// The empty clause.
    pub fn bottom() -> Clause {
        Clause::default()
    }

    /// Builds a clause, collapsing duplicates. Clashing literals are rejected.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(Error::Tautology { var: pair[0].var().index() });
            }
        }
        Ok(Clause { lits })
    }

    pub fn from_dimacs(lits: &[i32]) -> Result<Clause> {
        let lits = lits.iter().map(|&l| Lit::from_dimacs(l)).collect::<Result<Vec<_>>>()?;
        Clause::new(lits)
    }

    /// Literals must already be sorted, unique and complement-free.
    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    /// Number of negative literals.
    pub fn complements(&self) -> usize {
        self.lits.iter().filter(|l| !l.is_positive()).count()
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    /// Resolvent with `other` if the two clash in exactly one literal.
    /// Returns the resolvent and the resolution variable.
    pub fn resolve(&self, other: &Clause) -> Option<(Clause, Var)> {
        let mut clash = None;
        for &l in &self.lits {
            if other.contains(!l) {
                if clash.is_some() {
                    return None;
                }
                clash = Some(l.var());
            }
        }
        let pivot = clash?;
        let lits: BTreeSet<Lit> =
            self.lits.iter().chain(other.lits.iter()).copied().filter(|l| l.var() != pivot).collect();
        Some((Clause::from_sorted_unchecked(lits.into_iter().collect()), pivot))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A finite set of clauses in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: IndexSet<Clause>,
}

impl ClauseSet {
    /// The empty clause-set ⊤.
    pub fn top() -> ClauseSet {
        ClauseSet::default()
    }

    /// The clause-set {⊥}.
    pub fn bottom() -> ClauseSet {
        ClauseSet::from_clauses([Clause::bottom()])
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> ClauseSet {
        ClauseSet { clauses: clauses.into_iter().collect() }
    }

    /// Builds a clause-set from DIMACS-style literal lists.
    pub fn from_dimacs<I, C>(clauses: I) -> Result<ClauseSet>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[i32]>,
    {
        clauses
            .into_iter()
            .map(|c| Clause::from_dimacs(c.as_ref()))
            .collect::<Result<IndexSet<_>>>()
            .map(|clauses| ClauseSet { clauses })
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Clause>) {
        self.clauses.extend(other);
    }

    pub fn remove(&mut self, clause: &Clause) -> bool {
        self.clauses.shift_remove(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    /// c(F)
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.is_empty()
    }

    /// True iff this is exactly {⊥}.
    pub fn is_bottom(&self) -> bool {
        self.clauses.len() == 1 && self.has_empty_clause()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    /// n(F)
    pub fn num_vars(&self) -> usize {
        self.vars().len()
    }

    /// ℓ(F)
    pub fn num_lits(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).max()
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    /// Clauses sorted canonically; handy for order-independent output.
    pub fn sorted(&self) -> Vec<Clause> {
        let mut v: Vec<Clause> = self.clauses.iter().cloned().collect();
        v.sort();
        v
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Self {
        ClauseSet::from_clauses(iter)
    }
}

impl IntoIterator for ClauseSet {
    type Item = Clause;
    type IntoIter = indexmap::set::IntoIter<Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.into_iter()
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = indexmap::set::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite map from variables to truth values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAssignment {
    bindings: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> PartialAssignment {
        PartialAssignment::default()
    }

    /// The assignment making every given literal true.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Result<PartialAssignment> {
        let mut phi = PartialAssignment::new();
        for l in lits {
            phi.bind(l.var(), l.is_positive())?;
        }
        Ok(phi)
    }

    /// Binds `var`. Rebinding to the same value is a no-op, to the other
    /// value an error.
    pub fn bind(&mut self, var: Var, value: bool) -> Result<()> {
        match self.bindings.insert(var, value) {
            Some(old) if old != value => {
                self.bindings.insert(var, old);
                Err(Error::InvalidArgument(format!("variable {var} bound to both values")))
            }
            _ => Ok(()),
        }
    }

    pub fn with(mut self, lit: Lit, value: bool) -> Result<PartialAssignment> {
        let v = if lit.is_positive() { value } else { !value };
        self.bind(lit.var(), v)?;
        Ok(self)
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    /// φ(x) for a literal, with φ(x̄) = 1 − φ(x).
    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.bindings.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    /// The literals made true.
    pub fn true_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.iter().map(|(v, b)| Lit::new(v, b))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// First `self`, then `then` on the variables `self` leaves open.
    pub fn compose(&self, then: &PartialAssignment) -> PartialAssignment {
        let mut out = self.clone();
        for (v, b) in then.iter() {
            out.bindings.entry(v).or_insert(b);
        }
        out
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}->{}", u8::from(b))?;
        }
        write!(f, ">")
    }
}

/// φ * F: drops satisfied clauses and deletes falsified literals.
pub fn apply(phi: &PartialAssignment, f: &ClauseSet) -> ClauseSet {
    if phi.is_empty() {
        return f.clone();
    }
    let mut out = ClauseSet::top();
    'clauses: for c in f {
        let mut kept = Vec::with_capacity(c.len());
        for &l in c.lits() {
            match phi.lit_value(l) {
                Some(true) => continue 'clauses,
                Some(false) => {}
                None => kept.push(l),
            }
        }
        out.insert(Clause::from_sorted_unchecked(kept));
    }
    out
}
