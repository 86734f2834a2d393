//! CNF translations of XOR systems.
//!
//! * [`x0`] expands every constraint into its 2^{n-1} full clauses;
//! * [`x1`] first splits long constraints into a chain of ternary ones;
//! * [`x2`] handles two overlapping constraints through one shared
//!   variable, giving a propagation-complete result;
//! * [`xstar`] applies X1 to all subset sums of the system, which makes
//!   unit propagation arc-consistent on the original variables;
//! * [`prime_translation`] yields the prime implicates over the original
//!   variables, without auxiliary variables.
//!
//! Original variables keep their numbers; auxiliary variables come from a
//! [`VarAllocator`], by default starting right after the largest original
//! variable, in creation order.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::alloc::VarAllocator;
use crate::cnf::{dimacs, Clause, ClauseSet, Lit, Var};
use crate::error::{Error, Result, X2Violation};
use crate::xor::{closure_star, xor_sat, XorConstraint, XorSolution, XorSystem};

mod auto;

pub use auto::{translate_auto, AutoChoice, Guarantee, DEFAULT_XSTAR_CAP};

/// Which translation produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    X0,
    X1,
    X2,
    XStar,
    Prime,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::X0 => "x0",
            Method::X1 => "x1",
            Method::X2 => "x2",
            Method::XStar => "xstar",
            Method::Prime => "prime",
        })
    }
}

/// ⊕ vars ⊕ constant, the meaning of an auxiliary variable in terms of the
/// original ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XorExpr {
    pub vars: Vec<Var>,
    pub constant: bool,
}

impl XorExpr {
    fn sum(&self, other: &XorExpr) -> XorExpr {
        let c = XorConstraint::new(self.vars.iter().chain(other.vars.iter()).copied(), self.constant ^ other.constant);
        XorExpr { vars: c.vars().to_vec(), constant: c.rhs() }
    }

    fn var(v: Var) -> XorExpr {
        XorExpr { vars: vec![v], constant: false }
    }
}

impl fmt::Display for XorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vars {
            if !first {
                f.write_str(" ^ ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if self.constant || first {
            if !first {
                f.write_str(" ^ ")?;
            }
            write!(f, "{}", u8::from(self.constant))?;
        }
        Ok(())
    }
}

/// A CNF representation together with the meaning of its auxiliary
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationResult {
    pub cnf: ClauseSet,
    /// Every variable of `cnf` outside `original_vars`, in creation order.
    pub aux: IndexMap<Var, XorExpr>,
    pub method: Method,
    pub original_vars: BTreeSet<Var>,
}

impl TranslationResult {
    fn new(method: Method, original_vars: BTreeSet<Var>) -> TranslationResult {
        TranslationResult { cnf: ClauseSet::top(), aux: IndexMap::new(), method, original_vars }
    }

    /// The meaning of `v` over the original variables.
    fn expand(&self, v: Var) -> XorExpr {
        self.aux.get(&v).cloned().unwrap_or_else(|| XorExpr::var(v))
    }

    /// DIMACS text with one `c aux <var> := <expr>` line per auxiliary.
    pub fn to_dimacs(&self) -> String {
        let mut comments = vec![format!("method {}", self.method)];
        comments.extend(self.aux.iter().map(|(v, e)| format!("aux {v} := {e}")));
        let n = self
            .cnf
            .max_var()
            .into_iter()
            .chain(self.original_vars.last().copied())
            .chain(self.aux.keys().last().copied())
            .max()
            .map_or(0, |v| v.index() as usize);
        dimacs::write(&self.cnf, &comments, Some(n))
    }
}

/// The full clauses over var(c) falsified exactly by the assignments that
/// violate c. The first n-1 variables run through their sign patterns
/// positive-first; the last literal's sign is then determined.
///
/// The inconsistent constraint 0 = 1 becomes {{v},{v̄}} for a fresh v.
pub fn x0_clause(c: &XorConstraint, alloc: &mut VarAllocator) -> ClauseSet {
    if c.is_inconsistent() {
        let v = alloc.fresh();
        return ClauseSet::from_clauses([Clause::new([v.pos()]).unwrap(), Clause::new([v.neg()]).unwrap()]);
    }
    x0_clause_consistent(c)
}

fn x0_clause_consistent(c: &XorConstraint) -> ClauseSet {
    let vars = c.vars();
    let n = vars.len();
    if n == 0 {
        return ClauseSet::top();
    }
    // a clause is falsified by the assignment setting every complemented
    // variable to 1; it must violate c, so #complements ≢ rhs
    let mut out = ClauseSet::top();
    for pattern in 0u64..(1u64 << (n - 1)) {
        let mut negs = 0;
        let mut lits: Vec<Lit> = Vec::with_capacity(n);
        for (j, &v) in vars[..n - 1].iter().enumerate() {
            let neg = pattern >> (n - 2 - j) & 1 == 1;
            negs += usize::from(neg);
            lits.push(Lit::new(v, !neg));
        }
        let last_neg = (negs % 2 == 1) == c.rhs();
        lits.push(Lit::new(vars[n - 1], !last_neg));
        out.insert(Clause::from_sorted_unchecked(lits));
    }
    out
}

/// X0(S): the union of [`x0_clause`] over S.
pub fn x0(s: &XorSystem) -> TranslationResult {
    x0_with(s, &mut VarAllocator::after(s.max_var()))
}

pub fn x0_with(s: &XorSystem, alloc: &mut VarAllocator) -> TranslationResult {
    let mut r = TranslationResult::new(Method::X0, s.vars());
    for c in s {
        if c.is_inconsistent() {
            let before = alloc.peek();
            r.cnf.extend(x0_clause(c, alloc));
            r.aux.insert(before, XorExpr::default());
        } else {
            r.cnf.extend(x0_clause_consistent(c));
        }
    }
    r
}

/// The natural splitting of one constraint, expanded by X0.
pub fn x1_clause(c: &XorConstraint, alloc: &mut VarAllocator) -> TranslationResult {
    let orig: BTreeSet<Var> = c.vars().iter().copied().collect();
    let mut r = TranslationResult::new(Method::X1, orig);
    push_x1(&mut r, c, alloc);
    r
}

/// Appends X1(c) to `r`. Auxiliary definitions are expressed over the
/// original variables of `r`, looking through earlier auxiliaries.
fn push_x1(r: &mut TranslationResult, c: &XorConstraint, alloc: &mut VarAllocator) {
    let vars = c.vars();
    let n = vars.len();
    if n <= 2 {
        if c.is_inconsistent() {
            let before = alloc.peek();
            r.cnf.extend(x0_clause(c, alloc));
            r.aux.insert(before, XorExpr::default());
        } else {
            r.cnf.extend(x0_clause_consistent(c));
        }
        return;
    }
    // x1 ^ x2 = y2, y_{i-1} ^ x_i = y_i, y_{n-1} ^ x_n = rhs
    let mut prev = vars[0];
    let mut prev_expr = r.expand(vars[0]);
    for &x in &vars[1..n - 1] {
        let y = alloc.fresh();
        let expr = prev_expr.sum(&r.expand(x));
        r.cnf.extend(x0_clause_consistent(&XorConstraint::new([prev, x, y], false)));
        r.aux.insert(y, expr.clone());
        prev = y;
        prev_expr = expr;
    }
    r.cnf.extend(x0_clause_consistent(&XorConstraint::new([prev, vars[n - 1]], c.rhs())));
}

/// X1(S): the union of the natural splittings, with disjoint auxiliary
/// variables per constraint. All clauses have length ≤ 3.
pub fn x1(s: &XorSystem) -> TranslationResult {
    x1_with(s, &mut VarAllocator::after(s.max_var()))
}

pub fn x1_with(s: &XorSystem, alloc: &mut VarAllocator) -> TranslationResult {
    let mut r = TranslationResult::new(Method::X1, s.vars());
    for c in s {
        push_x1(&mut r, c, alloc);
    }
    r
}

/// Checks the preconditions of [`x2`]: at least two shared variables and a
/// private variable on each side.
pub fn x2_check(c: &XorConstraint, d: &XorConstraint) -> Result<(), X2Violation> {
    let shared = c.vars().iter().filter(|v| d.contains(**v)).count();
    if shared < 2 {
        return Err(X2Violation::SharedTooSmall { shared });
    }
    if c.len() == shared {
        return Err(X2Violation::FirstHasNoPrivate);
    }
    if d.len() == shared {
        return Err(X2Violation::SecondHasNoPrivate);
    }
    Ok(())
}

/// The three constraints X2 hands to X1: with I the shared variables and a
/// fresh s, I ⊕ s = 0, (C \ I) ⊕ s = rhs(C), (D \ I) ⊕ s = rhs(D).
pub fn x2_system(c: &XorConstraint, d: &XorConstraint, s: Var) -> XorSystem {
    let shared: Vec<Var> = c.vars().iter().copied().filter(|v| d.contains(*v)).collect();
    let only = |x: &XorConstraint| -> Vec<Var> { x.vars().iter().copied().filter(|v| !shared.contains(v)).collect() };
    [
        XorConstraint::new(shared.iter().copied().chain([s]), false),
        XorConstraint::new(only(c).into_iter().chain([s]), c.rhs()),
        XorConstraint::new(only(d).into_iter().chain([s]), d.rhs()),
    ]
    .into_iter()
    .collect()
}

/// X2(C, D), a propagation-complete representation of {C, D}.
pub fn x2(c: &XorConstraint, d: &XorConstraint) -> Result<TranslationResult> {
    let max = c.vars().iter().chain(d.vars()).max().copied();
    x2_with(c, d, &mut VarAllocator::after(max))
}

pub fn x2_with(c: &XorConstraint, d: &XorConstraint, alloc: &mut VarAllocator) -> Result<TranslationResult> {
    x2_check(c, d).map_err(Error::X2Precondition)?;
    let pair: XorSystem = [c.clone(), d.clone()].into_iter().collect();
    if let XorSolution::Unsat(certificate) = xor_sat(&pair) {
        return Err(Error::Unsatisfiable { certificate });
    }
    let s = alloc.fresh();
    let shared: Vec<Var> = c.vars().iter().copied().filter(|v| d.contains(*v)).collect();
    let mut r = TranslationResult::new(Method::X2, pair.vars());
    r.aux.insert(s, XorExpr { vars: shared, constant: false });
    for k in &x2_system(c, d, s) {
        push_x1(&mut r, k, alloc);
    }
    Ok(r)
}

/// X*(S) = X1(S*), an arc-consistent representation of a satisfiable S.
/// Takes time O(ℓ · 2^m).
pub fn xstar(s: &XorSystem) -> Result<TranslationResult> {
    xstar_with(s, &mut VarAllocator::after(s.max_var()))
}

pub fn xstar_with(s: &XorSystem, alloc: &mut VarAllocator) -> Result<TranslationResult> {
    let star = closure_star(s)?;
    let mut r = TranslationResult::new(Method::XStar, s.vars());
    for c in &star {
        push_x1(&mut r, c, alloc);
    }
    Ok(r)
}

/// Largest n(X1(S)) [`prime_translation`] accepts.
pub const PRIME_MAX_VARS: usize = 20;

/// The prime implicates of S over var(S): the unique representation
/// without auxiliary variables. Computed as the prime implicates of X1(S)
/// that avoid the auxiliary variables; every constraint must have at most
/// `k` variables.
pub fn prime_translation(s: &XorSystem, k: usize) -> Result<TranslationResult> {
    if let Some(c) = s.iter().find(|c| c.len() > k) {
        return Err(Error::ConstraintTooLong { limit: k, actual: c.len() });
    }
    let split = x1(s);
    let n = split.cnf.num_vars();
    if n > PRIME_MAX_VARS {
        return Err(Error::cap("variables of X1(S) for prime implicates", PRIME_MAX_VARS, n));
    }
    let primes = crate::measure::prime_implicates_by_resolution(&split.cnf)?;
    let orig = s.vars();
    let mut r = TranslationResult::new(Method::Prime, orig.clone());
    r.cnf = primes.into_iter().filter(|c| c.vars().all(|v| orig.contains(&v))).collect();
    Ok(r)
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

    fn cls(v: &[&[i32]]) -> Vec<Clause> {
        v.iter().map(|c| Clause::from_dimacs(c).unwrap()).collect()
    }

    #[test]
    fn x0_small_cases() {
        let mut a = VarAllocator::after(Some(v(10)));
        assert_eq!(x0_clause(&x(&[1, 2], false), &mut a).into_iter().collect::<Vec<_>>(), cls(&[&[1, -2], &[-1, 2]]));
        let three = x0_clause(&x(&[1, 2, 3], false), &mut a);
        assert_eq!(three.len(), 4);
        assert!(three.iter().all(|c| c.len() == 3 && c.complements() % 2 == 1));
        assert!(x0_clause(&x(&[], false), &mut a).is_top());
        let bad = x0_clause(&XorConstraint::inconsistent(), &mut a);
        assert_eq!(bad.into_iter().collect::<Vec<_>>(), cls(&[&[11], &[-11]]));
    }

    #[test]
    fn x1_of_three_matches_worked_example() {
        let mut a = VarAllocator::after(Some(v(3)));
        let r = x1_clause(&x(&[1, 2, 3], false), &mut a);
        assert_eq!(
            r.cnf.into_iter().collect::<Vec<_>>(),
            cls(&[&[1, 2, -4], &[1, -2, 4], &[-1, 2, 4], &[-1, -2, -4], &[3, -4], &[-3, 4]])
        );
        assert_eq!(r.aux.get(&v(4)), Some(&XorExpr { vars: vec![v(1), v(2)], constant: false }));
    }

    #[test]
    fn x1_sizes() {
        for n in 1..=12u32 {
            let c = XorConstraint::new((1..=n).map(v), n % 2 == 0);
            let r = x1_clause(&c, &mut VarAllocator::after(Some(v(n))));
            let n = n as usize;
            if n <= 2 {
                assert_eq!(r.cnf.len(), 1 << (n - 1));
                assert_eq!(r.cnf.num_lits(), (1 << (n - 1)) * n);
            } else {
                assert_eq!(r.cnf.num_vars(), 2 * n - 2);
                assert_eq!(r.cnf.len(), 4 * n - 6);
                assert_eq!(r.cnf.num_lits(), 12 * n - 20);
            }
            assert!(r.cnf.max_clause_len() <= 3);
        }
    }

    #[test]
    fn x2_builds_the_shared_variable_system() {
        let c = x(&[1, 2, 3, 4], false);
        let d = x(&[1, 2, 3, 5], false);
        assert_eq!(
            x2_system(&c, &d, v(6)).into_iter().cloned().collect::<Vec<_>>(),
            vec![x(&[1, 2, 3, 6], false), x(&[4, 6], false), x(&[5, 6], false)]
        );
        let r = x2(&c, &d).unwrap();
        assert_eq!(r.aux.keys().next(), Some(&v(6)));
        assert_eq!(
            x2(&x(&[1, 2], false), &x(&[1, 3], false)),
            Err(Error::X2Precondition(X2Violation::SharedTooSmall { shared: 1 }))
        );
        assert_eq!(
            x2(&x(&[1, 2], false), &x(&[1, 2, 3], false)),
            Err(Error::X2Precondition(X2Violation::FirstHasNoPrivate))
        );
    }

    #[test]
    fn aux_definitions_reach_originals_through_s() {
        let r = x2(&x(&[1, 2, 3, 4], true), &x(&[1, 2, 3, 5], false)).unwrap();
        // s = 1^2^3; the chain of {1,2,3,s} defines y2 = 1^2, y3 = 1^2^3
        let exprs: Vec<String> = r.aux.values().map(|e| e.to_string()).collect();
        assert_eq!(exprs, vec!["1 ^ 2 ^ 3", "1 ^ 2", "1 ^ 2 ^ 3"]);
        let text = r.to_dimacs();
        assert!(text.contains("c aux 6 := 1 ^ 2 ^ 3\n"));
    }

    #[test]
    fn empty_system_is_top() {
        let r = x1(&XorSystem::new());
        assert!(r.cnf.is_top());
        assert!(r.to_dimacs().ends_with("p cnf 0 0\n"));
    }
}
