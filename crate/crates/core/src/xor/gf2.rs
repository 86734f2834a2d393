//! Gaussian elimination over GF(2) on bit-packed rows.
//!
//! Columns are the variables of the system in ascending order and the pivot
//! of each step is the lowest remaining column, so results are
//! deterministic. Every row remembers which input constraints were added
//! up to form it, which yields the unsatisfiability certificate.

use indexmap::IndexSet;

use super::{XorConstraint, XorSystem};
use crate::cnf::{PartialAssignment, Var};
use crate::error::{Error, Result};

/// Largest system [`closure_star`] accepts (it has 2^m subset sums).
pub const CLOSURE_MAX_CONSTRAINTS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    wi * 64 + b
                })
            })
        })
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Bits,
    rhs: bool,
    /// Which input rows were summed to obtain this one.
    origin: Bits,
}

/// A system in reduced row-echelon form.
struct Echelon {
    cols: Vec<Var>,
    /// Nonzero rows, ordered by pivot column.
    rows: Vec<(usize, Row)>,
    /// Zero rows with right-hand side 1.
    contradictions: Vec<Row>,
}

impl Echelon {
    fn new(s: &XorSystem) -> Echelon {
        let cols: Vec<Var> = s.vars().into_iter().collect();
        let m = s.len();
        let mut pending: Vec<Row> = s
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut coeffs = Bits::zeros(cols.len());
                for v in c.vars() {
                    coeffs.set(cols.binary_search(v).unwrap());
                }
                let mut origin = Bits::zeros(m);
                origin.set(i);
                Row { coeffs, rhs: c.rhs(), origin }
            })
            .collect();

        let mut rows: Vec<(usize, Row)> = Vec::new();
        for col in 0..cols.len() {
            let Some(p) = pending.iter().position(|r| r.coeffs.get(col)) else {
                continue;
            };
            let pivot = pending.swap_remove(p);
            for r in pending.iter_mut().chain(rows.iter_mut().map(|(_, r)| r)) {
                if r.coeffs.get(col) {
                    r.coeffs.xor(&pivot.coeffs);
                    r.rhs ^= pivot.rhs;
                    r.origin.xor(&pivot.origin);
                }
            }
            rows.push((col, pivot));
        }
        let contradictions = pending.into_iter().filter(|r| r.rhs).collect();
        Echelon { cols, rows, contradictions }
    }

    fn certificate(&self, s: &XorSystem) -> Option<Vec<XorConstraint>> {
        let row = self.contradictions.first()?;
        Some(row.origin.ones().map(|i| s.get(i).unwrap().clone()).collect())
    }

    fn row_constraint(&self, row: &Row) -> XorConstraint {
        XorConstraint::new(row.coeffs.ones().map(|i| self.cols[i]), row.rhs)
    }
}

/// Outcome of [`xor_sat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XorSolution {
    /// A total satisfying assignment over the system's variables.
    Sat(PartialAssignment),
    /// A subset of the input whose sum is 0 = 1.
    Unsat(Vec<XorConstraint>),
}

impl XorSolution {
    pub fn is_sat(&self) -> bool {
        matches!(self, XorSolution::Sat(_))
    }
}

/// Decides S by elimination. Free variables are set to 0 in the model.
pub fn xor_sat(s: &XorSystem) -> XorSolution {
    let e = Echelon::new(s);
    if let Some(cert) = e.certificate(s) {
        return XorSolution::Unsat(cert);
    }
    // In reduced form a pivot row mentions no other pivot column, so with
    // all free variables at 0 each pivot variable equals its row's rhs.
    let mut phi = PartialAssignment::new();
    for (col, row) in &e.rows {
        phi.bind(e.cols[*col], row.rhs).unwrap();
    }
    for v in &e.cols {
        if phi.get(*v).is_none() {
            phi.bind(*v, false).unwrap();
        }
    }
    XorSolution::Sat(phi)
}

fn satisfiable_echelon(s: &XorSystem) -> Result<Echelon> {
    let e = Echelon::new(s);
    match e.certificate(s) {
        Some(certificate) => Err(Error::Unsatisfiable { certificate }),
        None => Ok(e),
    }
}

/// Whether the satisfiable system S implies c, i.e. c is the sum of some
/// subset of S. Errors if S is unsatisfiable.
pub fn xor_implies(s: &XorSystem, c: &XorConstraint) -> Result<bool> {
    let e = satisfiable_echelon(s)?;
    let mut rhs = c.rhs();
    let mut rest: Vec<Var> = Vec::new();
    let mut coeffs = Bits::zeros(e.cols.len());
    for v in c.vars() {
        match e.cols.binary_search(v) {
            Ok(i) => coeffs.set(i),
            Err(_) => rest.push(*v),
        }
    }
    if !rest.is_empty() {
        return Ok(false);
    }
    for (col, row) in &e.rows {
        if coeffs.get(*col) {
            coeffs.xor(&row.coeffs);
            rhs ^= row.rhs;
        }
    }
    Ok(coeffs.is_zero() && !rhs)
}

/// An equivalent system in reduced row-echelon form, one constraint per
/// pivot (so c ≤ n and c ≤ the input's c).
pub fn normalize_basis(s: &XorSystem) -> Result<XorSystem> {
    let e = satisfiable_echelon(s)?;
    Ok(e.rows.iter().map(|(_, r)| e.row_constraint(r)).collect())
}

/// F* = {⊕F' : F' ⊆ F} without the trivial sum 0 = 0. The inputs come
/// first, then the remaining sums in Gray-code order of the subsets.
pub fn closure_star(s: &XorSystem) -> Result<XorSystem> {
    if s.len() > CLOSURE_MAX_CONSTRAINTS {
        return Err(Error::cap("constraints in closure", CLOSURE_MAX_CONSTRAINTS, s.len()));
    }
    satisfiable_echelon(s)?;
    let cols: Vec<Var> = s.vars().into_iter().collect();
    let rows: Vec<(Bits, bool)> = s
        .iter()
        .map(|c| {
            let mut b = Bits::zeros(cols.len());
            for v in c.vars() {
                b.set(cols.binary_search(v).unwrap());
            }
            (b, c.rhs())
        })
        .collect();

    let mut seen: IndexSet<(Bits, bool)> = rows.iter().cloned().collect();
    let mut cur = (Bits::zeros(cols.len()), false);
    for i in 1u64..(1u64 << s.len()) {
        let flip = i.trailing_zeros() as usize;
        cur.0.xor(&rows[flip].0);
        cur.1 ^= rows[flip].1;
        if !cur.0.is_zero() {
            seen.insert(cur.clone());
        }
    }
    Ok(seen
        .into_iter()
        .map(|(b, rhs)| XorConstraint::new(b.ones().map(|i| cols[i]), rhs))
        .filter(|c| !c.is_trivial())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::oracle;
    use crate::xor::xor_sum;
    use proptest::prelude::*;

    fn x(vars: &[u32], rhs: bool) -> XorConstraint {
        XorConstraint::new(vars.iter().map(|&i| Var::new(i)), rhs)
    }

    fn sys(cs: &[XorConstraint]) -> XorSystem {
        cs.iter().cloned().collect()
    }

    /// All total assignments over 1..=n satisfying S.
    fn solutions(s: &XorSystem, n: u32) -> Vec<u32> {
        (0u32..1 << n)
            .filter(|bits| {
                s.iter().all(|c| c.vars().iter().fold(false, |p, v| p ^ (bits >> (v.index() - 1) & 1 == 1)) == c.rhs())
            })
            .collect()
    }

    fn arb_system(n: u32, m: usize) -> impl Strategy<Value = XorSystem> {
        let c = (prop::collection::btree_set(1..=n, 1..=n as usize), any::<bool>())
            .prop_map(|(vs, rhs)| XorConstraint::new(vs.into_iter().map(Var::new), rhs));
        prop::collection::vec(c, 0..=m).prop_map(XorSystem::from_iter)
    }

    #[test]
    fn triangle_is_unsat_with_full_certificate() {
        let s = sys(&[x(&[1, 2], false), x(&[1, 3], false), x(&[2, 3], true)]);
        match xor_sat(&s) {
            XorSolution::Unsat(cert) => {
                assert_eq!(cert.len(), 3);
                assert!(xor_sum(&cert).is_inconsistent());
            }
            other => panic!("expected unsat, got {other:?}"),
        }
    }

    #[test]
    fn single_constraint_sat() {
        let s = sys(&[x(&[1, 2], true)]);
        let XorSolution::Sat(phi) = xor_sat(&s) else { panic!() };
        assert_eq!(s.eval(&phi), Some(true));
    }

    #[test]
    fn matrix_example_system_is_unsat() {
        // rows (110|1), (011|0), (101|0) add up to (000|1)
        let s = sys(&[x(&[1, 2], true), x(&[2, 3], false), x(&[1, 3], false)]);
        assert!(solutions(&s, 3).is_empty());
        assert!(!xor_sat(&s).is_sat());
    }

    #[test]
    fn implication_and_closure_of_the_pair() {
        let c = x(&[1, 2, 3, 4], false);
        let d = x(&[1, 2, 3, 5], false);
        let s = sys(&[c.clone(), d.clone()]);
        assert!(xor_implies(&s, &x(&[4, 5], false)).unwrap());
        assert!(xor_implies(&s, &c).unwrap());
        assert!(!xor_implies(&s, &x(&[4, 5], true)).unwrap());
        let star = closure_star(&s).unwrap();
        assert_eq!(star.iter().cloned().collect::<Vec<_>>(), vec![c.clone(), d, x(&[4, 5], false)]);
        assert_eq!(closure_star(&sys(std::slice::from_ref(&c))).unwrap(), sys(&[c]));
    }

    #[test]
    fn unsat_inputs_are_rejected() {
        let s = sys(&[x(&[1, 2], false), x(&[1, 2], true)]);
        assert!(matches!(closure_star(&s), Err(Error::Unsatisfiable { .. })));
        assert!(matches!(xor_implies(&s, &x(&[1], false)), Err(Error::Unsatisfiable { .. })));
        assert!(normalize_basis(&s).is_err());
    }

    #[test]
    fn bases() {
        assert_eq!(normalize_basis(&sys(&[x(&[1, 2], false), x(&[2, 1], false)])).unwrap().len(), 1);
        assert_eq!(normalize_basis(&sys(&[x(&[1, 2], false), x(&[2, 3], false), x(&[1, 3], false)])).unwrap().len(), 2);
        assert!(normalize_basis(&XorSystem::new()).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn sat_agrees_with_enumeration(s in arb_system(8, 6)) {
            let sols = solutions(&s, 8);
            match xor_sat(&s) {
                XorSolution::Sat(phi) => {
                    prop_assert!(!sols.is_empty());
                    prop_assert_eq!(s.eval(&phi), Some(true));
                }
                XorSolution::Unsat(cert) => {
                    prop_assert!(sols.is_empty());
                    prop_assert!(xor_sum(&cert).is_inconsistent());
                    let sub: XorSystem = cert.into_iter().collect();
                    prop_assert!(sub.iter().all(|c| s.contains(c)));
                }
            }
        }

        #[test]
        fn cnf_oracle_agrees(s in arb_system(6, 4)) {
            // the X0 view of every constraint, decided by the CNF oracle
            let mut f = crate::cnf::ClauseSet::top();
            for c in &s {
                for bits in 0u32..(1 << c.len()) {
                    let lits: Vec<_> = c.vars().iter().enumerate()
                        .map(|(i, v)| crate::cnf::Lit::new(*v, bits >> i & 1 == 1))
                        .collect();
                    // the clause falsified exactly by the assignment making lits false
                    let falsifier_parity = lits.iter().filter(|l| !l.is_positive()).count() % 2 == 1;
                    if falsifier_parity != c.rhs() {
                        f.insert(crate::cnf::Clause::new(lits).unwrap());
                    }
                }
                if c.is_inconsistent() {
                    f.insert(crate::cnf::Clause::bottom());
                }
            }
            prop_assert_eq!(oracle::is_satisfiable(&f), xor_sat(&s).is_sat());
        }

        #[test]
        fn basis_is_equivalent(s in arb_system(6, 5)) {
            if let Ok(b) = normalize_basis(&s) {
                prop_assert!(b.len() <= s.len());
                prop_assert!(b.len() <= s.num_vars());
                prop_assert_eq!(solutions(&b, 6), solutions(&s, 6));
            }
        }

        #[test]
        fn closure_is_idempotent_and_implied(s in arb_system(6, 4)) {
            if let Ok(star) = closure_star(&s) {
                prop_assert!(star.len() < 1 << s.len());
                for c in &star {
                    prop_assert!(xor_implies(&s, c).unwrap());
                }
                let again = closure_star(&star).unwrap();
                prop_assert_eq!(again.sorted(), star.sorted());
            }
        }
    }
}
