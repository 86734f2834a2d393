//! Brute-force satisfiability, used as a reference at desk scale.
//!
//! Plain chronological backtracking over the variables in index order with
//! no propagation: a branch is cut only once some clause is falsified.

use std::collections::BTreeSet;

use super::{ClauseSet, Lit, PartialAssignment, Var};

/// Largest n(F) the oracle accepts.
pub const ORACLE_MAX_VARS: usize = 24;

struct Dense {
    vars: Vec<Var>,
    clauses: Vec<Vec<(usize, bool)>>,
}

impl Dense {
    fn new(f: &ClauseSet) -> Dense {
        let vars: Vec<Var> = f.vars().into_iter().collect();
        assert!(vars.len() <= ORACLE_MAX_VARS, "brute-force oracle limited to {ORACLE_MAX_VARS} variables");
        let clauses = f
            .iter()
            .map(|c| c.lits().iter().map(|l| (vars.binary_search(&l.var()).unwrap(), l.is_positive())).collect())
            .collect();
        Dense { vars, clauses }
    }

    fn falsified(&self, values: &[Option<bool>]) -> bool {
        self.clauses.iter().any(|c| c.iter().all(|&(i, pos)| matches!(values[i], Some(v) if v != pos)))
    }

    fn search(&self, values: &mut Vec<Option<bool>>, depth: usize) -> bool {
        if self.falsified(values) {
            return false;
        }
        if depth == self.vars.len() {
            return true;
        }
        for b in [false, true] {
            values[depth] = Some(b);
            if self.search(values, depth + 1) {
                return true;
            }
        }
        values[depth] = None;
        false
    }

    fn each_model(&self, values: &mut Vec<Option<bool>>, depth: usize, out: &mut dyn FnMut(&[Option<bool>])) {
        if self.falsified(values) {
            return;
        }
        if depth == self.vars.len() {
            out(values);
            return;
        }
        for b in [false, true] {
            values[depth] = Some(b);
            self.each_model(values, depth + 1, out);
        }
        values[depth] = None;
    }
}

/// A total satisfying assignment over var(F), if any.
pub fn find_model(f: &ClauseSet) -> Option<PartialAssignment> {
    let d = Dense::new(f);
    let mut values = vec![None; d.vars.len()];
    if !d.search(&mut values, 0) {
        return None;
    }
    let mut phi = PartialAssignment::new();
    for (v, b) in d.vars.iter().zip(values) {
        phi.bind(*v, b.unwrap()).unwrap();
    }
    Some(phi)
}

pub fn is_satisfiable(f: &ClauseSet) -> bool {
    let d = Dense::new(f);
    let mut values = vec![None; d.vars.len()];
    d.search(&mut values, 0)
}

/// Calls `visit` for every total satisfying assignment over var(F).
pub fn for_each_model(f: &ClauseSet, mut visit: impl FnMut(&PartialAssignment)) {
    let d = Dense::new(f);
    let mut values = vec![None; d.vars.len()];
    d.each_model(&mut values, 0, &mut |vals| {
        let mut phi = PartialAssignment::new();
        for (v, b) in d.vars.iter().zip(vals) {
            phi.bind(*v, b.unwrap()).unwrap();
        }
        visit(&phi);
    });
}

/// Forced literals by definition: x is forced iff <x -> 0> * F is
/// unsatisfiable. `None` when F itself is unsatisfiable.
pub fn forced_literals(f: &ClauseSet) -> Option<BTreeSet<Lit>> {
    if !is_satisfiable(f) {
        return None;
    }
    let mut forced = BTreeSet::new();
    for v in f.vars() {
        for x in [v.pos(), v.neg()] {
            let phi = PartialAssignment::new().with(x, false).unwrap();
            if !is_satisfiable(&super::apply(&phi, f)) {
                forced.insert(x);
            }
        }
    }
    Some(forced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_satisfiable(&ClauseSet::top()));
        assert!(!is_satisfiable(&ClauseSet::bottom()));
        let f = ClauseSet::from_dimacs([&[1, 2][..], &[-1], &[-2]]).unwrap();
        assert!(!is_satisfiable(&f));
        let g = ClauseSet::from_dimacs([&[1, 2][..], &[-1]]).unwrap();
        let m = find_model(&g).unwrap();
        assert_eq!(m.get(Var::new(2)), Some(true));
        let forced = forced_literals(&g).unwrap();
        assert_eq!(forced.len(), 2);
    }

    #[test]
    fn model_count_of_parity() {
        // X0(a xor b xor c = 0) has 4 models
        let f = ClauseSet::from_dimacs([&[1, 2, -3][..], &[1, -2, 3], &[-1, 2, 3], &[-1, -2, -3]]).unwrap();
        let mut count = 0;
        for_each_model(&f, |_| count += 1);
        assert_eq!(count, 4);
    }
}
