//! From a representation of relative hardness ≤ 1 to a monotone circuit
//! for f̂, by simulating unit-clause propagation layer by layer.
//!
//! Node v′_{i,j} = 0 means v_i was set to 1 within j propagation rounds,
//! v″_{i,j} = 0 that it was set to 0; the output is 0 iff some variable
//! received both values.

use std::collections::BTreeSet;

use super::{one_input, zero_input, CircuitBuilder, MonotoneCircuit};
use crate::cnf::{ClauseSet, Lit, Var};

pub fn circuit_from_representation(f: &ClauseSet, orig_vars: &BTreeSet<Var>) -> MonotoneCircuit {
    if f.has_empty_clause() {
        return MonotoneCircuit::constant(false);
    }
    let vars: Vec<Var> = orig_vars.union(&f.vars()).copied().collect();
    let pos = |v: Var| vars.binary_search(&v).expect("variable of F");
    let mut b = CircuitBuilder::new();
    let mut zero: Vec<usize> = Vec::with_capacity(vars.len());
    let mut one: Vec<usize> = Vec::with_capacity(vars.len());
    for &v in &vars {
        if orig_vars.contains(&v) {
            zero.push(b.input(zero_input(v)));
            one.push(b.input(one_input(v)));
        } else {
            let c = b.constant(true);
            zero.push(c);
            one.push(c);
        }
    }
    // clauses containing each literal
    let mut occ: Vec<[Vec<&[Lit]>; 2]> = vec![[Vec::new(), Vec::new()]; vars.len()];
    for c in f.iter() {
        for l in c.lits() {
            occ[pos(l.var())][usize::from(l.is_positive())].push(c.lits());
        }
    }
    // l(x, j): 1 while x may still become true
    let still_open = |zero: &[usize], one: &[usize], x: Lit| {
        let i = pos(x.var());
        if x.is_positive() {
            one[i]
        } else {
            zero[i]
        }
    };
    for _ in 0..f.num_vars() {
        let mut next_zero = Vec::with_capacity(vars.len());
        let mut next_one = Vec::with_capacity(vars.len());
        for i in 0..vars.len() {
            for (positive, cur, next) in [(true, &zero, &mut next_zero), (false, &one, &mut next_one)] {
                let clauses = &occ[i][usize::from(positive)];
                let mut terms = vec![cur[i]];
                for c in clauses {
                    let rest: Vec<usize> =
                        c.iter().filter(|x| x.var() != vars[i]).map(|&x| still_open(&zero, &one, x)).collect();
                    terms.push(b.or_all(rest));
                }
                next.push(b.and_all(terms));
            }
        }
        if next_zero == zero && next_one == one {
            // propagation reached its fixed point; later layers are equal
            break;
        }
        zero = next_zero;
        one = next_one;
    }
    let pairs: Vec<usize> = (0..vars.len()).map(|i| b.or(zero[i], one[i])).collect();
    let o = b.and_all(pairs);
    b.finish(o)
}
