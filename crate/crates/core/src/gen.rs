//! Seeded random instances.
//!
//! All generators take an explicit RNG; [`rng`] builds the ChaCha8 generator
//! used throughout, so a single `u64` seed determines every output.

use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, ClauseSet, Lit, Var};
use crate::error::{Error, Result};
use crate::xor::{XorConstraint, XorSystem};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut GenRng, n: u32, len: usize) -> Vec<Var> {
    let mut all: Vec<Var> = (1..=n).map(Var::new).collect();
    all.shuffle(rng);
    all.truncate(len);
    all
}

/// m constraints over v_1..v_n, each with 1..=max_len variables and a
/// random right-hand side. Duplicates collapse, so the result may have
/// fewer than m constraints.
pub fn random_system(rng: &mut GenRng, m: usize, n: u32, max_len: usize) -> Result<XorSystem> {
    if n == 0 || max_len == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and max_len ≥ 1".into()));
    }
    let max_len = max_len.min(n as usize);
    Ok((0..m)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            XorConstraint::new(random_subset(rng, n, len), rng.random())
        })
        .collect())
}

/// A random system whose incidence graph is a forest, with at most m
/// constraints and n variables. Each new constraint touches at most one
/// variable of every connected component built so far.
pub fn random_acyclic_system(rng: &mut GenRng, m: usize, n: u32) -> XorSystem {
    // component id per used variable
    let mut used: Vec<(Var, usize)> = Vec::new();
    let mut next_var = 1u32;
    let mut out = XorSystem::new();
    for comp in 0..m {
        let mut vars = Vec::new();
        let mut joined: BTreeSet<usize> = BTreeSet::new();
        let comps: BTreeSet<usize> = used.iter().map(|&(_, c)| c).collect();
        for c in comps {
            if rng.random_bool(0.4) {
                let members: Vec<Var> = used.iter().filter(|&&(_, k)| k == c).map(|&(v, _)| v).collect();
                vars.push(*members.choose(rng).unwrap());
                joined.insert(c);
            }
        }
        let fresh = rng.random_range(0..=3u32).min(n + 1 - next_var);
        for _ in 0..fresh {
            vars.push(Var::new(next_var));
            used.push((Var::new(next_var), comp));
            next_var += 1;
        }
        if vars.is_empty() {
            continue;
        }
        // everything touched becomes one component
        for entry in used.iter_mut() {
            if joined.contains(&entry.1) {
                entry.1 = comp;
            }
        }
        out.insert(XorConstraint::new(vars, rng.random()));
    }
    out
}

/// Two constraints meeting the X2 preconditions: `shared` ≥ 2 common
/// variables and `priv_c`, `priv_d` ≥ 1 private ones, random signs.
/// Variables are v_1.. in the order shared, private to C, private to D.
pub fn x2_pair(rng: &mut GenRng, shared: u32, priv_c: u32, priv_d: u32) -> (XorConstraint, XorConstraint) {
    let common = 1..=shared;
    let c_only = shared + 1..=shared + priv_c;
    let d_only = shared + priv_c + 1..=shared + priv_c + priv_d;
    let c = XorConstraint::new(common.clone().chain(c_only).map(Var::new), rng.random());
    let d = XorConstraint::new(common.chain(d_only).map(Var::new), rng.random());
    (c, d)
}

/// A random X2-valid pair with at most `max_total` variables (≥ 4).
pub fn random_x2_pair(rng: &mut GenRng, max_total: u32) -> (XorConstraint, XorConstraint) {
    let max_total = max_total.max(4);
    let shared = rng.random_range(2..=max_total - 2);
    let priv_c = rng.random_range(1..=max_total - shared - 1);
    let priv_d = rng.random_range(1..=max_total - shared - priv_c);
    x2_pair(rng, shared, priv_c, priv_d)
}

/// c random clauses over v_1..v_n with 1..=max_len literals each.
pub fn random_clause_set(rng: &mut GenRng, c: usize, n: u32, max_len: usize) -> ClauseSet {
    let max_len = max_len.clamp(1, n.max(1) as usize);
    (0..c)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            let lits: Vec<Lit> = random_subset(rng, n, len).into_iter().map(|v| Lit::new(v, rng.random())).collect();
            Clause::new(lits).expect("distinct variables")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::is_acyclic_system;
    use crate::translate::x2_check;

    #[test]
    fn deterministic_under_seed() {
        let a = random_system(&mut rng(7), 3, 6, 4).unwrap();
        let b = random_system(&mut rng(7), 3, 6, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.num_vars() <= 6);
    }

    #[test]
    fn acyclic_generator_is_acyclic() {
        let mut r = rng(1);
        for _ in 0..200 {
            let s = random_acyclic_system(&mut r, 4, 10);
            assert!(is_acyclic_system(&s));
            assert!(s.len() <= 4 && s.num_vars() <= 10);
        }
    }

    #[test]
    fn pairs_meet_preconditions() {
        let mut r = rng(2);
        for _ in 0..200 {
            let (c, d) = random_x2_pair(&mut r, 10);
            assert!(x2_check(&c, &d).is_ok());
            assert!(c.vars().iter().chain(d.vars()).collect::<BTreeSet<_>>().len() <= 10);
        }
    }
}
