//! Semantic check of a translation: the models of the CNF, projected onto
//! var(S), are exactly the solutions of S.
//!
//! Every total assignment ψ over var(S) is tried: ψ must satisfy S iff
//! ψ*R is satisfiable. This is the projection equality, decided with one
//! satisfiability test per ψ instead of enumerating the auxiliary
//! variables.

use std::fmt;

use rand::Rng;

use crate::cnf::{ClauseSet, PartialAssignment, Var};
use crate::engine::{with_mask, Packed, State};
use crate::error::{Error, Result};
use crate::translate::TranslationResult;
use crate::xor::XorSystem;

/// Largest |var(S)| for the exhaustive check.
pub const VERIFY_MAX_VARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// ψ over var(S) on which the two sides disagree; `in_solutions` says
    /// whether ψ solves S (and so the CNF wrongly excludes it) or not.
    Fail {
        assignment: PartialAssignment,
        in_solutions: bool,
    },
    /// Sampled check found no disagreement; nothing is proved.
    Incomplete {
        samples: usize,
    },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail { assignment, in_solutions: true } => {
                write!(f, "fail: solution [{assignment}] has no extension to a model")
            }
            Verdict::Fail { assignment, in_solutions: false } => {
                write!(f, "fail: non-solution [{assignment}] extends to a model")
            }
            Verdict::Incomplete { samples } => write!(f, "incomplete: {samples} samples agree"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { samples: usize, seed: u64 },
}

pub fn verify_representation(s: &XorSystem, r: &TranslationResult) -> Result<Verdict> {
    verify_representation_with(s, &r.cnf, VerifyMode::Full)
}

pub fn verify_representation_with(s: &XorSystem, cnf: &ClauseSet, mode: VerifyMode) -> Result<Verdict> {
    let orig: Vec<Var> = s.vars().into_iter().collect();
    if mode == VerifyMode::Full && orig.len() > VERIFY_MAX_VARS {
        return Err(Error::cap("variables of the XOR system for full verification", VERIFY_MAX_VARS, orig.len()));
    }
    with_mask!(cnf.num_vars(), M => {
        let p = Packed::<M>::new(cnf);
        let check = |bit: &dyn Fn(usize) -> bool| -> Option<Verdict> {
            let mut phi = PartialAssignment::new();
            let mut st = State::<M>::default();
            for (j, &v) in orig.iter().enumerate() {
                let b = bit(j);
                phi.bind(v, b).unwrap();
                if let Some(i) = p.index_of(v) {
                    st = st.with(i, b);
                }
            }
            let solves = s.eval(&phi) == Some(true);
            let extends = p.satisfiable(st).is_some();
            (solves != extends).then_some(Verdict::Fail { assignment: phi, in_solutions: solves })
        };
        match mode {
            VerifyMode::Full => (0u64..1 << orig.len())
                .find_map(|bits| check(&|j| bits >> j & 1 == 1))
                .unwrap_or(Verdict::Pass),
            VerifyMode::Sampled { samples, seed } => {
                let mut rng = crate::gen::rng(seed);
                (0..samples)
                    .find_map(|_| {
                        let values: Vec<bool> = (0..orig.len()).map(|_| rng.random()).collect();
                        check(&|j| values[j])
                    })
                    .unwrap_or(Verdict::Incomplete { samples })
            }
        }
    })
}
