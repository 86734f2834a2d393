//! Measuring representations: hardness, p-hardness, w-hardness and
//! symmetric width (absolute or relative to a variable set), prime
//! implicates, forced literals, autarkies, resolution proofs and semantic
//! verification of translations.
//!
//! The hardness-type measures quantify over all instantiations φ*F with
//! var(φ) ⊆ V:
//!
//! * `hd`: least k such that rk_k refutes every unsatisfiable φ*F;
//! * `phd`: least k with rk_k(φ*F) = r∞(φ*F) for every φ;
//! * `whd`: least k such that k-resolution (a parent of length ≤ k per
//!   step) refutes every unsatisfiable φ*F;
//! * `wid`: least k such that every unsatisfiable φ*F has a refutation
//!   using only clauses of length ≤ k.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cnf::{oracle, ClauseSet, Lit, PartialAssignment, Var};
use crate::engine::{with_mask, Packed, State};
use crate::error::{Error, Result};

mod primes;
mod proof;
mod resolution;
mod sweep;
mod verify;

pub use primes::{prime_implicates, PRIME_SUBSET_MAX_CLAUSES};
pub use proof::{
    build_tn_refutation, check_refutation, check_resolution, AxiomMode, ProofStats, ProofStep, ResolutionProof,
};
pub use resolution::{k_resolution_refutes, prime_implicates_by_resolution, width_refutes};
pub use verify::{verify_representation, verify_representation_with, Verdict, VerifyMode, VERIFY_MAX_VARS};

/// Default largest |V ∩ var(F)| for exhaustive sweeps.
pub const DEFAULT_SCOPE_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Hd,
    Phd,
    Whd,
    Wid,
    /// Like p-hardness, but only forced literals over the scope have to be
    /// found: the least k such that rk_k(φ*F) refutes φ*F or sets every
    /// literal over V that is forced in φ*F. Equals phd when V = var(F);
    /// for V = var(f) it is the arc-consistency level of a representation.
    Ac,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Hd => "hd",
            Measure::Phd => "phd",
            Measure::Whd => "whd",
            Measure::Wid => "wid",
            Measure::Ac => "ac",
        })
    }
}

/// The variables φ may assign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// var(F): the absolute measure.
    All,
    Vars(BTreeSet<Var>),
}

impl Scope {
    pub fn vars(vars: impl IntoIterator<Item = Var>) -> Scope {
        Scope::Vars(vars.into_iter().collect())
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::All => f.write_str("all"),
            Scope::Vars(v) => {
                let names: Vec<String> = v.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", names.join(","))
            }
        }
    }
}

/// How to sweep the instantiations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureConfig {
    /// Largest |V ∩ var(F)| for the exhaustive sweep.
    pub scope_cap: usize,
    /// Instead of sweeping, evaluate this many random φ (a lower bound).
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig { scope_cap: DEFAULT_SCOPE_CAP, sample: None, seed: 0 }
    }
}

/// The value of a measure and a partial assignment attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessReport {
    pub measure: Measure,
    pub scope: Scope,
    pub value: usize,
    /// φ with the measure of φ*F equal to `value` (see [`value_at`]).
    pub witness: PartialAssignment,
    /// `false` for sampled runs, whose value is only a lower bound.
    pub exhaustive: bool,
}

/// Machine-readable form of a [`HardnessReport`].
#[derive(Clone, Debug, Serialize)]
pub struct HardnessRecord {
    pub measure: Measure,
    pub scope: String,
    pub value: usize,
    pub witness: Vec<i32>,
    pub exhaustive: bool,
}

impl HardnessReport {
    pub fn record(&self) -> HardnessRecord {
        HardnessRecord {
            measure: self.measure,
            scope: self.scope.to_string(),
            value: self.value,
            witness: self.witness.true_lits().map(Lit::to_dimacs).collect(),
            exhaustive: self.exhaustive,
        }
    }
}

impl fmt::Display for HardnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} scope={} value={}{} witness=[{}]",
            self.measure,
            self.scope,
            self.value,
            if self.exhaustive { "" } else { " (lower bound)" },
            self.witness
        )
    }
}

pub fn hardness(f: &ClauseSet, scope: &Scope) -> Result<HardnessReport> {
    measure(f, Measure::Hd, scope, &MeasureConfig::default())
}

pub fn p_hardness(f: &ClauseSet, scope: &Scope) -> Result<HardnessReport> {
    measure(f, Measure::Phd, scope, &MeasureConfig::default())
}

pub fn w_hardness(f: &ClauseSet, scope: &Scope) -> Result<HardnessReport> {
    measure(f, Measure::Whd, scope, &MeasureConfig::default())
}

pub fn sym_width(f: &ClauseSet, scope: &Scope) -> Result<HardnessReport> {
    measure(f, Measure::Wid, scope, &MeasureConfig::default())
}

pub fn ac_hardness(f: &ClauseSet, scope: &Scope) -> Result<HardnessReport> {
    measure(f, Measure::Ac, scope, &MeasureConfig::default())
}

/// Computes `m` for F over the scope.
pub fn measure(f: &ClauseSet, m: Measure, scope: &Scope, cfg: &MeasureConfig) -> Result<HardnessReport> {
    let scope_vars: Vec<Var> = match scope {
        Scope::All => f.vars().into_iter().collect(),
        Scope::Vars(v) => {
            let fv = f.vars();
            v.iter().copied().filter(|x| fv.contains(x)).collect()
        }
    };
    if cfg.sample.is_none() && scope_vars.len() > cfg.scope_cap {
        return Err(Error::cap("scope size for an exhaustive sweep", cfg.scope_cap, scope_vars.len()));
    }
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        let sweeper = sweep::Sweeper { p: &p, measure: m, scope: p.mask_of(scope_vars.iter().copied()) };
        let found = match cfg.sample {
            None => sweeper.exhaustive(),
            Some(n) => sweeper.sampled(n, &mut crate::gen::rng(cfg.seed)),
        };
        HardnessReport {
            measure: m,
            scope: scope.clone(),
            value: found.value,
            witness: p.assignment(found.witness),
            exhaustive: cfg.sample.is_none(),
        }
    })
}

/// The measure at the single instantiation φ*F: for hd/whd/wid the least
/// level refuting φ*F (0 if satisfiable), for phd the least k with
/// rk_k(φ*F) = r∞(φ*F), for ac the least k finding the forced literals
/// over the scope.
pub fn value_at(f: &ClauseSet, m: Measure, scope: &Scope, phi: &PartialAssignment) -> Result<usize> {
    with_mask!(f.num_vars(), M => {
        let p = Packed::<M>::new(f);
        let scope = match scope {
            Scope::All => p.mask_of(f.vars()),
            Scope::Vars(v) => p.mask_of(v.iter().copied()),
        };
        let sweeper = sweep::Sweeper { p: &p, measure: m, scope };
        sweeper.value_at(p.state_of(phi))
    })
}

/// Forced literals of a clause-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Forced {
    /// F is unsatisfiable, so every literal is forced.
    All,
    Lits(BTreeSet<Lit>),
}

/// All x with ⟨x → 0⟩*F unsatisfiable.
pub fn forced_literals(f: &ClauseSet) -> Result<Forced> {
    let n = f.num_vars();
    if n > oracle::ORACLE_MAX_VARS {
        return Err(Error::cap("variables for forced-literal detection", oracle::ORACLE_MAX_VARS, n));
    }
    with_mask!(n, M => {
        let p = Packed::<M>::new(f);
        match p.forced(State::default()) {
            None => Forced::All,
            Some(v) => Forced::Lits(v.into_iter().map(|(i, b)| p.lit(i, b)).collect()),
        }
    })
}

/// φ is an autarky for F: every clause touched by φ is satisfied by φ.
pub fn is_autarky(phi: &PartialAssignment, f: &ClauseSet) -> bool {
    f.iter().all(|c| {
        let touched = c.vars().any(|v| phi.get(v).is_some());
        !touched || c.lits().iter().any(|&l| phi.lit_value(l) == Some(true))
    })
}
