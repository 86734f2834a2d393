//! Exhaustive and sampled sweeps over the instantiations φ*F, var(φ) ⊆ V.
//!
//! Level 0 of every measure is decided by plain enumeration of φ, each
//! partial assignment visited once (variables bound in ascending order).
//! For levels k ≥ 1 hardness, p-hardness and w-hardness of φ*F only depend
//! on the unit-propagated closure of φ*F, and all of them are monotone under
//! further instantiation; so the sweep walks the propagated states reachable
//! by binding one open scope variable at a time, visits each state once, and
//! stops below a state that is already handled at the current level. When a
//! state needs a higher level, the level is raised on the spot and the state
//! becomes the witness.
//!
//! Symmetric width is not invariant under propagation, so it always uses
//! plain enumeration, pruned where the current width already refutes.

use std::collections::HashSet;

use rand::Rng;

use super::resolution::{refutes, Calculus};
use super::Measure;
use crate::engine::{Mask, Packed, State};
use crate::gen::GenRng;

/// Outcome of checking one state at a level.
enum Check<M> {
    /// The level refutes φ*F, hence every extension.
    Refuted,
    /// The level is enough here; extensions are explored from this state.
    Fine(State<M>),
    /// A higher level is needed.
    Short,
}

pub(crate) struct Sweeper<'a, M> {
    pub p: &'a Packed<M>,
    pub measure: Measure,
    pub scope: M,
}

#[derive(Debug)]
pub(crate) struct Found<M> {
    pub value: usize,
    pub witness: State<M>,
}

impl<M: Mask> Sweeper<'_, M> {
    /// Is level 0 enough for the raw instantiation s?
    fn level0_ok(&self, s: State<M>) -> bool {
        let p = self.p;
        if p.conflict(s) {
            return true;
        }
        match self.measure {
            Measure::Hd | Measure::Whd | Measure::Wid => p.satisfiable(s).is_some(),
            // rk_0 leaves φ*F alone: it must be free of forced literals
            Measure::Phd => p.propagate(s) == Some(s) && p.forced(s).is_some_and(|v| v.is_empty()),
            Measure::Ac => p.propagate(s) == Some(s) && p.forced(s).is_some_and(|v| self.none_in_scope(&v)),
        }
    }

    /// Level k ≥ 1 on the propagated, conflict-free state s.
    fn check(&self, k: usize, s: State<M>) -> Check<M> {
        let p = self.p;
        match self.measure {
            Measure::Hd => {
                if p.refutes(k, s) {
                    Check::Refuted
                } else if p.satisfiable(s).is_some() {
                    Check::Fine(s)
                } else {
                    Check::Short
                }
            }
            Measure::Phd => match p.rk(k, s) {
                None => Check::Refuted,
                Some(t) => match p.forced(t) {
                    Some(v) if v.is_empty() => Check::Fine(t),
                    _ => Check::Short,
                },
            },
            Measure::Whd => {
                if refutes(&p.residual_masks(s), Calculus::Asymmetric(k as u32)) {
                    Check::Refuted
                } else if p.satisfiable(s).is_some() {
                    Check::Fine(s)
                } else {
                    Check::Short
                }
            }
            Measure::Ac => match p.rk(k, s) {
                None => Check::Refuted,
                // forced literals of φ*F are those of its propagated state,
                // so extensions are explored from s itself
                Some(t) => match p.forced(t) {
                    Some(v) if self.none_in_scope(&v) => Check::Fine(s),
                    _ => Check::Short,
                },
            },
            Measure::Wid => unreachable!("width is swept by enumeration"),
        }
    }

    fn none_in_scope(&self, forced: &[(usize, bool)]) -> bool {
        forced.iter().all(|&(i, _)| (M::bit(i) & self.scope).is_zero())
    }

    /// The value of the measure at the single instantiation s.
    pub fn value_at(&self, s: State<M>) -> usize {
        if self.measure == Measure::Wid {
            return self.width_at(s);
        }
        if self.level0_ok(s) {
            return 0;
        }
        let Some(s) = self.p.propagate(s) else { return 1 };
        let mut k = 1;
        while matches!(self.check(k, s), Check::Short) {
            k += 1;
        }
        k
    }

    fn width_at(&self, s: State<M>) -> usize {
        let p = self.p;
        if p.conflict(s) || p.satisfiable(s).is_some() {
            return 0;
        }
        let masks = p.residual_masks(s);
        let mut k = 1;
        while !refutes(&masks, Calculus::Width(k)) {
            k += 1;
        }
        k as usize
    }

    pub fn exhaustive(&self) -> Found<M> {
        if self.measure == Measure::Wid {
            return self.width_sweep();
        }
        let mut found = Found { value: 0, witness: State::default() };
        match self.level0_violation(State::default(), None) {
            None => return found,
            Some(w) => {
                found.value = 1;
                found.witness = w;
            }
        }
        self.propagated_sweep(&mut found);
        found
    }

    /// Plain enumeration for level 0: some φ needing level ≥ 1.
    fn level0_violation(&self, s: State<M>, last: Option<usize>) -> Option<State<M>> {
        if !self.level0_ok(s) {
            return Some(s);
        }
        if self.p.conflict(s) {
            return None;
        }
        for i in (self.p.open(s) & self.scope).ones() {
            if last.is_some_and(|l| i <= l) {
                continue;
            }
            for value in [true, false] {
                if let Some(w) = self.level0_violation(s.with(i, value), Some(i)) {
                    return Some(w);
                }
            }
        }
        None
    }

    fn propagated_sweep(&self, found: &mut Found<M>) {
        let p = self.p;
        let Some(root) = p.propagate(State::default()) else {
            return;
        };
        // arena of (parent, decision) for reconstructing witnesses
        let mut arena: Vec<(usize, usize, bool)> = vec![(usize::MAX, 0, false)];
        let mut seen: HashSet<State<M>> = HashSet::new();
        let mut stack = vec![(root, 0usize)];
        let mut k = found.value.max(1);
        while let Some((s, node)) = stack.pop() {
            if !seen.insert(s) {
                continue;
            }
            let from = loop {
                match self.check(k, s) {
                    Check::Refuted => break None,
                    Check::Fine(t) => break Some(t),
                    Check::Short => {
                        k += 1;
                        found.value = k;
                        found.witness = self.decisions(&arena, node);
                    }
                }
            };
            let Some(t) = from else { continue };
            for i in (p.open(t) & self.scope).ones() {
                for value in [true, false] {
                    if let Some(c) = p.propagate(t.with(i, value)) {
                        if !seen.contains(&c) {
                            arena.push((node, i, value));
                            stack.push((c, arena.len() - 1));
                        }
                    }
                }
            }
        }
    }

    fn decisions(&self, arena: &[(usize, usize, bool)], mut node: usize) -> State<M> {
        let mut s = State::default();
        while node != 0 {
            let (parent, i, value) = arena[node];
            s = s.with(i, value);
            node = parent;
        }
        s
    }

    fn width_sweep(&self) -> Found<M> {
        let mut found = Found { value: 0, witness: State::default() };
        self.width_visit(State::default(), None, &mut found);
        found
    }

    fn width_visit(&self, s: State<M>, last: Option<usize>, found: &mut Found<M>) {
        let p = self.p;
        if p.conflict(s) {
            return;
        }
        let Some(forced) = p.forced(s) else {
            if found.value == 0 || !refutes(&p.residual_masks(s), Calculus::Width(found.value as u32)) {
                let w = self.width_at(s);
                if w > found.value {
                    found.value = w;
                    found.witness = s;
                }
            }
            return;
        };
        // Width only drops when literals are added, so the maximum sits at
        // an inclusion-minimal unsatisfiable φ. Such a φ never contains a
        // literal implied by the rest of it, so forced literals need no
        // branch of their own.
        for i in (p.open(s) & self.scope).ones() {
            if last.is_some_and(|l| i <= l) {
                continue;
            }
            for value in [true, false] {
                if !forced.contains(&(i, value)) {
                    self.width_visit(s.with(i, value), Some(i), found);
                }
            }
        }
    }

    /// Maximum of [`Self::value_at`] over `samples` random instantiations;
    /// a lower bound on the measure.
    pub fn sampled(&self, samples: usize, rng: &mut GenRng) -> Found<M> {
        let mut found = Found { value: 0, witness: State::default() };
        let scope: Vec<usize> = self.scope.ones().collect();
        for _ in 0..samples {
            let mut s = State::default();
            for &i in &scope {
                match rng.random_range(0..3u8) {
                    0 => {}
                    1 => s = s.with(i, false),
                    _ => s = s.with(i, true),
                }
            }
            let v = self.value_at(s);
            if v > found.value {
                found.value = v;
                found.witness = s;
            }
        }
        found
    }
}
