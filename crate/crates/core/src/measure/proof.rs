//! Resolution proofs: text format, checking, and the short dag refutation
//! of T_n.
//!
//! One step per line, `<id> <lit>... 0` for an axiom and
//! `<id> <lit>... 0 <p1> <p2>` for the resolvent of two earlier steps.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cnf::{Clause, ClauseSet, Lit, Var};
use crate::error::{Error, Result};
use crate::structure::{gen_tn, tn_y, tn_y_prime};

const FORMAT: &str = "proof";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub id: usize,
    pub clause: Clause,
    pub parents: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionProof {
    pub steps: Vec<ProofStep>,
}

impl ResolutionProof {
    pub fn new() -> ResolutionProof {
        ResolutionProof::default()
    }

    fn next_id(&self) -> usize {
        self.steps.last().map_or(1, |s| s.id + 1)
    }

    pub fn push_axiom(&mut self, clause: Clause) -> usize {
        let id = self.next_id();
        self.steps.push(ProofStep { id, clause, parents: None });
        id
    }

    /// Appends a step claiming `clause` as resolvent of p1 and p2 (not
    /// checked here).
    pub fn push_resolvent(&mut self, clause: Clause, p1: usize, p2: usize) -> usize {
        let id = self.next_id();
        self.steps.push(ProofStep { id, clause, parents: Some((p1, p2)) });
        id
    }

    /// Resolves two earlier steps and appends the resolvent.
    pub fn resolve(&mut self, p1: usize, p2: usize) -> Result<usize> {
        let get = |id: usize| {
            self.steps
                .iter()
                .find(|s| s.id == id)
                .map(|s| &s.clause)
                .ok_or_else(|| Error::InvalidArgument(format!("no step {id}")))
        };
        let (r, _) = get(p1)?
            .resolve(get(p2)?)
            .ok_or_else(|| Error::InvalidArgument(format!("steps {p1} and {p2} do not resolve")))?;
        Ok(self.push_resolvent(r, p1, p2))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn parse(text: &str) -> Result<ResolutionProof> {
        let mut proof = ResolutionProof::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let col_of = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let tokens: Vec<&str> = raw.split_whitespace().collect();
            if tokens.is_empty() || tokens[0] == "c" {
                continue;
            }
            let int = |tok: &str| -> Result<i64> {
                tok.parse().map_err(|_| Error::parse(FORMAT, line_no, col_of(tok), format!("unexpected token `{tok}`")))
            };
            let id = usize::try_from(int(tokens[0])?)
                .ok()
                .filter(|&id| id > 0)
                .ok_or_else(|| Error::parse(FORMAT, line_no, col_of(tokens[0]), "step ids must be positive"))?;
            if proof.steps.last().is_some_and(|s| s.id >= id) {
                return Err(Error::parse(FORMAT, line_no, col_of(tokens[0]), "step ids must increase"));
            }
            let zero = tokens[1..]
                .iter()
                .position(|t| *t == "0")
                .ok_or_else(|| Error::parse(FORMAT, line_no, raw.len() + 1, "clause not terminated by 0"))?
                + 1;
            let mut lits = Vec::new();
            for tok in &tokens[1..zero] {
                let v = i32::try_from(int(tok)?)
                    .map_err(|_| Error::parse(FORMAT, line_no, col_of(tok), "literal out of range"))?;
                lits.push(Lit::from_dimacs(v).map_err(|e| Error::parse(FORMAT, line_no, col_of(tok), e.to_string()))?);
            }
            let clause = Clause::new(lits).map_err(|e| Error::parse(FORMAT, line_no, 1, e.to_string()))?;
            let parents = match &tokens[zero + 1..] {
                [] => None,
                [a, b] => {
                    let p = |t: &str| -> Result<usize> {
                        usize::try_from(int(t)?).map_err(|_| Error::parse(FORMAT, line_no, col_of(t), "bad parent id"))
                    };
                    Some((p(a)?, p(b)?))
                }
                rest => {
                    return Err(Error::parse(FORMAT, line_no, col_of(rest[0]), "expected no parents or exactly two"))
                }
            };
            proof.steps.push(ProofStep { id, clause, parents });
        }
        Ok(proof)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = write!(out, "{}", s.id);
            for l in s.clause.lits() {
                let _ = write!(out, " {l}");
            }
            out.push_str(" 0");
            if let Some((a, b)) = s.parents {
                let _ = write!(out, " {a} {b}");
            }
            out.push('\n');
        }
        out
    }
}

/// How axioms are matched against F.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AxiomMode {
    /// Every axiom is a clause of F.
    #[default]
    Strict,
    /// Every axiom contains a clause of F (weakening allowed).
    Subsumed,
}

/// What a checked proof derives, with width statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStats {
    pub steps: usize,
    pub axioms: usize,
    pub resolvents: usize,
    /// Longest clause in the proof.
    pub max_len: usize,
    /// Largest min(|P1|, |P2|) over resolution steps: the proof is a
    /// k-resolution proof for every k at least this.
    pub max_min_parent_len: usize,
    pub conclusion: Clause,
}

/// Validates every step: axioms against F, resolvents against their
/// parents (which must clash in exactly one literal).
pub fn check_resolution(proof: &ResolutionProof, f: &ClauseSet, mode: AxiomMode) -> Result<ProofStats> {
    let mut by_id: HashMap<usize, &Clause> = HashMap::new();
    let mut stats = ProofStats {
        steps: proof.len(),
        axioms: 0,
        resolvents: 0,
        max_len: 0,
        max_min_parent_len: 0,
        conclusion: Clause::bottom(),
    };
    let bad = |step: usize, reason: String| Error::InvalidProof { step, reason };
    let mut last_id = 0;
    for s in &proof.steps {
        if s.id <= last_id {
            return Err(bad(s.id, "step ids must increase".into()));
        }
        last_id = s.id;
        match s.parents {
            None => {
                let ok = match mode {
                    AxiomMode::Strict => f.contains(&s.clause),
                    AxiomMode::Subsumed => f.iter().any(|c| c.is_subset_of(&s.clause)),
                };
                if !ok {
                    return Err(bad(s.id, format!("axiom {} is not in the clause-set", s.clause)));
                }
                stats.axioms += 1;
            }
            Some((a, b)) => {
                let parent = |p: usize| {
                    by_id.get(&p).copied().ok_or_else(|| bad(s.id, format!("parent {p} is not an earlier step")))
                };
                let (ca, cb) = (parent(a)?, parent(b)?);
                match ca.resolve(cb) {
                    None => return Err(bad(s.id, format!("steps {a} and {b} do not clash in exactly one literal"))),
                    Some((r, _)) if r != s.clause => {
                        return Err(bad(s.id, format!("resolvent of {a} and {b} is {r}, not {}", s.clause)))
                    }
                    Some(_) => {}
                }
                stats.resolvents += 1;
                stats.max_min_parent_len = stats.max_min_parent_len.max(ca.len().min(cb.len()));
            }
        }
        stats.max_len = stats.max_len.max(s.clause.len());
        by_id.insert(s.id, &s.clause);
    }
    match proof.steps.last() {
        None => Err(bad(0, "empty proof".into())),
        Some(s) => {
            stats.conclusion = s.clause.clone();
            Ok(stats)
        }
    }
}

/// [`check_resolution`] plus: the last step is ⊥.
pub fn check_refutation(proof: &ResolutionProof, f: &ClauseSet, mode: AxiomMode) -> Result<ProofStats> {
    let stats = check_resolution(proof, f, mode)?;
    if !stats.conclusion.is_empty() {
        let step = proof.steps.last().map_or(0, |s| s.id);
        return Err(Error::InvalidProof {
            step,
            reason: format!("concludes {}, not the empty clause", stats.conclusion),
        });
    }
    Ok(stats)
}

/// The refutation of T_n (n ≥ 3) with 18n − 29 clauses, all of length ≤ 3:
/// the 8n − 12 clauses of T_n, then y_{n-1} = ¬y'_{n-1} from the binary
/// clauses (2 steps), then y_{i-1} = ¬y'_{i-1} from y_i = ¬y'_i for
/// i = n−1 down to 3 (10 steps each), then ⊥ (11 steps).
pub fn build_tn_refutation(n: u32) -> Result<ResolutionProof> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("the T_n refutation needs n ≥ 3, got {n}")));
    }
    let tn = gen_tn(n)?;
    let mut proof = ResolutionProof::new();
    let mut axiom: HashMap<Clause, usize> = HashMap::new();
    for c in &tn {
        let id = proof.push_axiom(c.clone());
        axiom.insert(c.clone(), id);
    }
    let ax = |lits: &[Lit]| -> Result<usize> {
        let c = Clause::new(lits.iter().copied())?;
        axiom.get(&c).copied().ok_or_else(|| Error::InvalidArgument(format!("{c} is not a clause of T_{n}")))
    };
    let x = |i: u32| Var::new(i);
    let (y, yp) = (|i: u32| tn_y(n, i), |i: u32| tn_y_prime(n, i));

    // {ȳ, x̄n}-style binaries: y_{n-1} = x_n and y'_{n-1} = ¬x_n
    let (ly, lyp, lx) = (y(n - 1), yp(n - 1), x(n));
    let e1 = proof.resolve(ax(&[ly.neg(), lx.pos()])?, ax(&[lyp.neg(), lx.neg()])?)?;
    let e2 = proof.resolve(ax(&[ly.pos(), lx.neg()])?, ax(&[lyp.pos(), lx.pos()])?)?;
    let (mut e1, mut e2) = (e1, e2);

    for i in (3..n).rev() {
        let (p, q, xi, yi, ypi) = (y(i - 1), yp(i - 1), x(i), y(i), yp(i));
        let c1 = ax(&[p.neg(), xi.neg(), yi.neg()])?;
        let c2 = ax(&[p.neg(), xi.pos(), yi.pos()])?;
        let c3 = ax(&[p.pos(), xi.neg(), yi.pos()])?;
        let c4 = ax(&[p.pos(), xi.pos(), yi.neg()])?;
        let d1 = ax(&[q.neg(), xi.neg(), ypi.neg()])?;
        let d2 = ax(&[q.neg(), xi.pos(), ypi.pos()])?;
        let d3 = ax(&[q.pos(), xi.neg(), ypi.pos()])?;
        let d4 = ax(&[q.pos(), xi.pos(), ypi.neg()])?;
        let r1 = proof.resolve(c1, e2)?;
        let r2 = proof.resolve(r1, d2)?;
        let r3 = proof.resolve(c2, e1)?;
        let r4 = proof.resolve(r3, d1)?;
        let n1 = proof.resolve(r2, r4)?;
        let r5 = proof.resolve(c3, e1)?;
        let r6 = proof.resolve(r5, d4)?;
        let r7 = proof.resolve(c4, e2)?;
        let r8 = proof.resolve(r7, d3)?;
        let n2 = proof.resolve(r6, r8)?;
        e1 = n1;
        e2 = n2;
    }

    let (x1, x2, y2, yp2) = (x(1), x(2), y(2), yp(2));
    let c1 = ax(&[x1.neg(), x2.neg(), y2.neg()])?;
    let c2 = ax(&[x1.neg(), x2.pos(), y2.pos()])?;
    let c3 = ax(&[x1.pos(), x2.neg(), y2.pos()])?;
    let c4 = ax(&[x1.pos(), x2.pos(), y2.neg()])?;
    let d1 = ax(&[x1.neg(), x2.neg(), yp2.neg()])?;
    let d2 = ax(&[x1.neg(), x2.pos(), yp2.pos()])?;
    let d3 = ax(&[x1.pos(), x2.neg(), yp2.pos()])?;
    let d4 = ax(&[x1.pos(), x2.pos(), yp2.neg()])?;
    let f1 = proof.resolve(c1, e2)?;
    let f2 = proof.resolve(f1, d1)?;
    let f3 = proof.resolve(c2, e1)?;
    let f4 = proof.resolve(f3, d2)?;
    let neg_x1 = proof.resolve(f2, f4)?;
    let f6 = proof.resolve(c3, e1)?;
    let f7 = proof.resolve(d3, f6)?;
    let f8 = proof.resolve(c4, e2)?;
    let f9 = proof.resolve(d4, f8)?;
    let pos_x1 = proof.resolve(f7, f9)?;
    proof.resolve(neg_x1, pos_x1)?;
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(v: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_dimacs(v).unwrap()
    }

    fn c(v: &[i32]) -> Clause {
        Clause::from_dimacs(v).unwrap()
    }

    #[test]
    fn tn_refutation_sizes() {
        for n in 3..=10u32 {
            let proof = build_tn_refutation(n).unwrap();
            assert_eq!(proof.len() as u32, 18 * n - 29, "n = {n}");
            let stats = check_refutation(&proof, &gen_tn(n).unwrap(), AxiomMode::Strict).unwrap();
            assert!(stats.max_len <= 3);
            assert_eq!(stats.axioms as u32, 8 * n - 12);
        }
        assert!(build_tn_refutation(2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let proof = build_tn_refutation(4).unwrap();
        let back = ResolutionProof::parse(&proof.to_text()).unwrap();
        assert_eq!(back, proof);
        assert!(ResolutionProof::parse("1 1 2\n").is_err());
        assert!(ResolutionProof::parse("2 1 0\n1 -1 0\n").is_err());
        assert!(ResolutionProof::parse("1 1 0 2\n").is_err());
    }

    #[test]
    fn rejects_bad_steps() {
        let f = cls(&[&[1, 2], &[-1, -2], &[1, -2], &[-1, 2]]);
        // two clashes
        let mut p = ResolutionProof::new();
        let a = p.push_axiom(c(&[1, 2]));
        let b = p.push_axiom(c(&[-1, -2]));
        p.push_resolvent(Clause::bottom(), a, b);
        assert!(matches!(check_resolution(&p, &f, AxiomMode::Strict), Err(Error::InvalidProof { step: 3, .. })));
        // axiom not in F
        let mut p = ResolutionProof::new();
        p.push_axiom(c(&[1, 2, 3]));
        assert!(check_resolution(&p, &f, AxiomMode::Strict).is_err());
        assert!(check_resolution(&p, &f, AxiomMode::Subsumed).is_ok());
        // wrong resolvent, forward reference
        let mut p = ResolutionProof::new();
        let a = p.push_axiom(c(&[1, 2]));
        let b = p.push_axiom(c(&[-1, 2]));
        p.push_resolvent(c(&[1]), a, b);
        assert!(check_resolution(&p, &f, AxiomMode::Strict).is_err());
        let mut p = ResolutionProof::new();
        p.push_resolvent(c(&[2]), 2, 3);
        assert!(check_resolution(&p, &f, AxiomMode::Strict).is_err());
        // a valid non-refutation
        let mut p = ResolutionProof::new();
        let a = p.push_axiom(c(&[1, 2]));
        let b = p.push_axiom(c(&[-1, 2]));
        p.resolve(a, b).unwrap();
        let stats = check_resolution(&p, &f, AxiomMode::Strict).unwrap();
        assert_eq!(stats.conclusion, c(&[2]));
        assert_eq!(stats.max_min_parent_len, 2);
        assert!(check_refutation(&p, &f, AxiomMode::Strict).is_err());
    }
}
