//! From a monotone circuit for f̂ back to a CNF representation of f with
//! relative hardness ≤ 1: Tseitin-translate the gates, identify v′ with v̄
//! and v″ with v, drop clauses that now clash, and assert the output.
//!
//! Chains of equal gates are flattened before translation, so a circuit
//! built from right-associated binary gates gets one variable per
//! arbitrary-fan-in gate. A shared subterm of the same kind is inlined into
//! every parent.

use std::collections::{BTreeMap, BTreeSet};

use super::{one_input, zero_input, MonotoneCircuit, Node};
use crate::alloc::VarAllocator;
use crate::cnf::{Clause, ClauseSet, Lit, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TseitinForm {
    /// w ↔ gate.
    Full,
    /// w → gate only; the clauses are pure dual Horn.
    #[default]
    Reduced,
}

/// The Tseitin clause-set F₀ of a circuit, before renaming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitCnf {
    pub cnf: ClauseSet,
    /// Original variable ↦ (variable of v′, variable of v″).
    pub inputs: BTreeMap<Var, (Var, Var)>,
    pub output: Var,
    /// Circuit node ↦ its variable, for the translated nodes.
    pub node_vars: BTreeMap<usize, Var>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
}

fn kind(n: &Node) -> Option<Kind> {
    match n {
        Node::And(..) => Some(Kind::And),
        Node::Or(..) => Some(Kind::Or),
        _ => None,
    }
}

/// Operands of gate `g` after absorbing children of the same kind.
fn flat_operands(c: &MonotoneCircuit, g: usize, memo: &mut BTreeMap<usize, BTreeSet<usize>>) -> BTreeSet<usize> {
    if let Some(ops) = memo.get(&g) {
        return ops.clone();
    }
    let nodes = c.nodes();
    let (Node::And(a, b) | Node::Or(a, b)) = nodes[g] else { unreachable!("only gates have operands") };
    let mut ops = BTreeSet::new();
    for ch in [a, b] {
        if kind(&nodes[ch]) == kind(&nodes[g]) {
            ops.extend(flat_operands(c, ch, memo));
        } else {
            ops.insert(ch);
        }
    }
    memo.insert(g, ops.clone());
    ops
}

/// F₀ over gate variables (allocated after the largest original variable,
/// in node order) and input variables (allocated after the gates).
pub fn tseitin_circuit(c: &MonotoneCircuit, orig_vars: &BTreeSet<Var>, form: TseitinForm) -> Result<CircuitCnf> {
    let mut by_name: BTreeMap<String, (Var, bool)> = BTreeMap::new();
    for &v in orig_vars {
        by_name.insert(zero_input(v), (v, false));
        by_name.insert(one_input(v), (v, true));
    }
    for name in c.input_names() {
        if !by_name.contains_key(name) {
            return Err(Error::InvalidCircuit(format!("input {name} is not a doubled original variable")));
        }
    }

    // nodes reachable from the output through flattened gates
    let nodes = c.nodes();
    let mut memo = BTreeMap::new();
    let mut reached = BTreeSet::from([c.output()]);
    let mut stack = vec![c.output()];
    while let Some(g) = stack.pop() {
        if kind(&nodes[g]).is_some() {
            for op in flat_operands(c, g, &mut memo) {
                if reached.insert(op) {
                    stack.push(op);
                }
            }
        }
    }

    let mut alloc = VarAllocator::after(orig_vars.last().copied());
    let mut node_vars = BTreeMap::new();
    for &i in &reached {
        if !matches!(nodes[i], Node::Input(_)) {
            node_vars.insert(i, alloc.fresh());
        }
    }
    let mut inputs = BTreeMap::new();
    for &v in orig_vars {
        inputs.insert(v, (alloc.fresh(), alloc.fresh()));
    }
    for &i in &reached {
        if let Node::Input(name) = &nodes[i] {
            let (v, one) = by_name[name];
            let pair = inputs[&v];
            node_vars.insert(i, if one { pair.1 } else { pair.0 });
        }
    }

    let mut cnf = ClauseSet::top();
    let mut add = |lits: Vec<Lit>| {
        cnf.insert(Clause::new(lits).expect("gate clauses have distinct variables"));
    };
    for &i in &reached {
        let w = node_vars[&i];
        match &nodes[i] {
            Node::Input(_) => {}
            Node::Const(true) => {
                if form == TseitinForm::Full {
                    add(vec![w.pos()]);
                }
            }
            Node::Const(false) => add(vec![w.neg()]),
            n => {
                let ops: Vec<Var> = flat_operands(c, i, &mut memo).iter().map(|o| node_vars[o]).collect();
                let full = form == TseitinForm::Full;
                if kind(n) == Some(Kind::Or) {
                    // w → ⋁ ops; w ← each op
                    add(std::iter::once(w.neg()).chain(ops.iter().map(|o| o.pos())).collect());
                    if full {
                        for o in &ops {
                            add(vec![w.pos(), o.neg()]);
                        }
                    }
                } else {
                    // w → each op; w ← ⋀ ops
                    for o in &ops {
                        add(vec![w.neg(), o.pos()]);
                    }
                    if full {
                        add(std::iter::once(w.pos()).chain(ops.iter().map(|o| o.neg())).collect());
                    }
                }
            }
        }
    }
    Ok(CircuitCnf { cnf, inputs, output: node_vars[&c.output()], node_vars })
}

/// The representation of f read off a monotone circuit for f̂.
pub fn representation_from_circuit(
    c: &MonotoneCircuit,
    orig_vars: &BTreeSet<Var>,
    form: TseitinForm,
) -> Result<ClauseSet> {
    let t = tseitin_circuit(c, orig_vars, form)?;
    let mut rename: BTreeMap<Var, Lit> = BTreeMap::new();
    for (&v, &(z, o)) in &t.inputs {
        rename.insert(z, v.neg());
        rename.insert(o, v.pos());
    }
    let map = |l: Lit| match rename.get(&l.var()) {
        Some(&x) if l.is_positive() => x,
        Some(&x) => !x,
        None => l,
    };
    let out_lit = map(t.output.pos());
    let mut f: ClauseSet = t.cnf.iter().filter_map(|cl| Clause::new(cl.lits().iter().map(|&l| map(l))).ok()).collect();
    f.insert(Clause::new([out_lit]).expect("unit clause"));
    Ok(f)
}
