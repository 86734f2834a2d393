//! Monotone circuits over doubled inputs and the monotonisation f̂ of a
//! boolean function.
//!
//! Every original variable v is replaced by two inputs v′ and v″: (1,1)
//! leaves v open, (1,0) sets v to 0, (0,1) sets v to 1 and (0,0) is a
//! contradiction. f̂ is 1 iff no pair is (0,0) and the encoded partial
//! assignment extends to a model of f. Inputs are named `<i>'` and `<i>''`
//! for variable i.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::cnf::{apply, ClauseSet, PartialAssignment, Var};
use crate::error::{Error, Result};

mod construct;
mod tseitin;

pub use construct::circuit_from_representation;
pub use tseitin::{representation_from_circuit, tseitin_circuit, CircuitCnf, TseitinForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Input(String),
    Const(bool),
    And(usize, usize),
    Or(usize, usize),
}

/// A DAG of binary AND/OR gates; every reference points to an earlier node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCircuit {
    nodes: Vec<Node>,
    output: usize,
}

/// Builds circuits with structural hashing and constant folding, so equal
/// subterms are shared and AND/OR never see a constant operand.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
}

impl CircuitBuilder {
    pub fn new() -> CircuitBuilder {
        CircuitBuilder::default()
    }

    fn intern(&mut self, node: Node) -> usize {
        if let Some(&i) = self.index.get(&node) {
            return i;
        }
        self.nodes.push(node.clone());
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, name: impl Into<String>) -> usize {
        self.intern(Node::Input(name.into()))
    }

    pub fn constant(&mut self, b: bool) -> usize {
        self.intern(Node::Const(b))
    }

    fn as_const(&self, i: usize) -> Option<bool> {
        match self.nodes[i] {
            Node::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        match (self.as_const(a), self.as_const(b)) {
            (Some(false), _) | (_, Some(false)) => self.constant(false),
            (Some(true), _) => b,
            (_, Some(true)) => a,
            _ if a == b => a,
            _ => self.intern(Node::And(a.min(b), a.max(b))),
        }
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        match (self.as_const(a), self.as_const(b)) {
            (Some(true), _) | (_, Some(true)) => self.constant(true),
            (Some(false), _) => b,
            (_, Some(false)) => a,
            _ if a == b => a,
            _ => self.intern(Node::Or(a.min(b), a.max(b))),
        }
    }

    /// Right-associated conjunction; the empty conjunction is 1.
    pub fn and_all(&mut self, items: impl IntoIterator<Item = usize>) -> usize {
        let items: Vec<usize> = items.into_iter().collect();
        let mut acc = match items.last() {
            Some(&last) => last,
            None => return self.constant(true),
        };
        for &x in items.iter().rev().skip(1) {
            acc = self.and(x, acc);
        }
        acc
    }

    /// Right-associated disjunction; the empty disjunction is 0.
    pub fn or_all(&mut self, items: impl IntoIterator<Item = usize>) -> usize {
        let items: Vec<usize> = items.into_iter().collect();
        let mut acc = match items.last() {
            Some(&last) => last,
            None => return self.constant(false),
        };
        for &x in items.iter().rev().skip(1) {
            acc = self.or(x, acc);
        }
        acc
    }

    pub fn finish(self, output: usize) -> MonotoneCircuit {
        MonotoneCircuit { nodes: self.nodes, output }
    }
}

impl MonotoneCircuit {
    /// The circuit with a single constant node.
    pub fn constant(b: bool) -> MonotoneCircuit {
        MonotoneCircuit { nodes: vec![Node::Const(b)], output: 0 }
    }

    /// Checks the DAG invariant.
    pub fn from_nodes(nodes: Vec<Node>, output: usize) -> Result<MonotoneCircuit> {
        for (i, n) in nodes.iter().enumerate() {
            if let Node::And(a, b) | Node::Or(a, b) = *n {
                if a >= i || b >= i {
                    return Err(Error::InvalidCircuit(format!("node {i} refers to a later node")));
                }
            }
        }
        if output >= nodes.len() {
            return Err(Error::InvalidCircuit(format!("output {output} is not a node")));
        }
        Ok(MonotoneCircuit { nodes, output })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Only INPUT, CONST, AND and OR nodes exist, so this always holds for
    /// a well-formed circuit; kept as an explicit check for parsed input.
    pub fn is_monotone(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, n)| match *n {
            Node::And(a, b) | Node::Or(a, b) => a < i && b < i,
            _ => true,
        })
    }

    pub fn input_names(&self) -> BTreeSet<&str> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Input(s) => Some(s.as_str()),
                _ => None,
            })
            .collect()
    }

    /// One node per line, `<id> INPUT <name> | CONST <b> | AND <a> <b> |
    /// OR <a> <b>`, then `OUTPUT <id>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = match n {
                Node::Input(s) => writeln!(out, "{i} INPUT {s}"),
                Node::Const(b) => writeln!(out, "{i} CONST {}", u8::from(*b)),
                Node::And(a, b) => writeln!(out, "{i} AND {a} {b}"),
                Node::Or(a, b) => writeln!(out, "{i} OR {a} {b}"),
            };
        }
        let _ = writeln!(out, "OUTPUT {}", self.output);
        out
    }

    /// Ids are arbitrary tokens but must be defined before use. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<MonotoneCircuit> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut nodes = Vec::new();
        let mut output = None;
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let err = |msg: String| Error::parse("circuit", line_no, 1, msg);
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() || toks[0].starts_with('#') {
                continue;
            }
            if output.is_some() {
                return Err(err("content after OUTPUT".into()));
            }
            if toks[0] == "OUTPUT" {
                let [_, id] = toks[..] else {
                    return Err(err("expected OUTPUT <id>".into()));
                };
                output = Some(*ids.get(id).ok_or_else(|| err(format!("unknown node {id}")))?);
                continue;
            }
            let node_ref = |t: &str| ids.get(t).copied().ok_or_else(|| err(format!("unknown node {t}")));
            let node = match toks[1..] {
                ["INPUT", name] => Node::Input(name.to_string()),
                ["CONST", "0"] => Node::Const(false),
                ["CONST", "1"] => Node::Const(true),
                ["AND", a, b] => Node::And(node_ref(a)?, node_ref(b)?),
                ["OR", a, b] => Node::Or(node_ref(a)?, node_ref(b)?),
                _ => return Err(err(format!("malformed node line `{line}`"))),
            };
            if ids.insert(toks[0], nodes.len()).is_some() {
                return Err(err(format!("duplicate node id {}", toks[0])));
            }
            nodes.push(node);
        }
        let output = output.ok_or_else(|| Error::parse("circuit", text.lines().count(), 1, "missing OUTPUT line"))?;
        MonotoneCircuit::from_nodes(nodes, output)
    }
}

/// Name of the input v′ (v may be 0).
pub fn zero_input(v: Var) -> String {
    format!("{}'", v.index())
}

/// Name of the input v″ (v may be 1).
pub fn one_input(v: Var) -> String {
    format!("{}''", v.index())
}

/// Values of the doubled inputs: v ↦ (v′, v″).
pub type DoubledInput = BTreeMap<Var, (bool, bool)>;

/// The doubled input encoding φ over `vars`.
pub fn encode(vars: &BTreeSet<Var>, phi: &PartialAssignment) -> DoubledInput {
    vars.iter()
        .map(|&v| {
            let pair = match phi.get(v) {
                None => (true, true),
                Some(false) => (true, false),
                Some(true) => (false, true),
            };
            (v, pair)
        })
        .collect()
}

/// All 4^|vars| doubled inputs.
pub fn all_doubled_inputs(vars: &BTreeSet<Var>) -> Vec<DoubledInput> {
    let vars: Vec<Var> = vars.iter().copied().collect();
    (0u64..1 << (2 * vars.len()))
        .map(|bits| {
            vars.iter()
                .enumerate()
                .map(|(j, &v)| (v, (bits >> (2 * j) & 1 == 1, bits >> (2 * j + 1) & 1 == 1)))
                .collect()
        })
        .collect()
}

/// Topological evaluation; `value` supplies input values by name.
pub fn eval_circuit(c: &MonotoneCircuit, value: impl Fn(&str) -> Option<bool>) -> Result<bool> {
    let mut vals = Vec::with_capacity(c.nodes.len());
    for n in &c.nodes {
        let v = match n {
            Node::Input(s) => value(s).ok_or_else(|| Error::UnboundInput(s.clone()))?,
            Node::Const(b) => *b,
            Node::And(a, b) => vals[*a] && vals[*b],
            Node::Or(a, b) => vals[*a] || vals[*b],
        };
        vals.push(v);
    }
    Ok(vals[c.output])
}

/// Evaluates on a doubled input, with inputs named as in [`zero_input`] and
/// [`one_input`].
pub fn eval_doubled(c: &MonotoneCircuit, input: &DoubledInput) -> Result<bool> {
    let by_name: HashMap<String, bool> =
        input.iter().flat_map(|(&v, &(z, o))| [(zero_input(v), z), (one_input(v), o)]).collect();
    eval_circuit(c, |s| by_name.get(s).copied())
}

/// f̂ for the function represented by F (its models projected onto the
/// keys of `input`), by a satisfiability test. F may have at most 512
/// variables.
pub fn monotonise_eval(f: &ClauseSet, input: &DoubledInput) -> bool {
    let mut phi = PartialAssignment::new();
    for (&v, &pair) in input {
        match pair {
            (false, false) => return false,
            (true, false) => phi.bind(v, false).expect("fresh variable"),
            (false, true) => phi.bind(v, true).expect("fresh variable"),
            (true, true) => {}
        }
    }
    crate::engine::is_satisfiable(&apply(&phi, f)).expect("at most 512 variables")
}

#[cfg(test)]
mod tests;
