//! General graphs with charged vertices and their Tseitin systems.
//!
//! Edges are labelled by literals over pairwise distinct variables and join
//! one vertex (a loop) or two. Text format:
//!
//! ```text
//! c comment
//! v <id> <charge>
//! e <lit> <v1> [<v2>]
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alloc::VarAllocator;
use crate::cnf::{Clause, Lit, Var};
use crate::error::{Error, Result};
use crate::xor::{XorConstraint, XorSystem};

const FORMAT: &str = "graph";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub lit: Lit,
    pub a: usize,
    /// `None` for a loop at `a`.
    pub b: Option<usize>,
}

/// A general graph G = (V, E, η) with charges ρ: V → {0,1}. Vertices are
/// addressed by their position; `ids` keeps the external names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralGraph {
    ids: Vec<u32>,
    charges: Vec<bool>,
    edges: Vec<Edge>,
}

impl GeneralGraph {
    pub fn new() -> GeneralGraph {
        GeneralGraph::default()
    }

    /// Adds a vertex named by the next free id.
    pub fn add_vertex(&mut self, charge: bool) -> usize {
        let id = self.ids.iter().max().map_or(1, |m| m + 1);
        self.add_named_vertex(id, charge).unwrap()
    }

    pub fn add_named_vertex(&mut self, id: u32, charge: bool) -> Result<usize> {
        if self.ids.contains(&id) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {id}")));
        }
        self.ids.push(id);
        self.charges.push(charge);
        Ok(self.ids.len() - 1)
    }

    /// Adds an edge; the labels of all edges must form a clause, i.e. use
    /// pairwise distinct variables.
    pub fn add_edge(&mut self, lit: Lit, a: usize, b: Option<usize>) -> Result<()> {
        let n = self.ids.len();
        if a >= n || b.is_some_and(|b| b >= n) {
            return Err(Error::InvalidGraph("edge endpoint is not a vertex".into()));
        }
        if self.edges.iter().any(|e| e.lit.var() == lit.var()) {
            return Err(Error::InvalidGraph(format!("variable {} labels two edges", lit.var())));
        }
        // a two-element set {a, a} is a loop
        let b = b.filter(|&b| b != a);
        self.edges.push(Edge { lit, a, b });
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn charge(&self, w: usize) -> bool {
        self.charges[w]
    }

    pub fn id(&self, w: usize) -> u32 {
        self.ids[w]
    }

    pub fn is_loop_free(&self) -> bool {
        self.edges.iter().all(|e| e.b.is_some())
    }

    pub fn total_charge(&self) -> bool {
        self.charges.iter().fold(false, |acc, &c| acc ^ c)
    }

    /// The edge labels as a clause.
    pub fn labels(&self) -> Clause {
        Clause::new(self.edges.iter().map(|e| e.lit)).expect("edge variables are distinct")
    }

    fn incident(&self, w: usize) -> impl Iterator<Item = Lit> + '_ {
        self.edges.iter().filter(move |e| e.a == w || e.b == Some(w)).map(|e| e.lit)
    }

    /// T(G, ρ) as XOR constraints: for every vertex w, the XOR of the
    /// literals on its incident edges equals ρ(w), a loop counting once.
    /// Vertices without edges and charge 0 contribute nothing; with charge 1
    /// they are rejected.
    pub fn tseitin(&self) -> Result<XorSystem> {
        let mut out = XorSystem::new();
        for w in 0..self.num_vertices() {
            let lits: Vec<Lit> = self.incident(w).collect();
            if lits.is_empty() {
                if self.charges[w] {
                    return Err(Error::InvalidGraph(format!("isolated vertex {} has charge 1", self.ids[w])));
                }
                continue;
            }
            out.insert(XorConstraint::from_lits(lits, self.charges[w]));
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<GeneralGraph> {
        let mut g = GeneralGraph::new();
        let mut index: BTreeMap<u32, usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let col_of = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let tokens: Vec<&str> = raw.split_whitespace().collect();
            let Some(&head) = tokens.first() else { continue };
            let num = |tok: &str, what: &str| -> Result<i64> {
                tok.parse().map_err(|_| Error::parse(FORMAT, line_no, col_of(tok), format!("bad {what} `{tok}`")))
            };
            let vertex = |tok: &str, index: &BTreeMap<u32, usize>| -> Result<usize> {
                let id = num(tok, "vertex")?;
                u32::try_from(id)
                    .ok()
                    .and_then(|id| index.get(&id).copied())
                    .ok_or_else(|| Error::parse(FORMAT, line_no, col_of(tok), format!("unknown vertex {id}")))
            };
            match head {
                "c" => {}
                "v" => {
                    if tokens.len() != 3 {
                        return Err(Error::parse(FORMAT, line_no, 1, "expected `v <id> <charge>`"));
                    }
                    let id = u32::try_from(num(tokens[1], "vertex id")?)
                        .map_err(|_| Error::parse(FORMAT, line_no, col_of(tokens[1]), "bad vertex id"))?;
                    let charge = match tokens[2] {
                        "0" => false,
                        "1" => true,
                        t => return Err(Error::parse(FORMAT, line_no, col_of(t), "charge must be 0 or 1")),
                    };
                    let w = g
                        .add_named_vertex(id, charge)
                        .map_err(|e| Error::parse(FORMAT, line_no, col_of(tokens[1]), e.to_string()))?;
                    index.insert(id, w);
                }
                "e" => {
                    if !(3..=4).contains(&tokens.len()) {
                        return Err(Error::parse(FORMAT, line_no, 1, "expected `e <lit> <v1> [<v2>]`"));
                    }
                    let lit = i32::try_from(num(tokens[1], "literal")?)
                        .map_err(|_| Error::ZeroVariable)
                        .and_then(Lit::from_dimacs)
                        .map_err(|_| Error::parse(FORMAT, line_no, col_of(tokens[1]), "bad literal"))?;
                    let a = vertex(tokens[2], &index)?;
                    let b = tokens.get(3).map(|t| vertex(t, &index)).transpose()?;
                    g.add_edge(lit, a, b)
                        .map_err(|e| Error::parse(FORMAT, line_no, col_of(tokens[1]), e.to_string()))?;
                }
                _ => {
                    return Err(Error::parse(
                        FORMAT,
                        line_no,
                        col_of(head),
                        format!("expected `c`, `v` or `e`, found `{head}`"),
                    ))
                }
            }
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, c) in self.ids.iter().zip(&self.charges) {
            let _ = writeln!(out, "v {id} {}", u8::from(*c));
        }
        for e in &self.edges {
            let _ = write!(out, "e {} {}", e.lit, self.ids[e.a]);
            if let Some(b) = e.b {
                let _ = write!(out, " {}", self.ids[b]);
            }
            out.push('\n');
        }
        out
    }
}

/// The dipole D_n: two vertices (charges 0 and 1) joined by the edges
/// v_1, .., v_n.
pub fn dipole(n: u32) -> Result<GeneralGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("the dipole needs n ≥ 1".into()));
    }
    let mut g = GeneralGraph::new();
    let a = g.add_vertex(false);
    let b = g.add_vertex(true);
    for i in 1..=n {
        g.add_edge(Var::new(i).pos(), a, Some(b))?;
    }
    Ok(g)
}

/// The bouquet B_C: one vertex of charge 0 carrying a loop per literal of C.
pub fn bouquet(c: &Clause) -> GeneralGraph {
    let mut g = GeneralGraph::new();
    let w = g.add_vertex(false);
    for &l in c.lits() {
        g.add_edge(l, w, None).unwrap();
    }
    g
}

/// The chain graph G_n of a clause C = {x_1, .., x_n}, all charges 0: for
/// n ≤ 2 the bouquet; otherwise vertex v_1 carries loops x_1, x_2 and each
/// further x_i (3 ≤ i ≤ n) gets its own vertex with loop x_i, joined to
/// the previous vertex by the edge y_{i-1}. The y's are drawn from `alloc`.
pub fn chain_graph(c: &Clause, alloc: &mut VarAllocator) -> GeneralGraph {
    let lits = c.lits();
    if lits.len() <= 2 {
        return bouquet(c);
    }
    let mut g = GeneralGraph::new();
    let mut prev = g.add_vertex(false);
    g.add_edge(lits[0], prev, None).unwrap();
    g.add_edge(lits[1], prev, None).unwrap();
    for &x in &lits[2..] {
        let w = g.add_vertex(false);
        g.add_edge(alloc.fresh().pos(), prev, Some(w)).unwrap();
        g.add_edge(x, w, None).unwrap();
        prev = w;
    }
    g
}
