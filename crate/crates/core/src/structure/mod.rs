//! Structural analysis of constraint families and Tseitin generators.
//!
//! A family (F_i) — clause-sets or XOR constraints — is *acyclic* when its
//! incidence graph is a forest. That graph is bipartite: one node per
//! member, one per variable, and an edge (i, v) whenever v ∈ var(F_i). Two
//! members sharing two variables already close a 4-cycle.
//!
//! For a single clause-set F, "F is acyclic" refers to the family of its
//! clauses ({C})_{C ∈ F}; [`is_acyclic_clause_set`] implements that view and
//! [`is_acyclic_family`] the coarser one over whole clause-sets.

use std::borrow::Borrow;
use std::collections::BTreeSet;

use crate::alloc::VarAllocator;
use crate::cnf::{ClauseSet, Var};
use crate::error::{Error, Result};
use crate::translate::x1;
use crate::xor::{XorConstraint, XorSystem};

mod graph;

pub use graph::{bouquet, chain_graph, dipole, Edge, GeneralGraph};

/// The bipartite incidence graph of a family of variable sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    /// Number of members (left nodes).
    pub members: usize,
    /// The variables (right nodes), ascending.
    pub vars: Vec<Var>,
    /// (member, variable) pairs, sorted.
    pub edges: Vec<(usize, Var)>,
}

impl IncidenceGraph {
    pub fn new<S: Borrow<BTreeSet<Var>>>(family: &[S]) -> IncidenceGraph {
        let mut vars = BTreeSet::new();
        let mut edges = Vec::new();
        for (i, m) in family.iter().enumerate() {
            for &v in m.borrow() {
                vars.insert(v);
                edges.push((i, v));
            }
        }
        IncidenceGraph { members: family.len(), vars: vars.into_iter().collect(), edges }
    }

    /// The graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.members + self.vars.len());
        self.edges.iter().all(|&(i, v)| {
            let j = self.members + self.vars.binary_search(&v).unwrap();
            uf.union(i, j)
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of a and b; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Is the incidence graph of the family a forest?
pub fn is_acyclic_family<S: Borrow<BTreeSet<Var>>>(family: &[S]) -> bool {
    IncidenceGraph::new(family).is_forest()
}

/// Acyclicity of an XOR system, one member per constraint.
pub fn is_acyclic_system(s: &XorSystem) -> bool {
    is_acyclic_family(&system_family(s))
}

/// Acyclicity of a single clause-set, one member per clause.
pub fn is_acyclic_clause_set(f: &ClauseSet) -> bool {
    let family: Vec<BTreeSet<Var>> = f.iter().map(|c| c.vars().collect()).collect();
    is_acyclic_family(&family)
}

/// Acyclicity of a family of clause-sets, one member per clause-set.
pub fn is_acyclic_clause_sets(family: &[ClauseSet]) -> bool {
    let family: Vec<BTreeSet<Var>> = family.iter().map(ClauseSet::vars).collect();
    is_acyclic_family(&family)
}

pub fn system_family(s: &XorSystem) -> Vec<BTreeSet<Var>> {
    s.iter().map(|c| c.vars().iter().copied().collect()).collect()
}

/// The variable-interaction graph of a family together with the three
/// sufficient criteria relating it to acyclicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionReport {
    /// Edges {i, j} (i < j) between members sharing a variable.
    pub edges: Vec<(usize, usize)>,
    /// A pair of members sharing at least two variables, if any:
    /// criterion (a), which makes the family cyclic.
    pub large_intersection: Option<(usize, usize)>,
    /// The interaction graph itself is a forest.
    pub interaction_acyclic: bool,
    /// Criterion (b): all intersections have size ≤ 1 and the interaction
    /// graph is acyclic; implies acyclicity.
    pub criterion_b: bool,
    /// Criterion (c): all pairwise intersections lie in {v} for one
    /// variable v (reported here); implies acyclicity.
    pub criterion_c: Option<Option<Var>>,
    /// The actual verdict from the incidence graph.
    pub acyclic: bool,
}

impl InteractionReport {
    pub fn criterion_a(&self) -> bool {
        self.large_intersection.is_some()
    }
}

pub fn variable_interaction_graph<S: Borrow<BTreeSet<Var>>>(family: &[S]) -> InteractionReport {
    let m = family.len();
    let mut edges = Vec::new();
    let mut large = None;
    let mut shared_vars = BTreeSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let common: Vec<Var> = family[i].borrow().intersection(family[j].borrow()).copied().collect();
            if common.is_empty() {
                continue;
            }
            edges.push((i, j));
            if common.len() >= 2 && large.is_none() {
                large = Some((i, j));
            }
            shared_vars.extend(common);
        }
    }
    let mut uf = UnionFind::new(m);
    let interaction_acyclic = edges.iter().all(|&(i, j)| uf.union(i, j));
    let criterion_c = (shared_vars.len() <= 1).then(|| shared_vars.first().copied());
    InteractionReport {
        criterion_b: large.is_none() && interaction_acyclic,
        edges,
        large_intersection: large,
        interaction_acyclic,
        criterion_c,
        acyclic: is_acyclic_family(family),
    }
}

/// The pair C1 = v1 ⊕ .. ⊕ vn = 0, C2 = v1 ⊕ .. ⊕ vn = 1 of the dipole.
pub fn dipole_system(n: u32) -> Result<XorSystem> {
    dipole(n)?.tseitin()
}

/// T_n = X1({C1, C2}) for the dipole pair, n ≥ 2. Unsatisfiable, clause
/// length ≤ 3, with 3n−4 variables, 8n−12 clauses and 24n−40 literals.
///
/// Variable layout: v_i = i for 1 ≤ i ≤ n; the chain of C1 uses
/// y_i = n + (i−1) and that of C2 uses y'_i = 2n−2 + (i−1), 2 ≤ i ≤ n−1.
pub fn gen_tn(n: u32) -> Result<ClauseSet> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("T_n needs n ≥ 2, got {n}")));
    }
    Ok(x1(&dipole_system(n)?).cnf)
}

/// The variables y_i and y'_i of [`gen_tn`] (2 ≤ i ≤ n−1).
pub fn tn_y(n: u32, i: u32) -> Var {
    Var::new(n + i - 1)
}

pub fn tn_y_prime(n: u32, i: u32) -> Var {
    Var::new(2 * n - 2 + i - 1)
}

/// The system whose X0-expansion is X1 of a single constraint, read off
/// the chain graph G_n; auxiliaries come from `alloc` in the same order as
/// in X1.
pub fn chain_system(c: &XorConstraint, alloc: &mut VarAllocator) -> Result<XorSystem> {
    chain_graph(&c.to_clause()?, alloc).tseitin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::oracle;
    use crate::translate::x1_clause;
    use petgraph::graph::UnGraph;
    use proptest::prelude::*;

    fn set(v: &[u32]) -> BTreeSet<Var> {
        v.iter().map(|&i| Var::new(i)).collect()
    }

    #[test]
    fn acyclicity_examples() {
        assert!(is_acyclic_family(&[set(&[1, 2]), set(&[2, 3])]));
        assert!(!is_acyclic_family(&[set(&[1, 2, 3, 4]), set(&[1, 2, 3, 5])]));
        // the triangle a⊕b, a⊕c, b⊕c
        let tri = [set(&[1, 2]), set(&[1, 3]), set(&[2, 3])];
        assert!(!is_acyclic_family(&tri));
        assert!(is_acyclic_family::<BTreeSet<Var>>(&[]));
    }

    #[test]
    fn interaction_criteria() {
        let star = [set(&[9, 1, 2]), set(&[9, 3]), set(&[9, 4, 5])];
        let r = variable_interaction_graph(&star);
        assert_eq!(r.criterion_c, Some(Some(Var::new(9))));
        assert!(r.acyclic && !r.criterion_a());
        // the star's interaction graph is a triangle, so (b) does not apply
        assert!(!r.criterion_b);

        let tri = [set(&[1, 2]), set(&[1, 3]), set(&[2, 3])];
        let r = variable_interaction_graph(&tri);
        assert!(!r.criterion_b && !r.acyclic && r.criterion_c.is_none());

        let disjoint = [set(&[1, 2]), set(&[3]), set(&[4, 5])];
        let r = variable_interaction_graph(&disjoint);
        assert!(r.criterion_b && r.acyclic && r.edges.is_empty());
        assert_eq!(r.criterion_c, Some(None));

        let pair = [set(&[1, 2, 3]), set(&[1, 2, 4])];
        assert_eq!(variable_interaction_graph(&pair).large_intersection, Some((0, 1)));
    }

    #[test]
    fn clause_set_granularity() {
        let f = ClauseSet::from_dimacs([[1, 2], [-2, 3]]).unwrap();
        assert!(is_acyclic_clause_set(&f));
        let g = ClauseSet::from_dimacs([[1, 2], [-1, -2]]).unwrap();
        assert!(!is_acyclic_clause_set(&g));
        // as a single member the family is trivially acyclic
        assert!(is_acyclic_clause_sets(&[g]));
    }

    #[test]
    fn tn_counts_and_layout() {
        for n in 2..=10u32 {
            let t = gen_tn(n).unwrap();
            assert_eq!(t.num_vars() as u32, 3 * n - 4);
            assert_eq!(t.len() as u32, 8 * n - 12);
            assert_eq!(t.num_lits() as u32, 24 * n - 40);
            assert!(t.max_clause_len() <= 3);
            if n <= 8 {
                assert!(!oracle::is_satisfiable(&t));
            }
        }
        assert!(gen_tn(1).is_err());
        let t = gen_tn(4).unwrap();
        // y'_3 ⊕ x4 = 1 closes the second chain
        let (y, yp) = (tn_y_prime(4, 3), Var::new(4));
        assert!(t.contains(&crate::Clause::new([y.pos(), yp.pos()]).unwrap()));
        assert_eq!(tn_y(4, 2), Var::new(5));
        assert_eq!(tn_y_prime(4, 2), Var::new(7));
    }

    #[test]
    fn chain_graph_is_the_natural_splitting() {
        for n in 1..=7u32 {
            let after = Some(Var::new(n));
            // C = {x1, .., xn}: the graph reproduces X1(C) clause for clause
            let c = XorConstraint::new((1..=n).map(Var::new), false);
            let sys = chain_system(&c, &mut VarAllocator::after(after)).unwrap();
            let via_graph = crate::translate::x0(&sys).cnf;
            let direct = x1_clause(&c, &mut VarAllocator::after(after)).cnf;
            assert_eq!(via_graph.sorted(), direct.sorted(), "n={n}");
            // odd parity: the complement sits on x1 in the graph but X1 puts
            // the parity on the last link, so only the projections agree
            let c = XorConstraint::new((1..=n).map(Var::new), true);
            let sys = chain_system(&c, &mut VarAllocator::after(after)).unwrap();
            let single: XorSystem = [c].into_iter().collect();
            let verdict = crate::measure::verify_representation_with(
                &single,
                &crate::translate::x0(&sys).cnf,
                crate::measure::VerifyMode::Full,
            )
            .unwrap();
            assert!(verdict.passed(), "n={n}");
        }
    }

    fn arb_family() -> impl Strategy<Value = Vec<BTreeSet<Var>>> {
        prop::collection::vec(prop::collection::btree_set(1u32..=8, 0..4), 0..6)
            .prop_map(|f| f.into_iter().map(|s| s.into_iter().map(Var::new).collect()).collect())
    }

    proptest! {
        #[test]
        fn forest_check_agrees_with_petgraph(family in arb_family()) {
            let ig = IncidenceGraph::new(&family);
            let mut g = UnGraph::<(), ()>::new_undirected();
            let left: Vec<_> = (0..ig.members).map(|_| g.add_node(())).collect();
            let right: Vec<_> = ig.vars.iter().map(|_| g.add_node(())).collect();
            for &(i, v) in &ig.edges {
                g.add_edge(left[i], right[ig.vars.binary_search(&v).unwrap()], ());
            }
            let forest = g.edge_count() + petgraph::algo::connected_components(&g) == g.node_count();
            prop_assert_eq!(is_acyclic_family(&family), forest);
        }

        #[test]
        fn criteria_are_sound(family in arb_family()) {
            let r = variable_interaction_graph(&family);
            if r.criterion_a() { prop_assert!(!r.acyclic); }
            if r.criterion_b { prop_assert!(r.acyclic); }
            if r.criterion_c.is_some() { prop_assert!(r.acyclic); }
        }
    }
}
