use super::*;
use crate::cnf::{rk1, Clause, Lit};
use crate::measure::{hardness, prime_implicates, Scope};
use crate::translate::x0;
use crate::xor::XorConstraint;
use proptest::prelude::*;

fn vars(n: u32) -> BTreeSet<Var> {
    (1..=n).map(Var::new).collect()
}

/// The prime clauses of the function on variables 1..=n whose truth table
/// is `table` (bit j is f at the assignment with v_i = bit i−1 of j).
fn primes_of_table(n: u32, table: u64) -> ClauseSet {
    let falsifying: ClauseSet = (0..1u64 << n)
        .filter(|j| table >> j & 1 == 0)
        .map(|j| {
            // the clause excluding row j
            Clause::new((0..n).map(|i| Lit::new(Var::new(i + 1), j >> i & 1 == 0))).unwrap()
        })
        .collect();
    prime_implicates(&falsifying).unwrap()
}

fn agrees_everywhere(c: &MonotoneCircuit, f: &ClauseSet, orig: &BTreeSet<Var>) -> bool {
    all_doubled_inputs(orig).iter().all(|inp| eval_doubled(c, inp).unwrap() == monotonise_eval(f, inp))
}

/// Monohorn circuit: ((a″∨b″∨c″) ∧ (a′∨b′∨c′)) ∧ (a′∨a″) ∧ (b′∨b″) ∧ (c′∨c″).
fn monohorn_circuit() -> MonotoneCircuit {
    let mut b = CircuitBuilder::new();
    let [a, bb, c] = [1, 2, 3].map(Var::new);
    let zeros: Vec<usize> = [a, bb, c].iter().map(|&v| b.input(zero_input(v))).collect();
    let ones: Vec<usize> = [a, bb, c].iter().map(|&v| b.input(one_input(v))).collect();
    let w1 = b.or_all(ones.clone());
    let w2 = b.or_all(zeros.clone());
    let both = b.and(w1, w2);
    let pairs: Vec<usize> = (0..3).map(|i| b.or(zeros[i], ones[i])).collect();
    let rest = b.and_all(pairs);
    let o = b.and(both, rest);
    b.finish(o)
}

/// Equal after some bijection of the variables outside `fixed`.
fn equal_up_to_renaming(f: &ClauseSet, g: &ClauseSet, fixed: &BTreeSet<Var>) -> bool {
    let free_f: Vec<Var> = f.vars().difference(fixed).copied().collect();
    let free_g: Vec<Var> = g.vars().difference(fixed).copied().collect();
    if free_f.len() != free_g.len() || f.len() != g.len() {
        return false;
    }
    fn search(
        i: usize,
        perm: &mut Vec<Var>,
        used: &mut Vec<bool>,
        free_f: &[Var],
        free_g: &[Var],
        f: &ClauseSet,
        g: &ClauseSet,
    ) -> bool {
        if i == free_f.len() {
            let map = |l: Lit| match free_f.iter().position(|&v| v == l.var()) {
                Some(j) => Lit::new(perm[j], l.is_positive()),
                None => l,
            };
            let renamed: ClauseSet = f.iter().map(|c| Clause::new(c.lits().iter().map(|&l| map(l))).unwrap()).collect();
            return &renamed == g;
        }
        for j in 0..free_g.len() {
            if !used[j] {
                used[j] = true;
                perm.push(free_g[j]);
                if search(i + 1, perm, used, free_f, free_g, f, g) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    search(0, &mut Vec::new(), &mut vec![false; free_g.len()], &free_f, &free_g, f, g)
}

#[test]
fn evaluation_basics() {
    let c = MonotoneCircuit::from_nodes(vec![Node::Const(true), Node::Const(false), Node::And(0, 1)], 2).unwrap();
    assert!(!eval_circuit(&c, |_| None).unwrap());
    let c = MonotoneCircuit::from_nodes(vec![Node::Input("x".into()), Node::Const(true), Node::Or(0, 1)], 2).unwrap();
    assert!(eval_circuit(&c, |_| Some(false)).unwrap());
    assert_eq!(eval_circuit(&c, |_| None), Err(Error::UnboundInput("x".into())));
    assert!(MonotoneCircuit::from_nodes(vec![Node::And(0, 0)], 0).is_err());
}

#[test]
fn builder_shares_and_folds() {
    let mut b = CircuitBuilder::new();
    let x = b.input("x");
    let y = b.input("y");
    assert_eq!(b.and(x, y), b.and(y, x));
    let one = b.constant(true);
    assert_eq!(b.and(x, one), x);
    assert_eq!(b.or(x, one), one);
    assert_eq!(b.or(x, x), x);
    assert_eq!(b.or_all([]), b.constant(false));
}

#[test]
fn text_round_trip() {
    let c = monohorn_circuit();
    assert_eq!(MonotoneCircuit::parse(&c.to_text()).unwrap(), c);
    let named = "# comment\na INPUT 1'\nb INPUT 1''\ng OR a b\nOUTPUT g\n";
    let p = MonotoneCircuit::parse(named).unwrap();
    assert_eq!(p.len(), 3);
    assert!(MonotoneCircuit::parse("1 AND 2 3\nOUTPUT 1").is_err());
    assert!(MonotoneCircuit::parse("1 CONST 1").is_err());
    assert!(MonotoneCircuit::parse("1 CONST 2\nOUTPUT 1").is_err());
}

#[test]
fn monotonisation_examples() {
    let f = ClauseSet::from_dimacs([[1, 2]]).unwrap();
    let orig = vars(2);
    assert!(monotonise_eval(&f, &encode(&orig, &PartialAssignment::new())));
    let mut contradiction = encode(&orig, &PartialAssignment::new());
    contradiction.insert(Var::new(1), (false, false));
    assert!(!monotonise_eval(&f, &contradiction));

    // f = v ∧ v̄: f̂ ≡ 0 although the de Morgan monotonisation v″ ∧ v′ is 1 at (1,1)
    let contra = ClauseSet::from_dimacs([[1], [-1]]).unwrap();
    let orig = vars(1);
    assert!(all_doubled_inputs(&orig).iter().all(|i| !monotonise_eval(&contra, i)));
    let mut b = CircuitBuilder::new();
    let z = b.input(zero_input(Var::new(1)));
    let o = b.input(one_input(Var::new(1)));
    let both = b.and(o, z);
    let pair = b.or(z, o);
    let out = b.and(both, pair);
    let f_prime = b.finish(out);
    assert!(eval_doubled(&f_prime, &[(Var::new(1), (true, true))].into()).unwrap());
    let c = circuit_from_representation(&contra, &orig);
    assert!(agrees_everywhere(&c, &contra, &orig));
}

#[test]
fn degenerate_representations() {
    assert_eq!(circuit_from_representation(&ClauseSet::top(), &BTreeSet::new()), MonotoneCircuit::constant(true));
    assert_eq!(circuit_from_representation(&ClauseSet::bottom(), &vars(2)), MonotoneCircuit::constant(false));
    // ⊤ over a variable still rejects contradictory pairs
    let c = circuit_from_representation(&ClauseSet::top(), &vars(1));
    assert!(agrees_everywhere(&c, &ClauseSet::top(), &vars(1)));
}

#[test]
fn equivalence_circuit() {
    let s: crate::xor::XorSystem = [XorConstraint::new([Var::new(1), Var::new(2)], false)].into_iter().collect();
    let f = x0(&s).cnf;
    let c = circuit_from_representation(&f, &vars(2));
    assert_eq!(all_doubled_inputs(&vars(2)).len(), 16);
    assert!(agrees_everywhere(&c, &f, &vars(2)));
    assert!(c.is_monotone());
}

#[test]
fn all_two_variable_functions() {
    for table in 0..16 {
        let f = primes_of_table(2, table);
        let c = circuit_from_representation(&f, &vars(2));
        assert!(agrees_everywhere(&c, &f, &vars(2)), "table {table:04b}");
    }
}

#[test]
fn auxiliary_variables_are_propagated() {
    // x1 representation of a 4-ary parity: relative hardness 1 with auxiliaries
    let s: crate::xor::XorSystem = [XorConstraint::new((1..=4).map(Var::new), true)].into_iter().collect();
    let f = crate::translate::x1(&s).cnf;
    let orig = vars(4);
    let c = circuit_from_representation(&f, &orig);
    assert!(agrees_everywhere(&c, &f, &orig));
    let n = f.num_vars();
    assert!(c.len() <= 4 * n * n * f.num_lits() + 4 * n);
}

#[test]
fn monohorn_example() {
    let orig = vars(3);
    let c = monohorn_circuit();
    let f0 = primes_of_table(3, 0b0111_1110);
    assert_eq!(f0, ClauseSet::from_dimacs([[1, 2, 3], [-1, -2, -3]]).unwrap());
    assert!(agrees_everywhere(&c, &f0, &orig));

    let t = tseitin_circuit(&c, &orig, TseitinForm::Reduced).unwrap();
    assert!(t.cnf.iter().all(|cl| cl.lits().iter().filter(|l| !l.is_positive()).count() == 1));

    // w1..w5 = 4..8, o = 9
    let expected = ClauseSet::from_dimacs([
        &[-4, 1, 2, 3][..],
        &[-5, -1, -2, -3],
        &[-9, 4],
        &[-9, 5],
        &[-9, 6],
        &[-9, 7],
        &[-9, 8],
        &[9],
    ])
    .unwrap();
    let f = representation_from_circuit(&c, &orig, TseitinForm::Reduced).unwrap();
    assert!(equal_up_to_renaming(&f, &expected, &orig), "{f:?}");
    assert!(hardness(&f, &Scope::vars(orig.iter().copied())).unwrap().value <= 1);
}

#[test]
fn constant_one_circuit() {
    let f = representation_from_circuit(&MonotoneCircuit::constant(true), &vars(2), TseitinForm::Full).unwrap();
    for phi in [[1, 2], [1, -2], [-1, 2], [-1, -2]] {
        let phi = PartialAssignment::from_lits(phi.iter().map(|&l| Lit::from_dimacs(l).unwrap())).unwrap();
        assert!(crate::cnf::oracle::is_satisfiable(&crate::cnf::apply(&phi, &f)));
    }
}

#[test]
fn unknown_input_is_rejected() {
    let c = MonotoneCircuit::from_nodes(vec![Node::Input("7'".into())], 0).unwrap();
    assert!(representation_from_circuit(&c, &vars(2), TseitinForm::Reduced).is_err());
}

/// F represents f on `orig` and unit propagation refutes every partial
/// assignment over `orig` that makes f unsatisfiable.
fn check_round_trip(f: &ClauseSet, orig: &BTreeSet<Var>, form: TseitinForm) {
    let c = circuit_from_representation(f, orig);
    let g = representation_from_circuit(&c, orig, form).unwrap();
    for inp in all_doubled_inputs(orig) {
        if inp.values().any(|&p| p == (false, false)) {
            continue;
        }
        let phi: PartialAssignment = PartialAssignment::from_lits(inp.iter().filter_map(|(&v, &p)| match p {
            (true, false) => Some(v.neg()),
            (false, true) => Some(v.pos()),
            _ => None,
        }))
        .unwrap();
        let f_sat = monotonise_eval(f, &inp);
        let g_phi = crate::cnf::apply(&phi, &g);
        assert_eq!(crate::engine::is_satisfiable(&g_phi).unwrap(), f_sat, "{f:?} {phi}");
        if !f_sat {
            assert!(rk1(&g_phi).is_bottom(), "{f:?} {phi}");
        }
    }
}

#[test]
fn round_trip_on_three_variable_functions() {
    for table in (0..256).step_by(7) {
        let f = primes_of_table(3, table);
        for form in [TseitinForm::Reduced, TseitinForm::Full] {
            check_round_trip(&f, &vars(3), form);
        }
    }
}

fn arb_circuit(inputs: usize, gates: usize) -> impl Strategy<Value = MonotoneCircuit> {
    prop::collection::vec((any::<bool>(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), 1..=gates)
        .prop_map(move |gs| {
            let mut nodes: Vec<Node> = (0..inputs).map(|i| Node::Input(format!("i{i}"))).collect();
            for (is_and, a, b) in gs {
                let n = nodes.len();
                let (a, b) = (a.index(n), b.index(n));
                nodes.push(if is_and { Node::And(a, b) } else { Node::Or(a, b) });
            }
            let out = nodes.len() - 1;
            MonotoneCircuit::from_nodes(nodes, out).unwrap()
        })
}

proptest! {
    #[test]
    fn circuits_are_monotone(c in arb_circuit(6, 20)) {
        let eval = |bits: u32| eval_circuit(&c, |s| Some(bits >> s[1..].parse::<u32>().unwrap() & 1 == 1)).unwrap();
        for bits in 0..64u32 {
            let base = eval(bits);
            for i in 0..6 {
                if bits >> i & 1 == 0 {
                    prop_assert!(eval(bits | 1 << i) >= base);
                }
            }
        }
    }
}
