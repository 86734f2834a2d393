//! The subcommands.

use std::collections::BTreeSet;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::json;
use xorcnf_core::measure::{
    self, check_refutation, check_resolution, AxiomMode, MeasureConfig, ResolutionProof, Verdict, VerifyMode,
};
use xorcnf_core::structure::{self, variable_interaction_graph};
use xorcnf_core::translate::{self, translate_auto, Guarantee, TranslationResult};
use xorcnf_core::xor::xnf::{self, Convention};
use xorcnf_core::{gen, ClauseSet, Error, Lit, Measure, Scope, Var, XorSystem};

use crate::io;
use crate::{CheckAcyclicArgs, CheckProofArgs, GenArgs, GenFamily, MeasureArgs, MethodArg, TranslateArgs, VerifyArgs};

const FAILED: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

/// Exit code for an error: caps and parse errors are told apart from
/// semantic failures; anything outside the library (I/O, bad arguments)
/// counts as usage.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::CapExceeded { .. }) => CAP,
        Some(Error::Parse { .. } | Error::InvalidArgument(_) | Error::ZeroVariable | Error::Tautology { .. }) => USAGE,
        Some(_) => FAILED,
        None => USAGE,
    }
}

fn unsat_report(certificate: &[xorcnf_core::XorConstraint]) -> ExitCode {
    eprintln!("unsatisfiable: these {} constraints sum to 0 = 1", certificate.len());
    for c in certificate {
        eprintln!("  {c}");
    }
    ExitCode::from(FAILED)
}

pub fn translate(a: &TranslateArgs) -> Result<ExitCode> {
    let s = io::xnf(a.input.as_deref(), a.convention.parity)?.system;
    let pick = |m: MethodArg| -> xorcnf_core::Result<(TranslationResult, Option<Guarantee>)> {
        Ok(match m {
            MethodArg::Auto => {
                let choice = translate_auto(&s, a.xstar_cap)?;
                eprintln!("auto: {} ({}), guarantee {}", choice.result.method, choice.reason, choice.guarantee);
                if choice.guarantee == Guarantee::None {
                    eprintln!("warning: no propagation guarantee applies to this translation");
                }
                (choice.result, Some(choice.guarantee))
            }
            MethodArg::X0 => (translate::x0(&s), None),
            MethodArg::X1 => (translate::x1(&s), None),
            MethodArg::X2 => {
                let [c, d] = s.iter().cloned().collect::<Vec<_>>().try_into().map_err(|v: Vec<_>| {
                    Error::InvalidArgument(format!("x2 needs exactly two constraints, got {}", v.len()))
                })?;
                (translate::x2(&c, &d)?, None)
            }
            MethodArg::Xstar => (translate::xstar(&s)?, None),
            MethodArg::Prime => {
                let k = a.k.unwrap_or_else(|| s.iter().map(|c| c.len()).max().unwrap_or(0));
                (translate::prime_translation(&s, k)?, None)
            }
        })
    };
    let (result, guarantee) = match pick(a.method) {
        Ok(r) => r,
        Err(Error::Unsatisfiable { certificate }) => return Ok(unsat_report(&certificate)),
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    if let Some(g) = guarantee {
        text.push_str(&format!("c guarantee {g}\n"));
    }
    text.push_str(&result.to_dimacs());
    io::write(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_scope(spec: &str, aux: &BTreeSet<Var>, f: &ClauseSet) -> Result<Scope> {
    Ok(match spec {
        "all" => Scope::All,
        "orig" => Scope::vars(f.vars().difference(aux).copied()),
        list => {
            let mut vars = BTreeSet::new();
            for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let i: u32 =
                    tok.parse().map_err(|_| Error::InvalidArgument(format!("bad variable `{tok}` in --scope")))?;
                vars.insert(Var::try_new(i)?);
            }
            Scope::Vars(vars)
        }
    })
}

pub fn measure(a: &MeasureArgs) -> Result<ExitCode> {
    let d = io::dimacs(a.input.as_deref())?;
    let which = match (a.hd, a.phd, a.whd, a.wid) {
        (true, ..) => Measure::Hd,
        (_, true, ..) => Measure::Phd,
        (_, _, true, _) => Measure::Whd,
        (_, _, _, true) => Measure::Wid,
        _ => Measure::Ac,
    };
    let scope = parse_scope(&a.scope, &io::aux_vars(&d)?, &d.clauses)?;
    if a.cap == 0 {
        bail!(Error::InvalidArgument("--cap must be positive".into()));
    }
    let cfg = MeasureConfig { scope_cap: a.cap, sample: a.sample, seed: a.seed };
    let report = measure::measure(&d.clauses, which, &scope, &cfg)?;
    if a.json {
        println!("{}", serde_json::to_string(&report.record())?);
    } else {
        println!("{report}");
    }
    match a.expect {
        Some(want) if want != report.value => {
            eprintln!("expected {which} = {want}, measured {}", report.value);
            Ok(ExitCode::from(FAILED))
        }
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn xnf_text(s: &XorSystem, comments: &[String]) -> Result<String> {
    Ok(xnf::write(s, comments, Convention::XorClause)?)
}

pub fn gen(a: &GenArgs) -> Result<ExitCode> {
    let text = match &a.family {
        GenFamily::Tn { n } => {
            let f = structure::gen_tn(*n)?;
            xorcnf_core::cnf::dimacs::write(&f, &[format!("T_{n}")], None)
        }
        GenFamily::TnProof { n } => measure::build_tn_refutation(*n)?.to_text(),
        GenFamily::Dipole { n } => xnf_text(&structure::dipole_system(*n)?, &[format!("dipole n={n}")])?,
        GenFamily::Random { m, n, max_len, acyclic, seed } => {
            let mut rng = gen::rng(*seed);
            let s = if *acyclic {
                gen::random_acyclic_system(&mut rng, *m, *n)
            } else {
                gen::random_system(&mut rng, *m, *n, *max_len)?
            };
            let kind = if *acyclic { "acyclic" } else { "random" };
            xnf_text(&s, &[format!("{kind} m={m} n={n} max_len={max_len} seed={seed}")])?
        }
        GenFamily::Tseitin { graph } => {
            let g = xorcnf_core::GeneralGraph::parse(&io::read(Some(graph))?)?;
            xnf_text(&g.tseitin()?, &[format!("tseitin {}", graph.display())])?
        }
    };
    io::write(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let f = io::dimacs(Some(&a.cnf))?.clauses;
    if let Some(proof) = &a.proof {
        let p = ResolutionProof::parse(&io::read(Some(proof))?)?;
        return match check_refutation(&p, &f, AxiomMode::Strict) {
            Ok(stats) => {
                println!(
                    "pass: refutation with {} steps ({} axioms, {} resolvents)",
                    stats.steps, stats.axioms, stats.resolvents
                );
                Ok(ExitCode::SUCCESS)
            }
            Err(Error::InvalidProof { step, reason }) => {
                println!("{}", json!({ "verdict": "fail", "step": step, "reason": reason }));
                Ok(ExitCode::from(FAILED))
            }
            Err(e) => Err(e.into()),
        };
    }
    let xnf_path = a.xnf.as_deref().context("either --xnf or --proof is required")?;
    let s = io::xnf(Some(xnf_path), a.convention.parity)?.system;
    let mode = match a.sample {
        Some(samples) => VerifyMode::Sampled { samples, seed: a.seed },
        None => VerifyMode::Full,
    };
    match measure::verify_representation_with(&s, &f, mode)? {
        Verdict::Fail { assignment, in_solutions } => {
            let lits: Vec<i32> = assignment.true_lits().map(Lit::to_dimacs).collect();
            println!("{}", json!({ "verdict": "fail", "assignment": lits, "in_solutions": in_solutions }));
            Ok(ExitCode::from(FAILED))
        }
        v => {
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

pub fn check_proof(a: &CheckProofArgs) -> Result<ExitCode> {
    let p = ResolutionProof::parse(&io::read(Some(&a.proof))?)?;
    let f = io::dimacs(Some(&a.cnf))?.clauses;
    let mode = if a.subsumed { AxiomMode::Subsumed } else { AxiomMode::Strict };
    match check_resolution(&p, &f, mode) {
        Ok(stats) => {
            println!(
                "valid: {} steps, derives {}, longest clause {}, k-resolution for k ≥ {}",
                stats.steps, stats.conclusion, stats.max_len, stats.max_min_parent_len
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ Error::InvalidProof { .. }) => {
            println!("invalid: {e}");
            Ok(ExitCode::from(FAILED))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn check_acyclic(a: &CheckAcyclicArgs) -> Result<ExitCode> {
    let text = io::read(a.input.as_deref())?;
    let acyclic = if io::looks_like_xnf(&text) {
        let s = xnf::parse(&text, io::convention(a.convention.parity))?.system;
        let r = variable_interaction_graph(&structure::system_family(&s));
        println!("constraints: {}", s.len());
        println!("interaction edges: {}", r.edges.len());
        if let Some((i, j)) = r.large_intersection {
            println!("constraints {i} and {j} share at least two variables");
        }
        if r.criterion_b {
            println!("pairwise intersections ≤ 1 and the interaction graph is a forest");
        }
        if let Some(v) = r.criterion_c {
            match v {
                Some(v) => println!("all intersections lie within {{{v}}}"),
                None => println!("constraints are pairwise disjoint"),
            }
        }
        r.acyclic
    } else {
        let f = xorcnf_core::cnf::dimacs::parse(&text)?.clauses;
        println!("clauses: {}", f.len());
        structure::is_acyclic_clause_set(&f)
    };
    println!("acyclic: {}", if acyclic { "yes" } else { "no" });
    Ok(if acyclic { ExitCode::SUCCESS } else { ExitCode::from(FAILED) })
}
