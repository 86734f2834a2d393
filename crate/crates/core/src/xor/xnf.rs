//! The XNF text format for XOR systems.
//!
//! ```text
//! c comment
//! p xnf <vars> <constraints>
//! x 1 -2 3 0
//! ```
//!
//! Under the default [`Convention::XorClause`] a line lists the literals of
//! an XOR-clause, whose literals XOR to 0. Under [`Convention::Parity`] a
//! line means "the listed variables XOR to 1", each negative literal
//! flipping that right-hand side.

use std::fmt::Write as _;

use super::{XorConstraint, XorSystem};
use crate::cnf::Lit;
use crate::error::{Error, Result};

const FORMAT: &str = "XNF";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// `x l1 .. lk 0` is the XOR-clause {l1,..,lk}: l1 ⊕ .. ⊕ lk = 0.
    #[default]
    XorClause,
    /// `x l1 .. lk 0` means l1 ⊕ .. ⊕ lk = 1.
    Parity,
}

impl Convention {
    fn rhs(self) -> bool {
        matches!(self, Convention::Parity)
    }
}

/// A parsed XNF file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Xnf {
    pub comments: Vec<String>,
    pub declared_vars: Option<usize>,
    pub system: XorSystem,
}

pub fn parse(text: &str, convention: Convention) -> Result<Xnf> {
    let mut out = Xnf::default();
    let mut declared: Option<usize> = None;
    let mut count = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let col_of = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        match head {
            "c" => {
                let rest = line[1..].strip_prefix(' ').unwrap_or(&line[1..]);
                out.comments.push(rest.to_string());
            }
            "p" => {
                let fields: Vec<&str> = tokens.collect();
                if out.declared_vars.is_some() {
                    return Err(Error::parse(FORMAT, line_no, 1, "duplicate header"));
                }
                if fields.len() != 3 || fields[0] != "xnf" {
                    return Err(Error::parse(FORMAT, line_no, 1, "expected `p xnf <vars> <constraints>`"));
                }
                let n = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(FORMAT, line_no, col_of(fields[1]), "bad variable count"))?;
                let m = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(FORMAT, line_no, col_of(fields[2]), "bad constraint count"))?;
                out.declared_vars = Some(n);
                declared = Some(m);
            }
            "x" => {
                let mut lits = Vec::new();
                let mut terminated = false;
                for tok in tokens {
                    if terminated {
                        return Err(Error::parse(FORMAT, line_no, col_of(tok), "text after terminating 0"));
                    }
                    let v: i32 = tok
                        .parse()
                        .map_err(|_| Error::parse(FORMAT, line_no, col_of(tok), format!("unexpected token `{tok}`")))?;
                    if v == 0 {
                        terminated = true;
                        continue;
                    }
                    if let Some(n) = out.declared_vars {
                        if v.unsigned_abs() as usize > n {
                            return Err(Error::parse(
                                FORMAT,
                                line_no,
                                col_of(tok),
                                format!("variable {} exceeds declared count {n}", v.unsigned_abs()),
                            ));
                        }
                    }
                    lits.push(Lit::from_dimacs(v)?);
                }
                if !terminated {
                    return Err(Error::parse(FORMAT, line_no, raw.len() + 1, "constraint not terminated by 0"));
                }
                out.system.insert(XorConstraint::from_lits(lits, convention.rhs()));
                count += 1;
            }
            _ => {
                return Err(Error::parse(
                    FORMAT,
                    line_no,
                    col_of(head),
                    format!("expected `c`, `p` or `x`, found `{head}`"),
                ))
            }
        }
    }
    if let Some(m) = declared {
        if m != count {
            return Err(Error::parse(
                FORMAT,
                text.lines().count().max(1),
                1,
                format!("header declares {m} constraints, found {count}"),
            ));
        }
    }
    Ok(out)
}

/// Renders S. Under the XOR-clause convention rhs 0 is written with all
/// literals positive and rhs 1 with the smallest variable negated; the
/// inconsistent constraint has no XOR-clause and is rejected.
pub fn write(s: &XorSystem, comments: &[String], convention: Convention) -> Result<String> {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let n = s.max_var().map_or(0, |v| v.index());
    let _ = writeln!(out, "p xnf {n} {}", s.len());
    for c in s {
        out.push('x');
        // flip the first literal when the constraint's rhs differs from
        // the convention's
        let flip = c.rhs() != convention.rhs();
        if flip && c.is_empty() {
            return Err(Error::InconsistentConstraint(c.clone()));
        }
        for (i, v) in c.vars().iter().enumerate() {
            let lit = Lit::new(*v, !(i == 0 && flip));
            let _ = write!(out, " {lit}");
        }
        out.push_str(" 0\n");
    }
    Ok(out)
}
