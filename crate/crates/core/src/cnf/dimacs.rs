//! DIMACS CNF reading and writing.
//!
//! The reader keeps comment lines so that provenance written by the
//! translations (`c aux ...`) survives a round trip.

use std::fmt::Write as _;

use super::{Clause, ClauseSet, Lit};
use crate::error::{Error, Result};

const FORMAT: &str = "DIMACS";

/// A parsed DIMACS file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dimacs {
    /// Comment lines without the leading `c` and one following space.
    pub comments: Vec<String>,
    /// Variable count from the header, if there was one.
    pub declared_vars: Option<usize>,
    pub clauses: ClauseSet,
}

pub fn parse(text: &str) -> Result<Dimacs> {
    let mut out = Dimacs::default();
    let mut declared_clauses = None;
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;
    let mut read_clauses = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                out.comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
                continue;
            }
        }
        if line.starts_with('p') {
            if out.declared_vars.is_some() {
                return Err(Error::parse(FORMAT, line_no, 1, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse(FORMAT, line_no, 1, "expected `p cnf <vars> <clauses>`"));
            }
            let n = fields[2]
                .parse::<usize>()
                .map_err(|_| Error::parse(FORMAT, line_no, column_of(raw, fields[2]), "bad variable count"))?;
            let m = fields[3]
                .parse::<usize>()
                .map_err(|_| Error::parse(FORMAT, line_no, column_of(raw, fields[3]), "bad clause count"))?;
            out.declared_vars = Some(n);
            declared_clauses = Some(m);
            continue;
        }
        for token in line.split_whitespace() {
            let col = column_of(raw, token);
            let value: i64 =
                token.parse().map_err(|_| Error::parse(FORMAT, line_no, col, format!("unexpected token `{token}`")))?;
            if value == 0 {
                let clause = Clause::new(current.drain(..))
                    .map_err(|e| Error::parse(FORMAT, current_line.max(1), 1, e.to_string()))?;
                out.clauses.insert(clause);
                read_clauses += 1;
                continue;
            }
            let value = i32::try_from(value).map_err(|_| Error::parse(FORMAT, line_no, col, "literal out of range"))?;
            if let Some(n) = out.declared_vars {
                if value.unsigned_abs() as usize > n {
                    return Err(Error::parse(
                        FORMAT,
                        line_no,
                        col,
                        format!("variable {} exceeds declared count {n}", value.unsigned_abs()),
                    ));
                }
            }
            if current.is_empty() {
                current_line = line_no;
            }
            current.push(Lit::from_dimacs(value)?);
        }
    }
    if !current.is_empty() {
        return Err(Error::parse(FORMAT, current_line, 1, "clause not terminated by 0"));
    }
    if let Some(m) = declared_clauses {
        if m != read_clauses {
            return Err(Error::parse(
                FORMAT,
                text.lines().count().max(1),
                1,
                format!("header declares {m} clauses, found {read_clauses}"),
            ));
        }
    }
    Ok(out)
}

fn column_of(line: &str, token: &str) -> usize {
    // `token` is a subslice of `line`
    (token.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

/// Renders F in DIMACS with the given comment lines first. The header's
/// variable count is `num_vars` or, if absent, the largest variable in F.
pub fn write(f: &ClauseSet, comments: &[String], num_vars: Option<usize>) -> String {
    let mut s = String::new();
    for c in comments {
        if c.is_empty() {
            s.push_str("c\n");
        } else {
            let _ = writeln!(s, "c {c}");
        }
    }
    let n = num_vars.unwrap_or_else(|| f.max_var().map_or(0, |v| v.index() as usize));
    let _ = writeln!(s, "p cnf {n} {}", f.len());
    for c in f {
        for l in c.lits() {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}
