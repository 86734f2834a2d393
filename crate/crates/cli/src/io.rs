//! Reading inputs and writing outputs.

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use xorcnf_core::cnf::dimacs::{self, Dimacs};
use xorcnf_core::xor::xnf::{self, Convention, Xnf};
use xorcnf_core::Var;

/// The file's contents, or stdin for `None` and `-`.
pub fn read(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

/// Writes to the file, or stdout for `None` and `-`.
pub fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn convention(parity: bool) -> Convention {
    if parity {
        Convention::Parity
    } else {
        Convention::XorClause
    }
}

pub fn xnf(path: Option<&Path>, parity: bool) -> Result<Xnf> {
    Ok(xnf::parse(&read(path)?, convention(parity))?)
}

pub fn dimacs(path: Option<&Path>) -> Result<Dimacs> {
    Ok(dimacs::parse(&read(path)?)?)
}

/// XNF files have a `p xnf` header or `x` constraint lines.
pub fn looks_like_xnf(text: &str) -> bool {
    text.lines().map(str::trim_start).any(|l| l.starts_with("p xnf") || l.starts_with("x ") || l == "x")
}

/// Variables declared auxiliary by `c aux <var> := ...` comments.
pub fn aux_vars(d: &Dimacs) -> Result<BTreeSet<Var>> {
    let mut out = BTreeSet::new();
    for c in &d.comments {
        let mut toks = c.split_whitespace();
        if toks.next() == Some("aux") {
            let tok = toks.next().unwrap_or_default();
            let index: u32 = tok.parse().with_context(|| format!("bad aux comment `{c}`"))?;
            out.insert(Var::try_new(index)?);
        }
    }
    Ok(out)
}
