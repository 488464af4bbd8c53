//! Text forms accepted by the command line.
//!
//! - multiplicity lists: `m1,...,mk`, `1 <= k <= 8`, entries nonnegative
//! - divisor classes: `d m1 ... m8` (whitespace separated; missing trailing
//!   entries are zero), meaning `dL - sum mi Ei`
//! - batches: one multiplicity list per line, `#` comments and blank lines
//!   ignored

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, POINTS};
use crate::resolution::FatPointScheme;

fn integer(token: &str) -> Result<i64> {
    token.trim().parse::<i64>().map_err(|_| Error::usage(format!("expected an integer, found {:?}", token.trim())))
}

/// `m1,...,mk` with `1 <= k <= 8` nonnegative entries.
pub fn parse_multiplicities(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::usage("empty multiplicity list"));
    }
    let mults = text.split(',').map(integer).collect::<Result<Vec<_>>>()?;
    if mults.len() > POINTS {
        return Err(Error::usage(format!("{} multiplicities given, at most {POINTS} allowed", mults.len())));
    }
    if let Some(m) = mults.iter().find(|&&m| m < 0) {
        return Err(Error::usage(format!("multiplicity {m} is negative")));
    }
    Ok(mults)
}

/// `d m1 ... mk` with `k <= 8`.
pub fn parse_divisor_class(text: &str) -> Result<DivisorClass> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let Some((d, m)) = tokens.split_first() else {
        return Err(Error::usage("empty divisor class"));
    };
    if m.len() > POINTS {
        return Err(Error::usage(format!("{} point coefficients given, at most {POINTS} allowed", m.len())));
    }
    let m = m.iter().map(|t| integer(t)).collect::<Result<Vec<_>>>()?;
    Ok(DivisorClass::padded(integer(d)?, &m))
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_divisor_class(s)
    }
}

impl FromStr for FatPointScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FatPointScheme::new(&parse_multiplicities(s)?)
    }
}

/// One multiplicity list per non-comment line, tagged with its 1-based line
/// number.
pub fn parse_batch(text: &str) -> Result<Vec<(usize, Vec<i64>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mults = parse_multiplicities(line).map_err(|e| match e {
            Error::Usage(msg) => Error::usage(format!("line {}: {msg}", i + 1)),
            other => other,
        })?;
        out.push((i + 1, mults));
    }
    Ok(out)
}
