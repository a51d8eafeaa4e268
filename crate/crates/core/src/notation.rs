//! Textual class expressions.
//!
//! Two forms are accepted:
//! - a flat list `d m1 m2 ...`, separated by spaces or commas and optionally
//!   wrapped in brackets, e.g. `[4, 3, 3, 3, 3]`;
//! - exponent notation `Ln(d; m1^a1, m2^a2, ...)`, e.g. `L3(19;9^9)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty class expression")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("malformed exponent notation `{0}`")]
    BadNotation(String),
    #[error("ambient dimension {notation} in the expression conflicts with --n {flag}")]
    DimensionConflict { notation: usize, flag: usize },
    #[error("ambient dimension missing: pass --n or use Ln(...) notation")]
    MissingDimension,
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassExpression {
    Flat(Vec<BigInt>),
    Exponent {
        ambient_dim: usize,
        degree: BigInt,
        groups: Vec<(BigInt, usize)>,
    },
}

fn parse_int(s: &str) -> Result<BigInt, ParseError> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    t.parse().map_err(|_| ParseError::BadInteger(s.trim().to_string()))
}

impl FromStr for ClassExpression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        if let Some(rest) = s.strip_prefix('L') {
            let bad = || ParseError::BadNotation(s.to_string());
            let open = rest.find('(').ok_or_else(bad)?;
            let ambient_dim: usize = rest[..open].trim().parse().map_err(|_| bad())?;
            let body = rest[open + 1..].trim_end().strip_suffix(')').ok_or_else(bad)?;
            let (degree, tail) = match body.split_once(';') {
                Some((d, t)) => (d, t),
                None => (body, ""),
            };
            let degree = parse_int(degree)?;
            let mut groups = Vec::new();
            for item in tail.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let group = match item.rsplit_once('^') {
                    Some((m, a)) => (parse_int(m)?, a.trim().parse().map_err(|_| bad())?),
                    None => (parse_int(item)?, 1),
                };
                groups.push(group);
            }
            return Ok(ClassExpression::Exponent {
                ambient_dim,
                degree,
                groups,
            });
        }
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .map(parse_int)
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(ClassExpression::Flat(values))
    }
}

impl ClassExpression {
    /// Joins command-line tokens and parses them.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, ParseError> {
        let joined = tokens.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
        joined.parse()
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        match self {
            ClassExpression::Flat(_) => None,
            ClassExpression::Exponent { ambient_dim, .. } => Some(*ambient_dim),
        }
    }

    /// Expands exponents; `flag` is the `--n` value, if any.
    pub fn to_class(&self, flag: Option<usize>) -> Result<DivisorClass, ParseError> {
        let n = match (self.ambient_dim(), flag) {
            (Some(a), Some(b)) if a != b => return Err(ParseError::DimensionConflict { notation: a, flag: b }),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(ParseError::MissingDimension),
        };
        let (degree, mults) = match self {
            ClassExpression::Flat(values) => (values[0].clone(), values[1..].to_vec()),
            ClassExpression::Exponent { degree, groups, .. } => (
                degree.clone(),
                groups
                    .iter()
                    .flat_map(|(m, a)| std::iter::repeat_n(m.clone(), *a))
                    .collect(),
            ),
        };
        DivisorClass::new(n, degree, mults).map_err(|_| ParseError::BadDimension(n))
    }
}

/// Parses a class, taking the ambient dimension from the notation or the flag.
pub fn parse_class(text: &str, flag: Option<usize>) -> Result<DivisorClass, ParseError> {
    text.parse::<ClassExpression>()?.to_class(flag)
}

/// Exponent notation with runs of equal multiplicities grouped.
pub struct Notation<'a>(pub &'a DivisorClass);

impl fmt::Display for Notation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = self.0;
        write!(f, "L{}({}", class.ambient_dim(), class.degree())?;
        let mults = class.mults();
        let mut i = 0;
        let mut first = true;
        while i < mults.len() {
            let run = mults[i..].iter().take_while(|m| **m == mults[i]).count();
            f.write_str(if first { ";" } else { "," })?;
            first = false;
            if run == 1 {
                write!(f, "{}", mults[i])?;
            } else {
                write!(f, "{}^{}", mults[i], run)?;
            }
            i += run;
        }
        f.write_str(")")
    }
}
