//! Parsing of option values; every failure is a usage error.

use dynpoisson::{Algebra, Normalization, RootSystem, C64};

use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: dynpoisson::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", e.kind()))
}

pub fn root_system(designator: &str) -> Result<RootSystem> {
    RootSystem::from_designator(designator).map_err(usage)
}

pub fn algebra(rs: &RootSystem) -> Result<Algebra> {
    Algebra::new(rs, Normalization::Unitary).map_err(usage)
}

/// Simple root names in the order given; duplicates are rejected.
pub fn names(rs: &RootSystem, s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let idx = rs.parse_simple_names(part).map_err(usage)?[0];
        if out.contains(&idx) {
            return Err(CliError::Usage(format!("simple root {part} listed twice")));
        }
        out.push(idx);
    }
    Ok(out)
}

/// A word in simple reflections; repeats allowed.
pub fn word(rs: &RootSystem, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| rs.parse_simple_names(p).map(|v| v[0]).map_err(usage))
        .collect()
}

pub fn reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("not a real number: {p}")))
        })
        .collect()
}

pub fn complexes(s: &str) -> Result<Vec<C64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(complex)
        .collect()
}

/// Parses `x`, `yi`, `x+yi`, `x-yi`, `i`, `-i`.
pub fn complex(s: &str) -> Result<C64> {
    let bad = || CliError::Usage(format!("not a complex number: {s}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => p
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(bad),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        let re = t
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad)?;
        return Ok(C64::new(re, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let split = body
        .char_indices()
        .filter(|&(k, c)| {
            (c == '+' || c == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
        })
        .map(|(k, _)| k)
        .next_back();
    match split {
        Some(k) => {
            let re = body[..k]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(bad)?;
            Ok(C64::new(re, num(&body[k..])?))
        }
        None => Ok(C64::new(0.0, num(body)?)),
    }
}
