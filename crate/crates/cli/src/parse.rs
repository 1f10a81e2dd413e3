//! Flag-value syntax shared by the subcommands.

use std::ops::RangeInclusive;

use effdim_core::dimension::DigitSet;
use effdim_core::fractal::{BoundSeq, Tail};
use effdim_core::inverse_limit::PLMap;
use effdim_core::rational::{self, int, ratio};
use effdim_core::{Rational, RationalPoint};

use crate::error::{CliError, CliResult};

fn bad(what: &str, text: &str) -> CliError {
    CliError::Parse(format!("invalid {what}: {text:?}"))
}

pub fn rat(text: &str) -> CliResult<Rational> {
    Ok(rational::parse(text)?)
}

/// Comma-separated rationals.
pub fn rats(text: &str) -> CliResult<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(rat).collect()
}

/// Semicolon-separated points with comma-separated coordinates.
pub fn points(text: &str) -> CliResult<Vec<RationalPoint>> {
    text.split(';')
        .map(|p| Ok(RationalPoint::new(rats(p)?)?))
        .collect()
}

pub fn uints(text: &str) -> CliResult<Vec<u64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad("integer list", text)))
        .collect()
}

/// `a..b` (inclusive) or a single integer.
pub fn range(text: &str) -> CliResult<RangeInclusive<u64>> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad("range", text));
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.trim_start_matches('=');
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad("range", text));
            }
            Ok(a..=b)
        }
        None => {
            let a = num(text)?;
            Ok(a..=a)
        }
    }
}

/// `ternary`, `<c>`, `constant:<c>`, `affine:<offset>` or `table:<z0>,<z1>,…`.
pub fn bound_seq(text: &str) -> CliResult<BoundSeq> {
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    let seq = match kind.trim() {
        "ternary" => BoundSeq::ternary(),
        "constant" => BoundSeq::constant(arg.trim().parse().map_err(|_| bad("bound rule", text))?)?,
        "affine" => BoundSeq::affine(arg.trim().parse().map_err(|_| bad("bound rule", text))?)?,
        "table" => BoundSeq::table(uints(arg)?)?,
        other => BoundSeq::constant(other.parse().map_err(|_| bad("bound rule", text))?)?,
    };
    Ok(seq)
}

pub fn bound_seq_text(z: &BoundSeq) -> String {
    match z {
        BoundSeq::Constant(c) => format!("constant:{c}"),
        BoundSeq::Affine(o) => format!("affine:{o}"),
        BoundSeq::Table(t) => format!("table:{}", t.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    }
}

/// A digit row: one character per digit, `0-9` then `a-z`.
pub fn digit_row(text: &str) -> CliResult<Vec<u64>> {
    text.chars()
        .map(|c| c.to_digit(36).map(u64::from).ok_or_else(|| bad("digit row", text)))
        .collect()
}

pub fn digit_text(row: &[u64]) -> String {
    row.iter()
        .map(|&d| char::from_digit(d as u32, 36).unwrap_or('?'))
        .collect()
}

/// `unknown`, `zeros`, `maxes` or `periodic:<digits>`.
pub fn tail(text: &str) -> CliResult<Tail> {
    match text.trim() {
        "unknown" => Ok(Tail::Unknown),
        "zeros" => Ok(Tail::Zeros),
        "maxes" => Ok(Tail::Maxes),
        t => match t.strip_prefix("periodic:") {
            Some(block) if !block.is_empty() => Ok(Tail::Periodic(digit_row(block)?)),
            _ => Err(bad("tail", text)),
        },
    }
}

/// `cantor`, `carpet`, `sponge` or `menger:<m>,<n>` with a bound rule.
pub fn digit_set(name: &str, z: Option<&str>) -> CliResult<DigitSet> {
    let z = z.map(bound_seq).transpose()?;
    let fixed = |m: usize, n: usize| -> CliResult<DigitSet> {
        Ok(DigitSet::new(m, n, z.clone().unwrap_or_else(BoundSeq::ternary))?)
    };
    match name {
        "cantor" => fixed(1, 0),
        "carpet" => fixed(2, 1),
        "sponge" => fixed(3, 1),
        other => {
            let spec = other.strip_prefix("menger:").ok_or_else(|| bad("set", name))?;
            let mn = uints(spec)?;
            if mn.len() != 2 {
                return Err(bad("set", name));
            }
            fixed(mn[0] as usize, mn[1] as usize)
        }
    }
}

/// `tent`, `five` or a vertex list `x:y,x:y,…`.
pub fn pl_map(text: &str) -> CliResult<PLMap> {
    match text {
        "tent" => Ok(PLMap::tent()),
        "five" => Ok(PLMap::new(vec![
            (int(0), int(0)),
            (ratio(1, 5), ratio(1, 6)),
            (ratio(2, 5), ratio(4, 5)),
            (ratio(3, 5), ratio(1, 5)),
            (ratio(4, 5), ratio(5, 6)),
            (int(1), int(1)),
        ])?),
        vertices => {
            let pts = vertices
                .split(',')
                .map(|v| {
                    let (x, y) = v.split_once(':').ok_or_else(|| bad("map vertex", v))?;
                    Ok((rat(x)?, rat(y)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(PLMap::new(pts)?)
        }
    }
}

pub fn bits(text: &str) -> CliResult<effdim_core::algorithmic::Bits> {
    Ok(effdim_core::algorithmic::Bits::parse(text.trim())?)
}
