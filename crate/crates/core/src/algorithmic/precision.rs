use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::bits::Bits;
use super::compressor::{compress_len, Compressor};
use crate::ball::RationalPoint;
use crate::fractal::DigitMatrix;
use crate::rational::{ceil_int, floor, Rational};
use crate::{Error, Result};

/// A point known exactly, or through digit prefixes of its coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrecisionPoint {
    Exact(RationalPoint),
    Digits(DigitMatrix),
}

impl PrecisionPoint {
    pub fn dim(&self) -> usize {
        match self {
            PrecisionPoint::Exact(p) => p.dim(),
            PrecisionPoint::Digits(d) => d.m(),
        }
    }

    fn interval(&self, axis: usize) -> (Rational, Rational) {
        match self {
            PrecisionPoint::Exact(p) => (p.coords()[axis].clone(), p.coords()[axis].clone()),
            PrecisionPoint::Digits(d) => d.row_interval(axis),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionQuery {
    pub point: PrecisionPoint,
    pub r: u32,
}

/// `[4-bit dim][1^r 0][each numerator in r+2 bits]` for the grid point
/// `numerators / 2^{r+1}`.
pub fn grid_encoding(numerators: &[BigUint], r: u32) -> Result<Bits> {
    let dim = numerators.len();
    if dim == 0 || dim > 15 {
        return Err(Error::InvalidArgument("grid encoding supports dimensions 1..=15".into()));
    }
    let width = r as u64 + 2;
    let mut out = Bits::new();
    out.push_uint(dim as u64, 4);
    for _ in 0..r {
        out.push(true);
    }
    out.push(false);
    for k in numerators {
        if k.bits() > width {
            return Err(Error::InvalidArgument("numerator exceeds the grid".into()));
        }
        for i in (0..width).rev() {
            out.push(k.bit(i));
        }
    }
    Ok(out)
}

/// Grid numerators near one coordinate, each flagged as surely or only
/// possibly within `2^{-r}`.
fn axis_candidates(lo: &Rational, hi: &Rational, r: u32) -> Vec<(BigUint, bool)> {
    let scale = Rational::from_integer(BigInt::one() << (r + 1));
    let two = Rational::from_integer(2.into());
    let l = lo * &scale;
    let h = hi * &scale;
    let top = BigInt::one() << (r + 1);
    let first: BigInt = floor(&(&l - &two)) + 1;
    let first = first.max(BigInt::zero());
    let last: BigInt = ceil_int(&(&h + &two)) - 1;
    let last = last.min(top);
    let mut out = Vec::new();
    let mut k = first;
    while k <= last {
        let kq = Rational::from_integer(k.clone());
        let sure = &kq - &two < l && h < &kq + &two;
        let possible = &kq - &two < h && l < &kq + &two;
        if possible {
            out.push((k.to_biguint().expect("nonnegative"), sure));
        }
        k += 1;
    }
    out
}

/// `C_{M,r}(x)`: least compressed length of a grid point of mesh
/// `2^{-(r+1)}` within `2^{-r}` of `x`.
pub fn precision_complexity(q: &PrecisionQuery, m: &dyn Compressor) -> Result<usize> {
    let dim = q.point.dim();
    let axes: Vec<Vec<(BigUint, bool)>> = (0..dim)
        .map(|a| {
            let (lo, hi) = q.point.interval(a);
            axis_candidates(&lo, &hi, q.r)
        })
        .collect();
    if axes.iter().any(Vec::is_empty) {
        return Err(Error::OutsideRange("point outside the unit cube".into()));
    }
    let mut best: Option<usize> = None;
    let mut best_undecided: Option<usize> = None;
    let mut idx = alloc::vec![0usize; dim];
    loop {
        let nums: Vec<BigUint> = idx.iter().zip(&axes).map(|(&i, ax)| ax[i].0.clone()).collect();
        let sure = idx.iter().zip(&axes).all(|(&i, ax)| ax[i].1);
        let c = compress_len(m, &grid_encoding(&nums, q.r)?)?;
        let slot = if sure { &mut best } else { &mut best_undecided };
        if slot.is_none_or(|b| c < b) {
            *slot = Some(c);
        }
        let mut a = 0;
        while a < dim {
            idx[a] += 1;
            if idx[a] < axes[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
        if a == dim {
            break;
        }
    }
    match (best, best_undecided) {
        (Some(b), Some(u)) if u < b => Err(Error::StreamTooShort(q.r)),
        (Some(b), _) => Ok(b),
        (None, _) => Err(Error::StreamTooShort(q.r)),
    }
}

/// Single-machine upper bounds on the Schnorr dimensions: extreme values of
/// `C_{M,r}(x) / r` over the upper half of the precision range.
#[derive(Debug, Clone, PartialEq)]
pub struct SchnorrEstimate {
    pub lower: f64,
    pub upper: f64,
    pub rows: Vec<(u32, usize)>,
}

pub fn schnorr_dims(x: &PrecisionPoint, m: &dyn Compressor, rs: &[u32]) -> Result<SchnorrEstimate> {
    if rs.is_empty() {
        return Err(Error::InvalidArgument("empty precision range".into()));
    }
    let rows = rs
        .iter()
        .map(|&r| Ok((r, precision_complexity(&PrecisionQuery { point: x.clone(), r }, m)?)))
        .collect::<Result<Vec<_>>>()?;
    let tail: Vec<f64> = rows[rows.len() / 2..]
        .iter()
        .filter(|(r, _)| *r > 0)
        .map(|&(r, c)| c as f64 / f64::from(r))
        .collect();
    if tail.is_empty() {
        return Err(Error::InvalidArgument("precision range needs a positive r".into()));
    }
    let lower = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(SchnorrEstimate { lower, upper, rows })
}
