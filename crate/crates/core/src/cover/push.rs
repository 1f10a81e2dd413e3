use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::fractal::BoundSeq;
use crate::rational::{floor, Rational};
use crate::{Error, Result};

/// One level of the piecewise-linear push toward `M(z)`.
///
/// On every level-`level` interval `J = [a, a + w]` with centre `c`, the map
/// sends `[a, c - ε]` onto the first subinterval of width `w / z_level`,
/// `[c - ε, c + ε]` onto the middle run, and `[c + ε, a + w]` onto the last
/// subinterval. Each piece is affine with rational slope, the map is
/// strictly increasing and fixes the end points of every `J`.
pub fn menger_push_step(points: &[Rational], level: usize, z: &BoundSeq, eps: &Rational) -> Result<Vec<Rational>> {
    let cells = z.cells(level);
    let w = Rational::new(BigInt::one(), cells.clone());
    let half = &w / Rational::from_integer(2.into());
    if !eps.is_positive() || *eps >= half {
        return Err(Error::InvalidArgument("ε must lie in (0, w/2)".into()));
    }
    let sub = &w / Rational::from_integer(z.get(level).into());
    let last_cell: BigInt = &cells - 1;
    points
        .iter()
        .map(|x| {
            if x.is_negative() || *x > Rational::one() {
                return Err(Error::OutsideDomain);
            }
            let k = floor(&(x * Rational::from_integer(cells.clone()))).min(last_cell.clone());
            let a = Rational::from_integer(k) * &w;
            let c = &a + &half;
            let lo = &c - eps;
            let hi = &c + eps;
            let (x0, x1, y0, y1) = if *x <= lo {
                (a.clone(), lo, a.clone(), &a + &sub)
            } else if *x <= hi {
                (lo, hi, &a + &sub, &a + &w - &sub)
            } else {
                (hi, &a + &w, &a + &w - &sub, &a + &w)
            };
            let t = (x - &x0) / (&x1 - &x0);
            Ok(&y0 + t * (y1 - &y0))
        })
        .collect()
}
