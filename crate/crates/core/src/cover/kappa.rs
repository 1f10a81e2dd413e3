use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{complement_distance, FiniteCover};
use crate::ball::{check_dims, RationalPoint};
use crate::rational::Rational;
use crate::{Error, Result};

/// Normalized weights `d(x, X∖U_i) / Σ_j d(x, X∖U_j)`.
///
/// A member covering the whole cube has infinite distance to its
/// complement; the weight is then split evenly among such members.
pub fn kappa_weights(x: &RationalPoint, u: &FiniteCover) -> Result<Vec<Rational>> {
    check_dims(u.carrier().dim(), x.dim())?;
    let raw: Vec<Option<Rational>> = u
        .members()
        .iter()
        .map(|m| if m.contains(x) { complement_distance(x, m) } else { Some(Rational::zero()) })
        .collect();
    let unbounded = raw.iter().filter(|d| d.is_none()).count();
    if unbounded > 0 {
        let share = Rational::one() / Rational::from_integer(unbounded.into());
        return Ok(raw
            .iter()
            .map(|d| if d.is_none() { share.clone() } else { Rational::zero() })
            .collect());
    }
    let raw: Vec<Rational> = raw.into_iter().map(|d| d.expect("bounded")).collect();
    let total: Rational = raw.iter().sum();
    if total.is_zero() {
        return Err(Error::UncoveredPoint);
    }
    Ok(raw.into_iter().map(|d| d / &total).collect())
}

/// `κ(x) = Σ_i w_i(x) p_i`.
pub fn kappa_map(x: &RationalPoint, u: &FiniteCover, vertices: &[RationalPoint]) -> Result<RationalPoint> {
    if vertices.len() != u.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: vertices.len() });
    }
    let dim = vertices[0].dim();
    for v in vertices {
        check_dims(dim, v.dim())?;
    }
    let w = kappa_weights(x, u)?;
    let mut out = alloc::vec![Rational::zero(); dim];
    for (wi, p) in w.iter().zip(vertices) {
        if wi.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(p.coords()) {
            *o += wi * c;
        }
    }
    RationalPoint::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{interval, Carrier};
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn cover() -> FiniteCover {
        FiniteCover::new(
            vec![
                interval(int(0), ratio(3, 5)).unwrap(),
                interval(int(1), ratio(3, 5)).unwrap(),
            ],
            Carrier::grid(1, 6).unwrap(),
        )
        .unwrap()
    }

    fn verts() -> Vec<RationalPoint> {
        vec![
            RationalPoint::new(vec![int(0), int(0)]).unwrap(),
            RationalPoint::new(vec![int(1), int(0)]).unwrap(),
        ]
    }

    #[test]
    fn midpoint_splits_evenly() {
        let x = RationalPoint::scalar(ratio(1, 2));
        assert_eq!(kappa_weights(&x, &cover()).unwrap(), vec![ratio(1, 2), ratio(1, 2)]);
        let img = kappa_map(&x, &cover(), &verts()).unwrap();
        assert_eq!(img.coords(), &[ratio(1, 2), int(0)]);
    }

    #[test]
    fn single_support() {
        let x = RationalPoint::scalar(ratio(1, 5));
        assert_eq!(kappa_map(&x, &cover(), &verts()).unwrap(), verts()[0]);
    }

    #[test]
    fn uncovered_point() {
        let u = FiniteCover::new(
            vec![interval(int(0), ratio(2, 5)).unwrap(), interval(int(1), ratio(2, 5)).unwrap()],
            Carrier::digits(&crate::dimension::DigitSet::cantor(), 1),
        )
        .unwrap();
        let x = RationalPoint::scalar(ratio(1, 2));
        assert_eq!(kappa_weights(&x, &u), Err(Error::UncoveredPoint));
    }

    #[test]
    fn whole_space_member() {
        let u = FiniteCover::new(
            vec![interval(ratio(1, 2), int(1)).unwrap(), interval(int(0), ratio(1, 2)).unwrap()],
            Carrier::grid(1, 3).unwrap(),
        )
        .unwrap();
        let w = kappa_weights(&RationalPoint::scalar(ratio(1, 8)), &u).unwrap();
        assert_eq!(w, vec![int(1), int(0)]);
    }
}
