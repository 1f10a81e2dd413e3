use alloc::vec::Vec;

use num_traits::Zero;

use super::{complement_distance, FiniteCover, OpenSet};
use crate::ball::RationalPoint;
use crate::rational::{format_ratio, Rational};
use crate::{Error, Result};

/// `{x : d(x, X∖U) ≥ δ}` (closed) or `{x : d(x, X∖U) > δ}` (open).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub member: OpenSet,
    pub delta: Rational,
    pub closed: bool,
}

impl LevelSet {
    pub fn contains(&self, x: &RationalPoint) -> bool {
        if !self.member.contains(x) {
            return false;
        }
        match complement_distance(x, &self.member) {
            None => true,
            Some(d) if self.closed => d >= self.delta,
            Some(d) => d > self.delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shrinking {
    /// `min_x max_k d(x, X∖U_k)` over the carrier, `None` if unbounded.
    pub margin: Option<Rational>,
    pub delta: Rational,
    pub closed: Vec<LevelSet>,
    pub open: Vec<LevelSet>,
}

/// Closed shrinking `F` and open shrinking `V ⊆ F ⊆ U`, with `V` still
/// covering the carrier.
///
/// The margin is the Lebesgue-type depth `μ = min_x max_k d(x, X∖U_k)`
/// over the samples; it must exceed the carrier resolution, since below that
/// the samples cannot certify it. Both shrinkings use `δ = μ / 2`.
pub fn shrink_cover(u: &FiniteCover) -> Result<Shrinking> {
    let mut margin: Option<Rational> = None;
    let mut bounded = false;
    for x in u.carrier().samples() {
        let mut deepest: Option<Rational> = Some(Rational::zero());
        for m in u.members() {
            if !m.contains(x) {
                continue;
            }
            match complement_distance(x, m) {
                None => {
                    deepest = None;
                    break;
                }
                Some(d) => {
                    if deepest.as_ref().is_some_and(|b| d > *b) {
                        deepest = Some(d);
                    }
                }
            }
        }
        if let Some(d) = deepest {
            if !bounded || margin.as_ref().is_some_and(|m| d < *m) {
                margin = Some(d);
                bounded = true;
            }
        }
    }
    let delta = match &margin {
        None => u.carrier().resolution().clone(),
        Some(mu) => {
            if mu <= u.carrier().resolution() {
                return Err(Error::NoPositiveMargin(format_ratio(mu)));
            }
            mu / Rational::from_integer(2.into())
        }
    };
    let level = |closed| {
        u.members()
            .iter()
            .map(|m| LevelSet { member: m.clone(), delta: delta.clone(), closed })
            .collect()
    };
    Ok(Shrinking { margin, closed: level(true), open: level(false), delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{interval, Carrier};
    use crate::rational::{int, ratio};
    use alloc::vec;

    #[test]
    fn two_overlapping_intervals() {
        let u = FiniteCover::new(
            vec![interval(int(0), ratio(3, 5)).unwrap(), interval(int(1), ratio(3, 5)).unwrap()],
            Carrier::grid(1, 6).unwrap(),
        )
        .unwrap();
        let s = shrink_cover(&u).unwrap();
        assert_eq!(s.margin, Some(ratio(1, 10)));
        assert_eq!(s.delta, ratio(1, 20));
        let at = |q| RationalPoint::scalar(q);
        // F_0 = [0, 11/20], F_1 = [9/20, 1]
        assert!(s.closed[0].contains(&at(int(0))));
        assert!(s.closed[0].contains(&at(ratio(11, 20))));
        assert!(!s.closed[0].contains(&at(ratio(111, 200))));
        assert!(s.closed[1].contains(&at(ratio(9, 20))));
        assert!(!s.closed[1].contains(&at(ratio(89, 200))));
        assert!(!s.open[0].contains(&at(ratio(11, 20))));
        for x in u.carrier().samples() {
            assert!(s.open.iter().any(|v| v.contains(x)));
            for k in 0..2 {
                if s.open[k].contains(x) {
                    assert!(s.closed[k].contains(x));
                }
                if s.closed[k].contains(x) {
                    assert!(u.members()[k].contains(x));
                }
            }
        }
    }

    #[test]
    fn whole_space_member_is_kept() {
        let u = FiniteCover::new(vec![interval(ratio(1, 2), int(1)).unwrap()], Carrier::grid(1, 4).unwrap())
            .unwrap();
        let s = shrink_cover(&u).unwrap();
        assert_eq!(s.margin, None);
        assert!(u.carrier().samples().iter().all(|x| s.closed[0].contains(x)));
    }

    #[test]
    fn thin_overlap_has_no_margin() {
        // overlap of width 1/100, far below the grid resolution
        let u = FiniteCover::new(
            vec![interval(int(0), ratio(101, 200)).unwrap(), interval(int(1), ratio(101, 200)).unwrap()],
            Carrier::grid(1, 4).unwrap(),
        )
        .unwrap();
        assert!(matches!(shrink_cover(&u), Err(Error::NoPositiveMargin(_))));
    }
}
