use alloc::vec::Vec;

use num_traits::Signed;

use crate::ball::{check_dims, RationalPoint};
use crate::linalg::{affinely_independent, AffineFlat};
use crate::rational::{pow2, Rational};
use crate::{Error, Result};

/// Finest perturbation grid tried, relative to `ε`.
const MAX_REFINEMENTS: i64 = 12;

/// Moves each point by less than `ε` (max-metric, staying in the unit cube)
/// so that every `≤ m+1` of them are affinely independent and the affine
/// span of any `≤ span_size` of them misses every flat in `avoid`.
///
/// Points are placed greedily in order. For each one, offsets on the grid
/// `ε 2^{-k-1} ℤ^m` are scanned by increasing max-norm and then
/// lexicographically, refining `k` until a candidate fits.
pub fn general_position(
    points: &[RationalPoint],
    eps: &Rational,
    avoid: &[AffineFlat],
    span_size: usize,
    budget: u64,
) -> Result<Vec<RationalPoint>> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("ε must be positive".into()));
    }
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let m = first.dim();
    for p in points {
        check_dims(m, p.dim())?;
    }
    for f in avoid {
        check_dims(m, f.ambient_dim())?;
    }
    let mut spent = 0u64;
    let mut placed: Vec<RationalPoint> = Vec::with_capacity(points.len());
    'next_point: for p in points {
        for k in 0..MAX_REFINEMENTS {
            let step = eps * pow2(-(k + 1));
            let reach = (1i64 << (k + 1)) - 1;
            for offset in offsets(m, reach) {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let coords: Vec<Rational> = p
                    .coords()
                    .iter()
                    .zip(&offset)
                    .map(|(c, &o)| c + &step * Rational::from_integer(o.into()))
                    .collect();
                let cand = RationalPoint::new(coords)?;
                if !cand.in_unit_cube() {
                    continue;
                }
                if fits(&placed, &cand, m, avoid, span_size) {
                    placed.push(cand);
                    continue 'next_point;
                }
            }
        }
        return Err(Error::SearchExhausted("no general-position offset found".into()));
    }
    Ok(placed)
}

/// Integer vectors in `[-reach, reach]^m` by max-norm, then lexicographic.
fn offsets(m: usize, reach: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..=reach).flat_map(move |norm| {
        let side = (2 * norm + 1) as u64;
        let total = side.pow(m as u32);
        (0..total).filter_map(move |mut idx| {
            let mut v = alloc::vec![0i64; m];
            for slot in v.iter_mut().rev() {
                *slot = (idx % side) as i64 - norm;
                idx /= side;
            }
            (v.iter().map(|x| x.abs()).max() == Some(norm)).then_some(v)
        })
    })
}

fn fits(placed: &[RationalPoint], cand: &RationalPoint, m: usize, avoid: &[AffineFlat], span_size: usize) -> bool {
    let limit = (m + 1).max(span_size);
    let others = placed.len().min(limit.saturating_sub(1));
    // every subset of already placed points, joined with the candidate
    let mut chosen: Vec<&RationalPoint> = Vec::with_capacity(limit);
    fn walk<'a>(
        placed: &'a [RationalPoint],
        start: usize,
        left: usize,
        chosen: &mut Vec<&'a RationalPoint>,
        check: &mut dyn FnMut(&[&'a RationalPoint]) -> bool,
    ) -> bool {
        if !check(chosen) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for i in start..placed.len() {
            chosen.push(&placed[i]);
            let ok = walk(placed, i + 1, left - 1, chosen, check);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut check = |subset: &[&RationalPoint]| {
        let mut pts: Vec<&RationalPoint> = subset.to_vec();
        pts.push(cand);
        if pts.len() <= m + 1 && !affinely_independent(&pts) {
            return false;
        }
        if pts.len() <= span_size {
            let span = AffineFlat::span(&pts);
            if avoid.iter().any(|f| span.intersects(f)) {
                return false;
            }
        }
        true
    };
    walk(placed, 0, others, &mut chosen, &mut check)
}
