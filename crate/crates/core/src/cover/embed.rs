use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{cover_multiplicity, general_position, kappa_map, nerve_of, FiniteCover};
use crate::ball::RationalPoint;
use crate::dimension::PointCloud;
use crate::linalg::AffineFlat;
use crate::rational::{pow2, Rational};
use crate::{Error, Result};

/// Every recorded pair satisfies `d(g x, g y) < η ⇒ d(x, y) < ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsEtaCertificate {
    pub eps: Rational,
    pub eta: Rational,
    pub pairs_checked: usize,
    /// Smallest image distance among pairs with `d(x, y) ≥ ε`.
    pub tightest_gap: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsEtaOutcome {
    Certified(EpsEtaCertificate),
    /// Indices of a pair with close images and distant sources.
    Violated { first: usize, second: usize },
}

impl EpsEtaOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, EpsEtaOutcome::Certified(_))
    }
}

/// Exhaustive pair check of the `(ε;η)` condition on `(x, g(x))` samples.
pub fn verify_eps_eta(pairs: &[(RationalPoint, RationalPoint)], eps: &Rational, eta: &Rational) -> EpsEtaOutcome {
    let mut tightest: Option<Rational> = None;
    let mut checked = 0;
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            checked += 1;
            let src = pairs[i].0.dist_unchecked(&pairs[j].0);
            if src < *eps {
                continue;
            }
            let img = pairs[i].1.dist_unchecked(&pairs[j].1);
            if img < *eta {
                return EpsEtaOutcome::Violated { first: i, second: j };
            }
            if tightest.as_ref().is_none_or(|t| img < *t) {
                tightest = Some(img);
            }
        }
    }
    EpsEtaOutcome::Certified(EpsEtaCertificate {
        eps: eps.clone(),
        eta: eta.clone(),
        pairs_checked: checked,
        tightest_gap: tightest,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedReport {
    /// Target dimension `2n + 1` for covers of multiplicity `n + 1`.
    pub target_dim: usize,
    pub vertices: Vec<RationalPoint>,
    pub images: Vec<RationalPoint>,
    /// `η = 2^{-v}`.
    pub v: u32,
    pub outcome: EpsEtaOutcome,
}

/// One approximation step: place the nerve vertices near the current map in
/// general position, map the sample through κ, and certify it as a
/// `(2^{-i}; 2^{-v})`-mapping.
///
/// The current map is the inclusion of the sample, padded with zero
/// coordinates up to the target dimension. Vertex `k` starts at the first
/// sample point inside `U_k` and moves by less than `2^{-j-1}`, so the
/// κ-image stays within `2^{-j}` of the sample whenever the cover's mesh on
/// the carrier is below `2^{-j-1}`.
pub fn embed_step(
    sample: &PointCloud,
    u: &FiniteCover,
    avoid: &[AffineFlat],
    i: u32,
    j: u32,
    budget: u64,
) -> Result<EmbedReport> {
    let n = cover_multiplicity(u)?.saturating_sub(1);
    let q = 2 * n + 1;
    if sample.dim() > q {
        return Err(Error::Precondition(alloc::format!(
            "sample dimension {} exceeds target dimension {q}",
            sample.dim()
        )));
    }
    let half_step = pow2(-i64::from(j) - 1);
    if u.mesh() >= half_step {
        return Err(Error::Precondition(alloc::format!("cover mesh too coarse for 2^-{j}")));
    }
    let lift = |x: &RationalPoint| {
        let mut c = x.coords().to_vec();
        c.resize(q, Rational::zero());
        RationalPoint::new(c).expect("q is positive")
    };
    let mut starts = Vec::with_capacity(u.len());
    for m in u.members() {
        let inside = u
            .carrier()
            .samples()
            .iter()
            .find(|x| m.contains(x))
            .or_else(|| sample.points().iter().find(|x| m.contains(x)))
            .map(&lift)
            .unwrap_or_else(|| lift(m.balls()[0].center()));
        starts.push(inside);
    }
    let vertices = general_position(&starts, &half_step, avoid, n + 1, budget)?;
    let images = sample
        .points()
        .iter()
        .map(|x| kappa_map(x, u, &vertices))
        .collect::<Result<Vec<_>>>()?;

    let nerve = nerve_of(u)?;
    let faces: Vec<&Vec<usize>> = nerve.faces.iter().collect();
    let mut min_sq: Option<Rational> = None;
    for (a, fa) in faces.iter().enumerate() {
        for fb in &faces[a + 1..] {
            if fa.iter().any(|v| fb.contains(v)) {
                continue;
            }
            let sa: Vec<&RationalPoint> = fa.iter().map(|&k| &vertices[k]).collect();
            let sb: Vec<&RationalPoint> = fb.iter().map(|&k| &vertices[k]).collect();
            let d2 = AffineFlat::span(&sa).sq_distance(&AffineFlat::span(&sb));
            if min_sq.as_ref().is_none_or(|m| d2 < *m) {
                min_sq = Some(d2);
            }
        }
    }
    // ‖·‖∞ ≥ ‖·‖₂ / √q, so 2^{-v} ≤ √(d2 / q) bounds the max-metric gap
    let v = match &min_sq {
        None => 0,
        Some(d2) if d2.is_zero() => {
            return Err(Error::Precondition("vertex spans of disjoint faces meet".into()));
        }
        Some(d2) => {
            let target = d2 / Rational::from_integer(BigInt::from(q));
            let mut v = 0u32;
            while pow2(-2 * i64::from(v)) > target {
                v += 1;
            }
            v
        }
    };
    let eta = pow2(-i64::from(v));
    let pairs: Vec<(RationalPoint, RationalPoint)> = sample
        .points()
        .iter()
        .cloned()
        .zip(images.iter().cloned())
        .collect();
    let outcome = verify_eps_eta(&pairs, &pow2(-i64::from(i)), &eta);
    Ok(EmbedReport { target_dim: q, vertices, images, v, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{interval, Carrier};
    use crate::dimension::DigitSet;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn cantor_cover(depth: usize) -> (PointCloud, FiniteCover) {
        let set = DigitSet::cantor();
        let carrier = Carrier::digits(&set, depth);
        let side = set.side(depth);
        let half = &side / int(2);
        let members = set
            .cells(depth)
            .into_iter()
            .map(|k| interval(Rational::from_integer(k[0].clone()) * &side + &half, &half + &side / int(4)).unwrap())
            .collect();
        let cloud = PointCloud::new(1, carrier.samples().to_vec(), "cantor").unwrap();
        (cloud, FiniteCover::new(members, carrier).unwrap())
    }

    #[test]
    fn identity_and_constant_maps() {
        let pts: Vec<RationalPoint> = (0..5).map(|k| RationalPoint::scalar(ratio(k, 4))).collect();
        let id: Vec<_> = pts.iter().map(|p| (p.clone(), p.clone())).collect();
        assert!(verify_eps_eta(&id, &ratio(1, 4), &ratio(1, 4)).is_certified());
        let constant: Vec<_> = pts.iter().map(|p| (p.clone(), RationalPoint::scalar(int(0)))).collect();
        assert_eq!(
            verify_eps_eta(&constant, &ratio(1, 4), &ratio(1, 8)),
            EpsEtaOutcome::Violated { first: 0, second: 1 }
        );
    }

    #[test]
    fn cantor_step_avoids_a_half() {
        let (cloud, cover) = cantor_cover(2);
        let avoid = [AffineFlat::point(&RationalPoint::scalar(ratio(1, 2)))];
        let r = embed_step(&cloud, &cover, &avoid, 3, 2, 1_000_000).unwrap();
        assert_eq!(r.target_dim, 1);
        for img in &r.images {
            assert_ne!(img.coords()[0], ratio(1, 2));
        }
        for (x, y) in cloud.points().iter().zip(&r.images) {
            assert!(x.dist_unchecked(y) < ratio(1, 4));
        }
        assert!(r.outcome.is_certified());
    }

    #[test]
    fn single_point_sample() {
        let cloud = PointCloud::new(1, vec![RationalPoint::scalar(ratio(1, 3))], "").unwrap();
        let carrier = Carrier::cloud(&cloud, ratio(1, 8)).unwrap();
        let cover = FiniteCover::new(vec![interval(ratio(1, 3), ratio(1, 16)).unwrap()], carrier).unwrap();
        let r = embed_step(&cloud, &cover, &[], 4, 4, 1000).unwrap();
        assert_eq!(r.v, 0);
        assert!(r.outcome.is_certified());
    }

    #[test]
    fn coarse_mesh_is_a_precondition_error() {
        let (cloud, cover) = cantor_cover(2);
        assert!(matches!(embed_step(&cloud, &cover, &[], 3, 4, 1000), Err(Error::Precondition(_))));
    }
}
