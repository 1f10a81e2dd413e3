//! Point samplers for condensation-of-singularities spaces `S(E, K, t)`:
//! the graph of `x ↦ h(d(x, t)^{-1})` over `E ∖ {t}`, where `h` runs along
//! a polygonal path through anchors of `K` at heights `2^{-i}`, plus the
//! fiber `{t} × K × {0}`. Also the link/glue bookkeeping of chain
//! constructions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{RationalPoint, SpaceDescriptor};
use crate::dimension::PointCloud;
use crate::rational::{floor, pow2, Rational};
use crate::{Error, Result};

/// Anchors `a_i` of a dense sequence in `K ⊆ [0,1]^k`.
pub enum SegmentPath {
    /// The default dyadic enumeration of `[0,1]^k`.
    Dyadic(SpaceDescriptor),
    /// Explicit anchors, repeated cyclically.
    Table(Vec<RationalPoint>),
}

impl SegmentPath {
    pub fn dyadic(k: usize) -> Result<Self> {
        Ok(SegmentPath::Dyadic(SpaceDescriptor::dyadic(k)?))
    }

    pub fn table(anchors: Vec<RationalPoint>) -> Result<Self> {
        let first = anchors
            .first()
            .ok_or_else(|| Error::InvalidArgument("a path needs anchors".into()))?;
        for a in &anchors {
            crate::ball::check_dims(first.dim(), a.dim())?;
            if !a.in_unit_cube() {
                return Err(Error::InvalidArgument("anchors must lie in the unit cube".into()));
            }
        }
        Ok(SegmentPath::Table(anchors))
    }

    pub fn dim(&self) -> usize {
        match self {
            SegmentPath::Dyadic(s) => s.dim(),
            SegmentPath::Table(t) => t[0].dim(),
        }
    }

    pub fn anchor(&self, i: u64) -> RationalPoint {
        match self {
            SegmentPath::Dyadic(s) => s.point(i),
            SegmentPath::Table(t) => t[(i % t.len() as u64) as usize].clone(),
        }
    }

    /// `h(t)`: the point at fraction `t - ⌊t⌋` of the segment from
    /// `(a_i, 2^{-i})` to `(a_{i+1}, 2^{-(i+1)})`, `i = ⌊t⌋`.
    pub fn param(&self, t: &Rational) -> Result<(RationalPoint, Rational)> {
        if t.is_negative() {
            return Err(Error::InvalidArgument("path parameter must be nonnegative".into()));
        }
        let i = floor(t)
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument("path parameter too large".into()))?;
        let frac = t - Rational::from_integer(BigInt::from(i));
        let a = self.anchor(i);
        let b = self.anchor(i + 1);
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x + &frac * (y - x))
            .collect();
        let top = pow2(-(i as i64));
        // 2^{-i} + frac (2^{-(i+1)} - 2^{-i})
        let height = &top - &frac * &top / Rational::from_integer(2.into());
        Ok((RationalPoint::new(coords)?, height))
    }
}

/// A closed interval `E = [lo, hi] ⊆ [0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi || lo.is_negative() || hi > Rational::one() {
            return Err(Error::InvalidArgument("need 0 ≤ lo ≤ hi ≤ 1".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: Rational::zero(), hi: Rational::one() }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        *x >= self.lo && *x <= self.hi
    }
}

fn lift(y: &RationalPoint, t: &RationalPoint, path: &SegmentPath) -> Result<RationalPoint> {
    let d = y.dist_unchecked(t);
    if d.is_zero() {
        return Err(Error::SampleHitsSingularity);
    }
    let (k, height) = path.param(&d.recip())?;
    let mut coords = y.coords().to_vec();
    coords.extend(k.into_coords());
    coords.push(height);
    RationalPoint::new(coords)
}

/// Graph points `(x, h(d(x,t)^{-1}))` of `S(E, K, t)`, followed by the first
/// `fiber` anchors as points `(t, a_i, 0)`.
pub fn sample_s(e: &Interval, path: &SegmentPath, t: &Rational, xs: &[Rational], fiber: u64) -> Result<PointCloud> {
    if !e.contains(t) {
        return Err(Error::OutsideDomain);
    }
    let tp = RationalPoint::scalar(t.clone());
    let mut points = Vec::with_capacity(xs.len() + fiber as usize);
    for x in xs {
        if !e.contains(x) {
            return Err(Error::OutsideDomain);
        }
        points.push(lift(&RationalPoint::scalar(x.clone()), &tp, path)?);
    }
    for i in 0..fiber {
        let mut coords = alloc::vec![t.clone()];
        coords.extend(path.anchor(i).into_coords());
        coords.push(Rational::zero());
        points.push(RationalPoint::new(coords)?);
    }
    PointCloud::new(1 + path.dim() + 1, points, "condensation S(E,K,t)")
}

/// Images of `xs` in `E_stages`, where `E_{n+1} = S(E_n, K, q_n^*)` and
/// `q_n^*` is the image of `q_n` in `E_n`.
pub fn iterate_s(e: &Interval, path: &SegmentPath, q: &[Rational], stages: usize, xs: &[Rational]) -> Result<PointCloud> {
    if q.len() < stages {
        return Err(Error::InvalidArgument("Q prefix shorter than the number of stages".into()));
    }
    let used = &q[..stages];
    for (i, qi) in used.iter().enumerate() {
        if !e.contains(qi) {
            return Err(Error::OutsideDomain);
        }
        if used[..i].contains(qi) {
            return Err(Error::InvalidArgument("Q points must be distinct".into()));
        }
    }
    // q_n^* for n < stages
    let mut singular: Vec<RationalPoint> = Vec::with_capacity(stages);
    for n in 0..stages {
        let mut y = RationalPoint::scalar(used[n].clone());
        for s in &singular[..n] {
            y = lift(&y, s, path)?;
        }
        singular.push(y);
    }
    let mut points = Vec::with_capacity(xs.len());
    for x in xs {
        if !e.contains(x) {
            return Err(Error::OutsideDomain);
        }
        if used.contains(x) {
            return Err(Error::SampleHitsSingularity);
        }
        let mut y = RationalPoint::scalar(x.clone());
        for s in &singular {
            y = lift(&y, s, path)?;
        }
        points.push(y);
    }
    PointCloud::new(1 + stages * (path.dim() + 1), points, "condensation E_n")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStage {
    pub link_size: u64,
    pub link_count: u64,
}

/// The `a` point of one link identified with the `b` point of another,
/// each given as `(stage, link)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glue {
    pub a: (usize, u64),
    pub b: (usize, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainSpec {
    pub stages: Vec<ChainStage>,
    pub glue: Vec<Glue>,
}

impl ChainSpec {
    pub fn total_links(&self) -> u64 {
        self.stages.iter().map(|s| s.link_count).sum()
    }

    pub fn link_sizes(&self) -> BTreeSet<u64> {
        self.stages.iter().map(|s| s.link_size).collect()
    }
}

/// Stage `i` chains `κ(g(i))` links of size `g(i)`; consecutive links are
/// glued `a ↔ b`, and the last link of each stage to the first of the next.
/// `κ` defaults to `m ↦ 2^m`.
pub fn chain_descriptor(g: &[u64], kappa: Option<&[u64]>, stages: usize) -> Result<ChainSpec> {
    if g.len() < stages {
        return Err(Error::InvalidArgument("g has fewer values than stages".into()));
    }
    if g[..stages].windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("g must be strictly increasing".into()));
    }
    let mut spec = ChainSpec::default();
    for (i, &gi) in g[..stages].iter().enumerate() {
        let count = match kappa {
            Some(k) => *k
                .get(i)
                .ok_or_else(|| Error::InvalidArgument("κ has fewer values than stages".into()))?,
            None => 1u64
                .checked_shl(u32::try_from(gi).unwrap_or(u32::MAX))
                .filter(|_| gi < 64)
                .ok_or_else(|| Error::InvalidArgument("2^g(i) overflows".into()))?,
        };
        if count == 0 {
            return Err(Error::InvalidArgument("κ values must be positive".into()));
        }
        if i > 0 {
            let prev = spec.stages[i - 1].link_count;
            spec.glue.push(Glue { a: (i - 1, prev - 1), b: (i, 0) });
        }
        for l in 1..count {
            spec.glue.push(Glue { a: (i, l - 1), b: (i, l) });
        }
        spec.stages.push(ChainStage { link_size: gi, link_count: count });
    }
    Ok(spec)
}
