//! Formal balls of a computable metric space restricted to `[0,1]^dim`
//! under the max-metric.
//!
//! A name prefix `σ` induces the ball of radius `2^{-|σ|+1}` around the
//! dense point indexed by its last entry. Inclusion and disjointness between
//! such balls are decided by exact rational comparisons.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow2, Rational};
use crate::{Error, Result};

/// A point of `ℚ^dim` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        Ok(Self { coords })
    }

    /// One-dimensional point.
    pub fn scalar(x: Rational) -> Self {
        Self { coords: alloc::vec![x] }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: alloc::vec![Rational::zero(); dim.max(1)] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn in_unit_cube(&self) -> bool {
        self.coords
            .iter()
            .all(|c| !c.is_negative() && *c <= Rational::one())
    }

    /// Max-metric distance.
    pub fn dist(&self, other: &Self) -> Result<Rational> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.dist_unchecked(other))
    }

    pub(crate) fn dist_unchecked(&self, other: &Self) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Index → dense point rule of a space.
pub enum DenseRule {
    /// Dyadic grid points of `[0,1]^dim`, level by level: all points with
    /// denominator `2^0`, then `2^1`, and so on.
    DyadicGrid,
    /// A finite table, read cyclically so the enumeration stays total.
    Table(Vec<RationalPoint>),
    Custom(Box<dyn Fn(u64) -> RationalPoint + Send + Sync>),
}

/// A computable metric space `([0,1]^dim, max-metric, α)`.
pub struct SpaceDescriptor {
    dim: usize,
    rule: DenseRule,
}

impl SpaceDescriptor {
    pub fn new(dim: usize, rule: DenseRule) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if let DenseRule::Table(t) = &rule {
            if t.is_empty() {
                return Err(Error::InvalidArgument("empty dense table".into()));
            }
            for p in t {
                check_dims(dim, p.dim())?;
                if !p.in_unit_cube() {
                    return Err(Error::InvalidArgument("dense point outside the unit cube".into()));
                }
            }
        }
        Ok(Self { dim, rule })
    }

    pub fn dyadic(dim: usize) -> Result<Self> {
        Self::new(dim, DenseRule::DyadicGrid)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The dense point `α_index`.
    pub fn point(&self, index: u64) -> RationalPoint {
        match &self.rule {
            DenseRule::DyadicGrid => dyadic_grid_point(self.dim, index),
            DenseRule::Table(t) => t[(index % t.len() as u64) as usize].clone(),
            DenseRule::Custom(f) => f(index),
        }
    }
}

fn dyadic_grid_point(dim: usize, index: u64) -> RationalPoint {
    let mut rest = index as u128;
    let mut level = 0u32;
    loop {
        let side = (1u128 << level) + 1;
        let count = side.checked_pow(dim as u32).unwrap_or(u128::MAX);
        if rest < count {
            let denom = BigInt::one() << level;
            let coords = (0..dim)
                .map(|_| {
                    let k = rest % side;
                    rest /= side;
                    Rational::new(BigInt::from(k), denom.clone())
                })
                .collect();
            return RationalPoint { coords };
        }
        rest -= count;
        level += 1;
    }
}

/// Open max-metric ball with exact center and positive radius.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalBall {
    center: RationalPoint,
    radius: Rational,
}

impl fmt::Debug for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({:?}; {})", self.center, self.radius)
    }
}

impl FormalBall {
    pub fn new(center: RationalPoint, radius: Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidArgument("ball radius must be positive".into()));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &RationalPoint {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        x.dim() == self.dim()
            && self
                .center
                .coords
                .iter()
                .zip(&x.coords)
                .all(|(c, y)| (c - y).abs() < self.radius)
    }
}

/// Outcome of comparing two formal balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    IncludedIn,
    Disjoint,
    Neither,
}

/// Formal inclusion `d(c_a, c_b) + r_a < r_b`, else formal disjointness
/// `d(c_a, c_b) > r_a + r_b`, else neither.
pub fn formal_relation(a: &FormalBall, b: &FormalBall) -> Result<Relation> {
    let d = a.center.dist(&b.center)?;
    Ok(if &d + &a.radius < b.radius {
        Relation::IncludedIn
    } else if d > &a.radius + &b.radius {
        Relation::Disjoint
    } else {
        Relation::Neither
    })
}

/// A finite sequence of dense-set indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NamePrefix {
    pub indices: Vec<u64>,
}

impl NamePrefix {
    pub fn new(indices: Vec<u64>) -> Self {
        Self { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self { indices: self.indices[..len.min(self.len())].to_vec() }
    }
}

/// `B_σ = B_{2^{-|σ|+1}}(α_{σ(|σ|-1)})`.
pub fn ball_of_prefix(prefix: &NamePrefix, space: &SpaceDescriptor) -> Result<FormalBall> {
    let last = *prefix.indices.last().ok_or(Error::DegeneratePrefix)?;
    let radius = pow2(1 - prefix.len() as i64);
    FormalBall::new(space.point(last), radius)
}

/// Checks `d(α_{σ(n)}, α_{σ(m)}) < 2^{-n}` for all `n < m < |σ|`.
pub fn validate_prefix(prefix: &NamePrefix, space: &SpaceDescriptor) -> bool {
    let points: Vec<RationalPoint> = prefix.indices.iter().map(|&i| space.point(i)).collect();
    points.iter().enumerate().all(|(n, p)| {
        let bound = pow2(-(n as i64));
        points[n + 1..].iter().all(|q| p.dist_unchecked(q) < bound)
    })
}
