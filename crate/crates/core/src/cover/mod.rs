//! Finite open covers of sampled compacta: multiplicity, nerves,
//! κ-mappings, shrinkings, low-multiplicity refinements, general-position
//! placement, `(ε;η)` certificates and single embedding steps.
//!
//! Members are finite unions of open max-metric balls. A cover lives over a
//! [`Carrier`], a finite set of sample points together with the resolution
//! at which they represent the underlying compactum. Every intersection test
//! is an exact test on the samples.

mod distance;
mod embed;
mod kappa;
mod position;
mod push;
mod refine;
mod shrink;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;


use crate::ball::{check_dims, FormalBall, RationalPoint};
use crate::dimension::{DigitSet, PointCloud};
use crate::rational::{pow2, Rational};
use crate::{Error, Result};

pub use distance::complement_distance;
pub use embed::{embed_step, verify_eps_eta, EmbedReport, EpsEtaCertificate, EpsEtaOutcome};
pub use kappa::{kappa_map, kappa_weights};
pub use position::general_position;
pub use push::menger_push_step;
pub use refine::{refine_cover, RefineConfig};
pub use shrink::{shrink_cover, LevelSet, Shrinking};

/// A finite union of open balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSet {
    balls: Vec<FormalBall>,
}

impl OpenSet {
    pub fn new(balls: Vec<FormalBall>) -> Result<Self> {
        let first = balls
            .first()
            .ok_or_else(|| Error::InvalidArgument("an open set needs at least one ball".into()))?;
        for b in &balls {
            check_dims(first.dim(), b.dim())?;
        }
        Ok(Self { balls })
    }

    pub fn ball(b: FormalBall) -> Self {
        Self { balls: alloc::vec![b] }
    }

    pub fn balls(&self) -> &[FormalBall] {
        &self.balls
    }

    pub fn dim(&self) -> usize {
        self.balls[0].dim()
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        self.balls.iter().any(|b| b.contains(x))
    }
}

/// Finite sample of a compactum in `[0,1]^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    dim: usize,
    samples: Vec<RationalPoint>,
    resolution: Rational,
    /// For cell carriers: lower corners and common side of the closed cells.
    cells: Option<(Vec<RationalPoint>, Rational)>,
}

impl Carrier {
    /// A point cloud; points closer than `resolution` count as connected.
    pub fn cloud(cloud: &PointCloud, resolution: Rational) -> Result<Self> {
        if cloud.is_empty() {
            return Err(Error::InvalidArgument("empty carrier".into()));
        }
        if resolution <= Rational::from_integer(0.into()) {
            return Err(Error::InvalidArgument("resolution must be positive".into()));
        }
        Ok(Self {
            dim: cloud.dim(),
            samples: cloud.points().to_vec(),
            resolution,
            cells: None,
        })
    }

    /// The dyadic grid of mesh `2^{-depth}` on `[0,1]^dim`.
    pub fn grid(dim: usize, depth: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let side = pow2(-i64::from(depth));
        let per_axis = (1u64 << depth) + 1;
        let total = per_axis.checked_pow(dim as u32).ok_or(Error::BudgetExceeded(u64::MAX))?;
        let samples = (0..total)
            .map(|mut idx| {
                let coords = (0..dim)
                    .map(|_| {
                        let k = idx % per_axis;
                        idx /= per_axis;
                        &side * Rational::from_integer(k.into())
                    })
                    .collect();
                RationalPoint::new(coords).expect("dim is positive")
            })
            .collect();
        Ok(Self { dim, samples, resolution: side, cells: None })
    }

    /// Depth-`depth` cell approximation of `M^m_n(z)`: samples are cell
    /// corners, all of which lie in the compactum.
    pub fn digits(set: &DigitSet, depth: usize) -> Self {
        let side = set.side(depth);
        let corners = set
            .cells(depth)
            .into_iter()
            .map(|k| {
                let coords = k
                    .into_iter()
                    .map(|k| Rational::from_integer(k) * &side)
                    .collect();
                RationalPoint::new(coords).expect("m is positive")
            })
            .collect();
        Self {
            dim: set.m,
            samples: set.cell_corners(depth),
            resolution: side.clone(),
            cells: Some((corners, side)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[RationalPoint] {
        &self.samples
    }

    pub fn resolution(&self) -> &Rational {
        &self.resolution
    }

    /// Partition of sample indices into components at the carrier's
    /// resolution: touching cells for cell carriers, chains of gaps at most
    /// `resolution` for clouds.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.samples.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let linked = |a: &RationalPoint, b: &RationalPoint| match &self.cells {
            None => a.dist_unchecked(b) <= self.resolution,
            Some((lows, side)) => {
                // corners share a component when some closed cell holds both,
                // or when cells holding them touch
                let holding = |x: &RationalPoint| -> Vec<&RationalPoint> {
                    lows.iter().filter(|lo| in_closed_cell(x, lo, side)).collect()
                };
                let ha = holding(a);
                let hb = holding(b);
                ha.iter().any(|ca| hb.iter().any(|cb| ca.dist_unchecked(cb) <= *side))
            }
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj && linked(&self.samples[i], &self.samples[j]) {
                    parent[ri] = rj;
                }
            }
        }
        let mut groups: alloc::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

fn in_closed_cell(x: &RationalPoint, low: &RationalPoint, side: &Rational) -> bool {
    x.coords()
        .iter()
        .zip(low.coords())
        .all(|(c, l)| c >= l && *c <= l + side)
}

/// An open cover of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCover {
    members: Vec<OpenSet>,
    carrier: Carrier,
    /// For refinements: index of the parent member containing each member.
    parents: Option<Vec<usize>>,
}

impl FiniteCover {
    pub fn new(members: Vec<OpenSet>, carrier: Carrier) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyCover);
        }
        for m in &members {
            check_dims(carrier.dim, m.dim())?;
        }
        if carrier.samples.iter().any(|x| !members.iter().any(|m| m.contains(x))) {
            return Err(Error::UncoveredPoint);
        }
        Ok(Self { members, carrier, parents: None })
    }

    pub(crate) fn with_parents(mut self, parents: Vec<usize>) -> Self {
        self.parents = Some(parents);
        self
    }

    pub fn members(&self) -> &[OpenSet] {
        &self.members
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn parents(&self) -> Option<&[usize]> {
        self.parents.as_deref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members containing `x`.
    pub fn members_at(&self, x: &RationalPoint) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&k| self.members[k].contains(x))
            .collect()
    }

    /// Largest diameter of `U_k ∩ carrier`.
    pub fn mesh(&self) -> Rational {
        let mut best = Rational::from_integer(0.into());
        for m in &self.members {
            let inside: Vec<&RationalPoint> =
                self.carrier.samples.iter().filter(|x| m.contains(x)).collect();
            for (i, a) in inside.iter().enumerate() {
                for b in &inside[i + 1..] {
                    let d = a.dist_unchecked(b);
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        best
    }
}

/// Largest number of members sharing a carrier point.
pub fn cover_multiplicity(u: &FiniteCover) -> Result<usize> {
    if u.members.is_empty() {
        return Err(Error::EmptyCover);
    }
    Ok(u.carrier
        .samples
        .iter()
        .map(|x| u.members_at(x).len())
        .max()
        .unwrap_or(0))
}

/// Abstract simplicial complex, faces as sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    pub vertex_count: usize,
    pub faces: BTreeSet<Vec<usize>>,
    pub geometry: Option<Vec<RationalPoint>>,
}

impl Nerve {
    /// Largest face cardinality.
    pub fn max_face(&self) -> usize {
        self.faces.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            (0..f.len()).all(|skip| {
                let sub: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                sub.is_empty() || self.faces.contains(&sub)
            })
        })
    }
}

/// Faces are the subfamilies with a common carrier point.
pub fn nerve_of(u: &FiniteCover) -> Result<Nerve> {
    if u.members.is_empty() {
        return Err(Error::EmptyCover);
    }
    let mut maximal: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in &u.carrier.samples {
        maximal.insert(u.members_at(x));
    }
    let mut faces = BTreeSet::new();
    for set in maximal {
        for mask in 1u64..(1u64 << set.len()) {
            let face: Vec<usize> = set
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            faces.insert(face);
        }
    }
    // members that meet no sample still count as vertices
    for k in 0..u.members.len() {
        faces.insert(alloc::vec![k]);
    }
    Ok(Nerve { vertex_count: u.members.len(), faces, geometry: None })
}

/// An interval `(c - r, c + r)` as a one-ball open set.
pub fn interval(center: Rational, radius: Rational) -> Result<OpenSet> {
    Ok(OpenSet::ball(FormalBall::new(RationalPoint::scalar(center), radius)?))
}
