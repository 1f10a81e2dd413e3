//! Cover counts `|E|_r`, box-dimension envelopes and Assouad-exponent
//! estimates on digit-defined compacta and finite point clouds.
//!
//! Counts are grid-cell counts: for a digit set at a cell scale they are
//! exact cell counts, for clouds they count occupied cells of the grid of
//! mesh `r`. Both stay within a dimension-bounded factor of the minimal ball
//! cover, which does not move log-slopes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::RationalPoint;
use crate::fractal::BoundSeq;
use crate::rational::{self, ceil_int, floor, Rational};
use crate::{Error, Result};

/// Largest depth searched when matching a rational scale to a cell level.
const MAX_CELL_DEPTH: usize = 256;

/// A finite sample of a compactum in `[0,1]^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<RationalPoint>,
    pub meta: String,
}

impl PointCloud {
    pub fn new(dim: usize, points: Vec<RationalPoint>, meta: impl Into<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("cloud dimension must be positive".into()));
        }
        for p in &points {
            crate::ball::check_dims(dim, p.dim())?;
            if !p.in_unit_cube() {
                return Err(Error::InvalidArgument("cloud point outside the unit cube".into()));
            }
        }
        Ok(Self { dim, points, meta: meta.into() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn cell_key(&self, p: &RationalPoint, r: &Rational) -> Vec<BigInt> {
        let last: BigInt = ceil_int(&r.recip()) - 1;
        p.coords()
            .iter()
            .map(|x| floor(&(x / r)).min(last.clone()))
            .collect()
    }

    fn occupied(&self, r: &Rational) -> BTreeSet<Vec<BigInt>> {
        self.points.iter().map(|p| self.cell_key(p, r)).collect()
    }
}

/// The Menger compactum `M^m_n(z)` viewed through its cell structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSet {
    pub m: usize,
    pub n: usize,
    pub z: BoundSeq,
}

impl DigitSet {
    pub fn new(m: usize, n: usize, z: BoundSeq) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("ambient dimension must be positive".into()));
        }
        Ok(Self { m, n, z })
    }

    /// Ternary Cantor set `M^1_0(3)`.
    pub fn cantor() -> Self {
        Self { m: 1, n: 0, z: BoundSeq::ternary() }
    }

    /// Sierpiński carpet `M^2_1(3)`.
    pub fn carpet() -> Self {
        Self { m: 2, n: 1, z: BoundSeq::ternary() }
    }

    /// Menger sponge `M^3_1(3)`.
    pub fn sponge() -> Self {
        Self { m: 3, n: 1, z: BoundSeq::ternary() }
    }

    /// Admissible digit columns at level `j`:
    /// `Σ_{k≤n} C(m,k) (z_j - 2)^k 2^{m-k}`.
    pub fn level_count(&self, j: usize) -> BigUint {
        let interior = BigUint::from(self.z.get(j) - 2);
        let mut binom = BigUint::one();
        let mut total = BigUint::zero();
        for k in 0..=self.n.min(self.m) {
            total += &binom * num_traits::pow(interior.clone(), k) * (BigUint::one() << (self.m - k));
            binom = binom * BigUint::from(self.m - k) / BigUint::from(k + 1);
        }
        total
    }

    /// Number of admissible cells at `depth`.
    pub fn cell_count(&self, depth: usize) -> BigUint {
        self.localized_count(0, depth)
    }

    /// Admissible depth-`to` cells inside any one admissible depth-`from`
    /// cell. The level condition is per-level, so this does not depend on
    /// the chosen cell.
    pub fn localized_count(&self, from: usize, to: usize) -> BigUint {
        (from..to).map(|j| self.level_count(j)).product()
    }

    /// Cell side at `depth`.
    pub fn side(&self, depth: usize) -> Rational {
        Rational::new(BigInt::one(), self.z.cells(depth))
    }

    pub fn depth_of_scale(&self, r: &Rational) -> Result<usize> {
        self.z
            .depth_of_side(r, MAX_CELL_DEPTH)
            .ok_or_else(|| Error::NotACellScale(rational::format_ratio(r)))
    }

    /// Admissible digit columns at level `j`, in lexicographic order.
    pub fn columns(&self, j: usize) -> Vec<Vec<u64>> {
        let bound = self.z.get(j);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.m);
        fn walk(m: usize, bound: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for d in 0..bound {
                let interior = d != 0 && d + 1 != bound;
                if interior && left == 0 {
                    continue;
                }
                cur.push(d);
                walk(m, bound, left - usize::from(interior), cur, out);
                cur.pop();
            }
        }
        walk(self.m, bound, self.n, &mut cur, &mut out);
        out
    }

    /// Integer lower corners `k` of the admissible cells at `depth`; a cell
    /// is `Π_ℓ [k_ℓ, k_ℓ + 1] / Π_{j<depth} z_j`.
    pub fn cells(&self, depth: usize) -> Vec<Vec<BigInt>> {
        let mut cells = alloc::vec![alloc::vec![BigInt::zero(); self.m]];
        for j in 0..depth {
            let z = BigInt::from(self.z.get(j));
            let cols = self.columns(j);
            let mut next = Vec::with_capacity(cells.len() * cols.len());
            for cell in &cells {
                for col in &cols {
                    next.push(cell.iter().zip(col).map(|(k, &d)| k * &z + d).collect());
                }
            }
            cells = next;
        }
        cells
    }

    /// Corners of the admissible cells at `depth`. Every corner is a point
    /// of the compactum: its expansions continue with `0` or `z_j - 1` only.
    pub fn cell_corners(&self, depth: usize) -> Vec<RationalPoint> {
        let scale = self.z.cells(depth);
        let mut out = BTreeSet::new();
        for cell in self.cells(depth) {
            for mask in 0u32..(1 << self.m) {
                let coords = cell
                    .iter()
                    .enumerate()
                    .map(|(l, k)| {
                        let k = if mask >> l & 1 == 1 { k + 1 } else { k.clone() };
                        Rational::new(k, scale.clone())
                    })
                    .collect();
                out.insert(RationalPoint::new(coords).expect("m is positive"));
            }
        }
        out.into_iter().collect()
    }
}

/// A set whose covering numbers can be counted.
#[derive(Debug, Clone, Copy)]
pub enum CountedSet<'a> {
    Cloud(&'a PointCloud),
    Digits(&'a DigitSet),
}

/// `|E|_r` as a grid-cell count.
pub fn box_count(set: CountedSet<'_>, r: &Rational) -> Result<BigUint> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("scale must be positive".into()));
    }
    match set {
        CountedSet::Cloud(c) => Ok(BigUint::from(c.occupied(r).len())),
        CountedSet::Digits(d) => Ok(d.cell_count(d.depth_of_scale(r)?)),
    }
}

/// Rows `(r, |E|_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScaleCounts {
    pub rows: Vec<(Rational, BigUint)>,
}

impl ScaleCounts {
    pub fn of(set: CountedSet<'_>, scales: &[Rational]) -> Result<Self> {
        let rows = scales
            .iter()
            .map(|r| Ok((r.clone(), box_count(set, r)?)))
            .collect::<Result<_>>()?;
        Ok(Self { rows })
    }

    /// Counts of a digit set at the given depths.
    pub fn of_depths(set: &DigitSet, depths: impl IntoIterator<Item = usize>) -> Self {
        let rows = depths
            .into_iter()
            .map(|d| (set.side(d), set.cell_count(d)))
            .collect();
        Self { rows }
    }
}

/// Box-dimension estimate: pairwise-slope envelope plus least squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimEstimate {
    pub lower: f64,
    pub upper: f64,
    pub least_squares: f64,
    /// Root-mean-square residual of the least-squares fit.
    pub residual: f64,
}

fn ln_biguint(n: &BigUint) -> f64 {
    rational::ln(&Rational::from_integer(BigInt::from(n.clone())))
}

/// Slopes of `log |E|_r` against `log r^{-1}`.
pub fn box_dimension(counts: &ScaleCounts) -> Result<DimEstimate> {
    let rows = &counts.rows;
    if rows.len() < 2 {
        return Err(Error::TooFewScales(rows.len()));
    }
    let mut pts = Vec::with_capacity(rows.len());
    for (r, c) in rows {
        if !r.is_positive() || c.is_zero() {
            return Err(Error::InvalidArgument("scales and counts must be positive".into()));
        }
        pts.push((-rational::ln(r), ln_biguint(c)));
    }
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dx = pts[j].0 - pts[i].0;
            if dx == 0.0 {
                return Err(Error::InvalidArgument("repeated scale".into()));
            }
            let slope = (pts[j].1 - pts[i].1) / dx;
            lower = lower.min(slope);
            upper = upper.max(slope);
        }
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = pts
        .iter()
        .map(|p| {
            let e = p.1 - (my + slope * (p.0 - mx));
            e * e
        })
        .sum();
    Ok(DimEstimate {
        lower,
        upper,
        least_squares: slope,
        residual: libm::sqrt(sse / n),
    })
}

/// Candidate grid for the Assouad exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssouadConfig {
    /// Spacing of candidate exponents.
    pub step: Rational,
    /// Largest admissible constant `c`.
    pub c_max: Rational,
    /// Candidates stop here.
    pub s_max: Rational,
}

impl Default for AssouadConfig {
    fn default() -> Self {
        Self {
            step: rational::ratio(1, 64),
            c_max: rational::int(4),
            s_max: rational::int(64),
        }
    }
}

/// One localized count `sup_x |E ∩ B_R(x)|_r` on the cell structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedCount {
    pub big: Rational,
    pub small: Rational,
    pub count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssouadEstimate {
    /// Least grid exponent `s` with `count ≤ c_max (R/r)^s` for every pair.
    pub exponent: Rational,
    pub counts: Vec<LocalizedCount>,
}

impl AssouadEstimate {
    pub fn exponent_f64(&self) -> f64 {
        rational::to_f64(&self.exponent)
    }
}

/// Localized counts: the largest number of `r`-cells met inside a single
/// `R`-cell.
pub fn localized_count(set: CountedSet<'_>, big: &Rational, small: &Rational) -> Result<BigUint> {
    match set {
        CountedSet::Digits(d) => {
            let a = d.depth_of_scale(big)?;
            let b = d.depth_of_scale(small)?;
            Ok(d.localized_count(a, b))
        }
        CountedSet::Cloud(c) => {
            let mut per_cell: BTreeMap<Vec<BigInt>, BTreeSet<Vec<BigInt>>> = BTreeMap::new();
            for p in c.points() {
                per_cell
                    .entry(c.cell_key(p, big))
                    .or_default()
                    .insert(c.cell_key(p, small));
            }
            Ok(BigUint::from(per_cell.values().map(BTreeSet::len).max().unwrap_or(0)))
        }
    }
}

/// Least candidate exponent `s` such that one constant `c ≤ c_max` bounds
/// every localized count by `c (R/r)^s`. Comparisons are exact.
pub fn assouad_exponent(
    set: CountedSet<'_>,
    big_scales: &[Rational],
    small_scales: &[Rational],
    cfg: &AssouadConfig,
) -> Result<AssouadEstimate> {
    if big_scales.is_empty() || big_scales.len() != small_scales.len() {
        return Err(Error::InvalidArgument(
            "scale lists must be nonempty and of equal length".into(),
        ));
    }
    if !cfg.step.is_positive() || !cfg.c_max.is_positive() {
        return Err(Error::InvalidArgument("step and c_max must be positive".into()));
    }
    let mut counts = Vec::with_capacity(big_scales.len());
    for (big, small) in big_scales.iter().zip(small_scales) {
        if !small.is_positive() || small >= big {
            return Err(Error::InvalidArgument("every r must satisfy 0 < r < R".into()));
        }
        counts.push(LocalizedCount {
            big: big.clone(),
            small: small.clone(),
            count: localized_count(set, big, small)?,
        });
    }
    // s = k * step = k p / q; test count^q ≤ c^q (R/r)^{k p}.
    let p = cfg.step.numer().to_u32().ok_or_else(|| Error::InvalidArgument("step too fine".into()))?;
    let q = cfg.step.denom().to_u32().ok_or_else(|| Error::InvalidArgument("step too fine".into()))?;
    let c_pow = num_traits::pow(cfg.c_max.clone(), q as usize);
    let prepared: Vec<(Rational, Rational, Rational)> = counts
        .iter()
        .map(|lc| {
            let lhs = num_traits::pow(Rational::from_integer(BigInt::from(lc.count.clone())), q as usize);
            let ratio = &lc.big / &lc.small;
            let unit = num_traits::pow(ratio, p as usize);
            (lhs, unit, c_pow.clone())
        })
        .collect();
    let mut rhs: Vec<Rational> = prepared.iter().map(|(_, _, c)| c.clone()).collect();
    let mut k = 0u64;
    loop {
        let s = &cfg.step * Rational::from_integer(BigInt::from(k));
        if s > cfg.s_max {
            return Err(Error::SearchExhausted("no exponent below s_max fits".into()));
        }
        if prepared.iter().zip(&rhs).all(|((lhs, _, _), r)| lhs <= r) {
            return Ok(AssouadEstimate { exponent: s, counts });
        }
        for ((_, unit, _), r) in prepared.iter().zip(rhs.iter_mut()) {
            *r *= unit;
        }
        k += 1;
    }
}

/// All scale pairs `(R, r)` from cell depths `a < b` in `[first, last]`.
pub fn depth_window_pairs(set: &DigitSet, first: usize, last: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut big = Vec::new();
    let mut small = Vec::new();
    for a in first..=last {
        for b in (a + 1)..=last {
            big.push(set.side(a));
            small.push(set.side(b));
        }
    }
    (big, small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, pow2, ratio};
    use alloc::vec;

    fn pow3(k: u32) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(3u32).pow(k))
    }

    #[test]
    fn level_counts() {
        assert_eq!(DigitSet::cantor().level_count(0), BigUint::from(2u8));
        assert_eq!(DigitSet::carpet().level_count(0), BigUint::from(8u8));
        assert_eq!(DigitSet::sponge().level_count(0), BigUint::from(20u8));
        let growing = DigitSet::new(3, 1, BoundSeq::affine(3).unwrap()).unwrap();
        assert_eq!(growing.level_count(1), BigUint::from(32u8));
        for set in [DigitSet::cantor(), DigitSet::carpet(), DigitSet::sponge(), growing] {
            for j in 0..3 {
                assert_eq!(BigUint::from(set.columns(j).len()), set.level_count(j));
            }
        }
    }

    #[test]
    fn symbolic_box_counts() {
        let cantor = DigitSet::cantor();
        for k in 0..8u32 {
            assert_eq!(
                box_count(CountedSet::Digits(&cantor), &pow3(k)).unwrap(),
                BigUint::from(2u32).pow(k)
            );
        }
        let carpet = DigitSet::carpet();
        assert_eq!(box_count(CountedSet::Digits(&carpet), &pow3(3)).unwrap(), BigUint::from(512u32));
        assert!(matches!(
            box_count(CountedSet::Digits(&carpet), &ratio(1, 4)),
            Err(Error::NotACellScale(_))
        ));
        assert!(box_count(CountedSet::Digits(&carpet), &int(0)).is_err());
    }

    #[test]
    fn cloud_counts() {
        let single = PointCloud::new(2, vec![RationalPoint::zeros(2)], "").unwrap();
        for k in 0..6 {
            assert_eq!(box_count(CountedSet::Cloud(&single), &pow2(-k)).unwrap(), BigUint::one());
        }
        let ends = PointCloud::new(
            1,
            vec![RationalPoint::scalar(int(0)), RationalPoint::scalar(int(1))],
            "",
        )
        .unwrap();
        assert_eq!(box_count(CountedSet::Cloud(&ends), &int(1)).unwrap(), BigUint::one());
        assert_eq!(box_count(CountedSet::Cloud(&ends), &ratio(1, 2)).unwrap(), BigUint::from(2u8));
        assert!(PointCloud::new(1, vec![RationalPoint::scalar(int(2))], "").is_err());
    }

    #[test]
    fn cantor_and_sponge_slopes() {
        let est = box_dimension(&ScaleCounts::of_depths(&DigitSet::cantor(), 1..=8)).unwrap();
        let target = libm::log(2.0) / libm::log(3.0);
        assert!((est.lower - target).abs() < 1e-9);
        assert!((est.upper - target).abs() < 1e-9);
        assert!(est.residual < 1e-9);
        let est = box_dimension(&ScaleCounts::of_depths(&DigitSet::sponge(), 1..=4)).unwrap();
        let target = libm::log(20.0) / libm::log(3.0);
        assert!((est.lower - target).abs() < 1e-9);
    }

    #[test]
    fn constant_counts_have_zero_slope() {
        let rows = (1..5).map(|k| (pow2(-k), BigUint::one())).collect();
        let est = box_dimension(&ScaleCounts { rows }).unwrap();
        assert_eq!(est.lower, 0.0);
        assert_eq!(est.upper, 0.0);
    }

    #[test]
    fn box_dimension_errors() {
        let one = ScaleCounts { rows: vec![(ratio(1, 2), BigUint::one())] };
        assert_eq!(box_dimension(&one), Err(Error::TooFewScales(1)));
        let dup = ScaleCounts {
            rows: vec![(ratio(1, 2), BigUint::one()), (ratio(1, 2), BigUint::one())],
        };
        assert!(box_dimension(&dup).is_err());
    }

    #[test]
    fn cantor_assouad_with_unit_constant() {
        let cantor = DigitSet::cantor();
        let (big, small) = depth_window_pairs(&cantor, 0, 6);
        let cfg = AssouadConfig { c_max: int(1), ..AssouadConfig::default() };
        let est = assouad_exponent(CountedSet::Digits(&cantor), &big, &small, &cfg).unwrap();
        // least k/64 with 2 ≤ 3^{k/64}: k = ceil(64 log 2 / log 3) = 41
        assert_eq!(est.exponent, ratio(41, 64));
        for lc in &est.counts {
            let a = cantor.depth_of_scale(&lc.big).unwrap();
            let b = cantor.depth_of_scale(&lc.small).unwrap();
            assert_eq!(lc.count, BigUint::from(2u32).pow((b - a) as u32));
        }
    }

    #[test]
    fn full_cube_assouad_is_the_dimension() {
        // n ≥ m keeps every cell: the full square, base 4 (dyadic scales)
        let square = DigitSet::new(2, 2, BoundSeq::constant(4).unwrap()).unwrap();
        let (big, small) = depth_window_pairs(&square, 0, 4);
        let cfg = AssouadConfig { c_max: int(1), ..AssouadConfig::default() };
        let est = assouad_exponent(CountedSet::Digits(&square), &big, &small, &cfg).unwrap();
        assert_eq!(est.exponent, int(2));
    }

    #[test]
    fn assouad_rejects_bad_scales() {
        let cantor = DigitSet::cantor();
        let cfg = AssouadConfig::default();
        assert!(assouad_exponent(CountedSet::Digits(&cantor), &[], &[], &cfg).is_err());
        assert!(assouad_exponent(CountedSet::Digits(&cantor), &[pow3(2)], &[pow3(1)], &cfg).is_err());
        assert!(assouad_exponent(CountedSet::Digits(&cantor), &[pow3(1)], &[], &cfg).is_err());
    }

    #[test]
    fn cloud_localized_counts() {
        let pts = (0..8)
            .map(|k| RationalPoint::scalar(ratio(k, 8)))
            .collect();
        let cloud = PointCloud::new(1, pts, "grid").unwrap();
        let lc = localized_count(CountedSet::Cloud(&cloud), &ratio(1, 2), &ratio(1, 8)).unwrap();
        assert_eq!(lc, BigUint::from(4u8));
    }
}
