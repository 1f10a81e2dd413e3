//! Digit-stream models of Menger compacta `M^m_n(z)` and Nöbeling spaces.
//!
//! A point of `[0,1]^m` is held as `m` rows of `z`-bounded digits. The value
//! of a row `σ` is `Σ_j σ(j) / Π_{k≤j} z_k`, so for `z = 3̄` it is the real
//! with ternary expansion `0.σ`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Bound sequence `z = (z_j)` with `z_j ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSeq {
    Constant(u64),
    /// `z_j = j + offset`.
    Affine(u64),
    /// Explicit prefix; the last entry repeats forever.
    Table(Vec<u64>),
}

impl BoundSeq {
    pub fn constant(c: u64) -> Result<Self> {
        Self::Constant(c).validated()
    }

    pub fn affine(offset: u64) -> Result<Self> {
        Self::Affine(offset).validated()
    }

    pub fn table(t: Vec<u64>) -> Result<Self> {
        Self::Table(t).validated()
    }

    pub fn ternary() -> Self {
        Self::Constant(3)
    }

    fn validated(self) -> Result<Self> {
        let ok = match &self {
            Self::Constant(c) => *c >= 3,
            Self::Affine(c) => *c >= 3,
            Self::Table(t) => !t.is_empty() && t.iter().all(|&z| z >= 3),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidArgument("bound sequence entries must be at least 3".into()))
        }
    }

    pub fn get(&self, j: usize) -> u64 {
        match self {
            Self::Constant(c) => *c,
            Self::Affine(c) => j as u64 + c,
            Self::Table(t) => t[j.min(t.len() - 1)],
        }
    }

    pub fn as_constant(&self) -> Option<u64> {
        match self {
            Self::Constant(c) => Some(*c),
            Self::Table(t) if t.len() == 1 => Some(t[0]),
            _ => None,
        }
    }

    /// `Π_{k<depth} z_k`: the number of level-`depth` intervals of `[0,1]`.
    pub fn cells(&self, depth: usize) -> BigInt {
        (0..depth).map(|j| BigInt::from(self.get(j))).product()
    }

    pub fn cells_between(&self, from: usize, to: usize) -> BigInt {
        (from..to).map(|j| BigInt::from(self.get(j))).product()
    }

    /// Level whose cell side equals `side`, if any, searching up to `max_depth`.
    pub fn depth_of_side(&self, side: &Rational, max_depth: usize) -> Option<usize> {
        let mut cells = BigInt::one();
        for d in 0..=max_depth {
            if side.numer().is_one() && side.denom() == &cells {
                return Some(d);
            }
            cells *= self.get(d);
        }
        None
    }
}

/// `|σ|_z = Σ_j σ(j) / Π_{k≤j} z_k`.
pub fn z_value(sigma: &[u64], z: &BoundSeq) -> Result<Rational> {
    let mut denom = BigInt::one();
    let mut total = Rational::zero();
    for (j, &d) in sigma.iter().enumerate() {
        let bound = z.get(j);
        if d >= bound {
            return Err(Error::DigitOutOfBound { row: 0, level: j, digit: d, bound });
        }
        denom *= bound;
        total += Rational::new(BigInt::from(d), denom.clone());
    }
    Ok(total)
}

/// What follows the explicit digits of a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// Nothing is known beyond the explicit digits.
    Unknown,
    Zeros,
    /// `z_j - 1` forever.
    Maxes,
    /// The block repeats forever; only valid for constant bounds.
    Periodic(Vec<u64>),
}

impl Tail {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Tail::Unknown)
    }
}

/// Finite-precision point of `[0,1]^m`: `m` rows of `depth` digits each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitMatrix {
    z: BoundSeq,
    rows: Vec<Vec<u64>>,
    tails: Vec<Tail>,
    depth: usize,
}

impl DigitMatrix {
    /// Rows with unknown tails.
    pub fn new(z: BoundSeq, rows: Vec<Vec<u64>>) -> Result<Self> {
        let tails = vec![Tail::Unknown; rows.len()];
        Self::with_tails(z, rows, tails)
    }

    pub fn with_tails(z: BoundSeq, rows: Vec<Vec<u64>>, tails: Vec<Tail>) -> Result<Self> {
        if tails.len() != rows.len() {
            return Err(Error::DimensionMismatch { expected: rows.len(), found: tails.len() });
        }
        let depth = rows.first().map_or(0, Vec::len);
        for (row, digits) in rows.iter().enumerate() {
            if digits.len() != depth {
                return Err(Error::InvalidArgument("rows must share one depth".into()));
            }
            for (level, &digit) in digits.iter().enumerate() {
                let bound = z.get(level);
                if digit >= bound {
                    return Err(Error::DigitOutOfBound { row, level, digit, bound });
                }
            }
        }
        for (row, tail) in tails.iter().enumerate() {
            if let Tail::Periodic(block) = tail {
                let Some(c) = z.as_constant() else {
                    return Err(Error::InvalidArgument(
                        "periodic tails need a constant bound sequence".into(),
                    ));
                };
                if block.is_empty() {
                    return Err(Error::InvalidArgument("empty periodic block".into()));
                }
                if let Some((i, &d)) = block.iter().enumerate().find(|(_, &d)| d >= c) {
                    return Err(Error::DigitOutOfBound { row, level: depth + i, digit: d, bound: c });
                }
            }
        }
        Ok(Self { z, rows, tails, depth })
    }

    /// Builds a matrix from columns, one digit per row per column.
    pub fn from_columns(z: BoundSeq, m: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut rows = vec![Vec::with_capacity(columns.len()); m];
        for col in columns {
            if col.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: col.len() });
            }
            for (row, &d) in rows.iter_mut().zip(col) {
                row.push(d);
            }
        }
        Self::new(z, rows)
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn z(&self) -> &BoundSeq {
        &self.z
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn digit(&self, row: usize, level: usize) -> u64 {
        self.rows[row][level]
    }

    /// Value of the explicit digits of one row (the left end of its cell).
    pub fn prefix_value(&self, row: usize) -> Rational {
        z_value(&self.rows[row], &self.z).expect("digits validated at construction")
    }

    /// Exact value of a row whose tail is known.
    pub fn row_value(&self, row: usize) -> Option<Rational> {
        let base = self.prefix_value(row);
        let scale = Rational::new(BigInt::one(), self.z.cells(self.depth));
        match &self.tails[row] {
            Tail::Unknown => None,
            Tail::Zeros => Some(base),
            Tail::Maxes => Some(base + scale),
            Tail::Periodic(block) => {
                let c = self.z.as_constant()?;
                let block_value = z_value(block, &BoundSeq::Constant(c)).ok()?;
                let period = num_traits::pow(BigInt::from(c), block.len());
                let repeat = Rational::new(period.clone(), period - 1u8);
                Some(base + scale * block_value * repeat)
            }
        }
    }

    /// Closed interval `[lo, hi]` known to contain the row value.
    pub fn row_interval(&self, row: usize) -> (Rational, Rational) {
        match self.row_value(row) {
            Some(v) => (v.clone(), v),
            None => {
                let lo = self.prefix_value(row);
                let hi = &lo + Rational::new(BigInt::one(), self.z.cells(self.depth));
                (lo, hi)
            }
        }
    }
}

/// Membership status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    In,
    Out,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub status: Status,
    pub decided_at_depth: usize,
    /// For `Out`: a level at or before which every expansion choice fails.
    pub violating_level: Option<usize>,
}

#[derive(Debug, Clone)]
struct Expansion {
    digits: Vec<u64>,
    tail: Tail,
}

impl Expansion {
    fn digit(&self, j: usize, z: &BoundSeq) -> Option<u64> {
        if let Some(&d) = self.digits.get(j) {
            return Some(d);
        }
        match &self.tail {
            Tail::Unknown => None,
            Tail::Zeros => Some(0),
            Tail::Maxes => Some(z.get(j) - 1),
            Tail::Periodic(b) => Some(b[(j - self.digits.len()) % b.len()]),
        }
    }

    /// The other expansion of a terminating value, if there is one.
    fn alternative(&self, z: &BoundSeq) -> Option<Expansion> {
        match self.tail {
            Tail::Zeros => {
                let p = self.digits.iter().rposition(|&d| d > 0)?;
                let mut digits = self.digits[..=p].to_vec();
                digits[p] -= 1;
                Some(Expansion { digits, tail: Tail::Maxes })
            }
            Tail::Maxes => {
                let p = (0..self.digits.len()).rev().find(|&j| self.digits[j] + 1 < z.get(j))?;
                let mut digits = self.digits[..=p].to_vec();
                digits[p] += 1;
                Some(Expansion { digits, tail: Tail::Zeros })
            }
            _ => None,
        }
    }
}

fn normalize_tail(tail: &Tail, z: &BoundSeq) -> Tail {
    match (tail, z.as_constant()) {
        (Tail::Periodic(b), _) if b.iter().all(|&d| d == 0) => Tail::Zeros,
        (Tail::Periodic(b), Some(c)) if b.iter().all(|&d| d + 1 == c) => Tail::Maxes,
        _ => tail.clone(),
    }
}

/// Every digit expansion a row may stand for.
fn row_candidates(d: &DigitMatrix, row: usize) -> Vec<Expansion> {
    let digits = d.rows[row].clone();
    let tail = normalize_tail(&d.tails[row], &d.z);
    if tail.is_exact() {
        let canonical = Expansion { digits, tail };
        let mut out = vec![canonical.clone()];
        out.extend(canonical.alternative(&d.z));
        return out;
    }
    // The real may be an end point of its cell, whose other expansion leaves
    // the explicit digits.
    let mut out = vec![Expansion { digits: digits.clone(), tail: Tail::Unknown }];
    for end in [Tail::Zeros, Tail::Maxes] {
        let e = Expansion { digits: digits.clone(), tail: end };
        out.extend(e.alternative(&d.z));
    }
    out
}

fn is_interior(digit: u64, bound: u64) -> bool {
    digit != 0 && digit + 1 != bound
}

/// Membership of the represented point in `M^m_n(z)`, existential over the
/// digit expansions of each coordinate.
pub fn menger_membership(d: &DigitMatrix, n: usize) -> MembershipVerdict {
    let cands: Vec<Vec<Expansion>> = (0..d.m()).map(|r| row_candidates(d, r)).collect();
    let period = cands
        .iter()
        .flatten()
        .filter_map(|e| match &e.tail {
            Tail::Periodic(b) => Some(b.len()),
            _ => None,
        })
        .fold(1usize, |acc, p| acc.lcm(&p));
    let explicit = cands.iter().flatten().map(|e| e.digits.len()).max().unwrap_or(0);
    let horizon = explicit.max(d.depth) + period;

    let mut choice = vec![0usize; d.m()];
    let mut any_pass = false;
    let mut all_fail = true;
    let mut worst_first_violation = 0usize;
    loop {
        // end-point alternatives of an unknown row only block a false `Out`
        let exact = (0..d.m()).all(|r| d.tails[r].is_exact());
        let violation = (0..horizon).find(|&j| {
            let bound = d.z.get(j);
            let interior = choice
                .iter()
                .enumerate()
                .filter(|&(r, &c)| {
                    cands[r][c]
                        .digit(j, &d.z)
                        .is_some_and(|digit| is_interior(digit, bound))
                })
                .count();
            interior > n
        });
        match violation {
            Some(j) => worst_first_violation = worst_first_violation.max(j),
            None => {
                all_fail = false;
                if exact {
                    any_pass = true;
                    break;
                }
            }
        }
        // odometer over candidate choices
        let mut r = 0;
        loop {
            if r == choice.len() {
                break;
            }
            choice[r] += 1;
            if choice[r] < cands[r].len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
        if r == choice.len() {
            break;
        }
    }

    if any_pass {
        MembershipVerdict { status: Status::In, decided_at_depth: horizon, violating_level: None }
    } else if all_fail {
        MembershipVerdict {
            status: Status::Out,
            decided_at_depth: worst_first_violation,
            violating_level: Some(worst_first_violation),
        }
    } else {
        MembershipVerdict { status: Status::Unknown, decided_at_depth: d.depth, violating_level: None }
    }
}

/// One coordinate of a candidate Nöbeling point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordinate {
    Rational(Rational),
    /// A digit stream; `irrational` records a non-eventually-periodic guarantee.
    Stream { irrational: bool },
}

/// Membership in `N^m_n`: at most `n` rational coordinates.
pub fn noebeling_membership(point: &[Coordinate], n: usize) -> MembershipVerdict {
    let rational = point.iter().filter(|c| matches!(c, Coordinate::Rational(_))).count();
    let untagged = point
        .iter()
        .filter(|c| matches!(c, Coordinate::Stream { irrational: false }))
        .count();
    let status = if rational > n {
        Status::Out
    } else if rational + untagged <= n {
        Status::In
    } else {
        Status::Unknown
    };
    MembershipVerdict { status, decided_at_depth: 0, violating_level: None }
}

/// `m(n) = Σ_{k≤n} C(2n+1, k) 2^{2n+1-k}`.
pub fn extremal_count(n: usize) -> u128 {
    let len = 2 * n + 1;
    let mut binom: u128 = 1;
    let mut total: u128 = 0;
    for k in 0..=n {
        total += binom << (len - k);
        binom = binom * (len - k) as u128 / (k as u128 + 1);
    }
    total
}

/// `T_n`: ternary strings of length `2n+1` with at most `n` ones, in
/// lexicographic order, together with `m(n)` from the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremaCombinatorics {
    pub n: usize,
    pub count: u128,
    pub blocks: Vec<Vec<u8>>,
}

pub fn extrema_combinatorics(n: usize) -> ExtremaCombinatorics {
    let len = 2 * n + 1;
    let mut blocks = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn walk(len: usize, ones_left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for digit in 0u8..3 {
            if digit == 1 && ones_left == 0 {
                continue;
            }
            cur.push(digit);
            walk(len, ones_left - usize::from(digit == 1), cur, out);
            cur.pop();
        }
    }
    walk(len, n, &mut cur, &mut blocks);
    ExtremaCombinatorics { n, count: extremal_count(n), blocks }
}

/// The `(2n+1) × |w|` ternary matrix whose column `t` is the block of symbol
/// `w(t)` in the fixed lexicographic enumeration of `T_n`.
pub fn generic_point_stream(word: &[u64], n: usize) -> Result<DigitMatrix> {
    let comb = extrema_combinatorics(n);
    let alphabet = comb.blocks.len() as u64;
    let columns = word
        .iter()
        .map(|&s| {
            comb.blocks
                .get(s as usize)
                .map(|b| b.iter().map(|&d| u64::from(d)).collect())
                .ok_or(Error::SymbolOutOfRange { symbol: s, alphabet })
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    DigitMatrix::from_columns(BoundSeq::ternary(), 2 * n + 1, &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn t3() -> BoundSeq {
        BoundSeq::ternary()
    }

    #[test]
    fn z_value_examples() {
        assert_eq!(z_value(&[1, 2], &t3()).unwrap(), ratio(5, 9));
        assert_eq!(z_value(&[0, 0, 0], &t3()).unwrap(), int(0));
        let z4 = BoundSeq::constant(4).unwrap();
        assert_eq!(z_value(&[2], &z4).unwrap(), ratio(1, 2));
        assert!(matches!(
            z_value(&[3], &t3()),
            Err(Error::DigitOutOfBound { digit: 3, .. })
        ));
    }

    #[test]
    fn bound_seq_rules() {
        assert!(BoundSeq::constant(2).is_err());
        let a = BoundSeq::affine(3).unwrap();
        assert_eq!(a.get(0), 3);
        assert_eq!(a.get(4), 7);
        let t = BoundSeq::table(vec![3, 5]).unwrap();
        assert_eq!(t.get(9), 5);
        assert_eq!(a.cells(3), BigInt::from(3 * 4 * 5));
        assert_eq!(t3().depth_of_side(&ratio(1, 27), 10), Some(3));
        assert_eq!(t3().depth_of_side(&ratio(1, 4), 10), None);
    }

    #[test]
    fn row_values_with_tails() {
        let d = DigitMatrix::with_tails(
            t3(),
            vec![vec![], vec![1], vec![], vec![0]],
            vec![
                Tail::Periodic(vec![1]),
                Tail::Zeros,
                Tail::Maxes,
                Tail::Periodic(vec![0, 2]),
            ],
        );
        // rows must share a depth
        assert!(d.is_err());
        let d = DigitMatrix::with_tails(
            t3(),
            vec![vec![0], vec![1], vec![2], vec![0]],
            vec![Tail::Periodic(vec![1]), Tail::Zeros, Tail::Maxes, Tail::Periodic(vec![0, 2])],
        )
        .unwrap();
        assert_eq!(d.row_value(0).unwrap(), ratio(1, 6));
        assert_eq!(d.row_value(1).unwrap(), ratio(1, 3));
        assert_eq!(d.row_value(2).unwrap(), int(1));
        // 0.0(02)... = (2/9)/(1 - 1/9) / 3 = 1/12
        assert_eq!(d.row_value(3).unwrap(), ratio(1, 12));
    }

    fn periodic_one() -> DigitMatrix {
        DigitMatrix::with_tails(
            t3(),
            vec![vec![], vec![]],
            vec![Tail::Periodic(vec![1]), Tail::Periodic(vec![1])],
        )
        .unwrap()
    }

    #[test]
    fn half_half_is_out_at_level_zero() {
        let v = menger_membership(&periodic_one(), 1);
        assert_eq!(v.status, Status::Out);
        assert_eq!(v.violating_level, Some(0));
    }

    #[test]
    fn origin_is_in() {
        let d = DigitMatrix::with_tails(t3(), vec![vec![0, 0], vec![0, 0]], vec![Tail::Zeros, Tail::Zeros])
            .unwrap();
        for n in 0..3 {
            assert_eq!(menger_membership(&d, n).status, Status::In);
        }
    }

    #[test]
    fn alternative_expansion_rescues_membership() {
        // (1/3, 1): 1/3 = 0.1000… = 0.0222…, 1 = 0.222…
        let d = DigitMatrix::with_tails(t3(), vec![vec![1], vec![2]], vec![Tail::Zeros, Tail::Maxes])
            .unwrap();
        assert_eq!(menger_membership(&d, 1).status, Status::In);
        // with n = 0 only the alternative expansion of 1/3 works
        assert_eq!(menger_membership(&d, 0).status, Status::In);
        // 1/2 has no second expansion
        let d = DigitMatrix::with_tails(t3(), vec![vec![1]], vec![Tail::Periodic(vec![1])]).unwrap();
        assert_eq!(menger_membership(&d, 0).status, Status::Out);
    }

    #[test]
    fn unknown_tails_never_claim_in() {
        let d = DigitMatrix::new(t3(), vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(menger_membership(&d, 0).status, Status::Unknown);
        // two interior digits at level 1, but both rows could be the left end
        // of their cell, with alternative expansions 0.0022… and 0.0122…
        let d = DigitMatrix::new(t3(), vec![vec![0, 1], vec![2, 1]]).unwrap();
        assert_eq!(menger_membership(&d, 1).status, Status::Unknown);
        // the interior digits at level 0 survive every expansion of the cell
        let d = DigitMatrix::new(t3(), vec![vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let v = menger_membership(&d, 1);
        assert_eq!(v.status, Status::Out);
        assert_eq!(v.violating_level, Some(0));
    }

    #[test]
    fn periodic_tail_requires_constant_bounds() {
        let z = BoundSeq::affine(3).unwrap();
        assert!(DigitMatrix::with_tails(z, vec![vec![0]], vec![Tail::Periodic(vec![1])]).is_err());
    }

    #[test]
    fn noebeling_cases() {
        let irr = Coordinate::Stream { irrational: true };
        let untagged = Coordinate::Stream { irrational: false };
        let rat = Coordinate::Rational(ratio(1, 2));
        assert_eq!(noebeling_membership(&[irr.clone(), irr.clone()], 0).status, Status::In);
        assert_eq!(
            noebeling_membership(&[rat.clone(), rat.clone(), irr.clone()], 1).status,
            Status::Out
        );
        assert_eq!(noebeling_membership(&[rat.clone(), untagged], 1).status, Status::Unknown);
        assert_eq!(noebeling_membership(&[rat, irr], 1).status, Status::In);
    }

    #[test]
    fn extremal_counts() {
        assert_eq!(extremal_count(0), 2);
        assert_eq!(extremal_count(1), 20);
        assert_eq!(extremal_count(2), 192);
        let t0 = extrema_combinatorics(0);
        assert_eq!(t0.blocks, vec![vec![0], vec![2]]);
        let t1 = extrema_combinatorics(1);
        assert_eq!(t1.blocks.len(), 20);
        assert_eq!(t1.blocks[0], vec![0, 0, 0]);
        assert!(t1.blocks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn generic_point_columns() {
        let d = generic_point_stream(&[0], 1).unwrap();
        assert_eq!(d.m(), 3);
        assert_eq!(d.rows(), &[vec![0], vec![0], vec![0]]);
        let empty = generic_point_stream(&[], 3).unwrap();
        assert_eq!(empty.depth(), 0);
        assert_eq!(empty.m(), 7);
        assert!(matches!(
            generic_point_stream(&[20], 1),
            Err(Error::SymbolOutOfRange { symbol: 20, alphabet: 20 })
        ));
    }
}
