//! Exact dynamics of piecewise-linear interval maps and the branch coding
//! of points in inverse limits.
//!
//! A point `x = (x(0), x(1), …)` of `lim← (I, f_n)` is recovered from
//! `x(0)` and, at every level, the rank of `x(n+1)` among the preimages
//! `f_n^{-1}{x(n)}` in increasing order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::{abs_diff, ratio, Rational};
use crate::{Error, Result};

/// Continuous piecewise-linear map of `[0,1]` given by its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    vertices: Vec<(Rational, Rational)>,
}

impl PLMap {
    pub fn new(vertices: Vec<(Rational, Rational)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidMap("need at least two vertices".into()));
        }
        if !vertices[0].0.is_zero() || !vertices[vertices.len() - 1].0.is_one() {
            return Err(Error::InvalidMap("vertices must start at x = 0 and end at x = 1".into()));
        }
        for w in vertices.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidMap("vertex abscissae must increase".into()));
            }
            if w[0].1 == w[1].1 {
                return Err(Error::InvalidMap("constant segment".into()));
            }
        }
        if vertices.iter().any(|(_, y)| y.is_negative() || *y > Rational::one()) {
            return Err(Error::InvalidMap("values must lie in [0,1]".into()));
        }
        Ok(Self { vertices })
    }

    /// `x ↦ 1 - |1 - 2x|`.
    pub fn tent() -> Self {
        Self {
            vertices: alloc::vec![(ratio(0, 1), ratio(0, 1)), (ratio(1, 2), ratio(1, 1)), (ratio(1, 1), ratio(0, 1))],
        }
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    fn segment_of(&self, x: &Rational) -> usize {
        let last = self.vertices.len() - 2;
        (0..=last).find(|&i| *x < self.vertices[i + 1].0).unwrap_or(last)
    }

    fn on_segment(&self, i: usize, x: &Rational) -> Rational {
        let (x0, y0) = &self.vertices[i];
        let (x1, y1) = &self.vertices[i + 1];
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }

    /// Slope and intercept of segment `i`.
    fn affine(&self, i: usize) -> (Rational, Rational) {
        let (x0, y0) = &self.vertices[i];
        let (x1, y1) = &self.vertices[i + 1];
        let a = (y1 - y0) / (x1 - x0);
        let b = y0 - &a * x0;
        (a, b)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() || *x > Rational::one() {
            return Err(Error::OutsideDomain);
        }
        Ok(self.on_segment(self.segment_of(x), x))
    }

    /// Interior local extrema and their values, both ascending.
    pub fn extrema(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut ex = Vec::new();
        let mut vals = Vec::new();
        for w in self.vertices.windows(3) {
            let up_before = w[1].1 > w[0].1;
            let up_after = w[2].1 > w[1].1;
            if up_before != up_after {
                ex.push(w[1].0.clone());
                vals.push(w[1].1.clone());
            }
        }
        vals.sort();
        vals.dedup();
        (ex, vals)
    }

    /// `f^{-1}{y}` ascending, without repetition.
    pub fn preimages(&self, y: &Rational) -> Result<Vec<Rational>> {
        let mut out = Vec::new();
        for i in 0..self.vertices.len() - 1 {
            let (x0, y0) = &self.vertices[i];
            let (x1, y1) = &self.vertices[i + 1];
            let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            if y >= lo && y <= hi {
                out.push(x0 + (y - y0) * (x1 - x0) / (y1 - y0));
            }
        }
        out.dedup();
        if out.is_empty() {
            return Err(Error::OutsideRange(crate::rational::format_ratio(y)));
        }
        Ok(out)
    }
}

/// `(x(0), c_x, ex-time(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCode {
    pub x0: Rational,
    pub word: Vec<usize>,
    pub ex_time: Vec<usize>,
}

/// Bonding maps `f_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseSystem {
    Constant(PLMap),
    /// `f_n` from the table; the last map repeats.
    Table(Vec<PLMap>),
}

impl InverseSystem {
    pub fn tent() -> Self {
        InverseSystem::Constant(PLMap::tent())
    }

    pub fn map(&self, n: usize) -> &PLMap {
        match self {
            InverseSystem::Constant(f) => f,
            InverseSystem::Table(t) => &t[n.min(t.len() - 1)],
        }
    }

    /// Trajectory `x(0..=depth)` of a branch code.
    pub fn decode_point(&self, code: &BranchCode, depth: usize) -> Result<Vec<Rational>> {
        if code.word.len() < depth {
            return Err(Error::PrefixTooShort { needed: depth, have: code.word.len() });
        }
        let mut traj = alloc::vec![code.x0.clone()];
        for (level, &index) in code.word[..depth].iter().enumerate() {
            let pre = self.map(level).preimages(&traj[level])?;
            let next = pre.get(index).cloned().ok_or(Error::BranchOutOfRange {
                level,
                index,
                arity: pre.len(),
            })?;
            traj.push(next);
        }
        Ok(traj)
    }

    /// Branch code of a finite trajectory with `f_n(x(n+1)) = x(n)`.
    pub fn encode_point(&self, traj: &[Rational]) -> Result<BranchCode> {
        let x0 = traj
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
        let mut word = Vec::with_capacity(traj.len().saturating_sub(1));
        let mut ex_time = Vec::new();
        for n in 0..traj.len().saturating_sub(1) {
            let f = self.map(n);
            if f.eval(&traj[n + 1])? != traj[n] {
                return Err(Error::InconsistentTrajectory(n));
            }
            let pre = f.preimages(&traj[n])?;
            let rank = pre
                .iter()
                .position(|p| *p == traj[n + 1])
                .ok_or(Error::InconsistentTrajectory(n))?;
            word.push(rank);
            if f.extrema().1.contains(&traj[n]) {
                ex_time.push(n);
            }
        }
        Ok(BranchCode { x0, word, ex_time })
    }

    /// All branch words of length `≤ depth` from `x0`, level by level.
    pub fn branching_tree(&self, x0: &Rational, depth: usize) -> Result<BranchTree> {
        if x0.is_negative() || *x0 > Rational::one() {
            return Err(Error::OutsideDomain);
        }
        let mut levels = alloc::vec![alloc::vec![TreeNode { parent: None, branch: 0, value: x0.clone() }]];
        for n in 0..depth {
            let mut next = Vec::new();
            for (i, node) in levels[n].iter().enumerate() {
                for (k, v) in self.map(n).preimages(&node.value)?.into_iter().enumerate() {
                    next.push(TreeNode { parent: Some(i), branch: k, value: v });
                }
            }
            levels.push(next);
        }
        Ok(BranchTree { levels })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    /// Rank among the parent's preimages.
    pub branch: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTree {
    pub levels: Vec<Vec<TreeNode>>,
}

impl BranchTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.levels[self.depth()].len()
    }

    /// Number of children of node `i` at `level`.
    pub fn arity(&self, level: usize, i: usize) -> usize {
        self.levels
            .get(level + 1)
            .map_or(0, |next| next.iter().filter(|n| n.parent == Some(i)).count())
    }

    /// Branch word of node `i` at `level`.
    pub fn word(&self, level: usize, mut i: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(level);
        for l in (1..=level).rev() {
            let node = &self.levels[l][i];
            w.push(node.branch);
            i = node.parent.expect("non-root");
        }
        w.reverse();
        w
    }

    /// Full binary tree: every internal node has exactly two children.
    pub fn is_full_binary(&self) -> bool {
        (0..self.depth()).all(|l| (0..self.levels[l].len()).all(|i| self.arity(l, i) == 2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitClass {
    /// `x_{tail + period} = x_tail`, found by exact repetition.
    Preperiodic { tail: usize, period: usize },
    /// Within `tolerance` of an exact periodic cycle, with distances to the
    /// cycle decreasing over the last periods. Closure effectivity is not
    /// checked.
    AsymptoticallyPeriodic { cycle: Vec<Rational>, tolerance: Rational, steps: usize },
    Unknown { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub class: OrbitClass,
    pub orbit_prefix: Vec<Rational>,
}

const MAX_CYCLE: usize = 8;
const PREFIX_LEN: usize = 32;

/// Classifies the forward orbit of `x0` under `f` within `budget` steps.
///
/// Candidate cycles come from the local affine germs: along the last `p`
/// steps `f^p` is a single affine map `a x + b`, whose fixed point
/// `b / (1 - a)` is tested for exact periodicity.
pub fn orbit_analyze(f: &PLMap, x0: &Rational, budget: usize, tol: &Rational) -> Result<OrbitReport> {
    f.eval(x0)?;
    let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut orbit: Vec<Rational> = alloc::vec![x0.clone()];
    let mut segments: Vec<usize> = alloc::vec![f.segment_of(x0)];
    seen.insert(x0.clone(), 0);
    let prefix = |orbit: &[Rational]| orbit[..orbit.len().min(PREFIX_LEN)].to_vec();
    for step in 1..=budget {
        let x = f.eval(&orbit[step - 1])?;
        if let Some(&j) = seen.get(&x) {
            orbit.push(x);
            return Ok(OrbitReport {
                class: OrbitClass::Preperiodic { tail: j, period: step - j },
                orbit_prefix: prefix(&orbit),
            });
        }
        seen.insert(x.clone(), step);
        segments.push(f.segment_of(&x));
        orbit.push(x);
        if let Some(cycle) = converged_cycle(f, &orbit, &segments, tol) {
            return Ok(OrbitReport {
                class: OrbitClass::AsymptoticallyPeriodic { cycle, tolerance: tol.clone(), steps: step },
                orbit_prefix: prefix(&orbit),
            });
        }
    }
    Ok(OrbitReport { class: OrbitClass::Unknown { budget }, orbit_prefix: prefix(&orbit) })
}

fn converged_cycle(f: &PLMap, orbit: &[Rational], segments: &[usize], tol: &Rational) -> Option<Vec<Rational>> {
    let i = orbit.len() - 1;
    for p in 1..=MAX_CYCLE {
        if i < 2 * p {
            break;
        }
        // f^p on the germ followed from x_{i-p}
        let mut a = Rational::one();
        let mut b = Rational::zero();
        for s in &segments[i - p..i] {
            let (sa, sb) = f.affine(*s);
            b = &sa * &b + sb;
            a *= sa;
        }
        if a.is_one() {
            continue;
        }
        let fixed = &b / (Rational::one() - &a);
        if fixed.is_negative() || fixed > Rational::one() {
            continue;
        }
        let mut cycle = alloc::vec![fixed.clone()];
        for _ in 1..p {
            let next = f.eval(cycle.last().expect("nonempty")).ok()?;
            cycle.push(next);
        }
        if f.eval(cycle.last().expect("nonempty")).ok()? != fixed {
            continue;
        }
        let d_now = abs_diff(&orbit[i], &fixed);
        let d_before = abs_diff(&orbit[i - p], &fixed);
        let d_earlier = abs_diff(&orbit[i - 2 * p], &fixed);
        if d_now < *tol && d_now < d_before && d_before < d_earlier {
            return Some(cycle);
        }
    }
    None
}
