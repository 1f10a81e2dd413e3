//! Exact max-metric distance from a point to `[0,1]^m ∖ U` for a finite
//! union `U` of open balls.
//!
//! The ball faces cut each axis into breakpoints and open gaps. On every
//! product of such pieces, membership in each ball is constant, so the
//! complement is a finite union of these generalized cells and the distance
//! is a minimum over the uncovered ones.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::OpenSet;
use crate::ball::RationalPoint;
use crate::rational::Rational;

struct Piece {
    lo: Rational,
    hi: Rational,
    sample: Rational,
}

fn axis_pieces(set: &OpenSet, axis: usize) -> Vec<Piece> {
    let zero = Rational::zero();
    let one = Rational::one();
    let mut cuts: Vec<Rational> = alloc::vec![zero.clone(), one.clone()];
    for b in set.balls() {
        let c = &b.center().coords()[axis];
        for cut in [c - b.radius(), c + b.radius()] {
            if cut > zero && cut < one {
                cuts.push(cut);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut pieces = Vec::with_capacity(2 * cuts.len());
    for (i, c) in cuts.iter().enumerate() {
        pieces.push(Piece { lo: c.clone(), hi: c.clone(), sample: c.clone() });
        if let Some(next) = cuts.get(i + 1) {
            let mid = (c + next) / Rational::from_integer(2.into());
            pieces.push(Piece { lo: c.clone(), hi: next.clone(), sample: mid });
        }
    }
    pieces
}

fn gap(x: &Rational, p: &Piece) -> Rational {
    if x < &p.lo {
        &p.lo - x
    } else if x > &p.hi {
        x - &p.hi
    } else {
        Rational::zero()
    }
}

/// `d(x, [0,1]^m ∖ U)`, or `None` when `U` covers the whole cube.
pub fn complement_distance(x: &RationalPoint, set: &OpenSet) -> Option<Rational> {
    let m = set.dim();
    let axes: Vec<Vec<Piece>> = (0..m).map(|a| axis_pieces(set, a)).collect();
    let gaps: Vec<Vec<Rational>> = axes
        .iter()
        .enumerate()
        .map(|(a, ps)| ps.iter().map(|p| gap(&x.coords()[a], p)).collect())
        .collect();
    let mut best: Option<Rational> = None;
    let mut choice = alloc::vec![0usize; m];
    search(set, &axes, &gaps, 0, &mut choice, Rational::zero(), &mut best);
    best
}

fn search(
    set: &OpenSet,
    axes: &[Vec<Piece>],
    gaps: &[Vec<Rational>],
    axis: usize,
    choice: &mut Vec<usize>,
    partial: Rational,
    best: &mut Option<Rational>,
) {
    if best.as_ref().is_some_and(|b| partial >= *b) {
        return;
    }
    if axis == axes.len() {
        let covered = set.balls().iter().any(|b| {
            b.center()
                .coords()
                .iter()
                .zip(choice.iter().enumerate())
                .all(|(c, (a, &i))| {
                    let s = &axes[a][i].sample;
                    let d = if s > c { s - c } else { c - s };
                    d < *b.radius()
                })
        });
        if !covered {
            *best = Some(partial);
        }
        return;
    }
    for i in 0..axes[axis].len() {
        choice[axis] = i;
        let g = &gaps[axis][i];
        let next = if *g > partial { g.clone() } else { partial.clone() };
        search(set, axes, gaps, axis + 1, choice, next, best);
    }
}
