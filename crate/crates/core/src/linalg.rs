//! Exact linear algebra over the rationals: ranks, affine independence, and
//! separation of affine flats.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::ball::RationalPoint;
use crate::Rational;

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            let (head, tail) = m.split_at_mut(i);
            for (x, p) in tail[0][c..cols].iter_mut().zip(&head[r][c..cols]) {
                *x -= &factor * p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// True iff the points span a flat of dimension `len - 1`.
pub fn affinely_independent(points: &[&RationalPoint]) -> bool {
    let Some((first, rest)) = points.split_first() else {
        return true;
    };
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| sub(p.coords(), first.coords()))
        .collect();
    rank(&diffs) == diffs.len()
}

/// `origin + span(directions)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFlat {
    pub origin: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn point(p: &RationalPoint) -> Self {
        Self { origin: p.coords().to_vec(), directions: Vec::new() }
    }

    /// Affine span of a nonempty list of points.
    pub fn span(points: &[&RationalPoint]) -> Self {
        let origin = points[0].coords().to_vec();
        let directions = points[1..]
            .iter()
            .map(|p| sub(p.coords(), &origin))
            .collect();
        Self { origin, directions }
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Dimension of the flat.
    pub fn dim(&self) -> usize {
        rank(&self.directions)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        let w = sub(p.coords(), &self.origin);
        let mut with = self.directions.clone();
        let base = rank(&with);
        with.push(w);
        rank(&with) == base
    }

    pub fn intersects(&self, other: &Self) -> bool {
        let mut dirs: Vec<Vec<Rational>> = self.directions.clone();
        dirs.extend(other.directions.iter().cloned());
        let base = rank(&dirs);
        dirs.push(sub(&other.origin, &self.origin));
        rank(&dirs) == base
    }

    /// Squared Euclidean distance between the two flats, exactly.
    pub fn sq_distance(&self, other: &Self) -> Rational {
        let w = sub(&other.origin, &self.origin);
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for v in self.directions.iter().chain(&other.directions) {
            let mut u = v.clone();
            for b in &basis {
                let coef = dot(&u, b) / dot(b, b);
                for (ui, bi) in u.iter_mut().zip(b) {
                    *ui -= &coef * bi;
                }
            }
            if u.iter().any(|x| !x.is_zero()) {
                basis.push(u);
            }
        }
        let mut residual = w;
        for b in &basis {
            let coef = dot(&residual, b) / dot(b, b);
            for (ri, bi) in residual.iter_mut().zip(b) {
                *ri -= &coef * bi;
            }
        }
        dot(&residual, &residual)
    }
}
