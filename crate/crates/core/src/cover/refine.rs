use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{complement_distance, cover_multiplicity, FiniteCover, OpenSet};
use crate::ball::{FormalBall, RationalPoint};
use crate::rational::{floor, pow2, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineConfig {
    /// Largest allowed multiplicity.
    pub target_mult: usize,
    /// Largest allowed member diameter on the carrier.
    pub mesh: Rational,
    /// Cap on elementary membership tests.
    pub budget: u64,
}

struct Budget {
    left: u64,
    cap: u64,
}

impl Budget {
    fn spend(&mut self, n: usize) -> Result<()> {
        let n = n as u64;
        if n > self.left {
            return Err(Error::BudgetExceeded(self.cap));
        }
        self.left -= n;
        Ok(())
    }
}

/// A refinement of `u` with multiplicity at most `target_mult` and mesh at
/// most `mesh`, each member tagged with a parent containing it.
///
/// The search first tries one padded ball per carrier component, then
/// enlarged dyadic cells of decreasing side down to the carrier resolution.
pub fn refine_cover(u: &FiniteCover, cfg: &RefineConfig) -> Result<FiniteCover> {
    if cfg.target_mult == 0 {
        return Err(Error::InvalidArgument("target multiplicity must be positive".into()));
    }
    let mut budget = Budget { left: cfg.budget, cap: cfg.budget };
    let carrier = u.carrier();
    let resolution = carrier.resolution().clone();

    let component_balls: Vec<FormalBall> = carrier
        .components()
        .iter()
        .map(|comp| {
            let pts: Vec<&RationalPoint> = comp.iter().map(|&i| &carrier.samples()[i]).collect();
            bounding_ball(&pts, &(&resolution / Rational::from_integer(4.into())))
        })
        .collect();
    if let Some(found) = try_family(u, component_balls, cfg, &mut budget)? {
        return Ok(found);
    }

    let mut level = 0i64;
    loop {
        let side = pow2(-level);
        let balls = dyadic_family(carrier.samples(), &side);
        budget.spend(balls.len() * carrier.samples().len())?;
        if let Some(found) = try_family(u, balls, cfg, &mut budget)? {
            return Ok(found);
        }
        if side <= resolution {
            return Err(Error::SearchExhausted(alloc::format!(
                "no refinement of multiplicity ≤ {} down to side 2^-{level}",
                cfg.target_mult
            )));
        }
        level += 1;
    }
}

fn bounding_ball(pts: &[&RationalPoint], pad: &Rational) -> FormalBall {
    let dim = pts[0].dim();
    let two = Rational::from_integer(2.into());
    let mut center = Vec::with_capacity(dim);
    let mut half = Rational::zero();
    for a in 0..dim {
        let lo = pts.iter().map(|p| &p.coords()[a]).min().expect("nonempty");
        let hi = pts.iter().map(|p| &p.coords()[a]).max().expect("nonempty");
        center.push((lo + hi) / &two);
        let h = (hi - lo) / &two;
        if h > half {
            half = h;
        }
    }
    FormalBall::new(RationalPoint::new(center).expect("dim positive"), half + pad).expect("positive radius")
}

/// Occupied cells of side `side`, each enlarged by `side / 8` on all sides.
fn dyadic_family(samples: &[RationalPoint], side: &Rational) -> Vec<FormalBall> {
    let last: BigInt = floor(&side.recip()) - 1;
    let mut cells: BTreeMap<Vec<BigInt>, ()> = BTreeMap::new();
    for x in samples {
        let key = x.coords().iter().map(|c| floor(&(c / side)).min(last.clone())).collect();
        cells.insert(key, ());
    }
    let half = side / Rational::from_integer(2.into());
    let radius = &half + side / Rational::from_integer(8.into());
    cells
        .into_keys()
        .map(|k| {
            let center = k
                .into_iter()
                .map(|k| Rational::from_integer(k) * side + &half)
                .collect();
            FormalBall::new(RationalPoint::new(center).expect("dim positive"), radius.clone())
                .expect("positive radius")
        })
        .collect()
}

fn parent_of(u: &FiniteCover, ball: &FormalBall) -> Option<usize> {
    u.members().iter().position(|m| match complement_distance(ball.center(), m) {
        None => true,
        Some(d) => d >= *ball.radius(),
    })
}

fn try_family(
    u: &FiniteCover,
    balls: Vec<FormalBall>,
    cfg: &RefineConfig,
    budget: &mut Budget,
) -> Result<Option<FiniteCover>> {
    let mut parents = Vec::with_capacity(balls.len());
    for b in &balls {
        budget.spend(u.len())?;
        match parent_of(u, b) {
            Some(p) => parents.push(p),
            None => return Ok(None),
        }
    }
    let members = balls.into_iter().map(OpenSet::ball).collect();
    let cand = match FiniteCover::new(members, u.carrier().clone()) {
        Ok(c) => c,
        Err(Error::UncoveredPoint) => return Ok(None),
        Err(e) => return Err(e),
    };
    budget.spend(cand.len() * u.carrier().samples().len())?;
    if cover_multiplicity(&cand)? > cfg.target_mult || cand.mesh() > cfg.mesh {
        return Ok(None);
    }
    Ok(Some(cand.with_parents(parents)))
}
