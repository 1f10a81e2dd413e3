use effdim_core::dimension::{
    assouad_exponent, box_count, box_dimension, depth_window_pairs, localized_count, AssouadConfig, CountedSet,
    DigitSet, PointCloud, ScaleCounts,
};
use effdim_core::fractal::BoundSeq;
use effdim_core::rational::{pow2, ratio, to_f64};
use effdim_core::{Rational, RationalPoint};
use num_bigint::BigUint;
use proptest::prelude::*;

fn cloud(points: &[(i64, i64)]) -> PointCloud {
    let pts = points
        .iter()
        .map(|&(x, y)| RationalPoint::new(vec![ratio(x, 256), ratio(y, 256)]).unwrap())
        .collect();
    PointCloud::new(2, pts, "random").unwrap()
}

proptest! {
    #[test]
    fn cloud_counts_are_monotone(points in prop::collection::vec((0i64..=256, 0i64..=256), 1..80)) {
        let c = cloud(&points);
        let set = CountedSet::Cloud(&c);
        let counts: Vec<BigUint> = (0..=8).map(|k| box_count(set, &pow2(-k)).unwrap()).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        for k in 1..=8i64 {
            for j in 0..k {
                let local = localized_count(set, &pow2(-j), &pow2(-k)).unwrap();
                prop_assert!(local <= counts[k as usize]);
            }
        }
    }

    #[test]
    fn digit_counts_are_monotone(m in 1usize..=3, n in 0usize..=2, offset in 3u64..6) {
        prop_assume!(n < m);
        let set = DigitSet::new(m, n, BoundSeq::affine(offset).unwrap()).unwrap();
        let counts: Vec<BigUint> = (0..5).map(|d| set.cell_count(d)).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        for a in 0..4 {
            for (b, count) in counts.iter().enumerate().skip(a) {
                prop_assert!(set.localized_count(a, b) <= *count);
            }
        }
    }
}

#[test]
fn self_similar_counts_factor() {
    for (m, n) in [(1usize, 0usize), (2, 1), (3, 1), (3, 2), (2, 0)] {
        let set = DigitSet::new(m, n, BoundSeq::ternary()).unwrap();
        let first = box_count(CountedSet::Digits(&set), &ratio(1, 3)).unwrap();
        for k in 1..7i64 {
            let r = Rational::new(1.into(), 3i64.pow(k as u32).into());
            let next = Rational::new(1.into(), 3i64.pow(k as u32 + 1).into());
            let a = box_count(CountedSet::Digits(&set), &r).unwrap();
            let b = box_count(CountedSet::Digits(&set), &next).unwrap();
            assert_eq!(b, a * &first);
        }
    }
}

#[test]
fn dimension_ordering() {
    let cfg = AssouadConfig { c_max: ratio(1, 1), ..AssouadConfig::default() };
    let sets = [
        DigitSet::cantor(),
        DigitSet::carpet(),
        DigitSet::sponge(),
        DigitSet::new(3, 1, BoundSeq::affine(3).unwrap()).unwrap(),
        DigitSet::new(2, 0, BoundSeq::table(vec![3, 5, 4]).unwrap()).unwrap(),
    ];
    for set in &sets {
        let box_est = box_dimension(&ScaleCounts::of_depths(set, 1..=5)).unwrap();
        let (big, small) = depth_window_pairs(set, 0, 5);
        let a = assouad_exponent(CountedSet::Digits(set), &big, &small, &cfg).unwrap();
        let max_ratio = big.iter().zip(&small).map(|(b, s)| to_f64(&(b / s))).fold(1.0, f64::max);
        let tol = libm::log(to_f64(&cfg.c_max)) / libm::log(max_ratio) + 1.0 / 64.0;
        assert!(box_est.lower <= box_est.upper);
        assert!(box_est.upper <= a.exponent_f64() + tol, "{box_est:?} vs {}", a.exponent_f64());
    }
}
