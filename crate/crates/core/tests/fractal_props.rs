use effdim_core::dimension::DigitSet;
use effdim_core::fractal::{
    extrema_combinatorics, extremal_count, generic_point_stream, menger_membership, z_value, BoundSeq,
    DigitMatrix, Status, Tail,
};
use proptest::prelude::*;

#[test]
fn enumeration_matches_brute_force() {
    for n in 0..=4usize {
        let len = 2 * n + 1;
        let mut brute = Vec::new();
        for code in 0..3u64.pow(len as u32) {
            let mut c = code;
            let mut s = vec![0u8; len];
            for d in s.iter_mut().rev() {
                *d = (c % 3) as u8;
                c /= 3;
            }
            if s.iter().filter(|&&d| d == 1).count() <= n {
                brute.push(s);
            }
        }
        let comb = extrema_combinatorics(n);
        assert_eq!(comb.count, brute.len() as u128);
        assert_eq!(comb.blocks, brute);
        assert_eq!(extremal_count(n), comb.count);
    }
}

fn all_digit_tuples(m: usize, z: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..z).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

// Rows `σ (02)^∞` have unique expansions inside the cell of `σ`, so exactly
// the cells counted by the symbolic recursion give members of M^m_n(3).
#[test]
fn membership_agrees_with_cell_counts() {
    for (m, n, depth) in [(1usize, 0usize, 4usize), (2, 1, 3), (3, 1, 2), (2, 0, 3)] {
        let set = DigitSet::new(m, n, BoundSeq::ternary()).unwrap();
        let columns = all_digit_tuples(m, 3);
        let mut count = 0u64;
        let mut stack: Vec<Vec<Vec<u64>>> = vec![vec![]];
        while let Some(cols) = stack.pop() {
            if cols.len() == depth {
                let rows: Vec<Vec<u64>> = (0..m).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
                let d = DigitMatrix::with_tails(BoundSeq::ternary(), rows, vec![Tail::Periodic(vec![0, 2]); m]).unwrap();
                if menger_membership(&d, n).status == Status::In {
                    count += 1;
                }
                continue;
            }
            for c in &columns {
                let mut next = cols.clone();
                next.push(c.clone());
                stack.push(next);
            }
        }
        assert_eq!(num_bigint::BigUint::from(count), set.cell_count(depth), "m={m} n={n}");
    }
}

proptest! {
    #[test]
    fn generic_streams_satisfy_level_condition(
        n in 0usize..=2,
        word in prop::collection::vec(any::<u64>(), 1..40),
    ) {
        let alphabet = extremal_count(n) as u64;
        let word: Vec<u64> = word.into_iter().map(|s| s % alphabet).collect();
        let d = generic_point_stream(&word, n).unwrap();
        for level in 0..d.depth() {
            let interior = (0..d.m()).filter(|&r| d.digit(r, level) == 1).count();
            prop_assert!(interior <= n);
        }
        prop_assert_ne!(menger_membership(&d, n).status, Status::Out);
    }

    #[test]
    fn z_value_strictly_monotone(
        a in prop::collection::vec(0u64..3, 6),
        b in prop::collection::vec(0u64..3, 6),
    ) {
        let z = BoundSeq::ternary();
        let (va, vb) = (z_value(&a, &z).unwrap(), z_value(&b, &z).unwrap());
        prop_assert_eq!(a.cmp(&b), va.cmp(&vb));
    }

    #[test]
    fn z_value_monotone_for_affine_bounds(
        a in prop::collection::vec(0u64..3, 5),
        b in prop::collection::vec(0u64..3, 5),
    ) {
        let z = BoundSeq::affine(3).unwrap();
        let (va, vb) = (z_value(&a, &z).unwrap(), z_value(&b, &z).unwrap());
        prop_assert_eq!(a.cmp(&b), va.cmp(&vb));
    }
}
