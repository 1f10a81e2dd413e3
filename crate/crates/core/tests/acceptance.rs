//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use effdim_core::algorithmic::{
    co_compressible_check, precision_complexity, Bits, Dictionary, Identity, PrecisionPoint, PrecisionQuery,
    PrefixFreeMachine, RunLength,
};
use effdim_core::cover::{kappa_weights, nerve_of, Carrier, FiniteCover, OpenSet};
use effdim_core::dimension::{
    assouad_exponent, box_dimension, depth_window_pairs, AssouadConfig, CountedSet, DigitSet, ScaleCounts,
};
use effdim_core::fractal::{extrema_combinatorics, generic_point_stream, BoundSeq};
use effdim_core::inverse_limit::{orbit_analyze, BranchCode, InverseSystem, OrbitClass, PLMap};
use effdim_core::rational::{format_ratio, int, ratio};
use effdim_core::{FormalBall, Rational, RationalPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail.push_str(&format!("; runtime {took:.2?} exceeds {limit:?}"));
            return o;
        }
    }
    o.detail.push_str(&format!("; {took:.2?}"));
    o
}

fn c1_combinatorics() -> Outcome {
    let m1 = extrema_combinatorics(1).count;
    let m2 = extrema_combinatorics(2).count;
    let mut agree = true;
    for n in 0..=4usize {
        let len = 2 * n as u32 + 1;
        let brute = (0..3u64.pow(len))
            .filter(|&code| {
                let mut c = code;
                let mut ones = 0;
                for _ in 0..len {
                    ones += usize::from(c % 3 == 1);
                    c /= 3;
                }
                ones <= n
            })
            .count();
        let comb = extrema_combinatorics(n);
        agree &= comb.count == brute as u128 && comb.blocks.len() == brute;
    }
    outcome(m1 == 20 && m2 == 192 && agree, format!("m(1)={m1} m(2)={m2} brute force n≤4 agrees={agree}"))
}

fn c2_box_dimension() -> Outcome {
    let cases = [
        ("cantor", DigitSet::cantor(), 1..=8usize, 2f64.ln() / 3f64.ln(), 1e-9),
        ("carpet", DigitSet::carpet(), 1..=6, 8f64.ln() / 3f64.ln(), 1e-6),
        ("sponge", DigitSet::sponge(), 1..=4, 20f64.ln() / 3f64.ln(), 1e-6),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, set, depths, want, tol) in cases {
        let est = box_dimension(&ScaleCounts::of_depths(&set, depths)).expect("at least two depths");
        let ok = (est.lower - want).abs() <= tol && (est.upper - want).abs() <= tol;
        pass &= ok;
        detail.push(format!("{name} [{:.9}, {:.9}] vs {want:.9}", est.lower, est.upper));
    }
    outcome(pass, detail.join(", "))
}

fn c3_assouad_direction() -> Outcome {
    let cfg = AssouadConfig::default();
    let growing = DigitSet::new(3, 1, BoundSeq::affine(3).unwrap()).unwrap();
    let ternary = DigitSet::sponge();
    let exponent = |set: &DigitSet, first: usize| -> Rational {
        let (big, small) = depth_window_pairs(set, first, first + 3);
        assouad_exponent(CountedSet::Digits(set), &big, &small, &cfg).unwrap().exponent
    };
    let grow: Vec<Rational> = (0..=3).map(|d| exponent(&growing, d)).collect();
    let tern: Vec<Rational> = (0..=3).map(|d| exponent(&ternary, d)).collect();
    let smaller = grow.iter().zip(&tern).all(|(g, t)| g < t);
    let decreasing = grow.windows(2).all(|w| w[1] < w[0]);
    let show = |v: &[Rational]| v.iter().map(format_ratio).collect::<Vec<_>>().join(" ");
    outcome(
        smaller && decreasing,
        format!(
            "windows [d,d+3], d=0..3: z_j=j+3 → {} ; z=3 → {} (finite-depth check only, the asymptotic value 1 is not reached)",
            show(&grow),
            show(&tern)
        ),
    )
}

fn bit_width(n: usize) -> usize {
    let mut w = 0;
    while (1usize << w) < n + 1 {
        w += 1;
    }
    w
}

fn c4_prefix_free() -> Outcome {
    let pf = PrefixFreeMachine::new(&Identity);
    let mut lengths_ok = true;
    let mut codes = Vec::new();
    for len in 0..=10 {
        for s in Bits::all_of_len(len) {
            let code = pf.code(&s);
            lengths_ok &= code.len() == len + 2 * bit_width(len) + 2;
            codes.push(code);
        }
    }
    let mut sorted: Vec<&Bits> = codes.iter().collect();
    sorted.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    // in lexicographic order a prefix sits right before one of its extensions
    let prefix_free = sorted.windows(2).all(|w| !w[0].is_prefix_of(w[1]));
    let kraft: Rational = codes.iter().map(|c| Rational::new(1.into(), num_bigint::BigInt::from(1) << c.len())).sum();
    outcome(
        lengths_ok && prefix_free && kraft <= int(1),
        format!("{} codes, lengths exact={lengths_ok}, prefix-free={prefix_free}, Kraft sum={:.6}", codes.len(), effdim_core::rational::to_f64(&kraft)),
    )
}

fn c5_kappa(rng: &mut ChaCha8Rng) -> Outcome {
    let carrier = Carrier::grid(2, 2).unwrap();
    let mut failures = 0usize;
    for _ in 0..10_000 {
        let k = rng.gen_range(1..=6);
        let mut members: Vec<OpenSet> = (0..k)
            .map(|_| {
                let c = RationalPoint::new(vec![ratio(rng.gen_range(0..=32), 32), ratio(rng.gen_range(0..=32), 32)]).unwrap();
                OpenSet::ball(FormalBall::new(c, ratio(rng.gen_range(1..=16), 32)).unwrap())
            })
            .collect();
        for s in carrier.samples() {
            if !members.iter().any(|m| m.contains(s)) {
                members.push(OpenSet::ball(FormalBall::new(s.clone(), ratio(1, 4)).unwrap()));
            }
        }
        let u = FiniteCover::new(members, carrier.clone()).unwrap();
        let ball = &u.members()[rng.gen_range(0..u.len())].balls()[0];
        let coords = ball
            .center()
            .coords()
            .iter()
            .map(|c| {
                let off = ball.radius() * ratio(rng.gen_range(-999..=999), 1000);
                (c + off).clamp(int(0), int(1))
            })
            .collect();
        let x = RationalPoint::new(coords).unwrap();
        let support = u.members_at(&x);
        let ok = match kappa_weights(&x, &u) {
            Ok(w) => {
                w.iter().sum::<Rational>() == int(1)
                    && w.iter().all(|wk| *wk >= int(0))
                    && w.iter().enumerate().all(|(k, wk)| *wk == int(0) || support.contains(&k))
            }
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("10000 random instances, {failures} failures"))
}

fn c6_inverse_limit(rng: &mut ChaCha8Rng) -> Outcome {
    let sys = InverseSystem::tent();
    let mut trips = 0;
    for _ in 0..1000 {
        let den = rng.gen_range(1..=1_000_000i64);
        let code = BranchCode {
            x0: ratio(rng.gen_range(0..=den), den),
            word: (0..20).map(|_| rng.gen_range(0..2)).collect(),
            ex_time: vec![],
        };
        let traj = sys.decode_point(&code, 20).unwrap();
        let back = sys.encode_point(&traj).unwrap();
        trips += usize::from(back.x0 == code.x0 && back.word == code.word);
    }
    let f = PLMap::tent();
    let tol = ratio(1, 1 << 20);
    let class = |x: Rational| orbit_analyze(&f, &x, 64, &tol).unwrap().class;
    let two_sevenths = class(ratio(2, 7)) == OrbitClass::Preperiodic { tail: 0, period: 3 };
    let half = class(ratio(1, 2)) == OrbitClass::Preperiodic { tail: 2, period: 1 };
    let dyadic = (0..=1024).all(|k| matches!(class(ratio(k, 1024)), OrbitClass::Preperiodic { .. }));
    outcome(
        trips == 1000 && two_sevenths && half && dyadic,
        format!("round trips {trips}/1000, 2/7 ok={two_sevenths}, 1/2 ok={half}, dyadics ≤2^-10 preperiodic={dyadic}"),
    )
}

fn c7_bucket_handle() -> Outcome {
    let tree = InverseSystem::tent().branching_tree(&ratio(3, 16), 10).unwrap();
    let words: BTreeSet<Vec<usize>> = (0..tree.leaf_count()).map(|i| tree.word(10, i)).collect();
    let pass = tree.is_full_binary() && tree.leaf_count() == 1024 && words.len() == 1024;
    outcome(pass, format!("full binary={}, leaves={}", tree.is_full_binary(), tree.leaf_count()))
}

fn c8_cocompress() -> Outcome {
    let g = |k: u32| 1u64 << (k + 4);
    let x = Bits::zeros(1 << 13);
    let at = |s: &Rational| co_compressible_check(&x, &RunLength, &g, s, 8).unwrap();
    let tenth = at(&ratio(1, 10));
    let zero = at(&int(0));
    let grid = [int(0), ratio(1, 20), ratio(1, 10), ratio(1, 5), ratio(3, 10), ratio(1, 2), ratio(3, 4), int(1)];
    let rows: Vec<Vec<bool>> = grid.iter().map(at).collect();
    let monotone = rows.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| !a || *b));
    let passes = tenth.iter().all(|&b| b);
    let fails_at_zero = !zero.iter().all(|&b| b);
    let show: String = tenth.iter().map(|&b| if b { '1' } else { '0' }).collect();
    outcome(
        passes && fails_at_zero && monotone,
        format!("s=1/10 per k=0..8: {show}; fails at s=0: {fails_at_zero}; monotone over 8 values: {monotone}"),
    )
}

fn c9_nerve(rng: &mut ChaCha8Rng) -> Outcome {
    let sets = [DigitSet::cantor(), DigitSet::carpet(), DigitSet::sponge()];
    let mut checked = 0;
    let mut mismatches = 0;
    // the sponge carrier has 15616 corner samples, so it gets fewer covers
    for (set, quota) in sets.iter().zip([60, 60, 15]) {
        let carrier = Carrier::digits(set, 3);
        let dim = set.m;
        let mut done = 0;
        while done < quota {
            let k = rng.gen_range(1..=9);
            let mut members: Vec<OpenSet> = (0..k)
                .map(|_| {
                    let c = RationalPoint::new((0..dim).map(|_| ratio(rng.gen_range(0..=27), 27)).collect()).unwrap();
                    OpenSet::ball(FormalBall::new(c, ratio(rng.gen_range(2..=12), 27)).unwrap())
                })
                .collect();
            for s in carrier.samples() {
                if !members.iter().any(|m| m.contains(s)) {
                    members.push(OpenSet::ball(FormalBall::new(s.clone(), ratio(1, 2)).unwrap()));
                }
            }
            if members.len() > 12 {
                continue;
            }
            let u = FiniteCover::new(members, carrier.clone()).unwrap();
            let n = u.len();
            let masks: BTreeSet<u32> = carrier
                .samples()
                .iter()
                .map(|x| (0..n).filter(|&j| u.members()[j].contains(x)).fold(0, |m, j| m | 1 << j))
                .collect();
            let brute: BTreeSet<Vec<usize>> = (1u32..(1 << n))
                .filter(|&f| f.count_ones() == 1 || masks.iter().any(|m| m & f == f))
                .map(|f| (0..n).filter(|j| f >> j & 1 == 1).collect())
                .collect();
            mismatches += usize::from(nerve_of(&u).unwrap().faces != brute);
            checked += 1;
            done += 1;
        }
    }
    outcome(mismatches == 0, format!("{checked} covers on depth-3 cantor/carpet/sponge carriers, {mismatches} mismatches"))
}

fn c10_generic_complexity(rng: &mut ChaCha8Rng) -> Outcome {
    let word: Vec<u64> = (0..200).map(|_| rng.gen_range(0..20)).collect();
    let point = PrecisionPoint::Digits(generic_point_stream(&word, 1).unwrap());
    let mut worst = (0u32, 0f64);
    let mut pass = true;
    for r in 50..=180u32 {
        let c = precision_complexity(&PrecisionQuery { point: point.clone(), r }, &Dictionary).unwrap();
        let ratio = c as f64 / f64::from(r);
        if ratio > worst.1 {
            worst = (r, ratio);
        }
        pass &= ratio < 1.5;
    }
    outcome(pass, format!("max C/r = {:.4} at r={} (bound 1.5); seeded random word over 20 symbols", worst.1, worst.0))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 combinatorics", timed(Some(Duration::from_secs(1)), c1_combinatorics)),
        ("2 box dimension", timed(Some(Duration::from_secs(5)), c2_box_dimension)),
        ("3 assouad direction", timed(None, c3_assouad_direction)),
        ("4 prefix-free transform", timed(Some(Duration::from_secs(2)), c4_prefix_free)),
        ("5 kappa invariants", timed(None, || c5_kappa(&mut rng))),
        ("6 inverse limits", timed(Some(Duration::from_secs(10)), || c6_inverse_limit(&mut rng))),
        ("7 bucket-handle tree", timed(None, c7_bucket_handle)),
        ("8 c.o.-compressibility", timed(None, c8_cocompress)),
        ("9 nerve oracle", timed(None, || c9_nerve(&mut rng))),
        ("10 generic point complexity", timed(None, || c10_generic_complexity(&mut rng))),
    ];
    let mut failed = 0;
    for (name, o) in &criteria {
        println!("{} [{name}] {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
