//! One handler per subcommand; each returns the text written to stdout.

use effdim_core::algorithmic::{
    co_compressible_check, schnorr_dims, transform_bound, Bits, Compressor, Dictionary, Identity, PrecisionPoint,
    PrefixFreeMachine, RunLength,
};
use effdim_core::condensation::{chain_descriptor, iterate_s, sample_s, Interval, SegmentPath};
use effdim_core::cover::{
    cover_multiplicity, kappa_map, kappa_weights, refine_cover, FiniteCover, RefineConfig,
};
use effdim_core::dimension::{
    assouad_exponent, box_dimension, depth_window_pairs, AssouadConfig, CountedSet, DigitSet, PointCloud, ScaleCounts,
};
use effdim_core::fractal::{
    extrema_combinatorics, generic_point_stream, menger_membership, noebeling_membership, Coordinate, DigitMatrix,
    MembershipVerdict, Status, Tail,
};
use effdim_core::inverse_limit::{orbit_analyze, BranchCode, InverseSystem, OrbitClass};
use effdim_core::rational::{pow2, ratio};
use effdim_core::{Rational, RationalPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::external::External;
use crate::files::{BallSpec, CloudFile, CoverFile, DigitStreamFile};
use crate::output::{approx, big, q, qs};
use crate::{budget_cap, parse, Cli, Cmd, CompressorArg, DigitInput, Format, SetInput};

pub fn run(cli: &Cli) -> CliResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let value = match &cli.command {
        Cmd::MengerCheck { digits, n } => menger_check(digits, *n)?,
        Cmd::NoebelingCheck { coords, n } => noebeling_check(coords, *n)?,
        Cmd::GenericPoint { n, len, word } => generic_point(*n, *len, word.as_deref(), &mut rng)?,
        Cmd::Boxdim { set, depths, scales } => boxdim(set, depths.as_deref(), scales.as_deref())?,
        Cmd::Assouad { set, window, step, c_max, s_max } => assouad(set, window, step, c_max, s_max)?,
        Cmd::Kdim { digits, point, r, compressor } => kdim(digits, point.as_deref(), r, compressor)?,
        Cmd::Cocompress { bits, zeros, g_shift, s, k_max, compressor } => {
            cocompress(bits.as_deref(), *zeros, *g_shift, s, *k_max, compressor)?
        }
        Cmd::PfTransform { payload, max_len, compressor } => pf_transform(payload.as_deref(), *max_len, compressor)?,
        Cmd::Orbit { map, x0, budget, tol } => orbit(map, x0, *budget, tol)?,
        Cmd::IlEncode { map, traj } => il_encode(map, traj)?,
        Cmd::IlDecode { map, x0, word } => il_decode(map, x0, word)?,
        Cmd::IlTree { map, x0, depth, leaves } => il_tree(map, x0, *depth, *leaves)?,
        Cmd::Kappa { input, x, vertices } => kappa(&CoverFile::read(input)?, x, vertices.as_deref())?,
        Cmd::Refine { input, target_mult, mesh, budget } => {
            refine(&CoverFile::read(input)?, *target_mult, mesh, *budget)?
        }
        Cmd::CondenseSample { t, q, stages, xs, samples, anchors, fiber, format } => {
            let cloud = condense(t.as_deref(), q.as_deref(), *stages, xs.as_deref(), *samples, anchors.as_deref(), *fiber, &mut rng)?;
            let file = CloudFile::from_cloud(&cloud);
            return match format {
                Format::Json => render(&serde_json::to_value(file)?),
                Format::Csv => file.to_csv(),
            };
        }
        Cmd::ChainSpec { g, kappa, stages } => chain_spec(g, kappa.as_deref(), *stages)?,
    };
    render(&value)
}

fn render(v: &Value) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn missing(what: &str) -> CliError {
    CliError::Parse(format!("missing input: {what}"))
}

fn capped(budget: u64) -> CliResult<u64> {
    Ok(budget_cap()?.map_or(budget, |cap| cap.min(budget)))
}

fn compressor(arg: &CompressorArg) -> CliResult<Box<dyn Compressor>> {
    match arg.compressor.as_str() {
        "identity" => Ok(Box::new(Identity)),
        "runlength" => Ok(Box::new(RunLength)),
        "dictionary" => Ok(Box::new(Dictionary)),
        other => other
            .strip_prefix("external:")
            .and_then(External::new)
            .map(|e| Box::new(e) as Box<dyn Compressor>)
            .ok_or_else(|| CliError::Parse(format!("unknown compressor {other:?}"))),
    }
}

fn compressor_info(m: &dyn Compressor) -> Value {
    json!({ "id": m.id(), "certified": m.certified() })
}

fn digit_matrix(d: &DigitInput) -> CliResult<DigitMatrix> {
    if let Some(path) = &d.input {
        return DigitStreamFile::read(path)?.to_matrix();
    }
    let rows = d.rows.as_deref().ok_or_else(|| missing("--in or --rows"))?;
    let rows = rows.split(',').map(parse::digit_row).collect::<CliResult<Vec<_>>>()?;
    let tails = match &d.tails {
        Some(t) => t.split(',').map(parse::tail).collect::<CliResult<Vec<_>>>()?,
        None => vec![Tail::Unknown; rows.len()],
    };
    Ok(DigitMatrix::with_tails(parse::bound_seq(&d.z)?, rows, tails)?)
}

fn verdict(v: &MembershipVerdict) -> Value {
    let status = match v.status {
        Status::In => "in",
        Status::Out => "out",
        Status::Unknown => "unknown",
    };
    json!({
        "status": status,
        "decided_at_depth": v.decided_at_depth,
        "violating_level": v.violating_level,
    })
}

fn menger_check(digits: &DigitInput, n: usize) -> CliResult<Value> {
    let d = digit_matrix(digits)?;
    Ok(json!({ "m": d.m(), "n": n, "depth": d.depth(), "verdict": verdict(&menger_membership(&d, n)) }))
}

fn noebeling_check(coords: &str, n: usize) -> CliResult<Value> {
    let point = coords
        .split(',')
        .map(|c| match c.trim() {
            "irrational" => Ok(Coordinate::Stream { irrational: true }),
            "stream" => Ok(Coordinate::Stream { irrational: false }),
            t => Ok(Coordinate::Rational(parse::rat(t)?)),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "m": point.len(), "n": n, "verdict": verdict(&noebeling_membership(&point, n)) }))
}

fn generic_point(n: usize, len: Option<usize>, word: Option<&str>, rng: &mut ChaCha8Rng) -> CliResult<Value> {
    let alphabet = extrema_combinatorics(n).count;
    let mut word = match word {
        Some(w) => parse::uints(w)?,
        None => {
            let len = len.ok_or_else(|| missing("--word or --len"))?;
            (0..len).map(|_| rng.gen_range(0..alphabet as u64)).collect()
        }
    };
    if let Some(len) = len {
        if word.len() < len {
            return Err(CliError::Parse(format!("word has {} symbols, --len asks for {len}", word.len())));
        }
        word.truncate(len);
    }
    let d = generic_point_stream(&word, n)?;
    Ok(json!({
        "n": n,
        "alphabet": big(&alphabet),
        "word": word,
        "stream": serde_json::to_value(DigitStreamFile::from_matrix(&d))?,
    }))
}

enum Counted {
    Digits(DigitSet),
    Cloud(PointCloud),
}

impl Counted {
    fn load(s: &SetInput) -> CliResult<Self> {
        match (&s.set, &s.input) {
            (Some(name), None) => Ok(Counted::Digits(parse::digit_set(name, s.z.as_deref())?)),
            (None, Some(path)) => Ok(Counted::Cloud(CloudFile::read(path)?.to_cloud()?)),
            _ => Err(CliError::Parse("give exactly one of --set and --in".into())),
        }
    }

    fn as_set(&self) -> CountedSet<'_> {
        match self {
            Counted::Digits(d) => CountedSet::Digits(d),
            Counted::Cloud(c) => CountedSet::Cloud(c),
        }
    }

    fn side(&self, depth: usize) -> Rational {
        match self {
            Counted::Digits(d) => d.side(depth),
            Counted::Cloud(_) => pow2(-(depth as i64)),
        }
    }
}

fn boxdim(set: &SetInput, depths: Option<&str>, scales: Option<&str>) -> CliResult<Value> {
    let counted = Counted::load(set)?;
    let scales: Vec<Rational> = match (depths, scales) {
        (Some(d), None) => parse::range(d)?.map(|k| counted.side(k as usize)).collect(),
        (None, Some(s)) => parse::rats(s)?,
        _ => return Err(CliError::Parse("give exactly one of --depths and --scales".into())),
    };
    let counts = ScaleCounts::of(counted.as_set(), &scales)?;
    let est = box_dimension(&counts)?;
    let rows: Vec<Value> = counts.rows.iter().map(|(r, c)| json!({ "r": q(r), "count": big(c) })).collect();
    Ok(json!({
        "rows": rows,
        "~lower": approx(est.lower),
        "~upper": approx(est.upper),
        "~least_squares": approx(est.least_squares),
        "~residual": approx(est.residual),
    }))
}

fn assouad(set: &SetInput, window: &str, step: &str, c_max: &str, s_max: &str) -> CliResult<Value> {
    let counted = Counted::load(set)?;
    let w = parse::range(window)?;
    let (first, last) = (*w.start() as usize, *w.end() as usize);
    let (big_scales, small_scales) = match &counted {
        Counted::Digits(d) => depth_window_pairs(d, first, last),
        Counted::Cloud(_) => {
            let mut pairs = (Vec::new(), Vec::new());
            for a in first..=last {
                for b in (a + 1)..=last {
                    pairs.0.push(counted.side(a));
                    pairs.1.push(counted.side(b));
                }
            }
            pairs
        }
    };
    let cfg = AssouadConfig { step: parse::rat(step)?, c_max: parse::rat(c_max)?, s_max: parse::rat(s_max)? };
    let est = assouad_exponent(counted.as_set(), &big_scales, &small_scales, &cfg)?;
    let counts: Vec<Value> = est
        .counts
        .iter()
        .map(|c| json!({ "R": q(&c.big), "r": q(&c.small), "count": big(&c.count) }))
        .collect();
    Ok(json!({ "exponent": q(&est.exponent), "~exponent": approx(est.exponent_f64()), "counts": counts }))
}

fn kdim(digits: &DigitInput, point: Option<&str>, r: &str, arg: &CompressorArg) -> CliResult<Value> {
    let m = compressor(arg)?;
    let x = match point {
        Some(p) => PrecisionPoint::Exact(RationalPoint::new(parse::rats(p)?)?),
        None => PrecisionPoint::Digits(digit_matrix(digits)?),
    };
    let rs: Vec<u32> = parse::range(r)?
        .map(|v| u32::try_from(v).map_err(|_| CliError::Parse(format!("precision {v} too large"))))
        .collect::<CliResult<_>>()?;
    let est = schnorr_dims(&x, m.as_ref(), &rs)?;
    let rows: Vec<Value> = est
        .rows
        .iter()
        .map(|&(r, c)| json!({ "r": r, "complexity": c, "~ratio": approx(if r == 0 { 0.0 } else { c as f64 / f64::from(r) }) }))
        .collect();
    Ok(json!({
        "compressor": compressor_info(m.as_ref()),
        "rows": rows,
        "~lower": approx(est.lower),
        "~upper": approx(est.upper),
    }))
}

fn cocompress(
    bits: Option<&str>,
    zeros: Option<usize>,
    g_shift: u32,
    s: &str,
    k_max: u32,
    arg: &CompressorArg,
) -> CliResult<Value> {
    let m = compressor(arg)?;
    let x = match (bits, zeros) {
        (Some(b), None) => parse::bits(b)?,
        (None, Some(n)) => Bits::zeros(n),
        _ => return Err(CliError::Parse("give exactly one of --bits and --zeros".into())),
    };
    if k_max + g_shift + 1 >= 63 {
        return Err(CliError::Parse("k_max + g_shift too large".into()));
    }
    let g = move |k: u32| 1u64 << (k + g_shift);
    let per_k = co_compressible_check(&x, m.as_ref(), &g, &parse::rat(s)?, k_max)?;
    Ok(json!({
        "compressor": compressor_info(m.as_ref()),
        "s": q(&parse::rat(s)?),
        "per_k": per_k,
        "all": per_k.iter().all(|&b| b),
    }))
}

fn pf_transform(payload: Option<&str>, max_len: Option<usize>, arg: &CompressorArg) -> CliResult<Value> {
    let m = compressor(arg)?;
    let pf = PrefixFreeMachine::new(m.as_ref());
    let mut out = serde_json::Map::new();
    out.insert("compressor".into(), compressor_info(m.as_ref()));
    if let Some(p) = payload {
        let tau = parse::bits(p)?;
        let compressed = m.encode(&tau)?;
        let code = pf.code(&compressed);
        out.insert(
            "payload".into(),
            json!({
                "input": tau.to_string(),
                "compressed": compressed.to_string(),
                "code": code.to_string(),
                "complexity": code.len(),
                "bound": transform_bound(compressed.len()),
            }),
        );
    }
    if let Some(max) = max_len {
        let codes = pf.codes(max);
        let mut sorted: Vec<&Bits> = codes.iter().collect();
        sorted.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        let prefix_free = sorted.windows(2).all(|w| !w[0].is_prefix_of(w[1]));
        let sums = pf.halting_partial_sums(max);
        let kraft = sums.last().cloned().unwrap_or_default();
        out.insert(
            "codes".into(),
            json!({
                "max_len": max,
                "count": codes.len(),
                "prefix_free": prefix_free,
                "kraft_sum": q(&kraft),
                "~kraft_sum": approx(effdim_core::rational::to_f64(&kraft)),
                "partial_sums": qs(&sums),
            }),
        );
    }
    if out.len() == 1 {
        return Err(missing("--payload or --max-len"));
    }
    Ok(Value::Object(out))
}

fn orbit(map: &str, x0: &str, budget: usize, tol: &str) -> CliResult<Value> {
    let f = parse::pl_map(map)?;
    let budget = capped(budget as u64)? as usize;
    let report = orbit_analyze(&f, &parse::rat(x0)?, budget, &parse::rat(tol)?)?;
    let class = match &report.class {
        OrbitClass::Preperiodic { tail, period } => json!({ "kind": "preperiodic", "tail": tail, "period": period }),
        OrbitClass::AsymptoticallyPeriodic { cycle, tolerance, steps } => json!({
            "kind": "asymptotically_periodic",
            "cycle": qs(cycle),
            "tolerance": q(tolerance),
            "steps": steps,
        }),
        OrbitClass::Unknown { budget } => json!({ "kind": "unknown", "budget": budget }),
    };
    Ok(json!({ "class": class, "orbit_prefix": qs(&report.orbit_prefix) }))
}

fn il_encode(map: &str, traj: &str) -> CliResult<Value> {
    let sys = InverseSystem::Constant(parse::pl_map(map)?);
    let code = sys.encode_point(&parse::rats(traj)?)?;
    Ok(json!({ "x0": q(&code.x0), "word": code.word, "ex_time": code.ex_time }))
}

fn il_decode(map: &str, x0: &str, word: &str) -> CliResult<Value> {
    let sys = InverseSystem::Constant(parse::pl_map(map)?);
    let word: Vec<usize> = parse::uints(word)?.into_iter().map(|w| w as usize).collect();
    let depth = word.len();
    let code = BranchCode { x0: parse::rat(x0)?, word, ex_time: Vec::new() };
    Ok(json!({ "trajectory": qs(&sys.decode_point(&code, depth)?) }))
}

fn il_tree(map: &str, x0: &str, depth: usize, leaves: bool) -> CliResult<Value> {
    let sys = InverseSystem::Constant(parse::pl_map(map)?);
    let tree = sys.branching_tree(&parse::rat(x0)?, depth)?;
    let level_sizes: Vec<usize> = tree.levels.iter().map(Vec::len).collect();
    let mut out = json!({
        "depth": tree.depth(),
        "leaf_count": tree.leaf_count(),
        "full_binary": tree.is_full_binary(),
        "level_sizes": level_sizes,
    });
    if leaves {
        let list: Vec<Value> = tree.levels[depth]
            .iter()
            .enumerate()
            .map(|(i, node)| json!({ "word": tree.word(depth, i), "value": q(&node.value) }))
            .collect();
        out["leaves"] = Value::Array(list);
    }
    Ok(out)
}

fn kappa(file: &CoverFile, x: &str, vertices: Option<&str>) -> CliResult<Value> {
    let u = file.to_cover()?;
    let x = RationalPoint::new(parse::rats(x)?)?;
    let weights = kappa_weights(&x, &u)?;
    let mut out = json!({ "weights": qs(&weights), "support": u.members_at(&x) });
    if let Some(v) = vertices {
        let image = kappa_map(&x, &u, &parse::points(v)?)?;
        out["image"] = qs(image.coords());
    }
    Ok(out)
}

fn cover_json(u: &FiniteCover) -> CliResult<Value> {
    let members: Vec<Value> = u
        .members()
        .iter()
        .map(|m| serde_json::to_value(m.balls().iter().map(BallSpec::from_ball).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "members": members,
        "parents": u.parents(),
        "multiplicity": cover_multiplicity(u)?,
        "mesh": q(&u.mesh()),
    }))
}

fn refine(file: &CoverFile, target_mult: usize, mesh: &str, budget: u64) -> CliResult<Value> {
    let u = file.to_cover()?;
    let cfg = RefineConfig { target_mult, mesh: parse::rat(mesh)?, budget: capped(budget)? };
    cover_json(&refine_cover(&u, &cfg)?)
}

#[allow(clippy::too_many_arguments)]
fn condense(
    t: Option<&str>,
    q_prefix: Option<&str>,
    stages: usize,
    xs: Option<&str>,
    samples: usize,
    anchors: Option<&str>,
    fiber: u64,
    rng: &mut ChaCha8Rng,
) -> CliResult<PointCloud> {
    let path = match anchors {
        Some(a) => SegmentPath::table(parse::points(a)?)?,
        None => SegmentPath::dyadic(1)?,
    };
    let avoid: Vec<Rational> = match (t, q_prefix) {
        (Some(t), None) => vec![parse::rat(t)?],
        (None, Some(qs)) => parse::rats(qs)?,
        _ => return Err(CliError::Parse("give exactly one of --t and --q".into())),
    };
    let xs: Vec<Rational> = match xs {
        Some(x) => parse::rats(x)?,
        None => {
            let mut out = Vec::with_capacity(samples);
            while out.len() < samples {
                let x = ratio(rng.gen_range(0..=1 << 20), 1 << 20);
                if !avoid.contains(&x) {
                    out.push(x);
                }
            }
            out
        }
    };
    let e = Interval::unit();
    Ok(match t {
        Some(_) => sample_s(&e, &path, &avoid[0], &xs, fiber)?,
        None => iterate_s(&e, &path, &avoid, stages, &xs)?,
    })
}

fn chain_spec(g: &str, kappa: Option<&str>, stages: usize) -> CliResult<Value> {
    let g = parse::uints(g)?;
    let kappa = kappa.map(parse::uints).transpose()?;
    let spec = chain_descriptor(&g, kappa.as_deref(), stages)?;
    let stages: Vec<Value> = spec
        .stages
        .iter()
        .map(|s| json!({ "link_size": s.link_size, "link_count": s.link_count }))
        .collect();
    let glue: Vec<Value> = spec.glue.iter().map(|gl| json!({ "a": [gl.a.0, gl.a.1], "b": [gl.b.0, gl.b.1] })).collect();
    Ok(json!({ "stages": stages, "glue": glue, "total_links": spec.total_links() }))
}
