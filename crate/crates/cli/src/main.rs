//! `effdim`: command-line front end for the effdim-core library.

mod commands;
mod error;
mod external;
mod files;
mod output;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "effdim", version, about = "Exact effective-dimension computations")]
pub struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct DigitInput {
    /// Digit stream file (JSON).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Comma-separated digit rows, one character per digit.
    #[arg(long)]
    pub rows: Option<String>,
    /// Bound rule: ternary, <c>, affine:<o>, table:<z0>,<z1>,…
    #[arg(long, default_value = "ternary")]
    pub z: String,
    /// Comma-separated tails: unknown, zeros, maxes, periodic:<digits>.
    #[arg(long)]
    pub tails: Option<String>,
}

#[derive(Args, Debug)]
pub struct SetInput {
    /// cantor, carpet, sponge or menger:<m>,<n>.
    #[arg(long)]
    pub set: Option<String>,
    /// Bound rule for the digit set.
    #[arg(long)]
    pub z: Option<String>,
    /// Point cloud file (JSON, or CSV by extension).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompressorArg {
    /// identity, runlength, dictionary or external:<command>.
    #[arg(long, default_value = "dictionary")]
    pub compressor: String,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Menger compactum membership of a digit matrix.
    MengerCheck {
        #[command(flatten)]
        digits: DigitInput,
        #[arg(long)]
        n: usize,
    },
    /// Nöbeling membership: coordinates are rationals, `irrational` or `stream`.
    NoebelingCheck {
        #[arg(long)]
        coords: String,
        #[arg(long)]
        n: usize,
    },
    /// Digit matrix of the explicit generic point for a symbol word.
    GenericPoint {
        #[arg(long)]
        n: usize,
        /// Word length; a seeded random word is drawn when --word is absent.
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Box counts and box-dimension estimates.
    Boxdim {
        #[command(flatten)]
        set: SetInput,
        /// Cell depths a..b (clouds use r = 2^-k).
        #[arg(long)]
        depths: Option<String>,
        /// Explicit comma-separated scales.
        #[arg(long)]
        scales: Option<String>,
    },
    /// Assouad exponent over all depth pairs of a window.
    Assouad {
        #[command(flatten)]
        set: SetInput,
        /// Depth window a..b.
        #[arg(long)]
        window: String,
        #[arg(long, default_value = "1/64")]
        step: String,
        #[arg(long, default_value = "4")]
        c_max: String,
        #[arg(long, default_value = "64")]
        s_max: String,
    },
    /// Complexity at precision and Schnorr-dimension estimates.
    Kdim {
        #[command(flatten)]
        digits: DigitInput,
        /// An exact point instead of a digit stream.
        #[arg(long)]
        point: Option<String>,
        /// Precisions a..b.
        #[arg(long)]
        r: String,
        #[command(flatten)]
        compressor: CompressorArg,
    },
    /// c.o.-compressibility test of a bit-string prefix.
    Cocompress {
        /// Bit string; or use --zeros.
        #[arg(long)]
        bits: Option<String>,
        /// All-zero prefix of this length.
        #[arg(long)]
        zeros: Option<usize>,
        /// Order function g(k) = 2^(k+shift).
        #[arg(long, default_value_t = 4)]
        g_shift: u32,
        #[arg(long)]
        s: String,
        #[arg(long)]
        k_max: u32,
        #[command(flatten)]
        compressor: CompressorArg,
    },
    /// Prefix-free lift of a compressor.
    PfTransform {
        /// Payload bits to encode.
        #[arg(long)]
        payload: Option<String>,
        /// Check all codes with payloads up to this length.
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        compressor: CompressorArg,
    },
    /// Forward-orbit classification.
    Orbit {
        /// tent, five or x:y,x:y,…
        #[arg(long, default_value = "tent")]
        map: String,
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value = "1/1048576")]
        tol: String,
    },
    /// Branch code of a trajectory.
    IlEncode {
        #[arg(long, default_value = "tent")]
        map: String,
        /// Comma-separated trajectory x(0), x(1), …
        #[arg(long)]
        traj: String,
    },
    /// Trajectory of a branch code.
    IlDecode {
        #[arg(long, default_value = "tent")]
        map: String,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        word: String,
    },
    /// Tree of branch words above x0.
    IlTree {
        #[arg(long, default_value = "tent")]
        map: String,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        depth: usize,
        /// Also list the leaves.
        #[arg(long)]
        leaves: bool,
    },
    /// κ-mapping weights (and image, with --vertices) of a point.
    Kappa {
        /// Cover file (JSON).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        /// Semicolon-separated vertex points.
        #[arg(long)]
        vertices: Option<String>,
    },
    /// Low-multiplicity, small-mesh refinement of a cover.
    Refine {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target_mult: usize,
        #[arg(long)]
        mesh: String,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Sample a condensation space S(E,K,t), or iterate it over a Q prefix.
    CondenseSample {
        /// Singular point (single stage).
        #[arg(long)]
        t: Option<String>,
        /// Q prefix for iterated stages.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        /// Comma-separated samples; otherwise --samples seeded random points.
        #[arg(long)]
        xs: Option<String>,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Semicolon-separated anchors of K (default: dyadic points of [0,1]).
        #[arg(long)]
        anchors: Option<String>,
        /// Fiber points appended (single stage only).
        #[arg(long, default_value_t = 0)]
        fiber: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Link and glue bookkeeping of the chain construction.
    ChainSpec {
        #[arg(long)]
        g: String,
        /// κ values per stage (default 2^g(i)).
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long)]
        stages: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("effdim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Reads `EFFDIM_STEP_BUDGET`, which caps every search budget.
pub fn budget_cap() -> Result<Option<u64>, CliError> {
    match std::env::var("EFFDIM_STEP_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Parse(format!("EFFDIM_STEP_BUDGET is not an integer: {v:?}"))),
        Err(_) => Ok(None),
    }
}
