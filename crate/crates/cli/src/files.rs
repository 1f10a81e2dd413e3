//! Input and output file schemas.

use std::fs;
use std::path::Path;

use effdim_core::cover::{Carrier, FiniteCover, OpenSet};
use effdim_core::dimension::PointCloud;
use effdim_core::fractal::{DigitMatrix, Tail};
use effdim_core::rational::format_ratio;
use effdim_core::{FormalBall, RationalPoint};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::parse;

/// `{dim, points: [["p/q", …], …], meta}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloudFile {
    pub dim: usize,
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub meta: String,
}

impl CloudFile {
    pub fn from_cloud(cloud: &PointCloud) -> Self {
        Self {
            dim: cloud.dim(),
            points: cloud
                .points()
                .iter()
                .map(|p| p.coords().iter().map(format_ratio).collect())
                .collect(),
            meta: cloud.meta.clone(),
        }
    }

    pub fn to_cloud(&self) -> CliResult<PointCloud> {
        let points = self
            .points
            .iter()
            .map(|p| {
                let coords = p.iter().map(|c| parse::rat(c)).collect::<CliResult<Vec<_>>>()?;
                Ok(RationalPoint::new(coords)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PointCloud::new(self.dim, points, self.meta.clone())?)
    }

    /// CSV with a header row `x0,x1,…`.
    pub fn parse_csv(text: &str) -> CliResult<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let dim = reader.headers()?.len();
        let mut points = Vec::new();
        for record in reader.records() {
            let record = record?;
            points.push(record.iter().map(str::to_owned).collect());
        }
        Ok(Self { dim, points, meta: String::from("csv") })
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record((0..self.dim).map(|i| format!("x{i}")))?;
        for p in &self.points {
            writer.write_record(p)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// JSON, or CSV when the file name ends in `.csv`.
    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            Self::parse_csv(&text)
        } else {
            Ok(serde_json::from_str(&text)?)
        }
    }
}

/// `{base_rule, rows: ["0120…", …], depth, tails}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitStreamFile {
    pub base_rule: String,
    pub rows: Vec<String>,
    pub depth: usize,
    #[serde(default)]
    pub tails: Vec<String>,
}

impl DigitStreamFile {
    pub fn read(path: &Path) -> CliResult<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn from_matrix(d: &DigitMatrix) -> Self {
        Self {
            base_rule: parse::bound_seq_text(d.z()),
            rows: d.rows().iter().map(|r| parse::digit_text(r)).collect(),
            depth: d.depth(),
            tails: d.tails().iter().map(tail_text).collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<DigitMatrix> {
        let z = parse::bound_seq(&self.base_rule)?;
        let rows = self.rows.iter().map(|r| parse::digit_row(r)).collect::<CliResult<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != self.depth) {
            return Err(CliError::Parse(format!("every row must have depth {} digits", self.depth)));
        }
        let tails = if self.tails.is_empty() {
            vec![Tail::Unknown; rows.len()]
        } else {
            self.tails.iter().map(|t| parse::tail(t)).collect::<CliResult<Vec<_>>>()?
        };
        Ok(DigitMatrix::with_tails(z, rows, tails)?)
    }
}

pub fn tail_text(t: &Tail) -> String {
    match t {
        Tail::Unknown => "unknown".into(),
        Tail::Zeros => "zeros".into(),
        Tail::Maxes => "maxes".into(),
        Tail::Periodic(b) => format!("periodic:{}", parse::digit_text(b)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallSpec {
    pub center: Vec<String>,
    pub radius: String,
}

impl BallSpec {
    pub fn from_ball(b: &FormalBall) -> Self {
        Self {
            center: b.center().coords().iter().map(format_ratio).collect(),
            radius: format_ratio(b.radius()),
        }
    }

    fn to_ball(&self) -> CliResult<FormalBall> {
        let c = self.center.iter().map(|c| parse::rat(c)).collect::<CliResult<Vec<_>>>()?;
        Ok(FormalBall::new(RationalPoint::new(c)?, parse::rat(&self.radius)?)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CarrierSpec {
    /// Dyadic grid of mesh `2^{-depth}` on `[0,1]^dim`.
    Grid { dim: usize, depth: u32 },
    Cloud { cloud: CloudFile, resolution: String },
    /// Cell corners of a digit set (`cantor`, `carpet`, `sponge`, `menger:m,n`).
    Digits { set: String, #[serde(default)] z: Option<String>, depth: usize },
}

/// `{members: [[ball, …], …], carrier}`; each member is a union of balls.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverFile {
    pub members: Vec<Vec<BallSpec>>,
    pub carrier: CarrierSpec,
}

impl CoverFile {
    pub fn read(path: &Path) -> CliResult<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn to_cover(&self) -> CliResult<FiniteCover> {
        let carrier = match &self.carrier {
            CarrierSpec::Grid { dim, depth } => Carrier::grid(*dim, *depth)?,
            CarrierSpec::Cloud { cloud, resolution } => Carrier::cloud(&cloud.to_cloud()?, parse::rat(resolution)?)?,
            CarrierSpec::Digits { set, z, depth } => Carrier::digits(&parse::digit_set(set, z.as_deref())?, *depth),
        };
        let members = self
            .members
            .iter()
            .map(|m| Ok(OpenSet::new(m.iter().map(BallSpec::to_ball).collect::<CliResult<Vec<_>>>()?)?))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(FiniteCover::new(members, carrier)?)
    }
}
