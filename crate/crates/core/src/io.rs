//! Problem files, run manifests and artifact layout.
//!
//! Problem file:
//! `{"atoms":[{"t":-1.0,"mu":1.0},...],"a":[[1.0,0.0],...],"b":[...],"kappa":[1.0,0.0]}`.
//! The rank-`n` form uses one row of `n` complex pairs per atom for `a` and
//! `b` and an `n × n` array for `kappa`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::numerics::linalg::CMat;
use crate::spectral_data::{Atom, DiscreteSpectralData, RankNData, RankOneData};
use crate::{Error, Result, C64, VERSION};

/// Overrides the output root `out/`.
pub const OUT_ENV: &str = "SINGPERT_OUT";

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    RankOne(RankOneData),
    RankN(RankNData),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    atoms: Vec<Atom>,
    a: Value,
    b: Value,
    kappa: Value,
}

#[derive(Serialize)]
struct CanonicalRankOne<'a> {
    atoms: &'a [Atom],
    a: Vec<[f64; 2]>,
    b: Vec<[f64; 2]>,
    kappa: [f64; 2],
}

#[derive(Serialize)]
struct CanonicalRankN<'a> {
    atoms: &'a [Atom],
    a: Vec<Vec<[f64; 2]>>,
    b: Vec<Vec<[f64; 2]>>,
    kappa: Vec<Vec<[f64; 2]>>,
}

fn complex(v: &Value, what: &str) -> Result<C64> {
    match v.as_array().map(|p| p.as_slice()) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(Error::InvalidData(format!(
                "{what}: expected [re, im] numbers"
            ))),
        },
        _ => Err(Error::InvalidData(format!(
            "{what}: expected a [re, im] pair"
        ))),
    }
}

fn is_pair(v: &Value) -> bool {
    matches!(v.as_array().map(|p| p.as_slice()), Some([x, y]) if x.is_number() && y.is_number())
}

fn vector(v: &Value, what: &str) -> Result<Vec<C64>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidData(format!("{what}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(k, x)| complex(x, &format!("{what}[{k}]")))
        .collect()
}

fn matrix(v: &Value, what: &str) -> Result<CMat> {
    let rows: Vec<Vec<C64>> = v
        .as_array()
        .ok_or_else(|| Error::InvalidData(format!("{what}: expected an array of rows")))?
        .iter()
        .enumerate()
        .map(|(k, r)| vector(r, &format!("{what}[{k}]")))
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidData(format!(
            "{what}: rows of unequal length"
        )));
    }
    Ok(CMat::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

/// Syntax and field errors carry line and column.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw: RawProblem = serde_json::from_str(text)?;
    let base = DiscreteSpectralData::new(raw.atoms)?;
    if is_pair(&raw.kappa) {
        let data = RankOneData::new(
            base,
            vector(&raw.a, "a")?,
            vector(&raw.b, "b")?,
            complex(&raw.kappa, "kappa")?,
        )?;
        Ok(Problem::RankOne(data))
    } else {
        let data = RankNData::new(
            base,
            matrix(&raw.a, "a")?,
            matrix(&raw.b, "b")?,
            matrix(&raw.kappa, "kappa")?,
        )?;
        Ok(Problem::RankN(data))
    }
}

pub fn read_problem(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path)?;
    parse_problem(&text).map_err(|e| match e {
        Error::Json(j) => Error::InvalidData(format!("{}: {j}", path.display())),
        other => other,
    })
}

/// Canonical form: pretty-printed with two-space indent, keys in the order
/// atoms, a, b, kappa, shortest round-trip float formatting, trailing newline.
pub fn serialize_problem(p: &Problem) -> String {
    let mut s = match p {
        Problem::RankOne(d) => serde_json::to_string_pretty(&CanonicalRankOne {
            atoms: d.base.atoms(),
            a: d.a.iter().copied().map(pair).collect(),
            b: d.b.iter().copied().map(pair).collect(),
            kappa: pair(d.kappa),
        }),
        Problem::RankN(d) => serde_json::to_string_pretty(&CanonicalRankN {
            atoms: d.base.atoms(),
            a: rows(&d.a),
            b: rows(&d.b),
            kappa: rows(&d.kappa),
        }),
    }
    .expect("finite data serializes");
    s.push('\n');
    s
}

impl Problem {
    /// Rank-one data; rank-`n` files with `n = 1` are accepted as well.
    pub fn rank_one(&self) -> Result<RankOneData> {
        match self {
            Problem::RankOne(d) => Ok(d.clone()),
            Problem::RankN(d) if d.rank() == 1 => RankOneData::new(
                d.base.clone(),
                d.a.column(0).iter().copied().collect(),
                d.b.column(0).iter().copied().collect(),
                d.kappa[(0, 0)],
            ),
            Problem::RankN(d) => Err(Error::BadParameters(format!(
                "command needs rank-one data, file has rank {}",
                d.rank()
            ))),
        }
    }

    pub fn rank_n(&self) -> RankNData {
        match self {
            Problem::RankOne(d) => d.to_rank_n(),
            Problem::RankN(d) => d.clone(),
        }
    }
}

/// Real sequence from a JSON array or whitespace/comma separated text;
/// `#` starts a comment line.
pub fn parse_sequence(text: &str) -> Result<Vec<f64>> {
    if text.trim_start().starts_with('[') {
        return Ok(serde_json::from_str(text)?);
    }
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<f64>()
                .map_err(|e| Error::InvalidData(format!("sequence entry '{w}': {e}")))
        })
        .collect()
}

pub fn read_sequence(path: &Path) -> Result<Vec<f64>> {
    parse_sequence(&fs::read_to_string(path)?)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    /// Digest of the canonical input, the canonical parameters and the seed.
    pub input_hash: String,
    pub seed: u64,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, Value>,
        input: Option<&Problem>,
        seed: u64,
    ) -> Self {
        let mut bytes = input
            .map(serialize_problem)
            .unwrap_or_default()
            .into_bytes();
        bytes.extend(serde_json::to_vec(&parameters).expect("parameters serialize"));
        bytes.extend(seed.to_le_bytes());
        RunManifest {
            command: command.into(),
            input_hash: sha256_hex(&bytes),
            parameters,
            seed,
            tool_version: VERSION.into(),
        }
    }

    /// `<root>/<command>/<input_hash>`; `root` defaults to `$SINGPERT_OUT`
    /// and then `out`.
    pub fn output_dir(&self, root: Option<&Path>) -> PathBuf {
        let root = match root {
            Some(r) => r.to_path_buf(),
            None => std::env::var_os(OUT_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("out")),
        };
        root.join(self.command.replace(' ', "-"))
            .join(&self.input_hash)
    }
}

#[derive(Serialize)]
struct Artifact<'a, T: Serialize> {
    manifest: &'a RunManifest,
    result: &'a T,
}

/// JSON text with the manifest embedded.
pub fn artifact_json<T: Serialize>(manifest: &RunManifest, result: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Artifact { manifest, result })?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(
    dir: &Path,
    name: &str,
    manifest: &RunManifest,
    result: &T,
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, artifact_json(manifest, result)?)?;
    Ok(path)
}

/// CSV grid; the manifest hash goes into a leading comment line.
pub fn write_csv(
    dir: &Path,
    name: &str,
    manifest: &RunManifest,
    header: &[&str],
    rows: &[Vec<f64>],
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut s = format!(
        "# {} {} {}\n",
        manifest.command, manifest.input_hash, manifest.tool_version
    );
    s.push_str(&header.join(","));
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:e}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    let path = dir.join(name);
    fs::write(&path, s)?;
    Ok(path)
}
