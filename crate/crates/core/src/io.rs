//! JSON input formats and `builtin:` references.
//!
//! Arrangement file: `{ "lines": [["1", "0", "-1"], ...] }` with entries in
//! the textual form of `Q(z)`.
//!
//! Cover file: `{ "arrangement": <ref>, "m": 5, "k": 2, "phi": [[1, 1], ...],
//! "blow_up": "all_r_ge_3" | [1-based point ids] }`. A relative arrangement
//! path is resolved against the cover file's directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Line};
use crate::bounds::HodgeData;
use crate::builtin;
use crate::cover::CoverModel;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::homology::Epimorphism;
use crate::intersection::BlowUp;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub lines: Vec<[CycNumber; 3]>,
}

impl ArrangementFile {
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        ArrangementFile {
            lines: arr.lines().iter().map(|l| l.coeffs().clone()).collect(),
        }
    }

    pub fn build(self) -> Result<Arrangement> {
        let lines = self.lines.into_iter().map(Line::new).collect::<Result<Vec<_>>>()?;
        Arrangement::new(lines)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlowUpSpec {
    Named(String),
    Points(Vec<usize>),
}

impl Default for BlowUpSpec {
    fn default() -> Self {
        BlowUpSpec::Named("all_r_ge_3".into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverFile {
    pub arrangement: String,
    pub m: u32,
    pub k: usize,
    pub phi: Vec<Vec<i64>>,
    #[serde(default)]
    pub blow_up: BlowUpSpec,
}

/// A `builtin:` name, if `reference` is one.
fn builtin_name(reference: &str) -> Option<&str> {
    reference.strip_prefix("builtin:")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn parse_arrangement(json: &str) -> Result<Arrangement> {
    serde_json::from_str::<ArrangementFile>(json)?.build()
}

fn resolve(reference: &str, base: Option<&Path>) -> PathBuf {
    let p = PathBuf::from(reference);
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p,
    }
}

fn load_arrangement_from(reference: &str, base: Option<&Path>) -> Result<Arrangement> {
    match builtin_name(reference) {
        Some(name) => builtin::arrangement(name).ok_or_else(|| Error::UnknownBuiltin(reference.to_string())),
        None => parse_arrangement(&read(&resolve(reference, base))?),
    }
}

/// `builtin:dual_hesse`, `builtin:complete_quadrilateral`,
/// `builtin:example1..3` (their arrangements), or a path.
pub fn load_arrangement(reference: &str) -> Result<Arrangement> {
    load_arrangement_from(reference, None)
}

pub fn parse_cover(json: &str, base: Option<&Path>) -> Result<CoverModel> {
    let file: CoverFile = serde_json::from_str(json)?;
    let arr = load_arrangement_from(&file.arrangement, base)?;
    let phi = Epimorphism::validated(file.m, file.phi)?;
    if phi.rank() != file.k {
        return Err(Error::InvalidEpimorphism(format!(
            "rows have length {} but k = {}",
            phi.rank(),
            file.k
        )));
    }
    if phi.line_count() != arr.line_count() {
        return Err(Error::Inconsistent(format!(
            "{} rows for {} lines",
            phi.line_count(),
            arr.line_count()
        )));
    }
    let blown = match &file.blow_up {
        BlowUpSpec::Named(s) if s == "all_r_ge_3" => BlowUp::all_r_ge_3(&arr),
        BlowUpSpec::Named(s) => return Err(Error::Parse(format!("unknown blow-up set `{s}`"))),
        BlowUpSpec::Points(ids) => {
            if ids.contains(&0) {
                return Err(Error::Parse("point ids are 1-based".into()));
            }
            let ids: Vec<usize> = ids.iter().map(|i| i - 1).collect();
            BlowUp::from_ids(&arr, &ids)?
        }
    };
    CoverModel::new(arr, phi, blown)
}

/// `builtin:example1..3` or a path to a cover file.
pub fn load_cover(reference: &str) -> Result<CoverModel> {
    match builtin_name(reference) {
        Some(name) => {
            let e = builtin::example(name).ok_or_else(|| Error::UnknownBuiltin(reference.to_string()))?;
            CoverModel::with_default_blowup(e.arrangement, e.phi)
        }
        None => {
            let path = Path::new(reference);
            parse_cover(&read(path)?, path.parent())
        }
    }
}

pub fn load_hodge(path: &Path) -> Result<HodgeData> {
    let h: HodgeData = serde_json::from_str(&read(path)?)?;
    h.validate()?;
    Ok(h)
}
