//! Arrangement files and reports.
//!
//! Arrangement files are JSON with `"format": 1` and either
//! `"kind": "coordinates"` (lines as triples of rational strings) or
//! `"kind": "incidence"` (points as line-id lists). Rationals are never
//! written as JSON numbers.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arrangement::{singular_locus, IncidenceStructure, Metadata, Origin};
use crate::error::{Error, Result};
use crate::projective::{fmt_rat, parse_rat, ProjLine};

pub mod report;

pub const FORMAT_VERSION: u32 = 1;

/// Overrides where `klein.json`, `wiman.json` and `a1_15.json` are read from.
pub const DATA_DIR_ENV: &str = "SESHADRI_DATA_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Coordinates,
    Incidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub id: usize,
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualLineEntry {
    pub name: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub format: u32,
    pub kind: FileKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_lines: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub virtual_lines: Vec<VirtualLineEntry>,
    /// Marks a partial selection of lines; count violations become warnings.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub subarrangement: bool,
}

/// A parsed structure plus the non-fatal validation messages.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub structure: IncidenceStructure,
    pub warnings: Vec<String>,
}

impl ArrangementFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.format != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format version {}",
                file.format
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("arrangement file serializes");
        out.push('\n');
        out
    }

    pub fn from_structure(s: &IncidenceStructure) -> Self {
        let meta = s.metadata();
        let virtual_lines = s
            .virtual_lines()
            .iter()
            .map(|v| VirtualLineEntry {
                name: v.name().to_string(),
                points: v.points().to_vec(),
            })
            .collect();
        let mut file = Self {
            format: FORMAT_VERSION,
            kind: FileKind::Incidence,
            name: meta.name.clone(),
            source: meta.source.clone(),
            lines: None,
            num_lines: None,
            points: None,
            virtual_lines,
            subarrangement: false,
        };
        match s.origin() {
            Origin::Coordinates(lines) => {
                file.kind = FileKind::Coordinates;
                file.lines = Some(
                    lines
                        .iter()
                        .map(|l| {
                            let [a, b, c] = l.coeffs();
                            [fmt_rat(a), fmt_rat(b), fmt_rat(c)]
                        })
                        .collect(),
                );
            }
            Origin::Abstract => {
                file.num_lines = Some(s.num_lines());
                file.points = Some(
                    s.points()
                        .iter()
                        .enumerate()
                        .map(|(id, p)| PointEntry {
                            id,
                            lines: p.lines().to_vec(),
                        })
                        .collect(),
                );
            }
        }
        file
    }

    /// Builds the structure without judging the counting identities.
    pub fn into_structure(self) -> Result<IncidenceStructure> {
        let meta = Metadata {
            name: self.name.clone(),
            source: self.source.clone(),
        };
        let virtual_lines: Vec<(String, Vec<usize>)> = self
            .virtual_lines
            .into_iter()
            .map(|v| (v.name, v.points))
            .collect();
        let s = match self.kind {
            FileKind::Coordinates => {
                let raw = self
                    .lines
                    .ok_or_else(|| Error::Parse("coordinates file without \"lines\"".into()))?;
                let lines = raw
                    .iter()
                    .map(|[a, b, c]| ProjLine::new([parse_rat(a)?, parse_rat(b)?, parse_rat(c)?]))
                    .collect::<Result<Vec<_>>>()?;
                singular_locus(&lines)?.with_virtual_lines(virtual_lines)?
            }
            FileKind::Incidence => {
                let num_lines = self
                    .num_lines
                    .ok_or_else(|| Error::Parse("incidence file without \"num_lines\"".into()))?;
                let mut entries = self
                    .points
                    .ok_or_else(|| Error::Parse("incidence file without \"points\"".into()))?;
                entries.sort_by_key(|p| p.id);
                if entries.iter().enumerate().any(|(i, p)| p.id != i) {
                    return Err(Error::Parse("point ids must be 0..n without gaps".into()));
                }
                IncidenceStructure::from_incidence(
                    num_lines,
                    entries.into_iter().map(|p| p.lines).collect(),
                    virtual_lines,
                )?
            }
        };
        Ok(s.with_metadata(meta))
    }

    /// Parses and validates. Count violations reject full incidence
    /// arrangements and are reported as warnings otherwise.
    pub fn load(self) -> Result<Loaded> {
        let strict = self.kind == FileKind::Incidence && !self.subarrangement;
        let structure = self.into_structure()?;
        let warnings: Vec<String> = structure
            .validate_counts()
            .violations
            .iter()
            .map(ToString::to_string)
            .collect();
        if strict && !warnings.is_empty() {
            return Err(Error::InvalidStructure(warnings.join("; ")));
        }
        Ok(Loaded {
            structure,
            warnings,
        })
    }
}

pub fn read_arrangement(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    ArrangementFile::from_json(&text)?.load()
}

/// Raw text of a bundled arrangement (`klein`, `wiman` or `a1_15`), read from
/// `data_dir` when given and from the copy compiled into the crate otherwise.
pub fn bundled_json(name: &str, data_dir: Option<&Path>) -> Result<String> {
    use crate::arrangement::generators as data;
    let embedded = match name {
        "klein" => data::KLEIN_JSON,
        "wiman" => data::WIMAN_JSON,
        "a1_15" => data::A1_15_JSON,
        other => {
            return Err(Error::BadParameter(format!(
                "no bundled arrangement named {other:?}"
            )))
        }
    };
    match data_dir {
        Some(dir) => {
            let path: PathBuf = dir.join(format!("{name}.json"));
            std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(embedded.to_string()),
    }
}
