//! JSON files for collections, quivers and potentials, and the `builtin:` scheme.
//!
//! Output is pretty-printed with a trailing newline and fixed key order, so a
//! parse followed by a write reproduces any file this module wrote.

use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::collections::{BraidWord, CollectionError, ExceptionalSequence};
use crate::kernel::{format_rational, parse_rational, KernelError, Rational};
use crate::lattice::{KClass, SurfaceContext};
use crate::quiver::{
    rollup_quiver_from_foundation, Arrow, CyclicClass, Potential, PotentialError, PotentialOptions, Quiver,
    QuiverError, RollupError,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Rational(#[from] KernelError),
    #[error("bad braid word: {0}")]
    BraidWord(CollectionError),
    // the rest are validation failures of well-formed files
    #[error(transparent)]
    Collection(#[from] CollectionError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Rollup(#[from] RollupError),
}

impl FormatError {
    /// Unreadable or unparsable input, as opposed to well-formed but invalid data.
    pub fn is_parse_failure(&self) -> bool {
        matches!(
            self,
            FormatError::Io { .. }
                | FormatError::Json { .. }
                | FormatError::UnknownBuiltin(_)
                | FormatError::Rational(_)
                | FormatError::BraidWord(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionFile {
    pub surface: SurfaceContext,
    pub base_index: i64,
    pub classes: Vec<KClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid_word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl CollectionFile {
    pub fn from_sequence(s: &ExceptionalSequence) -> Self {
        Self {
            surface: s.ctx,
            base_index: s.base_index,
            classes: s.classes.clone(),
            braid_word: None,
            provenance: None,
        }
    }

    pub fn sequence(&self) -> Result<ExceptionalSequence, CollectionError> {
        ExceptionalSequence::new(self.surface, self.classes.clone(), self.base_index)
    }

    pub fn braid(&self) -> Result<BraidWord, FormatError> {
        self.braid_word.as_deref().unwrap_or("").parse().map_err(FormatError::BraidWord)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub id: String,
    pub source: u32,
    pub target: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<u32>>,
    pub arrows: Vec<ArrowRecord>,
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver) -> Self {
        Self {
            vertices: q.vertices().to_vec(),
            order: q.vertex_order().map(|o| o.to_vec()),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowRecord { id: a.id.clone(), source: a.source, target: a.target })
                .collect(),
        }
    }

    pub fn quiver(&self) -> Result<Quiver, QuiverError> {
        let arrows =
            self.arrows.iter().map(|a| Arrow { id: a.id.clone(), source: a.source, target: a.target }).collect();
        Quiver::new(self.vertices.clone(), arrows, self.order.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    /// Arrow ids, right to left.
    pub cycle: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialFile {
    pub quiver_ref: String,
    pub terms: Vec<TermRecord>,
}

impl PotentialFile {
    pub fn from_potential(q: &Quiver, phi: &Potential, quiver_ref: &str) -> Self {
        Self {
            quiver_ref: quiver_ref.to_string(),
            terms: phi.terms().map(|(c, v)| TermRecord { cycle: c.ids(q), coeff: format_rational(v) }).collect(),
        }
    }

    pub fn potential(&self, q: &Quiver, opts: PotentialOptions) -> Result<Potential, FormatError> {
        let mut terms: Vec<(CyclicClass, Rational)> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((CyclicClass::from_ids(q, &t.cycle)?, parse_rational(&t.coeff)?));
        }
        Ok(Potential::new(q, terms, opts)?)
    }
}

/// Shipped foundations: `(name, file contents)`.
pub const BUILTIN_COLLECTIONS: &[(&str, &str)] = &[
    ("p2", include_str!("../data/p2.json")),
    ("quadric", include_str!("../data/quadric.json")),
    ("blowup1", include_str!("../data/blowup1.json")),
    ("blowup2", include_str!("../data/blowup2.json")),
    ("blowup3", include_str!("../data/blowup3.json")),
    ("p2-misordered", include_str!("../data/p2-misordered.json")),
];

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("file records serialize");
    s.push('\n');
    s
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|source| FormatError::Json { path: path.to_string(), source })
}

fn read_text(path: &FsPath) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn builtin_collection_text(name: &str) -> Result<&'static str, FormatError> {
    BUILTIN_COLLECTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| FormatError::UnknownBuiltin(name.to_string()))
}

pub fn builtin_collection(name: &str) -> Result<CollectionFile, FormatError> {
    parse_json(builtin_collection_text(name)?, &format!("builtin:{name}"))
}

pub fn builtin_foundation(name: &str) -> Result<ExceptionalSequence, FormatError> {
    Ok(builtin_collection(name)?.sequence()?)
}

/// `builtin:NAME` or a file path.
pub fn read_collection(src: &str) -> Result<CollectionFile, FormatError> {
    match src.strip_prefix("builtin:") {
        Some(name) => builtin_collection(name),
        None => parse_json(&read_text(FsPath::new(src))?, src),
    }
}

/// `builtin:NAME` (the rolled-up quiver of that foundation) or a quiver file path.
pub fn read_quiver(src: &str) -> Result<Quiver, FormatError> {
    match src.strip_prefix("builtin:") {
        Some(name) => Ok(rollup_quiver_from_foundation(&builtin_foundation(name)?)?.quiver),
        None => Ok(parse_json::<QuiverFile>(&read_text(FsPath::new(src))?, src)?.quiver()?),
    }
}

/// Reads a potential file and the quiver it refers to; relative quiver paths
/// are resolved against the potential file's directory.
pub fn read_potential(src: &str, opts: PotentialOptions) -> Result<(Quiver, Potential, PotentialFile), FormatError> {
    let file: PotentialFile = parse_json(&read_text(FsPath::new(src))?, src)?;
    let qref = if file.quiver_ref.starts_with("builtin:") {
        file.quiver_ref.clone()
    } else {
        let p = PathBuf::from(&file.quiver_ref);
        let p = if p.is_relative() { FsPath::new(src).parent().map(|d| d.join(&p)).unwrap_or(p) } else { p };
        p.display().to_string()
    };
    let q = read_quiver(&qref)?;
    let phi = file.potential(&q, opts)?;
    Ok((q, phi, file))
}

pub fn parse_collection(text: &str) -> Result<CollectionFile, FormatError> {
    parse_json(text, "<input>")
}

pub fn parse_quiver(text: &str) -> Result<QuiverFile, FormatError> {
    parse_json(text, "<input>")
}

pub fn parse_potential(text: &str) -> Result<PotentialFile, FormatError> {
    parse_json(text, "<input>")
}

/// Writes through a temporary file in the same directory and renames it into place.
pub fn write_atomic(path: &FsPath, contents: &str) -> Result<(), FormatError> {
    let io = |source| FormatError::Io { path: path.display().to_string(), source };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(FsPath::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip_bit_exactly() {
        for (name, text) in BUILTIN_COLLECTIONS {
            let f = parse_collection(text).unwrap();
            assert_eq!(to_json(&f), *text, "{name}");
            f.sequence().unwrap();
            f.braid().unwrap();
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_collection("{").unwrap_err().is_parse_failure());
        assert!(parse_collection(r#"{"surface":{"kind":"torus"},"base_index":1,"classes":[]}"#).is_err());
        assert!(builtin_collection("nope").unwrap_err().is_parse_failure());
        let bad_len = r#"{"surface":{"kind":"quadric"},"base_index":1,"classes":[{"rank":1,"c1":[0],"twice_ch2":0}]}"#;
        let f = parse_collection(bad_len).unwrap();
        assert!(f.sequence().is_err());
    }

    #[test]
    fn quiver_and_potential_round_trip() {
        let q = read_quiver("builtin:p2").unwrap();
        let qf = QuiverFile::from_quiver(&q);
        let text = to_json(&qf);
        assert_eq!(to_json(&parse_quiver(&text).unwrap()), text);
        assert_eq!(parse_quiver(&text).unwrap().quiver().unwrap().num_arrows(), 9);

        let c = CyclicClass::from_ids(&q, &["x131", "x321", "x211"]).unwrap();
        let phi = Potential::new(&q, [(c, crate::kernel::rational(-2, 3))], PotentialOptions::default()).unwrap();
        let pf = PotentialFile::from_potential(&q, &phi, "builtin:p2");
        assert_eq!(pf.terms[0].coeff, "-2/3");
        let text = to_json(&pf);
        let back = parse_potential(&text).unwrap();
        assert_eq!(back.potential(&q, PotentialOptions::default()).unwrap(), phi);
        assert_eq!(to_json(&back), text);
    }
}
