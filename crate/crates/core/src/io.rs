//! JSON instance files and the checksummed fixture corpus.
//!
//! Every instance file is an object with a `"kind"` tag.  Numbers may be
//! JSON integers, `"p/q"` strings, or finite decimals (as JSON numbers or
//! strings); all of them are parsed exactly.  Rationals are always written
//! back as strings in canonical `"p/q"` (or `"p"`) form.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::applications::{DirectionalGraph, SpiderWeb};
use crate::complex::{ComplexKind, Fan, PointConfiguration, Subdivision, ValidationOptions};
use crate::error::{Error, Result};
use crate::relaxation::RelaxableSystem;
use crate::scalar::{to_text, Scalar};
use crate::Rational;

/// An exact rational as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_text(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl Visitor<'_> for QVisitor {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, a \"p/q\" string or a finite decimal")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Rational::parse_exact(&v.to_string())
                    .map(Q)
                    .map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Q, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite number"));
                }
                // The shortest round-trip decimal is the literal as written.
                Rational::parse_exact(&format!("{v:?}"))
                    .map(Q)
                    .map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                Rational::parse_exact(v).map(Q).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(QVisitor)
    }
}

impl From<Rational> for Q {
    fn from(r: Rational) -> Self {
        Q(r)
    }
}

/// Unwraps a JSON vector of rationals.
pub fn unq(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

/// Unwraps a JSON matrix of rationals.
pub fn unq2(v: &[Vec<Q>]) -> Vec<Vec<Rational>> {
    v.iter().map(|r| unq(r)).collect()
}

/// Wraps a vector of rationals for JSON.
pub fn q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

/// Wraps a matrix of rationals for JSON.
pub fn q2(v: &[Vec<Rational>]) -> Vec<Vec<Q>> {
    v.iter().map(|r| q(r)).collect()
}

/// A subdivision of a point configuration (or a fan section).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionFile {
    pub dimension: usize,
    pub points: Vec<Vec<Q>>,
    pub cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Wall names keyed by label, each given by its ridge's point indices.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub wall_labels: BTreeMap<String, Vec<usize>>,
    /// Height of the section plane when the file describes a fan section.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_height: Option<Q>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trusted: bool,
}

/// A polyhedral fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dimension: usize,
    pub rays: Vec<Vec<Q>>,
    pub cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub wall_labels: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trusted: bool,
}

/// A pinned planar cable network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WebFile {
    #[serde(default = "two")]
    pub dimension: usize,
    pub points: Vec<Vec<Q>>,
    pub cables: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinned: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cable_labels: BTreeMap<String, [usize; 2]>,
}

fn two() -> usize {
    2
}

/// A directional graph: arcs `[u, v, h(u,v)]`, optionally with a drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphFile {
    pub dimension: usize,
    pub vertices: usize,
    pub arcs: Vec<(usize, usize, Vec<Q>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drawing: Option<Vec<Vec<Q>>>,
}

/// A cell-to-point assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentFile {
    pub mapping: Vec<usize>,
}

/// A plain list of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    pub dimension: usize,
    pub points: Vec<Vec<Q>>,
}

/// Constraint rows with a candidate dual certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub rows: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub baseline: Vec<usize>,
    pub multipliers: Vec<Q>,
}

/// Any instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    PointsetSubdivision(SubdivisionFile),
    Fan(FanFile),
    Spiderweb(WebFile),
    Digraph(DigraphFile),
    Assignment(AssignmentFile),
    Points(PointsFile),
    Certificate(CertificateFile),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::PointsetSubdivision(_) => "pointset-subdivision",
            Instance::Fan(_) => "fan",
            Instance::Spiderweb(_) => "spiderweb",
            Instance::Digraph(_) => "digraph",
            Instance::Assignment(_) => "assignment",
            Instance::Points(_) => "points",
            Instance::Certificate(_) => "certificate",
        }
    }
}

/// Parses an instance from JSON text; errors carry line and column.
pub fn parse_instance(text: &str) -> Result<Instance> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Reads and parses an instance file.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn wall_label_list(map: &BTreeMap<String, Vec<usize>>) -> Vec<(String, Vec<usize>)> {
    map.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

impl SubdivisionFile {
    pub fn configuration(&self) -> Result<PointConfiguration> {
        PointConfiguration::new(self.dimension, unq2(&self.points), self.labels.clone())
    }

    /// Validates the cells and attaches the wall labels.
    pub fn to_subdivision(&self) -> Result<Subdivision> {
        let opts = ValidationOptions {
            trusted: self.trusted,
            ..ValidationOptions::default()
        };
        Subdivision::validate(
            self.configuration()?,
            self.cells.clone(),
            ComplexKind::PointSubdivision,
            opts,
        )?
        .with_wall_labels(&wall_label_list(&self.wall_labels))
    }

    pub fn from_subdivision(s: &Subdivision) -> Self {
        SubdivisionFile {
            dimension: s.dimension(),
            points: q2(s.config().points()),
            cells: s.cells().to_vec(),
            labels: s.config().labels().map(|l| l.to_vec()),
            wall_labels: s
                .walls()
                .iter()
                .filter_map(|w| w.label.clone().map(|l| (l, w.ridge.clone())))
                .collect(),
            section_height: None,
            trusted: false,
        }
    }
}

impl FanFile {
    pub fn to_fan(&self) -> Result<Fan> {
        let config =
            PointConfiguration::new(self.dimension, unq2(&self.rays), self.labels.clone())?;
        let opts = ValidationOptions {
            trusted: self.trusted,
            complete: self.complete,
        };
        let sub = Subdivision::validate(config, self.cells.clone(), ComplexKind::Fan, opts)?
            .with_wall_labels(&wall_label_list(&self.wall_labels))?;
        Fan::from_subdivision(sub, self.complete)
    }

    pub fn from_fan(f: &Fan) -> Self {
        FanFile {
            dimension: f.dimension(),
            rays: q2(f.rays()),
            cells: f.cells().to_vec(),
            complete: f.is_complete(),
            labels: f.subdivision().config().labels().map(|l| l.to_vec()),
            wall_labels: f
                .walls()
                .iter()
                .filter_map(|w| w.label.clone().map(|l| (l, w.ridge.clone())))
                .collect(),
            trusted: false,
        }
    }
}

impl WebFile {
    pub fn to_web(&self) -> Result<SpiderWeb> {
        if self.dimension != 2 {
            return Err(Error::Dimension {
                context: "spider web",
                expected: 2,
                found: self.dimension,
            });
        }
        let cables = self.cables.iter().map(|&[a, b]| (a, b)).collect();
        let labels: Vec<(String, (usize, usize))> = self
            .cable_labels
            .iter()
            .map(|(l, &[a, b])| (l.clone(), (a, b)))
            .collect();
        SpiderWeb::new(unq2(&self.points), cables, self.pinned.clone(), &labels)
    }

    pub fn from_web(w: &SpiderWeb) -> Self {
        WebFile {
            dimension: 2,
            points: q2(w.vertices()),
            cables: w.cables().iter().map(|&(a, b)| [a, b]).collect(),
            pinned: Some(w.pinned().to_vec()),
            cable_labels: w
                .cable_labels()
                .into_iter()
                .map(|(l, (a, b))| (l, [a, b]))
                .collect(),
        }
    }
}

impl DigraphFile {
    /// The graph and, if present, its drawing.
    pub fn to_graph(&self) -> Result<(DirectionalGraph, Option<Vec<Vec<Rational>>>)> {
        let arcs = self.arcs.iter().map(|(u, v, h)| (*u, *v, unq(h))).collect();
        let g = DirectionalGraph::new(self.dimension, self.vertices, arcs)?;
        Ok((g, self.drawing.as_ref().map(|d| unq2(d))))
    }

    pub fn from_graph(g: &DirectionalGraph, drawing: Option<&[Vec<Rational>]>) -> Self {
        DigraphFile {
            dimension: g.dimension(),
            vertices: g.vertex_count(),
            arcs: g
                .edges()
                .into_iter()
                .map(|(u, v)| (u, v, q(&g.h(u, v))))
                .collect(),
            drawing: drawing.map(q2),
        }
    }
}

impl CertificateFile {
    /// The labeled system of the certificate's rows (labels default to
    /// `s1, s2, …`).
    pub fn system(&self) -> Result<RelaxableSystem> {
        let rows = unq2(&self.rows);
        let sys = RelaxableSystem::from_rows(&rows)?;
        let sys = match &self.labels {
            Some(labels) => {
                RelaxableSystem::new(sys.matrix().clone(), labels.clone(), Default::default())?
            }
            None => sys,
        };
        sys.with_baseline(self.baseline.iter().copied().collect())
    }

    pub fn multipliers(&self) -> Vec<Rational> {
        unq(&self.multipliers)
    }
}

impl PointsFile {
    pub fn to_points(&self) -> Result<Vec<Vec<Rational>>> {
        let pts = unq2(&self.points);
        if let Some(p) = pts.iter().find(|p| p.len() != self.dimension) {
            return Err(Error::Dimension {
                context: "point",
                expected: self.dimension,
                found: p.len(),
            });
        }
        Ok(pts)
    }
}

/// Default fixture directory: `$RECREG_FIXTURES`, else the workspace's
/// `fixtures/` directory.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os("RECREG_FIXTURES") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Checks every entry of `MANIFEST.sha256` (`<hex>  <file>` lines) in the
/// given directory; returns the names of the checked files.
pub fn verify_manifest(dir: &Path) -> Result<Vec<String>> {
    let manifest_path = dir.join("MANIFEST.sha256");
    let manifest = std::fs::read_to_string(&manifest_path).map_err(|e| {
        Error::Precondition(format!("cannot read {}: {e}", manifest_path.display()))
    })?;
    let mut names = Vec::new();
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let (hash, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Input(format!("malformed manifest line {line:?}")))?;
        let name = name.trim_start().trim_start_matches('*');
        let bytes = std::fs::read(dir.join(name))
            .map_err(|e| Error::Precondition(format!("fixture {name} unreadable: {e}")))?;
        if sha256_hex(&bytes) != hash {
            return Err(Error::Precondition(format!(
                "fixture {name} does not match its checksum"
            )));
        }
        names.push(name.to_string());
    }
    Ok(names)
}

/// Loads a fixture by file name after verifying the manifest.
pub fn load_fixture(name: &str) -> Result<Instance> {
    let dir = fixture_dir();
    let names = verify_manifest(&dir)?;
    if !names.iter().any(|n| n == name) {
        return Err(Error::Precondition(format!(
            "fixture {name} is not listed in the manifest"
        )));
    }
    read_instance(&dir.join(name))
}
