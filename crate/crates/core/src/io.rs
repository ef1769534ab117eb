//! JSON documents for complexes, hypergraphs and morphisms.
//!
//! Serialization is canonical: object keys and all name lists are sorted and
//! output ends with a newline, so `serialize(parse(doc))` is byte-stable.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{validate_complex, validate_complex_morphism, Complex, ComplexMorphism};
use crate::constellation::Mode;
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use crate::hypergraph::{validate_face_map, Face, FaceMap, HypergraphClass, PositiveHypergraph};
use crate::iota::{analyze_iota_map, IotaMap};
use crate::poset::Poset;
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDocument {
    pub covers: Vec<(String, String)>,
    pub nodes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    /// `constellations[i]` maps each node of level `i + 1` to its members in level `i`.
    pub constellations: Vec<BTreeMap<String, Vec<String>>>,
    pub kind: Mode,
    pub levels: Vec<LevelDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    pub delta: BTreeMap<String, Vec<String>>,
    /// Face names per dimension.
    pub faces: Vec<Vec<String>>,
    pub gamma: BTreeMap<String, String>,
    pub kind: HypergraphClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Iota,
    Complex,
    Face,
}

/// An endpoint is an inline document, a path relative to the referring file,
/// or `fixture:NAME`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Reference(String),
    Inline(Value),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    /// Source face or node name to target name.
    pub assignment: BTreeMap<String, String>,
    pub kind: MorphismKind,
    pub source: Endpoint,
    pub target: Endpoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Complex,
    Hypergraph,
    Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Complex(Complex),
    Hypergraph(PositiveHypergraph),
    Iota(IotaMap),
    ComplexMorphism(ComplexMorphism),
    FaceMap(FaceMap),
}

impl Structure {
    pub fn document_kind(&self) -> DocumentKind {
        match self {
            Structure::Complex(_) => DocumentKind::Complex,
            Structure::Hypergraph(_) => DocumentKind::Hypergraph,
            _ => DocumentKind::Morphism,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Structure::Complex(x) => {
                format!("{:?} complex of dimension {}", x.kind(), x.dimension()).to_lowercase()
            }
            Structure::Hypergraph(h) => {
                format!("{:?} of dimension {}", h.classify().class, h.dimension()).to_lowercase()
            }
            Structure::Iota(_) => "ι-map".into(),
            Structure::ComplexMorphism(_) => "complex morphism".into(),
            Structure::FaceMap(_) => "face map".into(),
        }
    }
}

impl From<Fixture> for Structure {
    fn from(f: Fixture) -> Structure {
        match f {
            Fixture::Hypergraph(h) => Structure::Hypergraph(h),
            Fixture::Complex(x) => Structure::Complex(x),
            Fixture::Iota(m) => Structure::Iota(m),
            Fixture::ComplexMorphism(m) => Structure::ComplexMorphism(m),
        }
    }
}

/// A structurally sound value plus notes raised while reading it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub structure: Structure,
    pub notes: Vec<String>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn detect(v: &Value) -> Result<DocumentKind> {
    let Some(obj) = v.as_object() else {
        return Err(Error::Malformed("document must be a JSON object".into()));
    };
    if obj.contains_key("assignment") {
        Ok(DocumentKind::Morphism)
    } else if obj.contains_key("levels") {
        Ok(DocumentKind::Complex)
    } else if obj.contains_key("faces") {
        Ok(DocumentKind::Hypergraph)
    } else {
        Err(Error::Malformed(
            "cannot tell the document kind (expected `levels`, `faces` or `assignment`)".into(),
        ))
    }
}

/// Reads a document into a structure without running the axiom validators.
/// `base` resolves relative endpoint paths.
pub fn load(text: &str, base: Option<&Path>) -> Result<Loaded> {
    let value: Value = serde_json::from_str(text).map_err(syntax)?;
    let mut notes = Vec::new();
    let structure = match detect(&value)? {
        DocumentKind::Complex => Structure::Complex(complex_from_document(
            &serde_json::from_str(text).map_err(syntax)?,
        )?),
        DocumentKind::Hypergraph => Structure::Hypergraph(hypergraph_from_document(
            &serde_json::from_str(text).map_err(syntax)?,
            &mut notes,
        )?),
        DocumentKind::Morphism => morphism_from_document(
            &serde_json::from_str(text).map_err(syntax)?,
            base,
            &mut notes,
        )?,
    };
    Ok(Loaded { structure, notes })
}

pub fn load_file(path: &Path) -> Result<Loaded> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load(&text, path.parent())
}

/// Reads and validates. Validation failures come back as [`Error::Invalid`].
pub fn parse(text: &str, expected: Option<DocumentKind>, base: Option<&Path>) -> Result<Loaded> {
    let loaded = load(text, base)?;
    if let Some(k) = expected {
        if loaded.structure.document_kind() != k {
            return Err(Error::KindMismatch(format!(
                "expected a {k:?} document, found {}",
                loaded.structure.describe()
            )));
        }
    }
    validate_structure(&loaded.structure).into_result()?;
    Ok(loaded)
}

/// Runs the validator matching the structure.
pub fn validate_structure(s: &Structure) -> ValidationReport {
    match s {
        Structure::Complex(x) => validate_complex(x),
        Structure::Hypergraph(h) => {
            let c = h.classify();
            let mut r = ValidationReport::new("positive hypergraph");
            for d in c.failures {
                r.note(format!("{}: {}", d.code, d.message));
            }
            r.note(format!("classifies as {:?}", c.class).to_lowercase());
            r
        }
        Structure::Iota(m) => analyze_iota_map(m).report,
        Structure::ComplexMorphism(m) => validate_complex_morphism(m),
        Structure::FaceMap(m) => validate_face_map(m),
    }
}

fn complex_from_document(d: &ComplexDocument) -> Result<Complex> {
    let levels = d
        .levels
        .iter()
        .map(|l| {
            let names: Vec<&str> = l.nodes.iter().map(String::as_str).collect();
            let covers: Vec<(&str, &str)> = l
                .covers
                .iter()
                .map(|(c, p)| (c.as_str(), p.as_str()))
                .collect();
            Poset::from_names(&names, &covers)
        })
        .collect::<Result<Vec<_>>>()?;
    if d.constellations.len() + 1 != levels.len() {
        return Err(Error::Malformed(format!(
            "{} levels need {} constellations, got {}",
            levels.len(),
            levels.len().saturating_sub(1),
            d.constellations.len()
        )));
    }
    let mut sigmas = Vec::new();
    for (i, map) in d.constellations.iter().enumerate() {
        let (lower, upper) = (&levels[i], &levels[i + 1]);
        let mut sigma: Vec<Option<Vec<usize>>> = vec![None; upper.len()];
        for (u, members) in map {
            let ui = upper.id(u)?;
            let mut ms = members
                .iter()
                .map(|m| lower.id(m))
                .collect::<Result<Vec<_>>>()?;
            ms.sort_unstable();
            if ms.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "duplicate entry in the constellation of `{u}`"
                )));
            }
            sigma[ui] = Some(ms);
        }
        let sigma = sigma
            .into_iter()
            .enumerate()
            .map(|(u, s)| {
                s.ok_or_else(|| {
                    Error::Malformed(format!("no constellation entry for `{}`", upper.name(u)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        sigmas.push(sigma);
    }
    Complex::new(d.kind, levels, sigmas)
}

fn hypergraph_from_document(
    d: &HypergraphDocument,
    notes: &mut Vec<String>,
) -> Result<PositiveHypergraph> {
    let mut at: BTreeMap<&str, Face> = BTreeMap::new();
    for (k, names) in d.faces.iter().enumerate() {
        for (i, n) in names.iter().enumerate() {
            if at.insert(n, Face::new(k, i)).is_some() {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
    }
    let lookup = |n: &str| {
        at.get(n)
            .copied()
            .ok_or_else(|| Error::UnknownElement(n.to_string()))
    };
    for key in d.gamma.keys().chain(d.delta.keys()) {
        if lookup(key)?.dim == 0 {
            return Err(Error::Malformed(format!(
                "point `{key}` cannot have a boundary"
            )));
        }
    }
    let mut gamma = Vec::new();
    let mut delta = Vec::new();
    for k in 1..d.faces.len() {
        let mut g_row = Vec::new();
        let mut d_row = Vec::new();
        for n in &d.faces[k] {
            let g = d
                .gamma
                .get(n)
                .ok_or_else(|| Error::Malformed(format!("no codomain for `{n}`")))?;
            let g = lookup(g)?;
            if g.dim + 1 != k {
                return Err(Error::Malformed(format!(
                    "codomain of `{n}` has the wrong dimension"
                )));
            }
            g_row.push(g.idx);
            let ds = d
                .delta
                .get(n)
                .ok_or_else(|| Error::Malformed(format!("no domain for `{n}`")))?;
            let mut row = Vec::new();
            for x in ds {
                let f = lookup(x)?;
                if f.dim + 1 != k {
                    return Err(Error::Malformed(format!(
                        "domain of `{n}` has the wrong dimension"
                    )));
                }
                if row.contains(&f.idx) {
                    return Err(Error::Malformed(format!(
                        "duplicate entry `{x}` in the domain of `{n}`"
                    )));
                }
                row.push(f.idx);
            }
            row.sort_unstable();
            d_row.push(row);
        }
        gamma.push(g_row);
        delta.push(d_row);
    }
    let h = PositiveHypergraph::new(d.faces.clone(), gamma, delta)?;
    let actual = h.classify().class;
    if d.kind > actual {
        return Err(Error::KindMismatch(
            format!("declared {:?}, classifies as {:?}", d.kind, actual).to_lowercase(),
        ));
    }
    if d.kind < actual {
        notes.push(format!("declared {:?}, classifies as {:?}", d.kind, actual).to_lowercase());
    }
    Ok(h)
}

fn resolve(e: &Endpoint, base: Option<&Path>, notes: &mut Vec<String>) -> Result<Structure> {
    let s = match e {
        Endpoint::Reference(r) => {
            if let Some(name) = r.strip_prefix("fixture:") {
                fixtures::get(name)
                    .ok_or_else(|| Error::UnknownElement(format!("fixture {name}")))?
                    .into()
            } else {
                let path: PathBuf = base.map_or_else(|| PathBuf::from(r), |b| b.join(r));
                let l = load_file(&path)?;
                notes.extend(l.notes);
                l.structure
            }
        }
        Endpoint::Inline(v) => {
            let text = serde_json::to_string(v).map_err(syntax)?;
            let l = load(&text, base)?;
            notes.extend(l.notes);
            l.structure
        }
    };
    Ok(s)
}

fn morphism_from_document(
    d: &MorphismDocument,
    base: Option<&Path>,
    notes: &mut Vec<String>,
) -> Result<Structure> {
    let source = resolve(&d.source, base, notes)?;
    let target = resolve(&d.target, base, notes)?;
    let pairs: Vec<(&str, &str)> = d
        .assignment
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    match (d.kind, source, target) {
        (MorphismKind::Iota, Structure::Hypergraph(s), Structure::Hypergraph(t)) => {
            Ok(Structure::Iota(IotaMap::from_names(s, t, &pairs)?))
        }
        (MorphismKind::Face, Structure::Hypergraph(s), Structure::Hypergraph(t)) => {
            Ok(Structure::FaceMap(FaceMap::from_names(s, t, &pairs)?))
        }
        (MorphismKind::Complex, Structure::Complex(s), Structure::Complex(t)) => Ok(
            Structure::ComplexMorphism(ComplexMorphism::from_names(s, t, &pairs)?),
        ),
        (k, s, t) => Err(Error::KindMismatch(format!(
            "a {k:?} morphism cannot run from a {} to a {}",
            s.describe(),
            t.describe()
        ))),
    }
}

pub fn complex_document(x: &Complex) -> ComplexDocument {
    let levels = x
        .levels()
        .iter()
        .map(|l| {
            let mut nodes = l.names().to_vec();
            nodes.sort();
            let mut covers: Vec<(String, String)> = l
                .covers()
                .iter()
                .map(|&(c, p)| (l.name(c).to_string(), l.name(p).to_string()))
                .collect();
            covers.sort();
            LevelDocument { covers, nodes }
        })
        .collect();
    let constellations = x
        .sigmas()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let (lower, upper) = (x.level(i), x.level(i + 1));
            s.iter()
                .enumerate()
                .map(|(u, ms)| {
                    let mut names: Vec<String> =
                        ms.iter().map(|&m| lower.name(m).to_string()).collect();
                    names.sort();
                    (upper.name(u).to_string(), names)
                })
                .collect()
        })
        .collect();
    ComplexDocument {
        constellations,
        kind: x.kind(),
        levels,
    }
}

pub fn hypergraph_document(h: &PositiveHypergraph) -> HypergraphDocument {
    let mut faces: Vec<Vec<String>> = (0..h.dims()).map(|k| h.names(k).to_vec()).collect();
    for f in &mut faces {
        f.sort();
    }
    let mut gamma = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for f in h.faces().filter(|f| f.dim > 0) {
        let n = h.name(f).to_string();
        gamma.insert(
            n.clone(),
            h.name(h.gamma(f).expect("positive dimension")).to_string(),
        );
        let mut ds: Vec<String> = h
            .delta(f)
            .into_iter()
            .map(|x| h.name(x).to_string())
            .collect();
        ds.sort();
        delta.insert(n, ds);
    }
    HypergraphDocument {
        delta,
        faces,
        gamma,
        kind: h.classify().class,
    }
}

fn inline<T: Serialize>(doc: &T) -> Endpoint {
    Endpoint::Inline(serde_json::to_value(doc).expect("documents serialize"))
}

pub fn morphism_document(s: &Structure) -> Option<MorphismDocument> {
    let (kind, source, target, pairs) = match s {
        Structure::Iota(m) => (
            MorphismKind::Iota,
            inline(&hypergraph_document(&m.source)),
            inline(&hypergraph_document(&m.target)),
            m.name_pairs(),
        ),
        Structure::FaceMap(m) => {
            let pairs = m
                .source
                .faces()
                .map(|f| {
                    (
                        m.source.name(f).to_string(),
                        m.target.name(m.apply(f)).to_string(),
                    )
                })
                .collect();
            (
                MorphismKind::Face,
                inline(&hypergraph_document(&m.source)),
                inline(&hypergraph_document(&m.target)),
                pairs,
            )
        }
        Structure::ComplexMorphism(m) => (
            MorphismKind::Complex,
            inline(&complex_document(&m.source)),
            inline(&complex_document(&m.target)),
            m.name_pairs(),
        ),
        _ => return None,
    };
    Some(MorphismDocument {
        assignment: pairs.into_iter().collect(),
        kind,
        source,
        target,
    })
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Canonical document text.
pub fn serialize(s: &Structure) -> String {
    match s {
        Structure::Complex(x) => pretty(&complex_document(x)),
        Structure::Hypergraph(h) => pretty(&hypergraph_document(h)),
        other => pretty(&morphism_document(other).expect("morphism")),
    }
}

/// Single-line form used for streamed records.
pub fn serialize_compact(s: &Structure) -> String {
    let v = match s {
        Structure::Complex(x) => serde_json::to_value(complex_document(x)),
        Structure::Hypergraph(h) => serde_json::to_value(hypergraph_document(h)),
        other => serde_json::to_value(morphism_document(other).expect("morphism")),
    };
    v.expect("documents serialize").to_string()
}

pub fn fixture_document(name: &str) -> Option<String> {
    fixtures::get(name).map(|f| serialize(&f.into()))
}
