//! JSON documents for spaces, lattices, scheme models and spectrum reports.
//!
//! Every top-level document carries `"schema": "trispec/1"`. The kind is
//! detected from its keys: `tags` means a model, `elements` a lattice and
//! `points` a space. Spectrum reports list their points and covers, so they
//! read back as spaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poset_space::{bits, SpecSpace};
use crate::report::{Check, Report};
use crate::scheme_models::{LocalType, SchemeModel};
use crate::spectrum::SpectrumSpace;
use crate::thick_lattice::ThickLattice;

pub const SCHEMA: &str = "trispec/1";

#[derive(Serialize, Deserialize)]
struct SpaceBlock {
    points: Vec<String>,
    #[serde(default)]
    covers: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct SpaceDoc {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(flatten)]
    space: SpaceBlock,
}

#[derive(Serialize, Deserialize)]
struct LatticeDoc {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<String>,
    #[serde(default)]
    covers: Vec<(String, String)>,
    objects: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    name: String,
    space: SpaceBlock,
    tags: BTreeMap<String, String>,
    separated: bool,
}

#[derive(Serialize, Deserialize)]
struct CatalogDoc {
    schema: String,
    models: Vec<ModelDoc>,
}

#[derive(Serialize)]
struct WitnessEntry<'a> {
    prime: &'a str,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    schema: &'static str,
    name: &'a str,
    points: &'a [String],
    covers: Vec<(String, String)>,
    witness: Vec<WitnessEntry<'a>>,
    closed_sets: Vec<Vec<&'a str>>,
    checks: &'a [Check],
}

/// A parsed top-level document.
#[derive(Debug, Clone)]
pub enum Document {
    Space(SpecSpace),
    Lattice {
        name: Option<String>,
        lattice: ThickLattice,
    },
    Model(SchemeModel),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Space(_) => "space",
            Document::Lattice { .. } => "lattice",
            Document::Model(_) => "model",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Space(s) => s.name(),
            Document::Lattice { name, .. } => name.as_deref(),
            Document::Model(m) => Some(m.name()),
        }
    }

    /// Re-serializes the document.
    pub fn to_json(&self) -> String {
        match self {
            Document::Space(s) => space_to_json(s),
            Document::Lattice { name, lattice } => lattice_to_json(lattice, name.as_deref()),
            Document::Model(m) => model_to_json(m),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn check_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::Parse(format!(
            "unsupported schema `{schema}`, expected `{SCHEMA}`"
        )));
    }
    Ok(())
}

fn finish(mut s: String) -> String {
    s.push('\n');
    s
}

fn space_from_block(name: Option<String>, block: SpaceBlock) -> Result<SpecSpace> {
    if block.points.is_empty() {
        return Err(Error::Parse("space has no points".into()));
    }
    SpecSpace::new(name, &block.points, &block.covers)
}

fn space_block(space: &SpecSpace) -> SpaceBlock {
    SpaceBlock {
        points: space.points().to_vec(),
        covers: space
            .covers()
            .into_iter()
            .map(|(x, y)| (space.label(x).to_string(), space.label(y).to_string()))
            .collect(),
    }
}

fn model_from_doc(doc: ModelDoc) -> Result<SchemeModel> {
    if let Some(s) = &doc.schema {
        check_schema(s)?;
    }
    let space = space_from_block(Some(doc.name.clone()), doc.space)?;
    let tags = doc
        .tags
        .iter()
        .map(|(p, t)| Ok((p.as_str(), t.parse::<LocalType>()?)))
        .collect::<Result<Vec<_>>>()?;
    SchemeModel::new(doc.name, space, &tags, doc.separated)
}

fn model_doc(m: &SchemeModel, with_schema: bool) -> ModelDoc {
    ModelDoc {
        schema: with_schema.then(|| SCHEMA.to_string()),
        name: m.name().to_string(),
        space: space_block(m.space()),
        tags: m
            .space()
            .points()
            .iter()
            .zip(m.tags())
            .map(|(p, t)| (p.clone(), t.to_string()))
            .collect(),
        separated: m.separated(),
    }
}

/// Parses any top-level document, detecting its kind.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("document is not a JSON object".into()))?;
    match obj.get("schema").and_then(Value::as_str) {
        Some(s) => check_schema(s)?,
        None => return Err(Error::Parse("missing `schema` field".into())),
    }
    if obj.contains_key("tags") {
        let doc: ModelDoc = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Document::Model(model_from_doc(doc)?))
    } else if obj.contains_key("elements") {
        let doc: LatticeDoc = serde_json::from_value(value).map_err(parse_err)?;
        let lattice = ThickLattice::from_explicit(&doc.elements, &doc.covers, &doc.objects)?;
        if let Some(b) = &doc.bottom {
            if b != lattice.id(lattice.bottom()) {
                return Err(Error::MissingBound("bottom", b.clone()));
            }
        }
        if let Some(t) = &doc.top {
            if t != lattice.id(lattice.top()) {
                return Err(Error::MissingBound("top", t.clone()));
            }
        }
        Ok(Document::Lattice {
            name: doc.name,
            lattice,
        })
    } else if obj.contains_key("points") {
        let doc: SpaceDoc = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Document::Space(space_from_block(doc.name, doc.space)?))
    } else {
        Err(Error::Parse(
            "expected `points`, `elements` or `tags`".into(),
        ))
    }
}

pub fn space_to_json(space: &SpecSpace) -> String {
    let doc = SpaceDoc {
        schema: SCHEMA.into(),
        name: space.name().map(str::to_string),
        space: space_block(space),
    };
    finish(serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn lattice_to_json(lat: &ThickLattice, name: Option<&str>) -> String {
    let doc = LatticeDoc {
        schema: SCHEMA.into(),
        name: name.map(str::to_string),
        elements: lat.ids().to_vec(),
        bottom: Some(lat.id(lat.bottom()).to_string()),
        top: Some(lat.id(lat.top()).to_string()),
        covers: lat
            .covers()
            .into_iter()
            .map(|(a, b)| (lat.id(a).to_string(), lat.id(b).to_string()))
            .collect(),
        objects: lat.objects().map(|o| lat.id(o).to_string()).collect(),
    };
    finish(serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub fn model_to_json(m: &SchemeModel) -> String {
    finish(serde_json::to_string_pretty(&model_doc(m, true)).expect("serializable"))
}

/// Parses a catalog `{"schema": ..., "models": [...]}` of scheme models.
pub fn parse_model_catalog(text: &str) -> Result<Vec<SchemeModel>> {
    let doc: CatalogDoc = serde_json::from_str(text).map_err(parse_err)?;
    check_schema(&doc.schema)?;
    doc.models.into_iter().map(model_from_doc).collect()
}

pub fn model_catalog_to_json(models: &[SchemeModel]) -> String {
    let doc = CatalogDoc {
        schema: SCHEMA.into(),
        models: models.iter().map(|m| model_doc(m, false)).collect(),
    };
    finish(serde_json::to_string_pretty(&doc).expect("serializable"))
}

/// Spectrum with its witnesses, closed sets and verification checks.
pub fn spectrum_to_json(
    name: &str,
    spec: &SpectrumSpace,
    lat: &ThickLattice,
    report: &Report,
) -> String {
    let sp = spec.specialization_space();
    let labels = spec.labels();
    let doc = SpectrumDoc {
        schema: SCHEMA,
        name,
        points: labels,
        covers: sp
            .covers()
            .into_iter()
            .map(|(x, y)| (labels[x].clone(), labels[y].clone()))
            .collect(),
        witness: labels
            .iter()
            .zip(spec.witness())
            .map(|(p, w)| WitnessEntry {
                prime: p,
                witness: w.map(|w| lat.id(w)),
            })
            .collect(),
        closed_sets: spec
            .closed_sets()
            .iter()
            .map(|&c| bits(c).map(|i| labels[i].as_str()).collect())
            .collect(),
        checks: &report.checks,
    };
    finish(serde_json::to_string_pretty(&doc).expect("serializable"))
}
