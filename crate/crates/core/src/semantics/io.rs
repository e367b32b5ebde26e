//! JSON model files.
//!
//! ```json
//! {
//!   "worlds": ["w", "v"],
//!   "relation": [["w", "v", "1/2"]],
//!   "valuation": {"p": {"v": "2/3"}},
//!   "valuation2": {"p": {"v": "0"}},
//!   "T": {"w": ["0", "1/2", "1"]}
//! }
//! ```
//!
//! `valuation2` makes the file a KG2 model (crisp relation required) and
//! `T` attaches per-world value sets. Missing valuation entries are 0.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Frame, KG2Model, KbiGModel, Valuation};
use crate::error::{Error, Result};
use crate::rat::Rat;

type WorldMap<T> = BTreeMap<String, T>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    worlds: Vec<String>,
    #[serde(default)]
    relation: Vec<(String, String, Rat)>,
    #[serde(default)]
    valuation: BTreeMap<String, WorldMap<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuation2: Option<BTreeMap<String, WorldMap<Rat>>>,
    #[serde(default, rename = "T", skip_serializing_if = "Option::is_none")]
    t: Option<WorldMap<Vec<Rat>>>,
}

/// A parsed and validated model file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub frame: Frame,
    pub v1: Valuation,
    pub v2: Option<Valuation>,
    /// Sorted value sets, always containing 0 and 1.
    pub t: Option<Vec<Vec<Rat>>>,
}

fn line_of(text: &str, key: &str, needle: &str) -> usize {
    let start = text.find(&format!("\"{key}\"")).unwrap_or(0);
    let at = text[start..].find(&format!("\"{needle}\"")).map_or(start, |i| start + i);
    text[..at].matches('\n').count() + 1
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: Doc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::ModelFile { path, line: inner.line(), message: inner.to_string() }
        })?;
        let bad = |key: &str, needle: &str, message: String| Error::ModelFile {
            path: key.to_string(),
            line: line_of(text, key, needle),
            message,
        };

        if doc.worlds.is_empty() {
            return Err(bad("worlds", "worlds", "at least one world is required".into()));
        }
        let mut seen = BTreeSet::new();
        for w in &doc.worlds {
            if !seen.insert(w) {
                return Err(bad("worlds", w, format!("duplicate world `{w}`")));
            }
        }
        let mut frame = Frame::new(&doc.worlds);
        let idx = |key: &str, w: &str| frame_index(&doc.worlds, w).ok_or_else(|| bad(key, w, format!("unknown world `{w}`")));
        let mut set_edges = BTreeSet::new();
        for (a, b, x) in &doc.relation {
            let (i, j) = (idx("relation", a)?, idx("relation", b)?);
            if !set_edges.insert((i, j)) {
                return Err(bad("relation", a, format!("edge `{a}` -> `{b}` given twice")));
            }
            frame.set_weight(i, j, *x);
        }
        let n = frame.len();
        let read = |key: &str, vals: &BTreeMap<String, WorldMap<Rat>>| -> Result<Valuation> {
            let mut out = Valuation::new();
            for (var, per) in vals {
                let mut row = vec![Rat::ZERO; n];
                for (w, x) in per {
                    row[idx(key, w)?] = *x;
                }
                out.insert(var.clone(), row);
            }
            Ok(out)
        };
        let mut v1 = read("valuation", &doc.valuation)?;
        let mut v2 = doc.valuation2.as_ref().map(|v| read("valuation2", v)).transpose()?;
        if let Some(v2) = &mut v2 {
            if !frame.is_crisp() {
                return Err(bad("valuation2", "valuation2", "a second valuation requires a crisp relation".into()));
            }
            // both valuations cover the same variables
            for var in v1.keys().cloned().collect::<Vec<_>>() {
                v2.entry(var).or_insert_with(|| vec![Rat::ZERO; n]);
            }
            for var in v2.keys() {
                v1.entry(var.clone()).or_insert_with(|| vec![Rat::ZERO; n]);
            }
        }
        let t = match &doc.t {
            None => None,
            Some(map) => {
                let mut sets = vec![BTreeSet::from([Rat::ZERO, Rat::ONE]); n];
                for (w, xs) in map {
                    sets[idx("T", w)?].extend(xs.iter().copied());
                }
                Some(sets.into_iter().map(|s| s.into_iter().collect()).collect())
            }
        };
        Ok(ModelFile { frame, v1, v2, t })
    }

    pub fn load(path: &std::path::Path) -> Result<ModelFile> {
        ModelFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn kbig(&self) -> KbiGModel {
        KbiGModel { frame: self.frame.clone(), valuation: self.v1.clone() }
    }

    /// The KG2 model; a file without `valuation2` has second valuation 0.
    pub fn kg2(&self) -> Result<KG2Model> {
        let mut m = KG2Model::new(self.frame.clone())?;
        m.v1 = self.v1.clone();
        m.v2 = self.v2.clone().unwrap_or_default();
        let vars: Vec<String> = m.v1.keys().cloned().collect();
        m.materialize(&vars);
        Ok(m)
    }

    pub fn from_kbig(m: &KbiGModel) -> ModelFile {
        ModelFile { frame: m.frame.clone(), v1: m.valuation.clone(), v2: None, t: None }
    }

    pub fn from_kg2(m: &KG2Model) -> ModelFile {
        ModelFile { frame: m.frame.clone(), v1: m.v1.clone(), v2: Some(m.v2.clone()), t: None }
    }

    pub fn with_t(mut self, t: Vec<Vec<Rat>>) -> ModelFile {
        self.t = Some(t);
        self
    }

    /// Pretty JSON; every valuation entry is written out.
    pub fn to_json(&self) -> String {
        let worlds = self.frame.worlds().to_vec();
        let per = |v: &Valuation| -> BTreeMap<String, WorldMap<Rat>> {
            v.iter()
                .map(|(var, xs)| (var.clone(), worlds.iter().cloned().zip(xs.iter().copied()).collect()))
                .collect()
        };
        let doc = Doc {
            worlds: worlds.clone(),
            relation: self
                .frame
                .edges()
                .into_iter()
                .map(|(a, b, x)| (worlds[a].clone(), worlds[b].clone(), x))
                .collect(),
            valuation: per(&self.v1),
            valuation2: self.v2.as_ref().map(per),
            t: self.t.as_ref().map(|t| worlds.iter().cloned().zip(t.iter().cloned()).collect()),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        s
    }
}

fn frame_index(worlds: &[String], w: &str) -> Option<usize> {
    worlds.iter().position(|x| x == w)
}
