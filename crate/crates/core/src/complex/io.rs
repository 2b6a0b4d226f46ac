use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};

/// JSON form of a complex: `{"vertices": [...], "facets": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<Label>,
    pub facets: Vec<Vec<Label>>,
}

impl From<SimplicialComplex> for ComplexFile {
    fn from(k: SimplicialComplex) -> Self {
        ComplexFile {
            vertices: k.labels().to_vec(),
            facets: k.facets().into_iter().map(Face::into_vec).collect(),
        }
    }
}

impl TryFrom<ComplexFile> for SimplicialComplex {
    type Error = Error;

    fn try_from(file: ComplexFile) -> Result<Self> {
        let declared: HashSet<&Label> = file.vertices.iter().collect();
        let mut used = HashSet::new();
        for f in &file.facets {
            for l in f {
                if !declared.contains(l) {
                    return Err(Error::FaceNotInComplex(format!(
                        "vertex {l} is not declared"
                    )));
                }
                used.insert(l);
            }
        }
        if let Some(l) = file.vertices.iter().find(|l| !used.contains(l)) {
            return Err(Error::ArgumentOutOfRange(format!(
                "vertex {l} lies in no facet"
            )));
        }
        SimplicialComplex::from_facets(file.facets)
    }
}

impl std::fmt::Display for ComplexFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).map_err(|_| std::fmt::Error)?
        )
    }
}

/// Parse a complex from JSON (if the text starts with `{`) or from the text
/// format: one facet per line, whitespace separated labels, `#` comments.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if text.trim_start().starts_with('{') {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        return SimplicialComplex::try_from(file);
    }
    let mut facets = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .collect();
        if toks.is_empty() {
            continue;
        }
        facets.push(toks.into_iter().map(Label::parse).collect::<Vec<_>>());
        lines.push(i + 1);
    }
    SimplicialComplex::from_facets(facets).map_err(|e| match e {
        Error::DuplicateVertexInFacet { facet, vertex } => Error::Parse {
            line: lines[facet],
            column: 1,
            message: format!("repeated vertex {vertex}"),
        },
        other => other,
    })
}

impl SimplicialComplex {
    /// Text form: one facet per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in self.facets() {
            let parts: Vec<String> = f.vertices().iter().map(ToString::to_string).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from(self.clone())).expect("labels serialize")
    }
}
