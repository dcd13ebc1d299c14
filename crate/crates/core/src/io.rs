//! The JSON poset document and Hasse diagram output.
//!
//! A document looks like
//!
//! ```json
//! {"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]],"labels":["0","a","b","1"],"meta":{"kind":"boolean 2"}}
//! ```
//!
//! Each `covers` pair is `[lower, upper]`. `labels` and `meta` are optional.
//! Pairs need not be reduced; implied pairs are dropped with a warning.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levels::level_classes;
use crate::poset::{build_poset_with, BuildOptions, FinitePoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

impl PosetDocument {
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDocument {
            n: p.len(),
            covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
            labels: p.labels().map(<[String]>::to_vec),
            meta: None,
        }
    }

    /// Canonical single-line JSON, newline terminated.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct ParsedDocument {
    pub poset: FinitePoset,
    pub meta: Option<BTreeMap<String, String>>,
    pub warnings: Vec<String>,
}

impl ParsedDocument {
    /// Canonical text of the parsed document, metadata included.
    pub fn to_text(&self) -> String {
        let mut doc = PosetDocument::from_poset(&self.poset);
        doc.meta = self.meta.clone();
        doc.to_text()
    }
}

pub fn parse_document(text: &str) -> Result<FinitePoset> {
    parse_document_with(text, &BuildOptions::default()).map(|d| d.poset)
}

pub fn parse_document_with(text: &str, opts: &BuildOptions) -> Result<ParsedDocument> {
    let doc: PosetDocument = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    for (i, pair) in doc.covers.iter().enumerate() {
        for &id in pair {
            if id >= doc.n {
                return Err(Error::Bounds {
                    id,
                    n: doc.n,
                    context: Some(format!("covers[{i}]")),
                });
            }
        }
    }
    let edges: Vec<(usize, usize)> = doc.covers.iter().map(|&[a, b]| (a, b)).collect();
    let (poset, dropped) = build_poset_with(doc.n, &edges, doc.labels, opts)?;
    let warnings = dropped
        .iter()
        .map(|(a, b)| format!("covers pair [{a},{b}] is implied by other pairs; dropped"))
        .collect();
    Ok(ParsedDocument {
        poset,
        meta: doc.meta,
        warnings,
    })
}

pub fn emit_document(p: &FinitePoset) -> String {
    PosetDocument::from_poset(p).to_text()
}

/// Fill colors for highlighted sets, cycled.
pub const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
];

/// Graphviz description of the Hasse diagram, bottom to top, with one
/// `rank=same` group per level class. Elements of `highlight[i]` are
/// filled with `PALETTE[i % 8]`; the first set containing an element wins.
pub fn emit_dot(p: &FinitePoset, highlight: &[Vec<usize>]) -> String {
    let mut color: Vec<Option<&str>> = vec![None; p.len()];
    for (i, set) in highlight.iter().enumerate() {
        for &x in set {
            if x < p.len() && color[x].is_none() {
                color[x] = Some(PALETTE[i % PALETTE.len()]);
            }
        }
    }

    let mut out = String::new();
    out.push_str("digraph poset {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle, style=filled, fillcolor=white];\n");
    for class in level_classes(p).classes() {
        let ids: Vec<String> = class.iter().map(|x| format!("{x};")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join(" "));
    }
    for (x, fill) in color.iter().enumerate() {
        let label = escape(&p.name(x));
        match fill {
            Some(c) => {
                let _ = writeln!(out, "  {x} [label=\"{label}\", fillcolor=\"{c}\"];");
            }
            None => {
                let _ = writeln!(out, "  {x} [label=\"{label}\"];");
            }
        }
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
