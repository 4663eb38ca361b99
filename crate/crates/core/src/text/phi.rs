use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::diag::{Code, Diagnostic};
use super::parse::{parse_structure, Structure};
use super::print::{print_algebra, print_coalgebra};
use crate::functor::FinSet;
use crate::measuring::Measuring;
use crate::structures::{PointedSuccAlgebra, StepCoalgebra};

/// Position of the first `"name"` key or value in `text`, for diagnostics.
fn locate(text: &str, name: &str) -> (usize, usize) {
    let needle = serde_json::to_string(name).expect("string");
    let Some(off) = text.find(&needle) else { return (1, 1) };
    let before = &text[..off];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn json_syntax(e: &serde_json::Error) -> Diagnostic {
    Diagnostic::new(Code::Syntax, e.to_string(), e.line().max(1), e.column().max(1))
}

/// Reads `{ "c": { "a": "b", ... }, ... }` into a table indexed by
/// `[state][source element]`.
pub fn parse_phi(text: &str, c: &FinSet, a: &FinSet, b: &FinSet) -> Result<Vec<Vec<usize>>, Diagnostic> {
    let raw: BTreeMap<String, BTreeMap<String, String>> = serde_json::from_str(text).map_err(|e| json_syntax(&e))?;
    phi_from_map(&raw, text, c, a, b)
}

fn phi_from_map(
    raw: &BTreeMap<String, BTreeMap<String, String>>,
    text: &str,
    c: &FinSet,
    a: &FinSet,
    b: &FinSet,
) -> Result<Vec<Vec<usize>>, Diagnostic> {
    let unknown = |what: &str, n: &str| {
        let (l, col) = locate(text, n);
        Diagnostic::new(Code::UnknownElement, format!("unknown {what} `{n}`"), l, col)
    };
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; a.len()]; c.len()];
    for (cn, row) in raw {
        let ci = c.position_of_name(cn).ok_or_else(|| unknown("state", cn))?;
        for (an, bn) in row {
            let ai = a.position_of_name(an).ok_or_else(|| unknown("source element", an))?;
            let bi = b.position_of_name(bn).ok_or_else(|| unknown("target element", bn))?;
            table[ci][ai] = Some(bi);
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(ci, row)| {
            row.into_iter()
                .enumerate()
                .map(|(ai, v)| {
                    v.ok_or_else(|| {
                        let cn = c.get(ci).to_string();
                        let (l, col) = locate(text, &cn);
                        Diagnostic::new(
                            Code::NonTotal,
                            format!("phi_{cn} is not defined at `{}`", a.get(ai)),
                            l,
                            col,
                        )
                    })
                })
                .collect()
        })
        .collect()
}

/// A self-contained measuring: the three structures inline plus the table.
#[derive(Clone, Debug)]
pub struct MeasuringDocument {
    pub coalgebra: StepCoalgebra,
    pub source: PointedSuccAlgebra,
    pub target: PointedSuccAlgebra,
    pub phi: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawDocument {
    coalgebra: String,
    source: String,
    target: String,
    phi: BTreeMap<String, BTreeMap<String, String>>,
}

impl MeasuringDocument {
    /// Parses `{"coalgebra": "...", "source": "...", "target": "...", "phi": {...}}`
    /// where the first three fields hold structure texts.
    pub fn parse(text: &str) -> Result<Self, Diagnostic> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| json_syntax(&e))?;
        let field = |name: &str, body: &str| parse_structure(body).map_err(|d| d.in_source(name.to_string()));
        let wrong = |name: &str, want: &str| {
            let (l, c) = locate(text, name);
            Diagnostic::new(Code::Syntax, format!("field `{name}` must hold an idsucc {want}"), l, c)
        };
        let Structure::Coalgebra(coalgebra) = field("coalgebra", &raw.coalgebra)? else {
            return Err(wrong("coalgebra", "coalgebra"));
        };
        let Structure::Algebra(source) = field("source", &raw.source)? else {
            return Err(wrong("source", "algebra"));
        };
        let Structure::Algebra(target) = field("target", &raw.target)? else {
            return Err(wrong("target", "algebra"));
        };
        let phi = phi_from_map(&raw.phi, text, coalgebra.carrier(), source.carrier(), target.carrier())?;
        Ok(MeasuringDocument {
            coalgebra,
            source,
            target,
            phi,
        })
    }

    pub fn to_measuring(&self) -> crate::Result<Measuring> {
        Measuring::new(
            self.coalgebra.to_fin(),
            self.source.to_fin(),
            self.target.to_fin(),
            self.phi.clone(),
        )
    }
}

/// The document form of an `X + 1` measuring.
pub fn measuring_document(m: &Measuring) -> crate::Result<Value> {
    let c = StepCoalgebra::from_fin(m.coalgebra())?;
    let a = PointedSuccAlgebra::from_fin(m.source())?;
    let b = PointedSuccAlgebra::from_fin(m.target())?;
    Ok(json!({
        "coalgebra": print_coalgebra(&c).trim_end(),
        "source": print_algebra(&a).trim_end(),
        "target": print_algebra(&b).trim_end(),
        "phi": m.to_json(),
    }))
}
