use std::collections::BTreeMap;

use super::diag::{Code, Diagnostic};
use super::parse::{parse_structure, Kind, Structure};
use crate::functor::FunctorExpr;
use crate::mixed_gf::MooreCoalgebra;
use crate::structures::{FinAlgebra, PointedSuccAlgebra, StepCoalgebra};

/// Parsed structures by kind and name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: BTreeMap<(Kind, String), Structure>,
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    /// Parses `text` and registers it under `name`. Diagnostics carry `name`
    /// as their source.
    pub fn load(&mut self, name: &str, text: &str) -> Result<Kind, Diagnostic> {
        let s = parse_structure(text).map_err(|d| d.in_source(name))?;
        let kind = s.kind();
        self.insert(name, s)?;
        Ok(kind)
    }

    pub fn insert(&mut self, name: &str, s: Structure) -> Result<(), Diagnostic> {
        let key = (s.kind(), name.to_string());
        if self.entries.contains_key(&key) {
            return Err(Diagnostic::new(
                Code::DuplicateName,
                format!("a {} named `{name}` is already loaded", s.kind().keyword()),
                1,
                1,
            )
            .in_source(name));
        }
        self.entries.insert(key, s);
        Ok(())
    }

    pub fn get(&self, kind: Kind, name: &str) -> Option<&Structure> {
        self.entries.get(&(kind, name.to_string()))
    }

    /// Names of the given kind in sorted order.
    pub fn names(&self, kind: Kind) -> Vec<&str> {
        self.entries
            .keys()
            .filter(|(k, _)| *k == kind)
            .map(|(_, n)| n.as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorExpr> {
        match self.get(Kind::Functor, name)? {
            Structure::Functor(f) => Some(f),
            _ => None,
        }
    }

    pub fn algebra(&self, name: &str) -> Option<&PointedSuccAlgebra> {
        match self.get(Kind::Algebra, name)? {
            Structure::Algebra(a) => Some(a),
            _ => None,
        }
    }

    pub fn coalgebra(&self, name: &str) -> Option<&StepCoalgebra> {
        match self.get(Kind::Coalgebra, name)? {
            Structure::Coalgebra(c) => Some(c),
            _ => None,
        }
    }

    pub fn automaton(&self, name: &str) -> Option<&MooreCoalgebra> {
        match self.get(Kind::Automaton, name)? {
            Structure::Automaton(m) => Some(m),
            _ => None,
        }
    }

    pub fn gf_algebra(&self, name: &str) -> Option<&FinAlgebra> {
        match self.get(Kind::GfAlgebra, name)? {
            Structure::GfAlgebra(a) => Some(a),
            _ => None,
        }
    }
}
