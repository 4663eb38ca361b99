use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Code {
    Syntax,
    UnknownElement,
    NonTotal,
    DuplicateName,
    UnsupportedFunctor,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Code::Syntax => "SYNTAX",
            Code::UnknownElement => "UNKNOWN_ELEMENT",
            Code::NonTotal => "NON_TOTAL",
            Code::DuplicateName => "DUPLICATE_NAME",
            Code::UnsupportedFunctor => "UNSUPPORTED_FUNCTOR",
        })
    }
}

/// A parse or validation failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    pub line: usize,
    pub col: usize,
    /// The file or inline source the position refers to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>, line: usize, col: usize) -> Self {
        Diagnostic {
            code,
            message: message.into(),
            line,
            col,
            source: None,
        }
    }

    pub fn in_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.source {
            write!(f, "{s}:")?;
        }
        write!(f, "{}:{}: {}: {}", self.line, self.col, self.code, self.message)
    }
}

impl std::error::Error for Diagnostic {}
