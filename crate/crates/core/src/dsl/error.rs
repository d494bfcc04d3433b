use std::fmt;

use thiserror::Error;

use super::ast::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameErrorKind {
    Undeclared,
    Duplicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    /// `found` is the offending lexeme, empty at end of input.
    #[error("{}:{}: expected {expected}, found {}", pos.line, pos.column, show_found(found))]
    Parse { pos: Pos, expected: String, found: String },
    #[error("{}:{}: {} name `{name}`", pos.line, pos.column, kind)]
    Name { pos: Pos, name: String, kind: NameErrorKind },
    #[error("{}:{}: {message}", pos.line, pos.column)]
    Semantic { pos: Pos, message: String },
    /// Well-formed but outside what the engine decides (e.g. classes over a
    /// non-divisible group).
    #[error("{}:{}: unsupported: {message}", pos.line, pos.column)]
    Unsupported { pos: Pos, message: String },
}

impl DslError {
    pub fn pos(&self) -> Pos {
        match self {
            DslError::Parse { pos, .. }
            | DslError::Name { pos, .. }
            | DslError::Semantic { pos, .. }
            | DslError::Unsupported { pos, .. } => *pos,
        }
    }
}

fn show_found(found: &str) -> String {
    if found.is_empty() {
        "end of input".into()
    } else {
        format!("`{found}`")
    }
}

impl fmt::Display for NameErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameErrorKind::Undeclared => "undeclared",
            NameErrorKind::Duplicate => "duplicate",
        })
    }
}
