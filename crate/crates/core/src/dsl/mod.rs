//! The `.oag` text format: groups, sets, tagged sums, piecewise maps and
//! checks.
//!
//! ```text
//! group G = Z[1/3]
//!
//! set A = { (x, y) : 0 < x, x < y }
//! map f : A -> A {
//!   on A : (x, y) -> (x, y)
//! }
//! check bijection f
//! ```

mod ast;
mod emit;
mod error;
mod eval;
mod lexer;
mod parser;
mod printer;

pub use ast::{CheckDecl, MapDecl, PieceDecl, Pos, Script, SetDecl, Stmt, SumDecl, Summand};
pub use emit::emit_witness;
pub use error::{DslError, NameErrorKind};
pub use eval::{run, CheckOutcome, Env};
pub use parser::{parse, parse_group, parse_set_literal};
pub use printer::print;
