//! A small formula language over the signature
//! `{+, n, *, /, \, ->, t, \/, /\, 0, 1}`, a parser for it, an exhaustive
//! checker with witness extraction, and a catalog of named laws.

mod catalog;
mod eval;
mod parser;
mod syntax;

pub use catalog::{catalog_law, catalog_names, parse_law_file, LawBook, CATALOG_VERSION};
pub use eval::{
    check_formula, eval_at, eval_term_at, failing_assignments, Assignment, CompiledFormula,
    Interpretation, Verdict,
};
pub use parser::{parse_formula, parse_term};
pub use syntax::{BinaryOp, Formula, Op, Term, UnaryOp};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown operator `{name}` at byte {offset}")]
    UnknownOperator { offset: usize, name: String },
    #[error("unbound name `{name}` at byte {offset}")]
    UnboundName { offset: usize, name: String },
    #[error("operation {0} is not interpreted in this model")]
    SignatureMismatch(String),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("law file line {line}: {reason}")]
    LawFile { line: usize, reason: String },
    #[error("assignment value out of range")]
    ElementOutOfRange,
}
