//! Text in and out: lexer, literal and expression parsers, canonical printer.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;

use thiserror::Error;

pub use ast::{BinOp, Branch, CmpOp, Condition, Expr, ExprKind, FunctionDef, Stmt};
pub use lexer::{lex, Keyword, Position, Token, TokenKind};
pub use parser::{
    parse_expression, parse_expression_with_cap, parse_number, parse_number_with_cap,
    parse_statement, parse_statement_with_cap, DEFAULT_DEPTH_CAP,
};
pub use printer::{print_canonical, PrintMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("unknown character '{0}'")]
    UnknownCharacter(char),
    #[error("malformed number '{0}'")]
    MalformedNumber(String),
    #[error("unexpected '{found}', expected {expected}")]
    UnexpectedToken { found: String, expected: String },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: String },
    #[error("grosspower nesting exceeds depth cap {0}")]
    DepthLimitExceeded(usize),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: syntax error: {kind}")]
pub struct SyntaxError {
    pub kind: SyntaxErrorKind,
    pub position: Position,
}

impl SyntaxError {
    pub fn new(kind: SyntaxErrorKind, position: Position) -> Self {
        SyntaxError { kind, position }
    }
}
