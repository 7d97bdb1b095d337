use std::fmt;

use super::lexer::Position;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl CmpOp {
    /// Whether `ordering` (left vs right) satisfies the relation.
    pub fn holds(self, ordering: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            CmpOp::Lt => ordering == Less,
            CmpOp::Le => ordering != Greater,
            CmpOp::Eq => ordering == Equal,
            CmpOp::Ge => ordering != Less,
            CmpOp::Gt => ordering == Greater,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Unsigned decimal literal.
    Literal(Rational),
    Grossone,
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    /// Evaluates to 1 when the relation holds, 0 otherwise.
    Compare(CmpOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Position) -> Self {
        Expr { kind, pos }
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr, pos: Position) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), pos)
    }
}

/// `if <param> <op> <bound>`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub op: CmpOp,
    pub bound: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub body: Expr,
    pub condition: Option<Condition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDef {
    pub name: String,
    pub param: String,
    pub branches: Vec<Branch>,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Let {
        name: String,
        value: Expr,
        pos: Position,
    },
    Def(FunctionDef),
    Expr(Expr),
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        })
    }
}

/// Fully parenthesized rendering; re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Literal(q) => f.write_str(&crate::rational::to_exact_string(q)),
            ExprKind::Grossone => f.write_str("G1"),
            ExprKind::Var(name) => f.write_str(name),
            ExprKind::Neg(inner) => write!(f, "(-{inner})"),
            ExprKind::Binary(BinOp::Pow, l, r) => write!(f, "({l}^{{{r}}})"),
            ExprKind::Binary(op, l, r) => write!(f, "({l} {op} {r})"),
            ExprKind::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            ExprKind::Compare(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}
