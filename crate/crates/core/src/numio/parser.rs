//! Recursive-descent parsers for gross-number literals and for the
//! expression/statement language.
//!
//! Literal grammar:
//!
//! ```text
//! number   := ['+' | '-'] term (('+' | '-') term)*
//! term     := coeff ['*'] unit | coeff | unit
//! coeff    := DECIMAL ['/' DECIMAL]
//! unit     := G1 ['^' exponent]
//! exponent := '{' number '}' | ['-'] DECIMAL | G1
//! ```
//!
//! Expression precedence, loosest first: comparisons, `+ -`, `* /`,
//! unary `-`, `^` (right-associative). A number immediately followed by
//! `G1` is an implicit product (`2G1`, `0.5①`).

use super::ast::{BinOp, Branch, CmpOp, Condition, Expr, ExprKind, FunctionDef, Stmt};
use super::lexer::{lex, Keyword, Position, Token, TokenKind};
use super::{SyntaxError, SyntaxErrorKind};
use crate::gross::{normalize, GrossNumber};
use crate::rational::{self, Rational};
use num_traits::Zero;

/// Default cap on nested grosspower braces.
pub const DEFAULT_DEPTH_CAP: usize = 8;

/// Hard bound on general nesting (parentheses, unary chains) to keep the
/// recursion on the stack finite.
const MAX_NESTING: usize = 256;

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    depth_cap: usize,
    exponent_depth: usize,
    nesting: usize,
}

impl Parser {
    fn new(input: &str, depth_cap: usize) -> Result<Self, SyntaxError> {
        Ok(Parser {
            tokens: lex(input)?,
            idx: 0,
            depth_cap,
            exponent_depth: 0,
            nesting: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.idx]
    }

    fn peek_kind(&self) -> TokenKind {
        self.tokens[self.idx].kind
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.idx].clone();
        if tok.kind != TokenKind::Eof {
            self.idx += 1;
        }
        tok
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        let tok = self.peek();
        let kind = if tok.kind == TokenKind::Eof {
            SyntaxErrorKind::UnexpectedEnd {
                expected: expected.to_string(),
            }
        } else {
            SyntaxErrorKind::UnexpectedToken {
                found: tok.lexeme.clone(),
                expected: expected.to_string(),
            }
        };
        SyntaxError::new(kind, tok.position)
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, SyntaxError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(kind.describe()))
        }
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.peek_kind() == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn enter_exponent(&mut self, pos: Position) -> Result<(), SyntaxError> {
        self.exponent_depth += 1;
        if self.exponent_depth > self.depth_cap {
            return Err(SyntaxError::new(
                SyntaxErrorKind::DepthLimitExceeded(self.depth_cap),
                pos,
            ));
        }
        Ok(())
    }

    fn enter_nesting(&mut self, pos: Position) -> Result<(), SyntaxError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(SyntaxError::new(
                SyntaxErrorKind::DepthLimitExceeded(MAX_NESTING),
                pos,
            ));
        }
        Ok(())
    }

    fn decimal(&mut self) -> Result<Rational, SyntaxError> {
        let tok = self.expect(TokenKind::DecimalLit)?;
        rational::parse_decimal(&tok.lexeme).ok_or_else(|| {
            SyntaxError::new(SyntaxErrorKind::MalformedNumber(tok.lexeme), tok.position)
        })
    }

    // ---- literal grammar ----

    fn literal_number(&mut self) -> Result<GrossNumber, SyntaxError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek_kind() {
            TokenKind::Minus => {
                self.advance();
                true
            }
            TokenKind::Plus => {
                self.advance();
                false
            }
            _ => false,
        };
        loop {
            let (c, p) = self.literal_term()?;
            terms.push((if negative { -c } else { c }, p));
            negative = match self.peek_kind() {
                TokenKind::Plus => false,
                TokenKind::Minus => true,
                _ => break,
            };
            self.advance();
        }
        Ok(normalize(terms))
    }

    fn literal_term(&mut self) -> Result<(Rational, GrossNumber), SyntaxError> {
        match self.peek_kind() {
            TokenKind::DecimalLit => {
                let mut coeff = self.decimal()?;
                if self.peek_kind() == TokenKind::Slash {
                    let slash = self.advance();
                    let denom = self.decimal()?;
                    if denom.is_zero() {
                        return Err(SyntaxError::new(
                            SyntaxErrorKind::ZeroDenominator,
                            slash.position,
                        ));
                    }
                    coeff /= denom;
                }
                let has_unit = if self.peek_kind() == TokenKind::Star {
                    self.advance();
                    true
                } else {
                    self.peek_kind() == TokenKind::Grossone
                };
                if has_unit {
                    let exp = self.literal_unit()?;
                    Ok((coeff, exp))
                } else {
                    Ok((coeff, GrossNumber::zero()))
                }
            }
            TokenKind::Grossone => Ok((Rational::from_integer(1.into()), self.literal_unit()?)),
            _ => Err(self.unexpected("number or G1")),
        }
    }

    /// Parses `G1 [^ exponent]` and returns the exponent.
    fn literal_unit(&mut self) -> Result<GrossNumber, SyntaxError> {
        self.expect(TokenKind::Grossone)?;
        if self.peek_kind() != TokenKind::Caret {
            return Ok(GrossNumber::one());
        }
        let caret = self.advance();
        self.enter_exponent(caret.position)?;
        let exp = match self.peek_kind() {
            TokenKind::LBrace => {
                self.advance();
                let e = self.literal_number()?;
                self.expect(TokenKind::RBrace)?;
                e
            }
            TokenKind::Minus => {
                self.advance();
                GrossNumber::from_rational(-self.decimal()?)
            }
            TokenKind::DecimalLit => GrossNumber::from_rational(self.decimal()?),
            TokenKind::Grossone => {
                self.advance();
                GrossNumber::grossone()
            }
            _ => return Err(self.unexpected("'{', number or G1")),
        };
        self.exponent_depth -= 1;
        Ok(exp)
    }

    // ---- statements and expressions ----

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        match self.peek_kind() {
            TokenKind::Keyword(Keyword::Let) => {
                let kw = self.advance();
                let name = self.expect(TokenKind::Ident)?.lexeme;
                self.expect(TokenKind::Assign)?;
                let value = self.expression()?;
                Ok(Stmt::Let {
                    name,
                    value,
                    pos: kw.position,
                })
            }
            TokenKind::Keyword(Keyword::Def) => {
                let kw = self.advance();
                let name = self.expect(TokenKind::Ident)?.lexeme;
                self.expect(TokenKind::LParen)?;
                let param = self.expect(TokenKind::Ident)?.lexeme;
                self.expect(TokenKind::RParen)?;
                self.expect(TokenKind::Assign)?;
                let branches = self.function_body(&param)?;
                Ok(Stmt::Def(FunctionDef {
                    name,
                    param,
                    branches,
                    pos: kw.position,
                }))
            }
            _ => Ok(Stmt::Expr(self.expression()?)),
        }
    }

    fn function_body(&mut self, param: &str) -> Result<Vec<Branch>, SyntaxError> {
        if self.peek_kind() != TokenKind::LBrace || !self.brace_holds_branches() {
            let body = self.expression()?;
            return Ok(vec![Branch {
                body,
                condition: None,
            }]);
        }
        self.advance();
        let mut branches = Vec::new();
        loop {
            let body = self.expression()?;
            let condition = if self.eat(TokenKind::Keyword(Keyword::If)) {
                let p = self.expect(TokenKind::Ident)?;
                if p.lexeme != param {
                    return Err(SyntaxError::new(
                        SyntaxErrorKind::UnexpectedToken {
                            found: p.lexeme,
                            expected: format!("parameter '{param}'"),
                        },
                        p.position,
                    ));
                }
                let op = self
                    .comparison_op()
                    .ok_or_else(|| self.unexpected("comparison operator"))?;
                let bound = self.additive()?;
                Some(Condition { op, bound })
            } else {
                None
            };
            branches.push(Branch { body, condition });
            if self.eat(TokenKind::Semicolon) {
                if self.eat(TokenKind::RBrace) {
                    break;
                }
                continue;
            }
            self.expect(TokenKind::RBrace)?;
            break;
        }
        Ok(branches)
    }

    /// Looks ahead from a `{` to decide whether it opens a branch list (it
    /// contains `if` or `;` at its own nesting level) or a grouped expression.
    fn brace_holds_branches(&self) -> bool {
        let mut depth = 0usize;
        for tok in &self.tokens[self.idx..] {
            match tok.kind {
                TokenKind::LBrace | TokenKind::LParen => depth += 1,
                TokenKind::RBrace | TokenKind::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                TokenKind::Keyword(Keyword::If) | TokenKind::Semicolon if depth == 1 => {
                    return true
                }
                TokenKind::Eof => return false,
                _ => {}
            }
        }
        false
    }

    fn comparison_op(&mut self) -> Option<CmpOp> {
        let op = match self.peek_kind() {
            TokenKind::Less => CmpOp::Lt,
            TokenKind::LessEq => CmpOp::Le,
            TokenKind::Assign => CmpOp::Eq,
            TokenKind::GreaterEq => CmpOp::Ge,
            TokenKind::Greater => CmpOp::Gt,
            _ => return None,
        };
        self.advance();
        Some(op)
    }

    fn expression(&mut self) -> Result<Expr, SyntaxError> {
        let lhs = self.additive()?;
        let pos = self.peek().position;
        match self.comparison_op() {
            Some(op) => {
                let rhs = self.additive()?;
                Ok(Expr::new(
                    ExprKind::Compare(op, Box::new(lhs), Box::new(rhs)),
                    pos,
                ))
            }
            None => Ok(lhs),
        }
    }

    fn additive(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek_kind() {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let tok = self.advance();
            let rhs = self.multiplicative()?;
            lhs = Expr::binary(op, lhs, rhs, tok.position);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek_kind() {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let tok = self.advance();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs, tok.position);
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek_kind() {
            TokenKind::Minus | TokenKind::Plus => {
                let tok = self.advance();
                self.enter_nesting(tok.position)?;
                let inner = self.unary()?;
                self.nesting -= 1;
                if tok.kind == TokenKind::Minus {
                    Ok(Expr::new(ExprKind::Neg(Box::new(inner)), tok.position))
                } else {
                    Ok(inner)
                }
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.implicit_product()?;
        if self.peek_kind() != TokenKind::Caret {
            return Ok(base);
        }
        let caret = self.advance();
        self.enter_exponent(caret.position)?;
        let exponent = self.unary()?;
        self.exponent_depth -= 1;
        Ok(Expr::binary(BinOp::Pow, base, exponent, caret.position))
    }

    /// `2G1` and `2G1^{3}` read as `2*G1` and `2*(G1^{3})`.
    fn implicit_product(&mut self) -> Result<Expr, SyntaxError> {
        let first = self.primary()?;
        if matches!(first.kind, ExprKind::Literal(_)) && self.peek_kind() == TokenKind::Grossone {
            let unit = self.power()?;
            let pos = first.pos;
            return Ok(Expr::binary(BinOp::Mul, first, unit, pos));
        }
        Ok(first)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::DecimalLit => {
                let q = self.decimal()?;
                Ok(Expr::new(ExprKind::Literal(q), tok.position))
            }
            TokenKind::Grossone => {
                self.advance();
                Ok(Expr::new(ExprKind::Grossone, tok.position))
            }
            TokenKind::Ident => {
                self.advance();
                if self.peek_kind() == TokenKind::LParen {
                    self.advance();
                    self.enter_nesting(tok.position)?;
                    let mut args = Vec::new();
                    if !self.eat(TokenKind::RParen) {
                        loop {
                            args.push(self.expression()?);
                            if self.eat(TokenKind::Comma) {
                                continue;
                            }
                            self.expect(TokenKind::RParen)?;
                            break;
                        }
                    }
                    self.nesting -= 1;
                    Ok(Expr::new(ExprKind::Call(tok.lexeme, args), tok.position))
                } else {
                    Ok(Expr::new(ExprKind::Var(tok.lexeme), tok.position))
                }
            }
            TokenKind::LParen | TokenKind::LBrace => {
                self.advance();
                self.enter_nesting(tok.position)?;
                let inner = self.expression()?;
                let close = if tok.kind == TokenKind::LParen {
                    TokenKind::RParen
                } else {
                    TokenKind::RBrace
                };
                self.expect(close)?;
                self.nesting -= 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

/// Parses a gross-number literal such as `17.21*G1^{52.4*G1 - 72.1} + 7.02`.
pub fn parse_number(input: &str) -> Result<GrossNumber, SyntaxError> {
    parse_number_with_cap(input, DEFAULT_DEPTH_CAP)
}

pub fn parse_number_with_cap(input: &str, depth_cap: usize) -> Result<GrossNumber, SyntaxError> {
    let mut p = Parser::new(input, depth_cap)?;
    let n = p.literal_number()?;
    p.expect_end()?;
    Ok(n)
}

/// Parses a single expression (no `let`/`def`).
pub fn parse_expression(input: &str) -> Result<Expr, SyntaxError> {
    parse_expression_with_cap(input, DEFAULT_DEPTH_CAP)
}

pub fn parse_expression_with_cap(input: &str, depth_cap: usize) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(input, depth_cap)?;
    let e = p.expression()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses one session statement: `let`, `def`, or a bare expression.
pub fn parse_statement(input: &str) -> Result<Stmt, SyntaxError> {
    parse_statement_with_cap(input, DEFAULT_DEPTH_CAP)
}

pub fn parse_statement_with_cap(input: &str, depth_cap: usize) -> Result<Stmt, SyntaxError> {
    let mut p = Parser::new(input, depth_cap)?;
    let s = p.statement()?;
    p.expect_end()?;
    Ok(s)
}
