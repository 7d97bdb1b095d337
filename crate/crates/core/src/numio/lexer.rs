use std::fmt;

use super::{SyntaxError, SyntaxErrorKind};

/// 1-based line/column; columns count Unicode scalar values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub const START: Position = Position { line: 1, column: 1 };
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Let,
    Def,
    If,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    DecimalLit,
    Grossone,
    Ident,
    Keyword(Keyword),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Assign,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Eof,
}

impl TokenKind {
    pub fn describe(self) -> &'static str {
        match self {
            TokenKind::DecimalLit => "number",
            TokenKind::Grossone => "G1",
            TokenKind::Ident => "identifier",
            TokenKind::Keyword(Keyword::Let) => "'let'",
            TokenKind::Keyword(Keyword::Def) => "'def'",
            TokenKind::Keyword(Keyword::If) => "'if'",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::LBrace => "'{'",
            TokenKind::RBrace => "'}'",
            TokenKind::Comma => "','",
            TokenKind::Semicolon => "';'",
            TokenKind::Assign => "'='",
            TokenKind::Less => "'<'",
            TokenKind::LessEq => "'<='",
            TokenKind::Greater => "'>'",
            TokenKind::GreaterEq => "'>='",
            TokenKind::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: Position,
}

/// ASCII spelling of ①.
pub const GROSSONE_WORD: &str = "G1";
pub const GROSSONE_CHAR: char = '\u{2460}';

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Position,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }
}

/// Splits `input` into tokens. The returned sequence always ends with a
/// single [`TokenKind::Eof`] token positioned just past the input.
pub fn lex(input: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut cur = Cursor {
        chars: input.chars().peekable(),
        pos: Position::START,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let start = cur.pos;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c.is_ascii_digit() {
            tokens.push(lex_number(&mut cur)?);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(c) = cur
                .peek()
                .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                word.push(c);
                cur.bump();
            }
            let kind = match word.as_str() {
                GROSSONE_WORD => TokenKind::Grossone,
                "let" => TokenKind::Keyword(Keyword::Let),
                "def" => TokenKind::Keyword(Keyword::Def),
                "if" => TokenKind::Keyword(Keyword::If),
                _ => TokenKind::Ident,
            };
            tokens.push(Token {
                kind,
                lexeme: word,
                position: start,
            });
            continue;
        }
        cur.bump();
        let kind = match c {
            GROSSONE_CHAR => TokenKind::Grossone,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            ',' => TokenKind::Comma,
            ';' => TokenKind::Semicolon,
            '=' => TokenKind::Assign,
            '<' | '>' => {
                let with_eq = cur.peek() == Some('=');
                if with_eq {
                    cur.bump();
                }
                match (c, with_eq) {
                    ('<', false) => TokenKind::Less,
                    ('<', true) => TokenKind::LessEq,
                    ('>', false) => TokenKind::Greater,
                    _ => TokenKind::GreaterEq,
                }
            }
            other => {
                return Err(SyntaxError::new(
                    SyntaxErrorKind::UnknownCharacter(other),
                    start,
                ));
            }
        };
        let lexeme = match kind {
            TokenKind::LessEq => "<=".to_string(),
            TokenKind::GreaterEq => ">=".to_string(),
            _ => c.to_string(),
        };
        tokens.push(Token {
            kind,
            lexeme,
            position: start,
        });
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        lexeme: String::new(),
        position: cur.pos,
    });
    Ok(tokens)
}

fn lex_number(cur: &mut Cursor<'_>) -> Result<Token, SyntaxError> {
    let start = cur.pos;
    let mut text = String::new();
    let take_digits = |cur: &mut Cursor<'_>, text: &mut String| {
        while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
            text.push(d);
            cur.bump();
        }
    };
    take_digits(cur, &mut text);
    if cur.peek() == Some('.') {
        let dot = cur.pos;
        cur.bump();
        text.push('.');
        if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(SyntaxError::new(
                SyntaxErrorKind::MalformedNumber(text),
                dot,
            ));
        }
        take_digits(cur, &mut text);
        if cur.peek() == Some('.') {
            let second = cur.pos;
            text.push('.');
            return Err(SyntaxError::new(
                SyntaxErrorKind::MalformedNumber(text),
                second,
            ));
        }
    }
    Ok(Token {
        kind: TokenKind::DecimalLit,
        lexeme: text,
        position: start,
    })
}
