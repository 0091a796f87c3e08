//! Text syntax for algebra elements.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number ['/' number] | name ['^' number] | '(' expr ')' ['^' number]
//! ```

use thiserror::Error;

use crate::gca::{Element, GeneratorTable};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: unknown generator `{name}`")]
    UnknownGenerator { column: usize, name: String },
    #[error("expression is not homogeneous: `{0}`")]
    NonHomogeneous(String),
}

impl ExprError {
    /// 1-based column of the error inside the parsed text, if known.
    pub fn column(&self) -> Option<usize> {
        match self {
            ExprError::Syntax { column, .. } | ExprError::UnknownGenerator { column, .. } => {
                Some(*column)
            }
            ExprError::NonHomogeneous(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((column, Token::Number(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((column, Token::Name(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((column, Token::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
    table: &'a GeneratorTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(c, _)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: Scalar>(&mut self) -> Result<Element<F>, ExprError> {
        let mut acc = Element::zero();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t: Element<F> = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<Element<F>, ExprError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.table.mul_unchecked(&acc, &f);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64, ExprError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Number(digits)) => {
                self.pos += 1;
                digits.parse().map_err(|_| ExprError::Syntax {
                    column,
                    message: format!("number `{digits}` is too large"),
                })
            }
            _ => self.error("expected a number"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ExprError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let column = self.column();
        let n = self.number()?;
        if n == 0 || n > u64::from(u32::MAX) {
            return Err(ExprError::Syntax {
                column,
                message: "exponent must be a positive integer".into(),
            });
        }
        Ok(n as u32)
    }

    fn factor<F: Scalar>(&mut self) -> Result<Element<F>, ExprError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Number(_)) => {
                let numer = self.number()?;
                let mut value = scalar_from_u64::<F>(numer);
                if self.eat('/') {
                    let column = self.column();
                    let denom = self.number()?;
                    if denom == 0 {
                        return Err(ExprError::Syntax {
                            column,
                            message: "division by zero".into(),
                        });
                    }
                    value = value / scalar_from_u64::<F>(denom);
                }
                Ok(Element::constant(self.table, value))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                let g = self
                    .table
                    .index_of(&name)
                    .ok_or(ExprError::UnknownGenerator { column, name })?;
                let power = self.exponent()?;
                Ok(self.table.power(g, power))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                let power = self.exponent()?;
                let mut acc = self.table.one();
                for _ in 0..power {
                    acc = self.table.mul_unchecked(&acc, &inner);
                }
                Ok(acc)
            }
            Some(Token::Op(c)) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of expression"),
        }
    }
}

fn scalar_from_u64<F: Scalar>(n: u64) -> F {
    match i64::try_from(n) {
        Ok(v) => F::from_i64(v),
        Err(_) => F::from_i64((n / 2) as i64) * F::from_i64(2) + F::from_i64((n % 2) as i64),
    }
}

/// Parses an element over `table`. Mixed degrees are allowed.
pub fn parse_element<F: Scalar>(table: &GeneratorTable, text: &str) -> Result<Element<F>, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.chars().count() + 1,
        table,
    };
    if parser.peek().is_none() {
        return parser.error("empty expression");
    }
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error("unexpected trailing input");
    }
    Ok(value)
}

/// Parses an element and requires every term to have the same degree.
pub fn parse_homogeneous<F: Scalar>(
    table: &GeneratorTable,
    text: &str,
) -> Result<Element<F>, ExprError> {
    let value = parse_element(table, text)?;
    match value.degree() {
        Some(_) => Ok(value),
        None => Err(ExprError::NonHomogeneous(text.trim().to_string())),
    }
}
