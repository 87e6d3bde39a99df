//! Textual expressions for scalars.
//!
//! Grammar (usual precedence, `^` binds tightest and takes an integer
//! exponent, possibly negative):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! `q` is accepted as sugar for `-s^2`.

use super::field::Scalar;
use super::var::Var;
use super::ScalarError;

pub fn parse_scalar(input: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser { src: input, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            column: self.src[..self.pos].chars().count() + 1,
            message: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|_| {
                    let mut e = self.error("division by zero");
                    if let ScalarError::Parse { column, .. } = &mut e {
                        *column = self.src[..at].chars().count() + 1;
                    }
                    e
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.exponent()?;
        base.pow(exp).map_err(|_| self.error("negative power of zero"))
    }

    fn exponent(&mut self) -> Result<i32, ScalarError> {
        self.skip_ws();
        let paren = self.eat('(');
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let mut e: i32 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        if neg {
            e = -e;
        }
        if paren && !self.eat(')') {
            return Err(self.error("expected `)`"));
        }
        Ok(e)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if pred(c)) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: num_bigint::BigInt = digits.parse().expect("ascii digits");
                Ok(Scalar::int(n))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name == "q" {
                    let s = Scalar::var(Var::S);
                    return Ok(s.mul(&s).neg());
                }
                match Var::from_name(name) {
                    Some(v) => Ok(Scalar::var(v)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown indeterminate `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
