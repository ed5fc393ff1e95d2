//! Text grammar for field elements, polynomials and rational functions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' digits)?
//! atom   := digits | VAR | 'g' | '(' expr ')'
//! ```
//!
//! `VAR` is `T` for θ (or `x` for a field modulus). Integers are reduced
//! mod `p`; `g` is the generator of `F_q` over `F_p` when `q > p`.
//! Juxtaposition multiplies, so `2T^3+T` and `(g+1)T` both parse.

use shuffle_core::{FieldSpec, Poly, RationalFunction, ShuffleTuple, Var};

use crate::CliError;

const MAX_EXPONENT: u32 = 100_000;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    base: usize,
    field: &'a FieldSpec,
    letter: u8,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse { position: self.base + self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn constant(&self, c: u32) -> RationalFunction {
        RationalFunction::constant(self.field, c)
    }

    fn expr(&mut self) -> Result<RationalFunction, CliError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self, c: u8) -> bool {
        c.is_ascii_digit() || c == b'(' || c == b'g' || c == self.letter
    }

    fn term(&mut self) -> Result<RationalFunction, CliError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    if d.is_zero() {
                        self.pos = at;
                        return Err(self.error("division by zero"));
                    }
                    acc = acc.div(&d).map_err(|e| self.error(e.to_string()))?;
                }
                Some(c) if self.starts_atom(c) => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, CliError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an exponent after '^'"));
        }
        let e = match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                self.pos = start;
                return Err(self.error(format!("exponent larger than {MAX_EXPONENT}")));
            }
        };
        Ok(pow(&base, e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RationalFunction, CliError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.field.p() as u64;
                let v = self.digits().bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.constant(v as u32))
            }
            Some(c) if c == self.letter => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(Poly::x(self.field, Var::Theta)))
            }
            Some(b'g') => match self.field.generator() {
                Some(g) => {
                    self.pos += 1;
                    Ok(self.constant(g))
                }
                None => Err(self.error("'g' needs a non-prime field (m > 1)")),
            },
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => Err(self.error("'t' is not allowed here; use 'T' for θ")),
            Some(c) if c.is_ascii() => Err(self.error(format!("unexpected '{}'", c as char))),
            Some(_) => Err(self.error("unexpected non-ASCII character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn pow(base: &RationalFunction, mut e: u32) -> RationalFunction {
    let mut acc = RationalFunction::one(base.field());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq);
        }
    }
    acc
}

fn parse_with(text: &str, base: usize, field: &FieldSpec, letter: u8) -> Result<RationalFunction, CliError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, base, field, letter };
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr()?;
    if p.peek().is_some() {
        let c = p.text[p.pos];
        let what = if c == b')' { "unmatched ')'".to_string() } else { format!("unexpected '{}'", c as char) };
        return Err(p.error(what));
    }
    Ok(value)
}

/// Parses an element of `F_q(θ)` written in `T`.
pub fn parse_rational(text: &str, field: &FieldSpec) -> Result<RationalFunction, CliError> {
    parse_with(text, 0, field, b'T')
}

/// Parses a polynomial in `x` over `F_p` and returns its coefficients, low
/// degree first. Used for `--modulus`.
pub fn parse_modulus(text: &str, p: u64) -> Result<Vec<u32>, CliError> {
    let prime = FieldSpec::prime(p)?;
    let value = parse_with(text, 0, &prime, b'x')?;
    if !value.is_polynomial() {
        return Err(CliError::Parse { position: 1, message: "the modulus must be a polynomial".into() });
    }
    Ok(value.num().coeffs().to_vec())
}

/// Parses `b0; a1; ...; a_{n−1}` into `n` entries.
pub fn parse_entries(text: &str, field: &FieldSpec, n: usize) -> Result<Vec<RationalFunction>, CliError> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != n {
        return Err(CliError::Arity { expected: n, found: parts.len() });
    }
    let mut offset = 0;
    let mut out = Vec::with_capacity(n);
    for part in parts {
        out.push(parse_with(part, offset, field, b'T')?);
        offset += part.len() + 1;
    }
    Ok(out)
}

pub fn parse_tuple(text: &str, field: &FieldSpec, r: usize, s: usize) -> Result<ShuffleTuple, CliError> {
    if r == 0 || s == 0 {
        return Err(CliError::Usage("r and s must be positive".into()));
    }
    let entries = parse_entries(text, field, r + s)?;
    Ok(ShuffleTuple::from_entries(r, s, entries)?)
}
