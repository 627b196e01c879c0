//! Recursive-descent parser for polynomials, differential polynomials and
//! quantifier-free formulas.
//!
//! ```text
//! expr    := ('+'|'-')? term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*          division by ground elements only
//! factor  := primary ('^' posint)*
//! primary := int | 't' | var | '(' expr ')'
//! var     := 'x' idx ("'"+ | '^(' posint ')')? | 'u' idx
//! formula := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | '(' formula ')' | expr ('=' | '!=') expr
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::diff::DiffPolynomial;
use crate::error::{Error, Result};
use crate::generic::formula::QFFormula;
use crate::poly::{GroundElement, GroundField, Polynomial, Var};

/// What the surrounding context permits.
#[derive(Debug, Clone, Copy)]
pub struct ParseContext {
    pub field: GroundField,
    pub allow_u: bool,
    pub allow_derivatives: bool,
    /// Largest admissible variable index, if bounded.
    pub max_index: Option<u32>,
}

impl ParseContext {
    /// Algebraic polynomials in `x` and `u`.
    pub fn algebraic(field: GroundField) -> Self {
        ParseContext {
            field,
            allow_u: true,
            allow_derivatives: false,
            max_index: None,
        }
    }

    /// Differential polynomials in `x` and its derivatives.
    pub fn differential(field: GroundField) -> Self {
        ParseContext {
            field,
            allow_u: false,
            allow_derivatives: true,
            max_index: None,
        }
    }

    pub fn with_max_index(mut self, n: u32) -> Self {
        self.max_index = Some(n);
        self
    }
}

/// Parses a polynomial in `x`, `u`, derivatives and `t` with no restrictions
/// beyond the ground field.
pub fn parse_poly(text: &str, field: GroundField) -> Result<Polynomial> {
    let ctx = ParseContext {
        field,
        allow_u: true,
        allow_derivatives: true,
        max_index: None,
    };
    parse_poly_in(text, &ctx)
}

pub fn parse_poly_in(text: &str, ctx: &ParseContext) -> Result<Polynomial> {
    let mut p = Parser::new(text, ctx);
    let out = p.expr()?;
    p.expect_end()?;
    Ok(out)
}

pub fn parse_diff_poly(text: &str, field: GroundField, n: u32) -> Result<DiffPolynomial> {
    let ctx = ParseContext::differential(field).with_max_index(n);
    let body = parse_poly_in(text, &ctx)?;
    Ok(DiffPolynomial::new(n, body))
}

pub fn parse_formula(text: &str, field: GroundField, n: u32) -> Result<QFFormula> {
    let ctx = ParseContext::differential(field).with_max_index(n);
    let mut p = Parser::new(text, &ctx);
    let out = p.formula(n)?;
    p.expect_end()?;
    Ok(out)
}

/// Parses `lhs = rhs` into the pair of sides.
pub fn parse_equation(text: &str, ctx: &ParseContext) -> Result<(Polynomial, Polynomial)> {
    let mut p = Parser::new(text, ctx);
    let lhs = p.expr()?;
    p.skip_ws();
    if !p.eat('=') {
        return Err(p.error("expected '='"));
    }
    let rhs = p.expr()?;
    p.expect_end()?;
    Ok((lhs, rhs))
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    ctx: &'a ParseContext,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ctx: &'a ParseContext) -> Self {
        Parser {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
            ctx,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let byte = self.chars.get(pos).map(|c| c.0).unwrap_or(self.src.len());
        let before = &self.src[..byte];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().map_or(false, char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{}'", c))),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        s.parse().ok()
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let n = self.digits().ok_or_else(|| self.error(format!("expected {}", what)))?;
        n.to_u32().ok_or_else(|| self.error_at(at, format!("{} too large", what)))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            self.skip_ws();
            if self.eat('+') {
                let t = self.term()?;
                acc = acc + t;
            } else if self.peek() == Some('-') {
                self.pos += 1;
                let t = self.term()?;
                acc = acc - t;
            } else {
                break;
            }
        }
        Ok(acc.with_field(self.ctx.field))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let f = self.factor()?;
                let c = f
                    .as_constant()
                    .ok_or_else(|| self.error_at(at, "division by a non-constant"))?;
                let inv = c.invert().map_err(|_| self.error_at(at, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut base = self.primary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                let e = self.small_int("exponent")?;
                base = base.pow(e);
            } else {
                break;
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let field = self.ctx.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                Ok(Polynomial::constant(field, GroundElement::rational(BigRational::from_integer(n))))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some('t') => {
                if field != GroundField::Qt {
                    return Err(self.error("parameter t is only available over Q(t)"));
                }
                self.pos += 1;
                Ok(Polynomial::constant(field, GroundElement::t()))
            }
            Some('x') | Some('u') => {
                let v = self.variable()?;
                Ok(Polynomial::var(field, v))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Var> {
        let start = self.pos;
        let kind = self.peek().unwrap();
        self.pos += 1;
        let idx_at = self.pos;
        let idx = self.small_int("variable index")?;
        if idx == 0 {
            return Err(self.error_at(idx_at, "variable index must be at least 1"));
        }
        if let Some(max) = self.ctx.max_index {
            if idx > max {
                return Err(self.error_at(idx_at, format!("variable index {} exceeds dimension {}", idx, max)));
            }
        }
        if kind == 'u' {
            if !self.ctx.allow_u {
                return Err(self.error_at(start, "u-variables are not allowed here"));
            }
            return Ok(Var::U(idx));
        }
        let mut order = 0u32;
        while self.peek() == Some('\'') {
            self.pos += 1;
            order += 1;
        }
        if order == 0 && self.peek() == Some('^') && self.peek_at(1) == Some('(') {
            self.pos += 2;
            self.skip_ws();
            order = self.small_int("derivative order")?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.error("expected ')' after derivative order"));
            }
        }
        if order > 0 && !self.ctx.allow_derivatives {
            return Err(self.error_at(start, "derivatives are not allowed here"));
        }
        Ok(Var::deriv(idx, order))
    }

    fn formula(&mut self, n: u32) -> Result<QFFormula> {
        let mut acc = self.conj(n)?;
        loop {
            self.skip_ws();
            if self.eat('|') {
                let rhs = self.conj(n)?;
                acc = QFFormula::Or(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn conj(&mut self, n: u32) -> Result<QFFormula> {
        let mut acc = self.unary(n)?;
        loop {
            self.skip_ws();
            if self.eat('&') {
                let rhs = self.unary(n)?;
                acc = QFFormula::And(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, n: u32) -> Result<QFFormula> {
        self.skip_ws();
        if self.peek() == Some('!') && self.peek_at(1) != Some('=') {
            self.pos += 1;
            let inner = self.unary(n)?;
            return Ok(QFFormula::Not(Box::new(inner)));
        }
        if self.peek() == Some('(') {
            let save = self.pos;
            match self.atom(n) {
                Ok(a) => return Ok(a),
                Err(atom_err) => {
                    self.pos = save + 1;
                    let inner = match self.formula(n) {
                        Ok(f) => f,
                        Err(_) => return Err(atom_err),
                    };
                    self.skip_ws();
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    return Ok(inner);
                }
            }
        }
        self.atom(n)
    }

    fn atom(&mut self, n: u32) -> Result<QFFormula> {
        let lhs = self.expr()?;
        self.skip_ws();
        let negated = if self.eat('=') {
            false
        } else if self.peek() == Some('!') && self.peek_at(1) == Some('=') {
            self.pos += 2;
            true
        } else {
            return Err(self.error("expected '=' or '!='"));
        };
        let rhs = self.expr()?;
        let atom = QFFormula::Atom(DiffPolynomial::new(n, &lhs - &rhs));
        Ok(if negated { QFFormula::Not(Box::new(atom)) } else { atom })
    }
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let err = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("invalid rational '{}'", t),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn prime_and_paren_derivatives() {
        let p = parse_poly("x1' - x1^2", GroundField::Q).unwrap();
        let expect = &Polynomial::var(GroundField::Q, Var::deriv(1, 1))
            - &Polynomial::var(GroundField::Q, Var::X(1)).pow(2);
        assert_eq!(p, expect);
        let a = parse_poly("x2^(3)", GroundField::Q).unwrap();
        let b = parse_poly("x2'''", GroundField::Q).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_coefficients_over_qt() {
        let p = parse_poly("2/3*t*x1 + x2^(3)", GroundField::Qt).unwrap();
        let c = p.coefficient(&Monomial::var(Var::X(1)));
        assert_eq!(c, GroundElement::ratio(2, 3).mul(&GroundElement::t()));
        assert!(p.coefficient(&Monomial::var(Var::deriv(2, 3))).is_one());
    }

    #[test]
    fn zero_index_is_rejected_with_position() {
        match parse_poly("x0", GroundField::Q) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 2)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn contexts_restrict_variables() {
        let ctx = ParseContext::differential(GroundField::Q);
        assert!(parse_poly_in("u1 + x1", &ctx).is_err());
        let ctx = ParseContext::algebraic(GroundField::Q);
        assert!(parse_poly_in("x1'", &ctx).is_err());
        assert!(parse_poly("t*x1", GroundField::Q).is_err());
    }

    #[test]
    fn division_only_by_constants() {
        assert!(parse_poly("x1/x2", GroundField::Q).is_err());
        assert!(parse_poly("x1/0", GroundField::Q).is_err());
        let p = parse_poly("(t^2 - 1)/t*x1", GroundField::Qt).unwrap();
        assert_eq!(p.to_string(), "(t^2 - 1)/t*x1");
    }

    #[test]
    fn multiline_positions() {
        match parse_poly("x1 +\n  * x2", GroundField::Q) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn formulas() {
        let f = parse_formula("x1' = x1^2 & !(x1 = 0)", GroundField::Q, 1).unwrap();
        assert_eq!(f.to_string(), "x1' - x1^2 = 0 & !(x1 = 0)");
        let g = parse_formula("(x1 + 1)*x1 = 0 | (x1' = 0)", GroundField::Q, 1).unwrap();
        assert_eq!(g.to_string(), "x1^2 + x1 = 0 | x1' = 0");
        let h = parse_formula("x1 != 1", GroundField::Q, 1).unwrap();
        assert_eq!(h.to_string(), "!(x1 - 1 = 0)");
    }
}
