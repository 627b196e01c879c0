//! The two computable differential ground fields: Q with the zero derivation
//! and Q(t) with d/dt.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundField {
    Q,
    Qt,
}

impl GroundField {
    pub fn name(self) -> &'static str {
        match self {
            GroundField::Q => "Q",
            GroundField::Qt => "Q(t)",
        }
    }

    pub fn parse(s: &str) -> Option<GroundField> {
        match s.trim() {
            "Q" => Some(GroundField::Q),
            "Q(t)" | "Qt" => Some(GroundField::Qt),
            _ => None,
        }
    }

    pub fn check(self, other: GroundField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.name(), other.name()))
        }
    }

    /// The smallest field containing both; Q embeds in Q(t).
    pub fn join(self, other: GroundField) -> GroundField {
        self.max(other)
    }
}

/// A reduced fraction of polynomials in `t` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: UPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

/// Element of Q or Q(t). Values that do not involve `t` are always stored as
/// `Rational`, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroundElement {
    Rational(BigRational),
    Function(Box<RatFunc>),
}

impl GroundElement {
    pub fn zero() -> Self {
        GroundElement::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        GroundElement::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        GroundElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        GroundElement::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn rational(r: BigRational) -> Self {
        GroundElement::Rational(r)
    }

    pub fn t() -> Self {
        GroundElement::Function(Box::new(RatFunc {
            num: UPoly::t(),
            den: UPoly::one(),
        }))
    }

    pub fn from_upoly(p: UPoly) -> Self {
        Self::from_ratfunc(RatFunc {
            num: p,
            den: UPoly::one(),
        })
    }

    pub fn from_fraction(num: UPoly, den: UPoly) -> Result<Self> {
        Ok(Self::from_ratfunc(RatFunc::new(num, den)?))
    }

    fn from_ratfunc(f: RatFunc) -> Self {
        if f.num.is_constant() && f.den.is_constant() {
            GroundElement::Rational(f.num.constant_term() / f.den.constant_term())
        } else {
            GroundElement::Function(Box::new(f))
        }
    }

    fn as_ratfunc(&self) -> RatFunc {
        match self {
            GroundElement::Rational(r) => RatFunc {
                num: UPoly::constant(r.clone()),
                den: UPoly::one(),
            },
            GroundElement::Function(f) => (**f).clone(),
        }
    }

    /// Numerator and monic denominator as polynomials in `t`.
    pub fn fraction(&self) -> (UPoly, UPoly) {
        let f = self.as_ratfunc();
        (f.num, f.den)
    }

    pub fn field(&self) -> GroundField {
        match self {
            GroundElement::Rational(_) => GroundField::Q,
            GroundElement::Function(_) => GroundField::Qt,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GroundElement::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, GroundElement::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            GroundElement::Rational(r) => Some(r),
            GroundElement::Function(_) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (GroundElement::Rational(a), GroundElement::Rational(b)) => GroundElement::Rational(a + b),
            _ => {
                let (a, b) = (self.as_ratfunc(), other.as_ratfunc());
                if a.den == b.den {
                    Self::from_ratfunc(RatFunc::new(a.num.add(&b.num), a.den).unwrap())
                } else {
                    Self::from_ratfunc(
                        RatFunc::new(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
                            .unwrap(),
                    )
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            GroundElement::Rational(a) => GroundElement::Rational(-a),
            GroundElement::Function(f) => GroundElement::Function(Box::new(RatFunc {
                num: f.num.neg(),
                den: f.den.clone(),
            })),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroundElement::Rational(a), GroundElement::Rational(b)) => GroundElement::Rational(a * b),
            (GroundElement::Rational(a), GroundElement::Function(f))
            | (GroundElement::Function(f), GroundElement::Rational(a)) => {
                if a.is_zero() {
                    return Self::zero();
                }
                GroundElement::Function(Box::new(RatFunc {
                    num: f.num.scale(a),
                    den: f.den.clone(),
                }))
            }
            _ => {
                let (a, b) = (self.as_ratfunc(), other.as_ratfunc());
                Self::from_ratfunc(RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den)).unwrap())
            }
        }
    }

    /// Multiplicative inverse; zero is reported as `DivisionByZero`.
    pub fn invert(&self) -> Result<Self> {
        match self {
            GroundElement::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(GroundElement::Rational(a.recip()))
                }
            }
            GroundElement::Function(f) => {
                Ok(Self::from_ratfunc(RatFunc::new(f.den.clone(), f.num.clone())?))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// d/dt; identically zero on Q.
    pub fn derivative(&self) -> Self {
        match self {
            GroundElement::Rational(_) => Self::zero(),
            GroundElement::Function(f) => {
                let num = f.num.derivative().mul(&f.den).sub(&f.num.mul(&f.den.derivative()));
                Self::from_ratfunc(RatFunc::new(num, f.den.mul(&f.den)).unwrap())
            }
        }
    }

    /// Value at `t = at`, or `None` when the denominator vanishes there.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        match self {
            GroundElement::Rational(r) => Some(r.clone()),
            GroundElement::Function(f) => {
                let d = f.den.eval(at);
                if d.is_zero() {
                    None
                } else {
                    Some(f.num.eval(at) / d)
                }
            }
        }
    }

    /// Printing sign: the sign of the numerator's leading coefficient.
    pub fn is_negative(&self) -> bool {
        match self {
            GroundElement::Rational(r) => r.is_negative(),
            GroundElement::Function(f) => f.num.leading_is_negative(),
        }
    }

    /// Largest absolute numerator or denominator among the rational coefficients.
    pub fn height(&self) -> BigInt {
        fn rat_height(r: &BigRational) -> BigInt {
            r.numer().abs().max(r.denom().abs())
        }
        match self {
            GroundElement::Rational(r) => {
                if r.is_zero() {
                    BigInt::zero()
                } else {
                    rat_height(r)
                }
            }
            GroundElement::Function(f) => f
                .num
                .coeffs()
                .iter()
                .chain(f.den.coeffs())
                .filter(|c| !c.is_zero())
                .map(rat_height)
                .max()
                .unwrap_or_else(BigInt::zero),
        }
    }
}

impl fmt::Debug for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::print::ground_to_string(self))
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::print::ground_to_string(self))
    }
}
