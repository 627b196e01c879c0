//! Canonical text output. Everything printed here parses back to the same value.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::generic::formula::QFFormula;
use crate::poly::{GroundElement, Monomial, Polynomial, UPoly};

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `t`-polynomial with terms in decreasing degree.
fn upoly(p: &UPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let tp = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{}", k),
        };
        if k == 0 {
            out.push_str(&rational(&a));
        } else if a.is_one() {
            out.push_str(&tp);
        } else {
            out.push_str(&format!("{}*{}", rational(&a), tp));
        }
    }
    out
}

fn upoly_factor(p: &UPoly) -> String {
    if p.term_count() <= 1 && !p.leading_is_negative() {
        upoly(p)
    } else {
        format!("({})", upoly(p))
    }
}

/// A nonnegative-leading ground element written so it can be followed by `*`.
fn coefficient_factor(c: &GroundElement) -> String {
    match c {
        GroundElement::Rational(r) => rational(r),
        GroundElement::Function(_) => {
            let (num, den) = c.fraction();
            let n = upoly_factor(&num);
            if den.is_one() {
                n
            } else {
                format!("{}/{}", n, upoly_factor(&den))
            }
        }
    }
}

pub fn ground_to_string(c: &GroundElement) -> String {
    match c {
        GroundElement::Rational(r) => rational(r),
        GroundElement::Function(_) => {
            let (num, den) = c.fraction();
            if den.is_one() {
                upoly(&num)
            } else {
                format!("{}/{}", upoly_factor(&num), upoly_factor(&den))
            }
        }
    }
}

pub fn monomial_to_string(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn poly_to_string(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in p.terms_print_order() {
        let neg = c.is_negative();
        let a = if neg { c.neg() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&coefficient_factor(&a));
        } else if a.is_one() {
            out.push_str(&monomial_to_string(m));
        } else {
            out.push_str(&coefficient_factor(&a));
            out.push('*');
            out.push_str(&monomial_to_string(m));
        }
    }
    out
}

fn formula_prec(f: &QFFormula) -> u8 {
    match f {
        QFFormula::Or(..) => 0,
        QFFormula::And(..) => 1,
        QFFormula::Not(_) | QFFormula::Atom(_) => 2,
    }
}

pub fn formula_to_string(f: &QFFormula) -> String {
    fn wrap(f: &QFFormula, min: u8) -> String {
        let s = formula_to_string(f);
        if formula_prec(f) < min {
            format!("({})", s)
        } else {
            s
        }
    }
    match f {
        QFFormula::Atom(p) => format!("{} = 0", poly_to_string(p.body())),
        QFFormula::Not(inner) => format!("!({})", formula_to_string(inner)),
        QFFormula::And(a, b) => format!("{} & {}", wrap(a, 1), wrap(b, 2)),
        QFFormula::Or(a, b) => format!("{} | {}", wrap(a, 0), wrap(b, 1)),
    }
}
