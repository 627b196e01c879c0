use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ground::{GroundElement, GroundField};
use super::monomial::Monomial;
use super::var::Var;
use crate::error::{Error, Result};

/// Sparse polynomial over Q or Q(t). Zero coefficients are never stored, so
/// two polynomials are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: GroundField,
    terms: BTreeMap<Monomial, GroundElement>,
}

impl Polynomial {
    pub fn zero(field: GroundField) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: GroundField, c: GroundElement) -> Self {
        Self::term(field, Monomial::one(), c)
    }

    pub fn one(field: GroundField) -> Self {
        Self::constant(field, GroundElement::one())
    }

    pub fn int(field: GroundField, n: i64) -> Self {
        Self::constant(field, GroundElement::int(n))
    }

    pub fn var(field: GroundField, v: Var) -> Self {
        Self::term(field, Monomial::var(v), GroundElement::one())
    }

    pub fn term(field: GroundField, m: Monomial, c: GroundElement) -> Self {
        let field = field.join(c.field());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { field, terms }
    }

    pub fn from_terms(field: GroundField, terms: impl IntoIterator<Item = (Monomial, GroundElement)>) -> Self {
        let mut p = Polynomial::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    /// Same polynomial, read over a (possibly larger) field.
    pub fn with_field(mut self, field: GroundField) -> Self {
        self.field = self.field.join(field);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> GroundElement {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(GroundElement::zero)
    }

    /// The ground element if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GroundElement> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GroundElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> GroundElement {
        self.terms.get(m).cloned().unwrap_or_else(GroundElement::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: GroundElement) {
        if c.is_zero() {
            return;
        }
        self.field = self.field.join(c.field());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Sum; fails when the operands live over different ground fields.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.check(other.field)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.check(other.field)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &GroundElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field.join(c.field()));
        }
        Polynomial {
            field: self.field.join(c.field()),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Total degree counting only variables satisfying `pred`.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.terms
            .keys()
            .map(|m| m.factors().iter().filter(|(v, _)| pred(*v)).map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn involves(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.vars().any(&pred))
    }

    /// `P^∂`: the ground-field derivation applied to every coefficient.
    pub fn coefficient_derivation(&self) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.terms.iter().map(|(m, c)| (m.clone(), c.derivative())),
        )
    }

    pub fn partial_derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(v) {
                out.add_term(rest, c.mul(&GroundElement::int(e as i64)));
            }
        }
        out
    }

    /// Replaces every occurrence of `v` by `by`.
    pub fn substitute(&self, v: Var, by: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.field)];
        let mut out = Polynomial::zero(self.field.join(by.field));
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * by;
                powers.push(next);
            }
            let t = powers[e as usize].mul_monomial(&rest).scale(c);
            out = out + t;
        }
        out
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &HashMap<Var, Polynomial>) -> Polynomial {
        let mut cache: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field, c.clone());
            let mut kept = Monomial::one();
            for &(v, e) in m.factors() {
                match map.get(&v) {
                    Some(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e));
                        t = &t * pw;
                    }
                    None => kept = kept.mul(&Monomial::power(v, e)),
                }
            }
            out = out + t.mul_monomial(&kept);
        }
        out
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(self.field, self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Evaluates at a rational point; the parameter `t` takes value `t_value`.
    pub fn eval(&self, point: &HashMap<Var, BigRational>, t_value: Option<&BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = match c {
                GroundElement::Rational(r) => r.clone(),
                GroundElement::Function(_) => {
                    let t = t_value.ok_or_else(|| Error::Invalid("no value for t".into()))?;
                    c.eval(t).ok_or(Error::DivisionByZero)?
                }
            };
            for &(x, e) in m.factors() {
                let val = point.get(&x).ok_or_else(|| Error::ForeignVariable(x.to_string()))?;
                v *= num_traits::pow(val.clone(), e as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Groups terms by their monomial over the variables satisfying `pred`;
    /// returns `outer monomial -> coefficient polynomial`.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (outer, inner) = m.partition(&pred);
            out.entry(outer)
                .or_insert_with(|| Polynomial::zero(self.field))
                .add_term(inner, c.clone());
        }
        out
    }

    /// Leading term under the printing order.
    pub fn leading_print(&self) -> Option<(&Monomial, &GroundElement)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_print(b.0))
    }

    /// Terms in decreasing printing order.
    pub fn terms_print_order(&self) -> Vec<(&Monomial, &GroundElement)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.cmp_print(a.0));
        ts
    }

    /// Divides by the leading coefficient under the printing order.
    pub fn monic_print(&self) -> Polynomial {
        match self.leading_print() {
            Some((_, c)) => self.scale(&c.invert().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Largest coefficient height.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.height()).max().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::print::poly_to_string(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::print::poly_to_string(self))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        out.field = out.field.join(small.field);
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, other: Polynomial) -> Polynomial {
        if self.terms.len() < other.terms.len() {
            return other + self;
        }
        self.field = self.field.join(other.field);
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Neg for &'a Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.field = out.field.join(other.field);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, other: Polynomial) -> Polynomial {
        &self - &other
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        let field = self.field.join(other.field);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(field);
        }
        let mut acc: HashMap<Monomial, GroundElement> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, other: Polynomial) -> Polynomial {
        &self * &other
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::io::parse::parse_poly;
    use proptest::prelude::*;

    fn q(s: &str) -> Polynomial {
        parse_poly(s, GroundField::Q).unwrap()
    }

    fn qt(s: &str) -> Polynomial {
        parse_poly(s, GroundField::Qt).unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&q("x1 + 1") + &q("-x1"), q("1"));
        assert_eq!(&q("x1^2") + &q("x1^2"), q("2*x1^2"));
        assert_eq!(&qt("2/3*x1 + t") + &qt("1/3*x1"), qt("x1 + t"));
    }

    #[test]
    fn checked_ops_reject_mixed_fields() {
        let a = q("x1");
        let b = qt("t*x1");
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(..))));
        assert!(a.checked_add(&q("x2")).is_ok());
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&q("x1 - 1") * &q("x1 + 1"), q("x1^2 - 1"));
        assert_eq!(q("x1 + x2").pow(2), q("x1^2 + 2*x1*x2 + x2^2"));
        assert!((&q("x1 + 3") * &Polynomial::zero(GroundField::Q)).is_zero());
    }

    #[test]
    fn coefficient_derivation_examples() {
        assert!(q("3*x1^2 + 1/2*x2 + 7").coefficient_derivation().is_zero());
        assert_eq!(qt("x1^2 - t").coefficient_derivation(), qt("-1"));
        assert_eq!(qt("t^2*x1 + 3").coefficient_derivation(), qt("2*t*x1"));
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(q("x1^2 + x2^2 - 1").partial_derivative(Var::X(1)), q("2*x1"));
        assert!(q("5").partial_derivative(Var::X(1)).is_zero());
        assert_eq!(q("x1*x2").partial_derivative(Var::X(2)), q("x1"));
    }

    #[test]
    fn substitution() {
        let p = q("x1^2 + x2");
        assert_eq!(p.substitute(Var::X(1), &q("x2 + 1")), q("x2^2 + 3*x2 + 1"));
    }

    pub(crate) fn arb_poly(field: GroundField) -> impl Strategy<Value = Polynomial> {
        let var = prop_oneof![
            (1u32..=3).prop_map(Var::X),
            (1u32..=2).prop_map(Var::U),
            (1u32..=2, 1u32..=3).prop_map(|(i, j)| Var::deriv(i, j)),
        ];
        let mono = proptest::collection::vec((var, 1u32..=2), 0..3).prop_map(Monomial::from_pairs);
        let tpart = if field == GroundField::Qt { 0u32..=2 } else { 0u32..=0 };
        let coeff = (-4i64..=4, 1i64..=3, tpart, 0u32..=1).prop_map(move |(n, d, tp, dentp)| {
            let mut c = GroundElement::ratio(n, d).mul(&GroundElement::t().pow(tp));
            if dentp == 1 && field == GroundField::Qt {
                let den = GroundElement::t().add(&GroundElement::int(1));
                c = c.div(&den).unwrap();
            }
            c
        });
        proptest::collection::vec((mono, coeff), 0..5)
            .prop_map(move |ts| Polynomial::from_terms(field, ts))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(a in arb_poly(GroundField::Q), b in arb_poly(GroundField::Q), c in arb_poly(GroundField::Q)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &Polynomial::one(GroundField::Q), a.clone());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn coefficient_derivation_is_a_derivation(a in arb_poly(GroundField::Qt), b in arb_poly(GroundField::Qt)) {
            let lhs = (&a * &b).coefficient_derivation();
            let rhs = &(&a.coefficient_derivation() * &b) + &(&a * &b.coefficient_derivation());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coefficient_derivation_vanishes_over_q(a in arb_poly(GroundField::Q)) {
            prop_assert!(a.coefficient_derivation().is_zero());
        }
    }
}
