//! The differential generic type of a good pair, realized as a derivation on
//! the function field of W extended by fresh transcendentals `c_{l,j}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::formula::QFFormula;
use crate::diff::DiffPolynomial;
use crate::error::{Error, Result};
use crate::ideal::GroebnerBasis;
use crate::pair::GoodPair;
use crate::poly::{Polynomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    Nonzero,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Nonzero => "nonzero",
        }
    }
}

/// `num / Π D_k^{e_k}` over the pair's fixed list of base denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frac {
    pub num: Polynomial,
    pub exps: Vec<u32>,
}

/// Expressions for `x_i^(level+1)`, `i = 1..n`.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub level: u32,
    pub fresh: Vec<Var>,
    pub expressions: Vec<Frac>,
}

pub struct DeltaGenericType {
    pair: GoodPair,
    w: Arc<GroebnerBasis>,
    dens: Vec<Polynomial>,
    /// Index into `dens` for each non-basis coordinate's form.
    form_den: HashMap<u32, usize>,
    /// `Δu_i` for non-basis `i`.
    du: HashMap<u32, Frac>,
    /// `Δ D_k`, polynomials in x and u.
    dden: Vec<Polynomial>,
    /// `derivs[j][i-1]` = expression for `x_i^(j)`.
    derivs: Mutex<Vec<Arc<Vec<Frac>>>>,
}

impl std::fmt::Debug for DeltaGenericType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeltaGenericType").field("n", &self.pair.n()).field("m", &self.pair.m()).finish()
    }
}

impl DeltaGenericType {
    pub fn new(pair: GoodPair) -> Result<Self> {
        let w = pair.w.ideal.reduced_basis()?;
        let mut dens: Vec<Polynomial> = Vec::new();
        let mut form_den = HashMap::new();
        for f in pair.forms() {
            if f.den.is_constant() {
                continue;
            }
            let k = match dens.iter().position(|d| *d == f.den) {
                Some(k) => k,
                None => {
                    if w.reduce(&f.den)?.is_zero() {
                        return Err(Error::DegenerateDenominator(f.den.to_string()));
                    }
                    dens.push(f.den.clone());
                    dens.len() - 1
                }
            };
            form_den.insert(f.target, k);
        }
        let mut t = DeltaGenericType {
            w,
            dens,
            form_den,
            du: HashMap::new(),
            dden: Vec::new(),
            derivs: Mutex::new(Vec::new()),
            pair,
        };
        t.dden = t.dens.iter().map(|d| t.delta_base(d)).collect();
        let mut du = HashMap::new();
        for f in t.pair.forms() {
            let num = f.numerator(t.pair.basis_indices());
            let k = f.den.as_constant();
            let frac = match k {
                // Constant denominator: fold it into the numerator.
                Some(c) => {
                    let inv = c.invert()?;
                    t.delta_poly(&num.scale(&inv))?
                }
                None => {
                    let mut exps = vec![0; t.dens.len()];
                    exps[t.form_den[&f.target]] = 1;
                    t.delta_frac(&Frac { num, exps })?
                }
            };
            du.insert(f.target, frac);
        }
        t.du = du;
        let n = t.pair.n();
        let zero = t.dens.len();
        let level0: Vec<Frac> = (1..=n)
            .map(|i| Frac { num: Polynomial::var(t.field(), Var::X(i)), exps: vec![0; zero] })
            .collect();
        let level1: Vec<Frac> = (1..=n)
            .map(|i| Frac { num: Polynomial::var(t.field(), Var::U(i)), exps: vec![0; zero] })
            .collect();
        *t.derivs.lock().unwrap() = vec![Arc::new(level0), Arc::new(level1)];
        Ok(t)
    }

    pub fn pair(&self) -> &GoodPair {
        &self.pair
    }

    fn field(&self) -> crate::poly::GroundField {
        self.pair.field()
    }

    /// Position of `u_b` among the basis coordinates, 1-based.
    fn basis_position(&self, b: u32) -> Option<u32> {
        self.pair.basis_indices().iter().position(|&x| x == b).map(|p| p as u32 + 1)
    }

    /// `Δ` of a polynomial in x only (no u's): `Σ ∂P/∂x_k u_k + P^∂`.
    fn delta_base(&self, p: &Polynomial) -> Polynomial {
        let mut out = p.coefficient_derivation();
        for v in p.vars() {
            let Var::X(k) = v else { panic!("base denominator involves {}", v) };
            out = out + &p.partial_derivative(v) * &Polynomial::var(self.field(), Var::U(k));
        }
        out
    }

    fn reduce(&self, f: Frac) -> Result<Frac> {
        Ok(Frac { num: self.w.reduce_with_parameters(&f.num)?, exps: f.exps })
    }

    fn den_power(&self, exps: &[u32]) -> Polynomial {
        let mut out = Polynomial::one(self.field());
        for (d, e) in self.dens.iter().zip(exps) {
            out = &out * &d.pow(*e);
        }
        out
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        let lift = |f: &Frac| {
            let extra: Vec<u32> = exps.iter().zip(&f.exps).map(|(e, x)| e - x).collect();
            &f.num * &self.den_power(&extra)
        };
        Frac { num: &lift(a) + &lift(b), exps }
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        Frac {
            num: &a.num * &b.num,
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
        }
    }

    fn poly(&self, p: Polynomial) -> Frac {
        Frac { num: p, exps: vec![0; self.dens.len()] }
    }

    /// `Δ` of a polynomial in x, u and fresh c's.
    fn delta_poly(&self, p: &Polynomial) -> Result<Frac> {
        let field = self.field();
        let mut out = self.poly(p.coefficient_derivation());
        for v in p.vars() {
            let d = p.partial_derivative(v);
            let dv = match v {
                Var::X(k) => self.poly(Polynomial::var(field, Var::U(k))),
                Var::U(k) => match self.basis_position(k) {
                    Some(j) => self.poly(Polynomial::var(field, Var::C { level: 1, index: j })),
                    None => self
                        .du
                        .get(&k)
                        .cloned()
                        .ok_or_else(|| Error::Invalid(format!("no derivative for u{}", k)))?,
                },
                Var::C { level, index } => self.poly(Polynomial::var(field, Var::C { level: level + 1, index })),
                other => return Err(Error::ForeignVariable(other.to_string())),
            };
            out = self.add(&out, &self.mul(&self.poly(d), &dv));
        }
        Ok(out)
    }

    /// Quotient rule over the base denominators.
    fn delta_frac(&self, f: &Frac) -> Result<Frac> {
        let mut out = self.delta_poly(&f.num)?;
        out.exps = out.exps.iter().zip(&f.exps).map(|(a, b)| a + b).collect();
        for (k, &e) in f.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut exps = f.exps.clone();
            exps[k] += 1;
            let term = Frac {
                num: -(&(&f.num * &self.dden[k]).scale(&crate::poly::GroundElement::int(e as i64))),
                exps,
            };
            out = self.add(&out, &term);
        }
        self.reduce(out)
    }

    /// Expressions for `x_i^(j)`, `j = 0..=order`, computed once per level.
    fn derivatives(&self, order: u32) -> Result<Vec<Arc<Vec<Frac>>>> {
        let mut guard = self.derivs.lock().unwrap();
        while guard.len() <= order as usize {
            let last = guard.last().unwrap().clone();
            let next = last.iter().map(|f| self.delta_frac(f)).collect::<Result<Vec<_>>>()?;
            guard.push(Arc::new(next));
        }
        Ok(guard[..=order as usize].to_vec())
    }

    /// Grows the tower so every derivative up to order `to_level + 1` is
    /// expressed; returns that level.
    pub fn extend_tower(&self, to_level: u32) -> Result<TowerLevel> {
        let all = self.derivatives(to_level + 1)?;
        let m = self.pair.m() as u32;
        Ok(TowerLevel {
            level: to_level,
            fresh: (1..=m).map(|j| Var::C { level: to_level, index: j }).collect(),
            expressions: all[to_level as usize + 1].as_ref().clone(),
        })
    }

    /// `x_i^(order)` as `(numerator, denominator)`.
    pub fn expression(&self, index: u32, order: u32) -> Result<(Polynomial, Polynomial)> {
        let all = self.derivatives(order)?;
        let f = &all[order as usize][index as usize - 1];
        Ok((f.num.clone(), self.den_power(&f.exps)))
    }

    /// Substitutes the tower into `f`; the numerator over the common
    /// denominator.
    pub fn substitute(&self, f: &DiffPolynomial) -> Result<Frac> {
        if f.n() > self.pair.n() && f.body().vars().iter().any(|v| v.index() > self.pair.n()) {
            return Err(Error::Invalid(format!("query uses more than {} coordinates", self.pair.n())));
        }
        let all = self.derivatives(f.order())?;
        let mut powers: HashMap<(Var, u32), Frac> = HashMap::new();
        let mut acc = self.poly(Polynomial::zero(self.field()));
        for (m, c) in f.body().terms() {
            let mut term = self.poly(Polynomial::constant(self.field(), c.clone()));
            for (v, e) in m.factors() {
                let (i, j) = v.as_derivative().ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
                let key = (*v, *e);
                if !powers.contains_key(&key) {
                    let base = &all[j as usize][i as usize - 1];
                    let mut p = self.poly(Polynomial::one(self.field()));
                    for _ in 0..*e {
                        p = self.mul(&p, base);
                    }
                    powers.insert(key, self.reduce(p)?);
                }
                term = self.mul(&term, &powers[&key]);
            }
            acc = self.add(&acc, &term);
        }
        self.reduce(acc)
    }

    pub fn member(&self, f: &DiffPolynomial) -> Result<Verdict> {
        let r = self.substitute(f)?;
        Ok(if r.num.is_zero() { Verdict::Zero } else { Verdict::Nonzero })
    }

    pub fn decide(&self, phi: &QFFormula) -> Result<bool> {
        phi.evaluate(&mut |a| Ok(self.member(a)? == Verdict::Zero))
    }
}
