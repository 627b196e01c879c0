//! Exact substitution for pairs with `m = 0`: every derivative is a rational
//! function on V, obtained by repeatedly applying `x_k' = s_k / den_k`.

use crate::diff::DiffPolynomial;
use crate::error::{Error, Result};
use crate::generic::Verdict;
use crate::ideal::GroebnerBasis;
use crate::pair::GoodPair;
use crate::poly::{Polynomial, Var};

#[derive(Debug, Clone)]
struct RatFn {
    num: Polynomial,
    den: Polynomial,
}

struct Subst<'a> {
    v: &'a GroebnerBasis,
    /// `x_k'` for `k = 1..n`.
    velocity: Vec<RatFn>,
}

impl Subst<'_> {
    fn norm(&self, num: Polynomial, den: Polynomial) -> Result<RatFn> {
        Ok(RatFn { num: self.v.reduce(&num)?, den: self.v.reduce(&den)? })
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        if a.den == b.den {
            return self.norm(&a.num + &b.num, a.den.clone());
        }
        self.norm(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        self.norm(&a.num * &b.num, &a.den * &b.den)
    }

    fn poly_derivative(&self, p: &Polynomial) -> Result<RatFn> {
        let field = p.field();
        let mut out = RatFn { num: p.coefficient_derivation(), den: Polynomial::one(field) };
        for v in p.vars() {
            let Var::X(k) = v else { return Err(Error::ForeignVariable(v.to_string())) };
            let d = RatFn { num: p.partial_derivative(v), den: Polynomial::one(field) };
            out = self.add(&out, &self.mul(&d, &self.velocity[k as usize - 1])?)?;
        }
        Ok(out)
    }

    /// `(N/D)' = (N' D - N D') / D^2`.
    fn derivative(&self, f: &RatFn) -> Result<RatFn> {
        let dn = self.poly_derivative(&f.num)?;
        let dd = self.poly_derivative(&f.den)?;
        let a = self.mul(&dn, &RatFn { num: f.den.clone(), den: Polynomial::one(f.den.field()) })?;
        let b = self.mul(&dd, &RatFn { num: -&f.num, den: Polynomial::one(f.den.field()) })?;
        let s = self.add(&a, &b)?;
        self.norm(s.num, &s.den * &(&f.den * &f.den))
    }
}

/// Decides `f` on an `m = 0` pair by rewriting every derivative down to
/// order 0 and reducing modulo I(V).
pub fn subst_oracle(pair: &GoodPair, f: &DiffPolynomial) -> Result<Verdict> {
    if pair.m() != 0 {
        return Err(Error::Invalid(format!("substitution needs m = 0, pair has m = {}", pair.m())));
    }
    let field = pair.field();
    let n = pair.n();
    let vb = pair.v.ideal.reduced_basis()?;
    let mut velocity = Vec::new();
    for i in 1..=n {
        let form = pair.form_for(i).ok_or_else(|| Error::Invalid(format!("no fibre form for u{}", i)))?;
        velocity.push(RatFn { num: form.coeffs[0].clone(), den: form.den.clone() });
    }
    let s = Subst { v: &vb, velocity };
    for r in &s.velocity {
        if vb.reduce(&r.den)?.is_zero() {
            return Err(Error::DegenerateDenominator(r.den.to_string()));
        }
    }
    let order = f.order();
    // table[j][i-1] = x_i^(j)
    let mut table: Vec<Vec<RatFn>> =
        vec![(1..=n).map(|i| RatFn { num: Polynomial::var(field, Var::X(i)), den: Polynomial::one(field) }).collect()];
    for j in 0..order as usize {
        let next = table[j].iter().map(|e| s.derivative(e)).collect::<Result<Vec<_>>>()?;
        table.push(next);
    }
    let mut acc = RatFn { num: Polynomial::zero(field), den: Polynomial::one(field) };
    for (m, c) in f.body().terms() {
        let mut term = RatFn { num: Polynomial::constant(field, c.clone()), den: Polynomial::one(field) };
        for &(v, e) in m.factors() {
            let (i, j) = v.as_derivative().ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
            if i == 0 || i > n {
                return Err(Error::ForeignVariable(v.to_string()));
            }
            let base = &table[j as usize][i as usize - 1];
            for _ in 0..e {
                term = s.mul(&term, base)?;
            }
        }
        acc = s.add(&acc, &term)?;
    }
    Ok(if acc.num.is_zero() { Verdict::Zero } else { Verdict::Nonzero })
}
