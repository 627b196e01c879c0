//! Truncated power-series solutions through a rational point of V, used to
//! refute Zero verdicts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diff::DiffPolynomial;
use crate::error::{Error, Result};
use crate::pair::factor::factor;
use crate::pair::presentation::is_triangular;
use crate::pair::{GoodPair, RationalPoint};
use crate::poly::{GroundElement, GroundField, MonomialOrder, Polynomial, UPoly, Var};

pub const DEFAULT_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// Every checked coefficient vanished up to truncation order `N`.
    ConfirmZero(u32),
    /// The coefficient of `τ^order` in `f` along the solution is `value ≠ 0`.
    RefuteZero { order: usize, value: BigRational },
}

/// A truncated series `Σ c_k τ^k`; its length is its precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<BigRational>);

impl Series {
    fn constant(c: BigRational, len: usize) -> Series {
        let mut v = vec![BigRational::zero(); len];
        if len > 0 {
            v[0] = c;
        }
        Series(v)
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn truncate(&self, len: usize) -> Series {
        Series(self.0[..len.min(self.len())].to_vec())
    }

    fn add(&self, o: &Series) -> Series {
        let len = self.len().min(o.len());
        Series((0..len).map(|k| &self.0[k] + &o.0[k]).collect())
    }

    fn mul(&self, o: &Series) -> Series {
        let len = self.len().min(o.len());
        let mut out = vec![BigRational::zero(); len];
        for i in 0..len {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..len - i {
                out[i + j] += &self.0[i] * &o.0[j];
            }
        }
        Series(out)
    }

    fn inverse(&self) -> Result<Series> {
        let len = self.len();
        if len == 0 {
            return Ok(Series(Vec::new()));
        }
        if self.0[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = self.0[0].recip();
        let mut out = vec![BigRational::zero(); len];
        out[0] = inv0.clone();
        for k in 1..len {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += &self.0[j] * &out[k - j];
            }
            out[k] = -s * &inv0;
        }
        Ok(Series(out))
    }

    fn derivative(&self) -> Series {
        Series((1..self.len()).map(|k| &self.0[k] * BigRational::from(BigInt::from(k))).collect())
    }
}

fn upoly_at(p: &UPoly, t: &Series) -> Series {
    let mut acc = Series::constant(BigRational::zero(), t.len());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t).add(&Series::constant(c.clone(), t.len()));
    }
    acc
}

/// A ground-field constant as a series in `τ`, with `t = t0 + τ`.
fn ground_series(c: &GroundElement, t0: Option<&BigRational>, len: usize) -> Result<Series> {
    match c {
        GroundElement::Rational(r) => Ok(Series::constant(r.clone(), len)),
        GroundElement::Function(_) => {
            let t0 = t0.ok_or_else(|| Error::Invalid("no value for t".into()))?;
            let mut tv = vec![t0.clone(), BigRational::one()];
            tv.resize(len.max(2), BigRational::zero());
            let t = Series(tv).truncate(len);
            let (num, den) = c.fraction();
            Ok(upoly_at(&num, &t).mul(&upoly_at(&den, &t).inverse()?))
        }
    }
}

fn eval_series(p: &Polynomial, vals: &HashMap<Var, Series>, t0: Option<&BigRational>, len: usize) -> Result<Series> {
    let mut acc = Series::constant(BigRational::zero(), len);
    for (m, c) in p.terms() {
        let mut term = ground_series(c, t0, len)?;
        for &(v, e) in m.factors() {
            let s = vals.get(&v).ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
            for _ in 0..e {
                term = term.mul(s);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn wide_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-30i64..=30)), BigInt::from(rng.gen_range(1i64..=9)))
}

fn int_rational(rng: &mut ChaCha8Rng, r: i64) -> BigRational {
    BigRational::from(BigInt::from(rng.gen_range(-r..=r)))
}

/// Rational roots of a univariate polynomial, via its linear factors.
fn rational_roots(g: &UPoly) -> Vec<BigRational> {
    if g.is_zero() || g.degree() == Some(0) {
        return Vec::new();
    }
    factor(g, 0)
        .into_iter()
        .filter(|(h, _)| h.degree() == Some(1))
        .map(|(h, _)| -h.coeffs()[0].clone() / h.coeffs()[1].clone())
        .collect()
}

/// `f` restricted to `x = a + τ b`, with `t = t0`.
fn restrict(f: &Polynomial, xs: &[Var], a: &[BigRational], b: &[BigRational], t0: Option<&BigRational>) -> Option<UPoly> {
    let mut out = UPoly::zero();
    for (m, c) in f.terms() {
        let c = match c {
            GroundElement::Rational(r) => r.clone(),
            other => other.eval(t0?)?,
        };
        let mut term = UPoly::constant(c);
        for &(v, e) in m.factors() {
            let i = xs.iter().position(|w| *w == v)?;
            term = term.mul(&UPoly::from_coeffs(vec![a[i].clone(), b[i].clone()]).pow(e));
        }
        out = out.add(&term);
    }
    Some(out)
}

fn eval_at(p: &Polynomial, xs: &[Var], coords: &[BigRational], t0: Option<&BigRational>) -> Option<BigRational> {
    let point: HashMap<Var, BigRational> = xs.iter().cloned().zip(coords.iter().cloned()).collect();
    p.eval(&point, t0).ok()
}

/// Searches for a rational point of V with random-looking coordinates.
fn find_point(pair: &GoodPair, rng: &mut ChaCha8Rng) -> Result<Option<RationalPoint>> {
    let n = pair.n() as usize;
    let xs: Vec<Var> = (1..=pair.n()).map(Var::X).collect();
    let qt = pair.field() == GroundField::Qt;
    let t0 = if qt { Some(int_rational(rng, 40)) } else { None };
    let vb = pair.v.ideal.reduced_basis()?;
    if vb.polys().is_empty() {
        return Ok(Some(RationalPoint { t: t0, coords: (0..n).map(|_| wide_rational(rng)).collect() }));
    }
    if is_triangular(&pair.v.ideal)? {
        let lex = pair.v.ideal.basis(MonomialOrder::Lex)?;
        let mut coords: Vec<Option<BigRational>> = vec![None; n];
        // Ascending variable order: every right-hand side only involves
        // smaller variables.
        for x in pair.v.ideal.ambient().iter().rev() {
            let i = x.index() as usize - 1;
            let solving = lex.polys().iter().find(|g| g.degree_in(*x) == 1 && g.vars().iter().all(|v| v <= x));
            coords[i] = Some(match solving {
                None => wide_rational(rng),
                Some(g) => {
                    let known: Vec<BigRational> =
                        coords.iter().map(|c| c.clone().unwrap_or_else(BigRational::zero)).collect();
                    let coef = g.partial_derivative(*x);
                    let rest = g - &(&coef * &Polynomial::var(pair.field(), *x));
                    let a = eval_at(&coef, &xs, &known, t0.as_ref());
                    let b = eval_at(&rest, &xs, &known, t0.as_ref());
                    match (a, b) {
                        (Some(a), Some(b)) if !a.is_zero() => -b / a,
                        _ => return Ok(None),
                    }
                }
            });
        }
        return Ok(Some(RationalPoint { t: t0, coords: coords.into_iter().map(Option::unwrap).collect() }));
    }
    let [f] = vb.polys() else { return Ok(None) };
    // First any point on a coordinate line through small integers, then a
    // second intersection along a random line through it.
    for _ in 0..200 {
        let k = rng.gen_range(0..n);
        let a: Vec<BigRational> =
            (0..n).map(|i| if i == k { BigRational::zero() } else { int_rational(rng, 3) }).collect();
        let b: Vec<BigRational> =
            (0..n).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect();
        let Some(g) = restrict(f, &xs, &a, &b, t0.as_ref()) else { continue };
        let Some(root) = rational_roots(&g).into_iter().next() else { continue };
        let p: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x + y * &root).collect();
        for _ in 0..20 {
            let dir: Vec<BigRational> = (0..n).map(|_| wide_rational(rng)).collect();
            let Some(h) = restrict(f, &xs, &p, &dir, t0.as_ref()) else { continue };
            if let Some(s) = rational_roots(&h).into_iter().find(|s| !s.is_zero()) {
                let q = p.iter().zip(&dir).map(|(x, y)| x + y * &s).collect();
                return Ok(Some(RationalPoint { t: t0, coords: q }));
            }
        }
        return Ok(Some(RationalPoint { t: t0, coords: p }));
    }
    Ok(None)
}

/// On V, and no fibre denominator vanishes there.
fn usable(pair: &GoodPair, p: &RationalPoint) -> Result<bool> {
    let xs: Vec<Var> = (1..=pair.n()).map(Var::X).collect();
    if p.coords.len() != xs.len() {
        return Err(Error::Invalid(format!("point has {} coordinates, expected {}", p.coords.len(), xs.len())));
    }
    for g in pair.v.ideal.reduced_basis()?.polys() {
        match eval_at(g, &xs, &p.coords, p.t.as_ref()) {
            Some(v) if v.is_zero() => {}
            _ => return Ok(false),
        }
    }
    for form in pair.forms() {
        match eval_at(&form.den, &xs, &p.coords, p.t.as_ref()) {
            Some(v) if !v.is_zero() => {}
            _ => return Ok(false),
        }
        for c in &form.coeffs {
            if eval_at(c, &xs, &p.coords, p.t.as_ref()).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The pair's own point if usable, else a seeded search.
pub fn choose_point(pair: &GoodPair, seed: u64) -> Result<RationalPoint> {
    if let Some(p) = &pair.point {
        if usable(pair, p)? {
            return Ok(p.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        if let Some(p) = find_point(pair, &mut rng)? {
            if usable(pair, &p)? {
                return Ok(p);
            }
        }
    }
    Err(Error::NoPoint("none found on V within the search budget; supply one in the manifest".into()))
}

/// The solution `x(τ)` with `x(0) = point`, coefficients `0..=order`.
pub fn integrate(pair: &GoodPair, point: &RationalPoint, order: u32, seed: u64) -> Result<Vec<Series>> {
    let n = pair.n() as usize;
    let len = order as usize + 1;
    let t0 = point.t.as_ref();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut drive: HashMap<u32, Series> = HashMap::new();
    for &b in pair.basis_indices() {
        let coeffs = (0..len)
            .map(|_| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-5i64..=5);
                }
                BigRational::from(BigInt::from(c))
            })
            .collect();
        drive.insert(b, Series(coeffs));
    }
    let mut x: Vec<Vec<BigRational>> = point.coords.iter().map(|c| vec![c.clone()]).collect();
    for k in 0..order as usize {
        let prec = k + 1;
        let vals: HashMap<Var, Series> =
            (0..n).map(|i| (Var::X(i as u32 + 1), Series(x[i].clone()))).collect();
        for i in 1..=n as u32 {
            let rate = match drive.get(&i) {
                Some(w) => w.0[k].clone(),
                None => {
                    let form = pair.form_for(i).ok_or_else(|| Error::Invalid(format!("no fibre form for u{}", i)))?;
                    let mut num = eval_series(&form.coeffs[0], &vals, t0, prec)?;
                    for (j, b) in pair.basis_indices().iter().enumerate() {
                        let s = eval_series(&form.coeffs[j + 1], &vals, t0, prec)?;
                        num = num.add(&s.mul(&drive[b].truncate(prec)));
                    }
                    let den = eval_series(&form.den, &vals, t0, prec)?;
                    num.mul(&den.inverse()?).0[k].clone()
                }
            };
            x[i as usize - 1].push(rate / BigRational::from(BigInt::from(k + 1)));
        }
    }
    Ok(x.into_iter().map(Series).collect())
}

/// Evaluates `f` along a seeded solution curve and reports the first nonzero
/// coefficient, checking coefficients `0..=order - ord(f)`.
pub fn series_oracle(pair: &GoodPair, f: &DiffPolynomial, order: u32, seed: u64) -> Result<SeriesVerdict> {
    let point = choose_point(pair, seed)?;
    series_at(pair, &point, f, order, seed)
}

pub fn series_at(pair: &GoodPair, point: &RationalPoint, f: &DiffPolynomial, order: u32, seed: u64) -> Result<SeriesVerdict> {
    let k = f.order();
    if k > order {
        return Err(Error::Invalid(format!("truncation order {} is below the query order {}", order, k)));
    }
    let x = integrate(pair, point, order, seed)?;
    let len = (order - k) as usize + 1;
    let mut vals = HashMap::new();
    for (i, s) in x.iter().enumerate() {
        let mut d = s.clone();
        for j in 0..=k {
            vals.insert(Var::deriv(i as u32 + 1, j), d.truncate(len));
            d = d.derivative();
        }
    }
    for v in f.body().vars() {
        if !vals.contains_key(&v) {
            return Err(Error::ForeignVariable(v.to_string()));
        }
    }
    let s = eval_series(f.body(), &vals, point.t.as_ref(), len)?;
    Ok(match s.0.iter().position(|c| !c.is_zero()) {
        Some(i) => SeriesVerdict::RefuteZero { order: i, value: s.0[i].clone() },
        None => SeriesVerdict::ConfirmZero(order),
    })
}
