//! The generic fibre of `W → V`: a Gröbner basis in the u-variables over the
//! function field of `V`, with coefficients kept as normal forms modulo I(V).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideal::{GroebnerBasis, Ideal, Limits};
use crate::poly::{GroundElement, Monomial, Polynomial, Var};

/// `u_target = (s_0 + Σ_j s_j u_{b_j}) / den` on the generic fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFiberForm {
    pub target: u32,
    pub den: Polynomial,
    /// `s_0, s_1, …, s_m`, with `s_j` multiplying the j-th basis coordinate.
    pub coeffs: Vec<Polynomial>,
}

impl LinearFiberForm {
    /// `den * u_target - (s_0 + Σ s_j u_{b_j})`.
    pub fn relation(&self, basis_indices: &[u32]) -> Polynomial {
        let field = self.den.field();
        let mut r = &self.den * &Polynomial::var(field, Var::U(self.target));
        r = &r - &self.coeffs[0];
        for (j, b) in basis_indices.iter().enumerate() {
            r = &r - &(&self.coeffs[j + 1] * &Polynomial::var(field, Var::U(*b)));
        }
        r
    }

    /// The affine expression `s_0 + Σ s_j u_{b_j}` (the numerator).
    pub fn numerator(&self, basis_indices: &[u32]) -> Polynomial {
        let field = self.den.field();
        let mut r = self.coeffs[0].clone();
        for (j, b) in basis_indices.iter().enumerate() {
            r = &r + &(&self.coeffs[j + 1] * &Polynomial::var(field, Var::U(*b)));
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberData {
    pub m: usize,
    pub basis_indices: Vec<u32>,
    pub forms: Vec<LinearFiberForm>,
}

type Exp = Vec<u32>;

/// Polynomial in `u1..un` with coefficients in k[x]/I(V), terms sorted
/// descending under lex with `u_n` most significant.
#[derive(Debug, Clone)]
struct KPoly {
    terms: Vec<(Exp, Polynomial)>,
}

struct Ctx<'a> {
    v: &'a GroebnerBasis,
    n: usize,
    steps: u64,
    limits: Limits,
    start: std::time::Instant,
}

fn cmp_exp(a: &Exp, b: &Exp) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl<'a> Ctx<'a> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limits.max_steps || self.start.elapsed() > self.limits.timeout {
            return Err(Error::ResourceLimit { steps: self.steps, elapsed: self.start.elapsed() });
        }
        Ok(())
    }

    fn make(&self, raw: BTreeMap<Exp, Polynomial>) -> Result<KPoly> {
        let mut terms = Vec::new();
        for (e, c) in raw {
            let c = self.v.reduce(&c)?;
            if !c.is_zero() {
                terms.push((e, c));
            }
        }
        terms.sort_by(|a, b| cmp_exp(&b.0, &a.0));
        // Keep coefficient sizes down by a rational rescaling.
        if let Some((_, lc)) = terms.first() {
            let (_, c) = lc.leading_print().unwrap();
            let inv = c.invert()?;
            for (_, t) in terms.iter_mut() {
                *t = t.scale(&inv);
            }
        }
        Ok(KPoly { terms })
    }

    fn from_poly(&self, p: &Polynomial) -> Result<KPoly> {
        let mut raw = BTreeMap::new();
        for (m, c) in p.collect_by(|v| v.is_u()) {
            let mut e = vec![0; self.n];
            for (v, k) in m.factors() {
                e[v.index() as usize - 1] = *k;
            }
            raw.insert(e, c);
        }
        self.make(raw)
    }

    /// `a*f - b*shift*g`.
    fn combine(&self, a: &Polynomial, f: &KPoly, b: &Polynomial, shift: &Exp, g: &KPoly) -> Result<KPoly> {
        let mut raw: BTreeMap<Exp, Polynomial> = BTreeMap::new();
        for (e, c) in &f.terms {
            let entry = raw.entry(e.clone()).or_insert_with(|| Polynomial::zero(c.field()));
            *entry = &*entry + &(a * c);
        }
        for (e, c) in &g.terms {
            let e: Exp = e.iter().zip(shift).map(|(x, y)| x + y).collect();
            let entry = raw.entry(e).or_insert_with(|| Polynomial::zero(c.field()));
            *entry = &*entry - &(b * c);
        }
        self.make(raw)
    }

    fn reduce(&mut self, f: KPoly, basis: &[KPoly]) -> Result<KPoly> {
        let mut f = f;
        let mut i = 0;
        while i < f.terms.len() {
            let (e, c) = f.terms[i].clone();
            let hit = basis.iter().find(|g| divides(&g.terms[0].0, &e));
            match hit {
                Some(g) => {
                    self.tick()?;
                    let shift: Exp = e.iter().zip(&g.terms[0].0).map(|(x, y)| x - y).collect();
                    let lg = g.terms[0].1.clone();
                    f = self.combine(&lg, &f, &c, &shift, g)?;
                }
                None => i += 1,
            }
        }
        Ok(f)
    }

    fn spoly(&self, f: &KPoly, g: &KPoly) -> Result<KPoly> {
        let (ef, cf) = &f.terms[0];
        let (eg, cg) = &g.terms[0];
        let l: Exp = ef.iter().zip(eg).map(|(a, b)| *a.max(b)).collect();
        let sf: Exp = l.iter().zip(ef).map(|(a, b)| a - b).collect();
        let sg: Exp = l.iter().zip(eg).map(|(a, b)| a - b).collect();
        // cg * sf * f - cf * sg * g
        let shifted_f = KPoly {
            terms: f.terms.iter().map(|(e, c)| (e.iter().zip(&sf).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        };
        self.combine(cg, &shifted_f, cf, &sg, g)
    }

    fn to_poly(&self, f: &KPoly) -> Polynomial {
        let mut out = Polynomial::zero(f.terms[0].1.field());
        for (e, c) in &f.terms {
            let m = Monomial::from_pairs(
                e.iter().enumerate().filter(|(_, k)| **k > 0).map(|(i, k)| (Var::U(i as u32 + 1), *k)),
            );
            out = out + c.mul_monomial(&m);
        }
        out
    }
}

/// Gröbner basis of the extension of I(W) to K(V)[u]; pivots come out as the
/// highest indices so the free coordinates are the lexicographically least.
pub fn fiber_analysis(n: u32, v: &Ideal, w: &Ideal) -> Result<FiberData> {
    let vb = v.reduced_basis()?;
    let wb = w.reduced_basis()?;
    let mut ctx = Ctx {
        v: &vb,
        n: n as usize,
        steps: 0,
        limits: Limits::current(),
        start: std::time::Instant::now(),
    };
    // Simplest generators first, so that pivots get small denominators.
    let mut gens: Vec<&Polynomial> = wb.polys().iter().collect();
    gens.sort_by_key(|g| (g.total_degree(), g.len()));
    let mut basis: Vec<KPoly> = Vec::new();
    for g in gens {
        let k = ctx.from_poly(g)?;
        let k = ctx.reduce(k, &basis)?;
        if !k.terms.is_empty() {
            basis.push(k);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ei, ej) = (&basis[i].terms[0].0, &basis[j].terms[0].0);
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = ctx.spoly(&basis[i], &basis[j])?;
        let r = ctx.reduce(s, &basis)?;
        if !r.terms.is_empty() {
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    // Minimal, then reduced.
    let weight = |k: &KPoly| (k.terms[0].1.total_degree(), k.terms[0].1.len(), k.terms.len());
    basis.sort_by(|a, b| cmp_exp(&a.terms[0].0, &b.terms[0].0).then(weight(a).cmp(&weight(b))));
    let mut minimal: Vec<KPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h.terms[0].0, &g.terms[0].0)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<KPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        reduced.push(ctx.reduce(minimal[i].clone(), &others)?);
    }

    let mut pivots = Vec::new();
    let mut linear = Vec::new();
    for g in &reduced {
        let lead = &g.terms[0].0;
        let degree: u32 = lead.iter().sum();
        if degree == 0 {
            return Err(Error::NotAffineFiber("generic fibre is empty".into()));
        }
        if g.terms.iter().any(|(e, _)| e.iter().sum::<u32>() > 1) {
            return Err(Error::NotAffineFiber(format!(
                "{} has degree {} in u",
                ctx.to_poly(g),
                g.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap()
            )));
        }
        let p = lead.iter().position(|&k| k == 1).unwrap() as u32 + 1;
        pivots.push(p);
        linear.push((p, g));
    }
    let basis_indices: Vec<u32> = (1..=n).filter(|i| !pivots.contains(i)).collect();
    let m = basis_indices.len();

    let mut forms = Vec::new();
    linear.sort_by_key(|(p, _)| *p);
    for (p, g) in linear {
        let field = g.terms[0].1.field();
        let den = g.terms[0].1.clone();
        let mut coeffs = vec![Polynomial::zero(field); m + 1];
        for (e, c) in &g.terms[1..] {
            match e.iter().position(|&k| k == 1) {
                None => coeffs[0] = -c,
                Some(pos) => {
                    let j = basis_indices.iter().position(|&b| b == pos as u32 + 1).unwrap();
                    coeffs[j + 1] = -c;
                }
            }
        }
        let (_, lc) = den.leading_print().unwrap();
        let inv: GroundElement = lc.invert()?;
        forms.push(LinearFiberForm {
            target: p,
            den: den.scale(&inv),
            coeffs: coeffs.iter().map(|c| c.scale(&inv)).collect(),
        });
    }

    let expected = w.krull_dimension()? as isize - v.krull_dimension()? as isize;
    if expected != m as isize {
        return Err(Error::Primality(format!(
            "generic fibre has dimension {} but dim W - dim V = {}",
            m, expected
        )));
    }
    for f in &forms {
        let r = f.relation(&basis_indices);
        if !wb.reduce(&r)?.is_zero() {
            return Err(Error::Primality(format!("fibre relation {} does not lie in I(W)", r)));
        }
    }
    Ok(FiberData { m, basis_indices, forms })
}
