//! Constructing good pairs from data that makes W prime by design.

use super::check::{check_good_pair, CheckOptions, GoodPair};
use super::presentation::{Family, Primality, VarietyPresentation};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::var::{u_vars, x_vars};
use crate::poly::{Polynomial, Var};

/// An element of the function field of V as `num / den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        Fraction { num, den }
    }

    pub fn poly(p: Polynomial) -> Self {
        let field = p.field();
        Fraction { num: p, den: Polynomial::one(field) }
    }
}

fn check_dens(v: &Ideal, fs: &[&Fraction]) -> Result<()> {
    for f in fs {
        if v.contains(&f.den)? {
            return Err(Error::DegenerateDenominator(f.den.to_string()));
        }
    }
    Ok(())
}

fn finish(v: VarietyPresentation, gens: Vec<Polynomial>, dens: Polynomial, family: Family, opts: &CheckOptions) -> Result<GoodPair> {
    let field = v.field();
    let n = v.n;
    let mut vars = x_vars(n);
    vars.extend(u_vars(n));
    let raw = Ideal::standard(field, vars, gens)?;
    let closed = raw.saturation(&dens)?;
    let basis = closed.reduced_basis()?.polys().iter().map(|p| p.monic_print()).collect();
    let w = VarietyPresentation::total(field, n, basis, Primality::Constructed(family))?;
    check_good_pair(v, w, opts)
}

/// W = closure of `{(x, g(x)) : x ∈ V}`.
pub fn build_graph_pair(v: VarietyPresentation, g: &[Fraction], opts: &CheckOptions) -> Result<GoodPair> {
    if g.len() != v.n as usize {
        return Err(Error::Invalid(format!("need {} functions, got {}", v.n, g.len())));
    }
    check_dens(&v.ideal, &g.iter().collect::<Vec<_>>())?;
    let field = v.field();
    let mut gens = v.ideal.reduced_basis()?.polys().to_vec();
    let mut dens = Polynomial::one(field);
    for (i, f) in g.iter().enumerate() {
        let u = Polynomial::var(field, Var::U(i as u32 + 1));
        gens.push(&(&f.den * &u) - &f.num);
        dens = &dens * &f.den;
    }
    finish(v, gens, dens, Family::Graph, opts)
}

/// W = closure of `{(x, s0(x) + Σ τ_j v_j(x))}` over parameters `τ`.
pub fn build_bundle_pair(
    v: VarietyPresentation,
    s0: &[Fraction],
    directions: &[Vec<Fraction>],
    opts: &CheckOptions,
) -> Result<GoodPair> {
    let n = v.n as usize;
    if s0.len() != n || directions.iter().any(|d| d.len() != n) {
        return Err(Error::Invalid("forms must have one entry per coordinate".into()));
    }
    let all: Vec<&Fraction> = s0.iter().chain(directions.iter().flatten()).collect();
    check_dens(&v.ideal, &all)?;
    let field = v.field();
    let taus: Vec<Var> = (0..directions.len() as u32).map(Var::Aux).collect();
    let mut gens = v.ideal.reduced_basis()?.polys().to_vec();
    let mut dens = Polynomial::one(field);
    for i in 0..n {
        // Common denominator for coordinate i.
        let mut den = s0[i].den.clone();
        for d in directions {
            den = &den * &d[i].den;
        }
        let mut rhs = &s0[i].num * &cofactor(&s0[i].den, directions.iter().map(|d| &d[i].den), None);
        for (j, d) in directions.iter().enumerate() {
            let tau = Polynomial::var(field, taus[j]);
            let co = cofactor(&s0[i].den, directions.iter().map(|d| &d[i].den), Some(j));
            rhs = &rhs + &(&(&d[i].num * &co) * &tau);
        }
        let u = Polynomial::var(field, Var::U(i as u32 + 1));
        gens.push(&(&den * &u) - &rhs);
        dens = &dens * &den;
    }
    let mut ambient = taus.clone();
    ambient.extend(crate::ideal::standard_ambient(x_vars(v.n).into_iter().chain(u_vars(v.n))));
    let raw = Ideal::new(field, ambient, gens)?;
    let saturated = raw.saturation(&dens)?;
    let keep = crate::ideal::standard_ambient(x_vars(v.n).into_iter().chain(u_vars(v.n)));
    let eliminated = saturated.elimination_ideal(&keep)?;
    let basis = eliminated.reduced_basis()?.polys().iter().map(|p| p.monic_print()).collect();
    let w = VarietyPresentation::total(field, v.n, basis, Primality::Constructed(Family::Bundle))?;
    check_good_pair(v, w, opts)
}

/// Product of all denominators except the one being cleared: `skip = None`
/// drops the `s0` denominator, `Some(j)` drops direction j's.
fn cofactor<'a>(s0_den: &Polynomial, dir_dens: impl Iterator<Item = &'a Polynomial>, skip: Option<usize>) -> Polynomial {
    let mut out = if skip.is_none() { Polynomial::one(s0_den.field()) } else { s0_den.clone() };
    for (j, d) in dir_dens.enumerate() {
        if skip != Some(j) {
            out = &out * d;
        }
    }
    out
}
