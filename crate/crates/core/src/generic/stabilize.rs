//! From a solved differential system to a good pair, by prolonging until the
//! transcendence-degree increments settle.

use log::debug;

use crate::diff::{DiffPolynomial, DiffSystem};
use crate::error::Result;
use crate::ideal::Ideal;
use crate::pair::{check_good_pair, CheckOptions, Family, GoodPair, Primality, VarietyPresentation};
use crate::poly::{Polynomial, Var};

#[derive(Debug, Clone)]
pub struct StabilizationTrace {
    /// `d_s = dim J_s - dim J_{s-1}`, with `d_0 = dim J_0`.
    pub d: Vec<usize>,
    pub r: u32,
    /// `J_0, J_1, …` in the jet variables `x_i^(j)`.
    pub prolongation_ideals: Vec<Ideal>,
}

/// `J_s`: every principal derivative of order `≤ s` set equal to its
/// parametric rewrite.
fn prolongation(system: &DiffSystem, s: u32) -> Result<Ideal> {
    let field = system.field();
    let n = system.n();
    let mut vars = Vec::new();
    let mut gens = Vec::new();
    for j in 0..=s {
        for i in 1..=n {
            let v = Var::deriv(i, j);
            vars.push(v);
            if system.is_principal(v) {
                let p = Polynomial::var(field, v);
                gens.push(&p - &system.reduce(&p));
            }
        }
    }
    Ideal::standard(field, vars, gens)
}

/// Stacked coordinate for `x_i^(j)` when the base keeps `r + 1` blocks.
fn stacked(n: u32, r: u32, v: Var, total: bool) -> Var {
    let (i, j) = v.as_derivative().expect("jet variable");
    if j <= r {
        Var::X(j * n + i)
    } else {
        debug_assert!(total && j == r + 1);
        Var::U(r * n + i)
    }
}

/// Reads a polynomial in jet variables as a differential polynomial in the
/// stacked coordinates of the pair: `x_i^(j) ↦ x_{i + min(j,r) n}^(j - min(j,r))`.
pub fn read_stacked(n: u32, r: u32, f: &Polynomial) -> DiffPolynomial {
    let body = f.rename(|v| match v.as_derivative() {
        Some((i, j)) => {
            let b = j.min(r);
            Var::deriv(i + b * n, j - b)
        }
        None => v,
    });
    DiffPolynomial::new(n * (r + 1), body)
}

fn family(ideal: &Ideal) -> Result<Family> {
    Ok(if ideal.reduced_basis()?.polys().is_empty() { Family::Affine } else { Family::Triangular })
}

pub fn stabilize(system: &DiffSystem, opts: &CheckOptions) -> Result<(StabilizationTrace, GoodPair)> {
    let n = system.n();
    let field = system.field();
    let horizon = system.max_order() + 1;
    let mut ideals = Vec::new();
    let mut dims = Vec::new();
    for s in 0..=horizon {
        let j = prolongation(system, s)?;
        dims.push(j.krull_dimension()?);
        ideals.push(j);
    }
    let d: Vec<usize> = (0..dims.len())
        .map(|s| if s == 0 { dims[0] } else { dims[s] - dims[s - 1] })
        .collect();
    // Past the largest leader order every increment equals the number of
    // parametric derivatives per order, so the tail up to the horizon decides.
    let h = horizon as usize;
    let r = (0..=h).find(|&r| d[r..=h].iter().all(|x| *x == d[r])).unwrap() as u32;
    debug!("stabilize: d = {:?}, r = {}", d, r);
    if ideals.len() <= r as usize + 1 {
        ideals.push(prolongation(system, r + 1)?);
    }

    let big_n = n * (r + 1);
    let v_gens: Vec<Polynomial> = ideals[r as usize]
        .generators()
        .iter()
        .map(|g| g.rename(|v| stacked(n, r, v, false)))
        .collect();
    let mut w_gens: Vec<Polynomial> = ideals[r as usize + 1]
        .generators()
        .iter()
        .map(|g| g.rename(|v| stacked(n, r, v, true)))
        .collect();
    for j in 0..r {
        for i in 1..=n {
            w_gens.push(
                &Polynomial::var(field, Var::U(j * n + i)) - &Polynomial::var(field, Var::X((j + 1) * n + i)),
            );
        }
    }
    let mut v = VarietyPresentation::base(field, big_n, v_gens, Primality::Asserted)?;
    v.primality = Primality::Constructed(family(&v.ideal)?);
    let mut w = VarietyPresentation::total(field, big_n, w_gens, Primality::Asserted)?;
    w.primality = Primality::Constructed(family(&w.ideal)?);
    let pair = check_good_pair(v, w, opts)?;
    let trace = StabilizationTrace { d, r, prolongation_ideals: ideals };
    Ok((trace, pair))
}
