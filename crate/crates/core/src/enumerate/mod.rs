//! Canonical listings of good pairs and of quantifier-free formulas.

pub mod formulas;
pub mod pairs;

pub use formulas::{enumerate_formulas, formula_at, normalize_atom, FormulaBounds, FormulaEnumerator};
pub use pairs::{
    candidates, enumerate_pairs, jet_ideal, pair_at, Candidate, Cell, Emission, EnumerationBounds, Event,
    PairEnumerator, PairIndex,
};

use crate::error::{Error, Result};
use crate::generic::{read_stacked, DeltaGenericType};
use crate::poly::{GroundElement, GroundField, Monomial, Polynomial, Var};

/// All monomials in `vars` of total degree at most `deg`, starting with 1.
pub(crate) fn monomials(vars: &[Var], deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (k, v) in vars.iter().enumerate().skip(*start) {
                let mm = m.mul(&Monomial::var(*v));
                out.push(mm.clone());
                next.push((mm, k));
            }
        }
        frontier = next;
    }
    out
}

/// Every polynomial supported on `mons` with integer coefficients in `[-height, height]`.
pub(crate) fn polys_with(field: GroundField, mons: &[Monomial], height: u32) -> Vec<Polynomial> {
    let h = height as i64;
    let mut coeffs = vec![-h; mons.len()];
    let mut out = Vec::new();
    loop {
        out.push(Polynomial::from_terms(
            field,
            mons.iter().zip(&coeffs).filter(|(_, c)| **c != 0).map(|(m, c)| (m.clone(), GroundElement::int(*c))),
        ));
        let mut k = 0;
        loop {
            if k == coeffs.len() {
                return out;
            }
            if coeffs[k] < h {
                coeffs[k] += 1;
                break;
            }
            coeffs[k] = -h;
            k += 1;
        }
    }
}

/// Whether the `j`-th formula holds in the generic type of the `i`-th pair.
/// The formula speaks about `x1..xn`; pairs with several blocks read it in
/// stacked coordinates.
pub fn listing_membership(i: usize, j: u64, pairs: EnumerationBounds, formulas: FormulaBounds) -> Result<bool> {
    if formulas.n != pairs.n {
        return Err(Error::Invalid(format!("formulas over n = {} but pairs over n = {}", formulas.n, pairs.n)));
    }
    let e = pair_at(pairs, i)?;
    let (n, r) = (pairs.n, e.candidate.blocks - 1);
    let phi = formula_at(formulas, j)?.map_atoms(&|a| read_stacked(n, r, a.body()));
    DeltaGenericType::new(e.pair)?.decide(&phi)
}

#[cfg(test)]
mod tests;
