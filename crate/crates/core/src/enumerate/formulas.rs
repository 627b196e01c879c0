//! Canonical enumeration of quantifier-free formulas: atoms in a fixed
//! order, then trees by size with `¬`, `∧`, `∨` blocks.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{monomials, polys_with};
use crate::diff::DiffPolynomial;
use crate::error::{Error, Result};
use crate::generic::formula::QFFormula;
use crate::io::print::poly_to_string;
use crate::poly::{GroundElement, GroundField, Polynomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaBounds {
    pub n: u32,
    pub max_order: u32,
    pub max_degree: u32,
    pub max_height: u32,
}

/// Integer coefficients with gcd 1 and a positive leading coefficient; the
/// zero polynomial is kept as the one trivially true atom.
fn is_normalized(p: &Polynomial) -> bool {
    if p.is_zero() {
        return true;
    }
    let mut g = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficients");
        if !r.is_integer() {
            return false;
        }
        g = g.gcd(r.numer());
    }
    g.is_one() && !p.leading_print().unwrap().1.is_negative()
}

/// Sort key: non-constant atoms first, then order, degree, height and the
/// printed form by length, then bytes.
fn atom_key(f: &DiffPolynomial) -> (bool, u32, u32, u64, usize, String) {
    let s = poly_to_string(f.body());
    (
        f.is_constant(),
        f.order(),
        f.body().total_degree(),
        f.body().height().to_u64().unwrap_or(u64::MAX),
        s.len(),
        s,
    )
}

pub struct FormulaEnumerator {
    bounds: FormulaBounds,
    atoms: Vec<DiffPolynomial>,
    /// `counts[s]` = number of formulas of size `s`.
    counts: Vec<BigUint>,
}

impl FormulaEnumerator {
    pub fn new(bounds: FormulaBounds) -> FormulaEnumerator {
        let vars: Vec<Var> = (0..=bounds.max_order)
            .flat_map(|j| (1..=bounds.n).map(move |i| Var::deriv(i, j)))
            .collect();
        let mons = monomials(&vars, bounds.max_degree);
        let mut atoms: Vec<DiffPolynomial> = polys_with(GroundField::Q, &mons, bounds.max_height)
            .into_iter()
            .filter(is_normalized)
            .map(|p| DiffPolynomial::new(bounds.n, p))
            .collect();
        atoms.sort_by_cached_key(atom_key);
        FormulaEnumerator { bounds, atoms, counts: vec![BigUint::zero()] }
    }

    pub fn bounds(&self) -> FormulaBounds {
        self.bounds
    }

    pub fn atoms(&self) -> &[DiffPolynomial] {
        &self.atoms
    }

    /// Number of formulas with exactly `size` nodes.
    pub fn count(&mut self, size: usize) -> BigUint {
        while self.counts.len() <= size {
            let s = self.counts.len();
            let c = if s == 1 {
                BigUint::from(self.atoms.len())
            } else {
                let mut c = self.counts[s - 1].clone();
                for a in 1..s - 1 {
                    c += BigUint::from(2u32) * &self.counts[a] * &self.counts[s - 1 - a];
                }
                c
            };
            self.counts.push(c);
        }
        self.counts[size].clone()
    }

    /// Number of formulas with at most `size` nodes.
    pub fn count_up_to(&mut self, size: usize) -> BigUint {
        (1..=size).map(|s| self.count(s)).sum()
    }

    fn unrank(&mut self, size: usize, mut idx: BigUint) -> QFFormula {
        if size == 1 {
            return QFFormula::Atom(self.atoms[idx.to_usize().unwrap()].clone());
        }
        let not = self.count(size - 1);
        if idx < not {
            return QFFormula::not(self.unrank(size - 1, idx));
        }
        idx -= not;
        for or in [false, true] {
            for a in 1..size - 1 {
                let b = size - 1 - a;
                let (ca, cb) = (self.count(a), self.count(b));
                let block = &ca * &cb;
                if idx < block {
                    let (i, j) = idx.div_rem(&cb);
                    let (l, r) = (self.unrank(a, i), self.unrank(b, j));
                    return if or { QFFormula::or(l, r) } else { QFFormula::and(l, r) };
                }
                idx -= block;
            }
        }
        unreachable!("index within size {} block", size)
    }

    /// The `j`-th formula (0-based).
    pub fn formula_at(&mut self, j: u64) -> Result<QFFormula> {
        if self.atoms.is_empty() {
            return Err(Error::Invalid("no atoms within the formula bounds".into()));
        }
        let mut idx = BigUint::from(j);
        let mut size = 1;
        loop {
            let c = self.count(size);
            if idx < c {
                return Ok(self.unrank(size, idx));
            }
            idx -= c;
            size += 1;
        }
    }

    fn rank_in_size(&mut self, f: &QFFormula) -> Option<BigUint> {
        let size = f.size();
        match f {
            QFFormula::Atom(p) => self.atoms.iter().position(|a| a == p).map(BigUint::from),
            QFFormula::Not(inner) => self.rank_in_size(inner),
            QFFormula::And(l, r) | QFFormula::Or(l, r) => {
                let mut offset = self.count(size - 1);
                let or = matches!(f, QFFormula::Or(..));
                if or {
                    for a in 1..size - 1 {
                        offset += self.count(a) * self.count(size - 1 - a);
                    }
                }
                let a = l.size();
                for a2 in 1..a {
                    offset += self.count(a2) * self.count(size - 1 - a2);
                }
                let cb = self.count(r.size());
                Some(offset + self.rank_in_size(l)? * cb + self.rank_in_size(r)?)
            }
        }
    }

    /// Inverse of `formula_at`, if every atom is within the bounds.
    pub fn index_of(&mut self, f: &QFFormula) -> Option<u64> {
        let below = self.count_up_to(f.size() - 1);
        (below + self.rank_in_size(f)?).to_u64()
    }

    /// Index of the atom `f = 0` after normalization.
    pub fn atom_index(&mut self, f: &DiffPolynomial) -> Option<u64> {
        self.index_of(&QFFormula::Atom(normalize_atom(f)))
    }

    pub fn iter(&mut self) -> impl Iterator<Item = QFFormula> + '_ {
        (0u64..).map_while(move |j| self.formula_at(j).ok())
    }
}

/// Scales `f` to the normalized representative of `f = 0`.
pub fn normalize_atom(f: &DiffPolynomial) -> DiffPolynomial {
    let body = f.body();
    if body.is_zero() {
        return f.clone();
    }
    let mut num_gcd = num_bigint::BigInt::zero();
    let mut den_lcm = num_bigint::BigInt::one();
    for (_, c) in body.terms() {
        let r = c.as_rational().expect("rational coefficients");
        num_gcd = num_gcd.gcd(r.numer());
        den_lcm = den_lcm.lcm(r.denom());
    }
    let mut scale = num_rational::BigRational::new(den_lcm, num_gcd);
    if body.leading_print().unwrap().1.is_negative() {
        scale = -scale;
    }
    DiffPolynomial::new(f.n(), body.scale(&GroundElement::rational(scale)))
}

/// The `j`-th formula under `bounds`.
pub fn formula_at(bounds: FormulaBounds, j: u64) -> Result<QFFormula> {
    FormulaEnumerator::new(bounds).formula_at(j)
}

/// The first `count` formulas.
pub fn enumerate_formulas(bounds: FormulaBounds, count: usize) -> Vec<QFFormula> {
    let mut e = FormulaEnumerator::new(bounds);
    let out: Vec<QFFormula> = e.iter().take(count).collect();
    out
}
