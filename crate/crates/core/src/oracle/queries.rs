//! Seeded random differential polynomials for cross-checking oracles.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diff::DiffPolynomial;
use crate::poly::{GroundElement, GroundField, Monomial, Polynomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryBounds {
    pub order: u32,
    pub degree: u32,
    pub height: u32,
}

impl Default for QueryBounds {
    fn default() -> Self {
        QueryBounds { order: 3, degree: 3, height: 3 }
    }
}

pub struct QueryGen {
    field: GroundField,
    n: u32,
    bounds: QueryBounds,
    rng: ChaCha8Rng,
}

impl QueryGen {
    pub fn new(field: GroundField, n: u32, bounds: QueryBounds, seed: u64) -> QueryGen {
        QueryGen { field, n, bounds, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn within(&self, f: &DiffPolynomial) -> bool {
        f.order() <= self.bounds.order
            && f.body().total_degree() <= self.bounds.degree
            && f.body().height() <= BigInt::from(self.bounds.height)
    }

    fn coefficient(&mut self) -> GroundElement {
        let h = self.bounds.height as i64;
        let mut num = self.rng.gen_range(1..=h);
        if self.rng.gen_bool(0.5) {
            num = -num;
        }
        let den = if self.rng.gen_bool(0.2) { self.rng.gen_range(1..=h) } else { 1 };
        let c = GroundElement::ratio(num, den);
        if self.field == GroundField::Qt && self.rng.gen_bool(0.3) {
            c.mul(&GroundElement::t())
        } else {
            c
        }
    }

    fn monomial(&mut self, max_degree: u32) -> Monomial {
        let deg = self.rng.gen_range(0..=max_degree);
        let mut m = Monomial::one();
        for _ in 0..deg {
            let v = Var::deriv(self.rng.gen_range(1..=self.n), self.rng.gen_range(0..=self.bounds.order));
            m = m.mul(&Monomial::var(v));
        }
        m
    }

    /// One to four random terms; redrawn when repeated monomials push a
    /// coefficient past the height bound.
    pub fn random(&mut self) -> DiffPolynomial {
        loop {
            let k = self.rng.gen_range(1..=4);
            let terms: Vec<(Monomial, GroundElement)> =
                (0..k).map(|_| (self.monomial(self.bounds.degree), self.coefficient())).collect();
            let f = DiffPolynomial::new(self.n, Polynomial::from_terms(self.field, terms));
            if self.within(&f) {
                return f;
            }
        }
    }

    /// A nonzero combination `Σ c m z^(k)` of derivatives of `zeros`, within
    /// the bounds; `None` if none was found in 64 tries.
    pub fn combination(&mut self, zeros: &[DiffPolynomial]) -> Option<DiffPolynomial> {
        for _ in 0..64 {
            let mut acc = DiffPolynomial::new(self.n, Polynomial::zero(self.field));
            for _ in 0..self.rng.gen_range(1..=2) {
                let z = zeros.choose(&mut self.rng)?;
                if z.order() > self.bounds.order {
                    continue;
                }
                let z = z.nth_derivative(self.rng.gen_range(0..=self.bounds.order - z.order()));
                let room = self.bounds.degree.saturating_sub(z.body().total_degree());
                let m = self.monomial(room);
                let c = self.coefficient();
                let term = DiffPolynomial::new(self.n, z.body().mul_monomial(&m).scale(&c));
                acc = acc.add(&term);
            }
            if !acc.is_zero() && self.within(&acc) {
                return Some(acc);
            }
        }
        None
    }
}
