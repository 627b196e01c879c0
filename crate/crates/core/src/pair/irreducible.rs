//! Irreducibility certificates for principal generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor;
use crate::poly::{GroundField, Polynomial, UPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// No certificate found; the polynomial may or may not factor.
    Unverified,
}

const TRIALS: usize = 24;

/// Restriction of `f` to the line `x = a + τ b`, with `t` specialized to `t0`.
fn restrict(f: &Polynomial, a: &[BigRational], b: &[BigRational], t0: &BigRational) -> Option<UPoly> {
    let vars: Vec<_> = f.vars().into_iter().collect();
    let lines: Vec<UPoly> = (0..vars.len())
        .map(|i| UPoly::from_coeffs(vec![a[i].clone(), b[i].clone()]))
        .collect();
    let mut out = UPoly::zero();
    for (m, c) in f.terms() {
        let c = c.eval(t0)?;
        let mut term = UPoly::constant(c);
        for (v, e) in m.factors() {
            let i = vars.iter().position(|w| w == v).unwrap();
            term = term.mul(&lines[i].pow(*e));
        }
        out = out.add(&term);
    }
    Some(out)
}

/// Probabilistic certificate: if some restriction to a line keeps the full
/// degree and is irreducible over Q, then `f` is irreducible. Failure to
/// find such a line proves nothing.
pub fn certify_irreducible(f: &Polynomial, seed: u64) -> Irreducibility {
    let d = f.total_degree();
    if f.is_constant() {
        return Irreducibility::Unverified;
    }
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    let nvars = f.vars().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let int = |rng: &mut ChaCha8Rng, r: i64| BigRational::from(BigInt::from(rng.gen_range(-r..=r)));
    for _ in 0..TRIALS {
        let t0 = if f.field() == GroundField::Qt {
            int(&mut rng, 40)
        } else {
            BigRational::from(BigInt::from(0))
        };
        let a: Vec<_> = (0..nvars).map(|_| int(&mut rng, 12)).collect();
        let b: Vec<_> = (0..nvars).map(|_| int(&mut rng, 12)).collect();
        let Some(g) = restrict(f, &a, &b, &t0) else { continue };
        if g.degree() != Some(d as usize) {
            continue;
        }
        if factor::is_irreducible(&g) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unverified
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::parse_poly;

    fn check(s: &str, field: GroundField) -> Irreducibility {
        certify_irreducible(&parse_poly(s, field).unwrap(), 5)
    }

    #[test]
    fn examples() {
        use Irreducibility::*;
        let q = GroundField::Q;
        assert_eq!(check("x1^2 + x2^2 - 1", q), Irreducible);
        assert_eq!(check("x1*x2 - 1", q), Irreducible);
        assert_eq!(check("u1^2 - x1", q), Irreducible);
        assert_eq!(check("x1 - 3", q), Irreducible);
        assert_eq!(check("x1^2 - x2^2", q), Unverified);
        assert_eq!(check("x1^2 - 2", q), Irreducible);
        assert_eq!(check("x1^2 - 4", q), Unverified);
        assert_eq!(check("x1^2 - t", GroundField::Qt), Irreducible);
        assert_eq!(check("x1^2 - t^2", GroundField::Qt), Unverified);
        assert_eq!(check("x1^3 + x2^3 + x3^3 - 1", q), Irreducible);
    }
}
