use std::fmt;

use num_rational::BigRational;

use super::irreducible::{certify_irreducible, Irreducibility};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::var::{u_vars, x_vars};
use crate::poly::{GroundField, MonomialOrder, Polynomial};

/// Construction recipes whose outputs are prime by construction, each with a
/// re-runnable check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// The zero ideal.
    Affine,
    /// A principal ideal with a certified irreducible generator.
    Hypersurface,
    /// Lex reduced basis of the form `v_i - h_i` with distinct leading
    /// variables: the graph of a polynomial map.
    Triangular,
    /// Closure of the graph of rational functions over a prime base (m = 0).
    Graph,
    /// Closure of an affine family of fibres over a prime base.
    Bundle,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Hypersurface => "hypersurface",
            Family::Triangular => "triangular",
            Family::Graph => "graph",
            Family::Bundle => "bundle",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "affine" => Family::Affine,
            "hypersurface" => Family::Hypersurface,
            "triangular" => Family::Triangular,
            "graph" => Family::Graph,
            "bundle" => Family::Bundle,
            _ => return None,
        })
    }

    /// Graph and bundle closures only make sense for the total space.
    pub fn needs_base(self) -> bool {
        matches!(self, Family::Graph | Family::Bundle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primality {
    Asserted,
    Constructed(Family),
}

impl fmt::Display for Primality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primality::Asserted => write!(f, "asserted"),
            Primality::Constructed(fam) => write!(f, "{}", fam.name()),
        }
    }
}

/// A variety given by generators of its ideal, in `x1..xn` (a base) or in
/// `x1..xn, u1..un` (a total space).
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    pub n: u32,
    pub ideal: Ideal,
    pub primality: Primality,
}

impl VarietyPresentation {
    pub fn base(field: GroundField, n: u32, gens: Vec<Polynomial>, primality: Primality) -> Result<Self> {
        let ideal = Ideal::standard(field, x_vars(n), gens)?;
        Ok(VarietyPresentation { n, ideal, primality })
    }

    pub fn total(field: GroundField, n: u32, gens: Vec<Polynomial>, primality: Primality) -> Result<Self> {
        let mut vars = x_vars(n);
        vars.extend(u_vars(n));
        let ideal = Ideal::standard(field, vars, gens)?;
        Ok(VarietyPresentation { n, ideal, primality })
    }

    pub fn field(&self) -> GroundField {
        self.ideal.field()
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }
}

/// A rational point of the base, optionally with a value for `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub t: Option<BigRational>,
    pub coords: Vec<BigRational>,
}

/// Checks the families that need nothing beyond the ideal itself.
pub(crate) fn verify_intrinsic(ideal: &Ideal, family: Family, seed: u64) -> Result<()> {
    match family {
        Family::Affine => {
            if ideal.reduced_basis()?.polys().is_empty() {
                Ok(())
            } else {
                Err(Error::Primality("ideal tagged affine is not zero".into()))
            }
        }
        Family::Hypersurface => {
            let gb = ideal.reduced_basis()?;
            match gb.polys() {
                [f] if !f.is_constant() => match certify_irreducible(f, seed) {
                    Irreducibility::Irreducible => Ok(()),
                    Irreducibility::Unverified => {
                        Err(Error::Primality(format!("irreducibility of {} unverified", f)))
                    }
                },
                _ => Err(Error::Primality("ideal tagged hypersurface is not principal".into())),
            }
        }
        Family::Triangular => {
            if is_triangular(ideal)? {
                Ok(())
            } else {
                Err(Error::Primality("lex basis is not triangular".into()))
            }
        }
        Family::Graph | Family::Bundle => unreachable!("checked against the base"),
    }
}

/// Every lex-leading monomial is a single variable to the first power.
pub fn is_triangular(ideal: &Ideal) -> Result<bool> {
    let gb = ideal.basis(MonomialOrder::Lex)?;
    if gb.is_unit() {
        return Ok(false);
    }
    let order: Vec<_> = ideal.ambient().to_vec();
    for p in gb.polys() {
        // The lex-leading monomial: largest by ambient significance.
        let lead = p
            .terms()
            .map(|(m, _)| m)
            .max_by(|a, b| {
                for v in &order {
                    let c = a.exponent(*v).cmp(&b.exponent(*v));
                    if c.is_ne() {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
            .unwrap();
        if lead.degree() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
