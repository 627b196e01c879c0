use log::warn;

use super::fiber::{fiber_analysis, LinearFiberForm};
use super::presentation::{verify_intrinsic, Family, Primality, RationalPoint, VarietyPresentation};
use crate::diff::prolongation_ideal;
use crate::error::{Condition, Error, Result};
use crate::ideal::Ideal;
use crate::poly::var::x_vars;
use crate::poly::{GroundField, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPairCertificate {
    pub containment_ok: bool,
    pub projection_ok: bool,
    pub m: usize,
    pub basis_indices: Vec<u32>,
    pub fiber_forms: Vec<LinearFiberForm>,
}

#[derive(Debug, Clone)]
pub struct GoodPair {
    pub v: VarietyPresentation,
    pub w: VarietyPresentation,
    pub certificate: GoodPairCertificate,
    pub point: Option<RationalPoint>,
    /// Non-fatal notes, e.g. asserted primality accepted permissively.
    pub warnings: Vec<String>,
}

impl GoodPair {
    pub fn n(&self) -> u32 {
        self.v.n
    }

    pub fn field(&self) -> GroundField {
        self.v.field()
    }

    pub fn m(&self) -> usize {
        self.certificate.m
    }

    pub fn basis_indices(&self) -> &[u32] {
        &self.certificate.basis_indices
    }

    pub fn forms(&self) -> &[LinearFiberForm] {
        &self.certificate.fiber_forms
    }

    /// The fibre form solving for `u_i`, if `i` is not a basis index.
    pub fn form_for(&self, i: u32) -> Option<&LinearFiberForm> {
        self.forms().iter().find(|f| f.target == i)
    }

    pub fn with_point(mut self, point: Option<RationalPoint>) -> Self {
        self.point = point;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub permissive: bool,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { permissive: false, seed: 0 }
    }
}

fn check_shape(v: &VarietyPresentation, w: &VarietyPresentation) -> Result<()> {
    if v.n != w.n {
        return Err(Error::Invalid(format!("V has n = {} but W has n = {}", v.n, w.n)));
    }
    if v.ideal.ambient().iter().any(|x| !x.is_x()) {
        return Err(Error::Invalid("V must be given in x-variables".into()));
    }
    if v.ideal.is_unit()? {
        return Err(Error::UnitIdeal("V is empty".into()));
    }
    if w.ideal.is_unit()? {
        return Err(Error::UnitIdeal("W is empty".into()));
    }
    Ok(())
}

/// Condition (i): every generator of the prolongation of V lies in I(W).
pub fn check_containment(v: &Ideal, w: &Ideal) -> Result<bool> {
    let p = prolongation_ideal(v)?;
    w.contains_all(p.generators())
}

/// Condition (ii): the x-elimination ideal of W is I(V).
pub fn check_generic_projection(n: u32, v: &Ideal, w: &Ideal) -> Result<bool> {
    w.elimination_ideal(&x_vars(n))?.equals(v)
}

fn verify_primality(
    pres: &VarietyPresentation,
    base: Option<(&VarietyPresentation, &GoodPairCertificate)>,
    opts: &CheckOptions,
    warnings: &mut Vec<String>,
    role: &str,
) -> Result<()> {
    match pres.primality {
        Primality::Asserted => {
            if opts.permissive {
                let msg = format!("primality of {} is asserted, not constructed", role);
                warn!("{}", msg);
                warnings.push(msg);
                Ok(())
            } else {
                Err(Error::Primality(format!(
                    "primality of {} is only asserted (allowed with --permissive)",
                    role
                )))
            }
        }
        Primality::Constructed(fam) if fam.needs_base() => {
            let (v, cert) = base.ok_or_else(|| Error::Primality(format!("{} family needs a base", fam.name())))?;
            if fam == Family::Graph && cert.m != 0 {
                return Err(Error::Primality("graph family requires m = 0".into()));
            }
            let closure = fibre_closure(v.n, &v.ideal, &cert.basis_indices, &cert.fiber_forms)?;
            if closure.equals(&pres.ideal)? {
                Ok(())
            } else {
                Err(Error::Primality(format!("{} is not the closure of its fibre forms", role)))
            }
        }
        Primality::Constructed(fam) => verify_intrinsic(&pres.ideal, fam, opts.seed),
    }
}

/// `⟨I(V), den_i u_i - num_i⟩ : (Π den_i)^∞`, prime whenever V is.
pub fn fibre_closure(n: u32, v: &Ideal, basis: &[u32], forms: &[LinearFiberForm]) -> Result<Ideal> {
    let field = v.field();
    let mut gens: Vec<Polynomial> = v.reduced_basis()?.polys().to_vec();
    let mut product = Polynomial::one(field);
    for f in forms {
        gens.push(f.relation(basis));
        product = &product * &f.den;
    }
    let mut vars = x_vars(n);
    vars.extend(crate::poly::var::u_vars(n));
    let raw = Ideal::standard(field, vars, gens)?;
    raw.saturation(&product)
}

/// Validates conditions (i), (ii), (iii) in that order, then primality
/// evidence for both presentations.
pub fn check_good_pair(v: VarietyPresentation, w: VarietyPresentation, opts: &CheckOptions) -> Result<GoodPair> {
    check_shape(&v, &w)?;
    let n = v.n;
    if !check_containment(&v.ideal, &w.ideal)? {
        return Err(Error::Violation(Condition::Containment));
    }
    if !check_generic_projection(n, &v.ideal, &w.ideal)? {
        return Err(Error::Violation(Condition::Projection));
    }
    let fiber = fiber_analysis(n, &v.ideal, &w.ideal)?;
    let certificate = GoodPairCertificate {
        containment_ok: true,
        projection_ok: true,
        m: fiber.m,
        basis_indices: fiber.basis_indices,
        fiber_forms: fiber.forms,
    };
    let mut warnings = Vec::new();
    if v.primality.is_base_family_ok() {
        verify_primality(&v, None, opts, &mut warnings, "V")?;
    } else {
        return Err(Error::Primality("V cannot use a graph or bundle family".into()));
    }
    verify_primality(&w, Some((&v, &certificate)), opts, &mut warnings, "W")?;
    Ok(GoodPair { v, w, certificate, point: None, warnings })
}

impl Primality {
    fn is_base_family_ok(self) -> bool {
        !matches!(self, Primality::Constructed(f) if f.needs_base())
    }
}
