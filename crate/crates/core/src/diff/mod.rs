//! Differential polynomials, the formal derivation, and the tangent and
//! prolongation ideals of an algebraic variety.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{standard_ambient, Ideal};
use crate::poly::{GroundField, Polynomial, Var};

/// A polynomial in `x_i^(j)` for `1 ≤ i ≤ n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffPolynomial {
    n: u32,
    body: Polynomial,
    order: u32,
}

impl DiffPolynomial {
    pub fn new(n: u32, body: Polynomial) -> Self {
        let order = body
            .vars()
            .iter()
            .filter_map(|v| v.as_derivative())
            .map(|(_, j)| j)
            .max()
            .unwrap_or(0);
        DiffPolynomial { n, body, order }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn into_body(self) -> Polynomial {
        self.body
    }

    pub fn field(&self) -> GroundField {
        self.body.field()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.body.is_constant()
    }

    /// The formal derivative `D(f)`.
    pub fn derivative(&self) -> DiffPolynomial {
        DiffPolynomial::new(self.n, formal_derivative(&self.body))
    }

    pub fn nth_derivative(&self, k: u32) -> DiffPolynomial {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn add(&self, other: &DiffPolynomial) -> DiffPolynomial {
        DiffPolynomial::new(self.n.max(other.n), &self.body + &other.body)
    }

    pub fn mul(&self, other: &DiffPolynomial) -> DiffPolynomial {
        DiffPolynomial::new(self.n.max(other.n), &self.body * &other.body)
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

impl fmt::Debug for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// `D(f) = Σ ∂f/∂x_i^(j) · x_i^(j+1) + f^∂`.
pub fn formal_derivative(f: &Polynomial) -> Polynomial {
    let mut out = f.coefficient_derivation();
    for v in f.vars() {
        let next = v
            .next_derivative()
            .unwrap_or_else(|| panic!("{} is not a derivative variable", v));
        let d = f.partial_derivative(v);
        out = out + &d * &Polynomial::var(f.field(), next);
    }
    out
}

/// A differential system in solved form: leaders `x_i^(k_i) = g_i`, plus
/// free coordinates without equations.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffSystem {
    n: u32,
    /// index → (k_i, g_i)
    equations: BTreeMap<u32, (u32, Polynomial)>,
    field: GroundField,
}

/// Orderly ranking: by order, then index.
fn rank(v: Var) -> (u32, u32) {
    let (i, j) = v.as_derivative().expect("derivative variable");
    (j, i)
}

impl DiffSystem {
    /// Validates solved form: one leader per index, and every variable in a
    /// right-hand side ranks below its leader and is not a derivative of any
    /// leader.
    pub fn new(field: GroundField, n: u32, equations: Vec<(Var, Polynomial)>) -> Result<DiffSystem> {
        let mut map = BTreeMap::new();
        for (lead, g) in &equations {
            let (i, k) = lead
                .as_derivative()
                .ok_or_else(|| Error::NotSolvedForm(format!("{} is not an x-derivative", lead)))?;
            if i == 0 || i > n {
                return Err(Error::NotSolvedForm(format!("index of {} out of range", lead)));
            }
            if map.insert(i, (k, g.clone())).is_some() {
                return Err(Error::NotSolvedForm(format!("two equations for x{}", i)));
            }
        }
        for (&i, (k, g)) in &map {
            let lead = Var::deriv(i, *k);
            for v in g.vars() {
                let (j, l) = v
                    .as_derivative()
                    .ok_or_else(|| Error::NotSolvedForm(format!("{} is not an x-derivative", v)))?;
                if j == 0 || j > n {
                    return Err(Error::NotSolvedForm(format!("index of {} out of range", v)));
                }
                if rank(v) >= rank(lead) {
                    return Err(Error::NotSolvedForm(format!("{} does not rank below the leader {}", v, lead)));
                }
                if let Some((kj, _)) = map.get(&j) {
                    if l >= *kj {
                        return Err(Error::NotSolvedForm(format!(
                            "right-hand side of {} involves the leader derivative {}",
                            lead, v
                        )));
                    }
                }
            }
        }
        Ok(DiffSystem { n, equations: map, field })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    /// `(i, k_i, g_i)` ordered by index.
    pub fn equations(&self) -> impl Iterator<Item = (u32, u32, &Polynomial)> {
        self.equations.iter().map(|(&i, (k, g))| (i, *k, g))
    }

    pub fn leader_order(&self, i: u32) -> Option<u32> {
        self.equations.get(&i).map(|(k, _)| *k)
    }

    /// Indices without equations.
    pub fn free_indices(&self) -> Vec<u32> {
        (1..=self.n).filter(|i| !self.equations.contains_key(i)).collect()
    }

    /// Largest leader order (0 if there are no equations).
    pub fn max_order(&self) -> u32 {
        self.equations.values().map(|(k, _)| *k).max().unwrap_or(0)
    }

    /// True when `x_i^(j)` is a principal derivative.
    pub fn is_principal(&self, v: Var) -> bool {
        match v.as_derivative() {
            Some((i, j)) => self.leader_order(i).map_or(false, |k| j >= k),
            None => false,
        }
    }

    /// Rewrites `f` so that it involves parametric derivatives only.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut cur = f.clone();
        loop {
            let principal = cur
                .vars()
                .into_iter()
                .filter(|v| self.is_principal(*v))
                .max_by_key(|v| rank(*v));
            let Some(v) = principal else { return cur };
            let (i, j) = v.as_derivative().unwrap();
            let (k, g) = &self.equations[&i];
            let mut rhs = g.clone();
            for _ in *k..j {
                rhs = formal_derivative(&rhs);
            }
            cur = cur.substitute(v, &rhs);
        }
    }

    /// The equations read as differential polynomials `x_i^(k_i) - g_i`.
    pub fn as_polynomials(&self) -> Vec<DiffPolynomial> {
        self.equations
            .iter()
            .map(|(&i, (k, g))| {
                DiffPolynomial::new(self.n, &Polynomial::var(self.field, Var::deriv(i, *k)) - g)
            })
            .collect()
    }
}

/// The x-generators of `V` as a reduced basis, checked proper.
fn proper_basis(v: &Ideal) -> Result<Vec<Polynomial>> {
    let gb = v.reduced_basis()?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal("V is empty".into()));
    }
    Ok(gb.polys().to_vec())
}

fn jet_ambient(v: &Ideal) -> Result<(Vec<Var>, u32)> {
    let mut n = 0;
    for var in v.ambient() {
        match var {
            Var::X(i) => n = n.max(*i),
            other => return Err(Error::ForeignVariable(other.to_string())),
        }
    }
    let mut vars: Vec<Var> = v.ambient().to_vec();
    vars.extend(v.ambient().iter().map(|x| Var::U(x.index())));
    Ok((standard_ambient(vars), n))
}

fn tangent_like(v: &Ideal, twisted: bool) -> Result<Ideal> {
    let basis = proper_basis(v)?;
    let (ambient, _) = jet_ambient(v)?;
    let field = v.field();
    let mut gens = basis.clone();
    for p in &basis {
        let mut q = if twisted {
            p.coefficient_derivation()
        } else {
            Polynomial::zero(field)
        };
        for x in v.ambient() {
            let d = p.partial_derivative(*x);
            q = q + &d * &Polynomial::var(field, Var::U(x.index()));
        }
        gens.push(q);
    }
    Ideal::new(field, ambient, gens)
}

/// `TV`: `V`'s basis together with `Σ ∂P/∂x_i · u_i`.
pub fn tangent_ideal(v: &Ideal) -> Result<Ideal> {
    tangent_like(v, false)
}

/// `T_∂(V)`: `V`'s basis together with `Σ ∂P/∂x_i · u_i + P^∂`.
pub fn prolongation_ideal(v: &Ideal) -> Result<Ideal> {
    tangent_like(v, true)
}

/// Same construction on an arbitrary generating set, without reducing first.
pub fn prolongation_of_generators(field: GroundField, n: u32, gens: &[Polynomial]) -> Result<Ideal> {
    let xs = crate::poly::var::x_vars(n);
    let mut vars = xs.clone();
    vars.extend(crate::poly::var::u_vars(n));
    let mut out = gens.to_vec();
    for p in gens {
        let mut q = p.coefficient_derivation();
        for x in &xs {
            q = q + &p.partial_derivative(*x) * &Polynomial::var(field, Var::U(x.index()));
        }
        out.push(q);
    }
    Ideal::standard(field, vars, out)
}

#[cfg(test)]
mod tests;
