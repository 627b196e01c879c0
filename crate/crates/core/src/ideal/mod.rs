//! Ideals with cached reduced Gröbner bases, and the predicates built on
//! them: membership, elimination, saturation, equality and dimension.

pub mod audit;
pub(crate) mod engine;
pub mod limits;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};
use std::time::Duration;

use crate::error::{Error, Result};
use crate::poly::{GroundField, MonomialOrder, Polynomial, Var};
use engine::{DPoly, Ring};
pub use limits::Limits;

/// A reduced Gröbner basis together with the dense data needed to reduce
/// against it repeatedly.
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: Ring,
    dense: Vec<DPoly>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn vars(&self) -> &[Var] {
        &self.ring.vars
    }

    /// Normal form; `f` must live in the ambient ring.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let d = self.ring.to_dense(f, self.order)?;
        let refs: Vec<&DPoly> = self.dense.iter().collect();
        let mut budget = engine::Budget::new(Limits::current());
        let r = engine::reduce(&d, &refs, self.order, &mut budget)?;
        Ok(self.ring.to_sparse(&r).with_field(f.field()))
    }

    /// Normal form treating variables outside the ambient ring as free
    /// parameters: reduces each coefficient of `f` viewed as a polynomial in
    /// the foreign variables.
    pub fn reduce_with_parameters(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = &self.ring;
        if f.vars().iter().all(|v| ring.position(*v).is_some()) {
            return self.reduce(f);
        }
        let groups = f.collect_by(|v| ring.position(v).is_none());
        let mut out = Polynomial::zero(f.field());
        for (outer, coeff) in groups {
            let r = self.reduce(&coeff)?;
            out = out + r.mul_monomial(&outer);
        }
        Ok(out)
    }

    /// Leading monomial supports as bitmasks over ring positions.
    fn leading_supports(&self) -> Vec<u64> {
        self.dense
            .iter()
            .map(|p| {
                p.lead()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |m, (i, _)| m | (1 << i))
            })
            .collect()
    }

    /// Checks the Buchberger criterion on this basis.
    pub fn verify(&self) -> Result<bool> {
        engine::is_groebner(&self.dense, self.order, Limits::current())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("vars", &self.ring.vars)
            .field("polys", &self.polys)
            .finish()
    }
}

/// Result of a fresh basis computation.
#[derive(Debug, Clone)]
pub struct GBReport {
    pub basis: Vec<Polynomial>,
    pub pair_count: u64,
    pub reduction_count: u64,
    pub elapsed: Duration,
}

/// Krull dimension with a maximal independent set of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimension {
    pub dim: usize,
    pub independent: Vec<Var>,
}

pub struct Ideal {
    field: GroundField,
    /// Ring variables, most significant first.
    ambient: Vec<Var>,
    generators: Vec<Polynomial>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field,
            ambient: self.ambient.clone(),
            generators: self.generators.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, "> in {:?}", self.ambient)
    }
}

/// Ring variables sorted most significant first: the reverse of the global
/// variable order.
pub fn standard_ambient(vars: impl IntoIterator<Item = Var>) -> Vec<Var> {
    let set: BTreeSet<Var> = vars.into_iter().collect();
    set.into_iter().rev().collect()
}

impl Ideal {
    /// `ambient` lists the ring variables, most significant first.
    pub fn new(field: GroundField, ambient: Vec<Var>, generators: Vec<Polynomial>) -> Result<Ideal> {
        let set: BTreeSet<Var> = ambient.iter().copied().collect();
        if set.len() != ambient.len() {
            return Err(Error::Invalid("repeated ambient variable".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if let Some(v) = g.vars().into_iter().find(|v| !set.contains(v)) {
                return Err(Error::ForeignVariable(v.to_string()));
            }
            if g.field() == GroundField::Qt && field == GroundField::Q {
                return Err(Error::FieldMismatch(field.name(), g.field().name()));
            }
            if !g.is_zero() {
                gens.push(g.with_field(field));
            }
        }
        Ok(Ideal {
            field,
            ambient,
            generators: gens,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Ideal over the standard ambient ordering of `vars`.
    pub fn standard(field: GroundField, vars: impl IntoIterator<Item = Var>, generators: Vec<Polynomial>) -> Result<Ideal> {
        Ideal::new(field, standard_ambient(vars), generators)
    }

    pub fn zero(field: GroundField, ambient: Vec<Var>) -> Ideal {
        Ideal::new(field, ambient, Vec::new()).expect("empty generator list")
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn ambient(&self) -> &[Var] {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Same ideal in a ring with a different variable sequence; `ambient`
    /// must contain every generator variable.
    pub fn with_ambient(&self, ambient: Vec<Var>) -> Result<Ideal> {
        Ideal::new(self.field, ambient, self.generators.clone())
    }

    /// Adds generators.
    pub fn extend(&self, more: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(more);
        Ideal::new(self.field, self.ambient.clone(), gens)
    }

    fn ring(&self) -> Ring {
        Ring::new(self.ambient.clone(), self.field)
    }

    fn compute(&self, order: MonomialOrder) -> Result<(GroebnerBasis, engine::BuchbergerOutput, Duration)> {
        let ring = self.ring();
        let gens = self
            .generators
            .iter()
            .map(|g| ring.to_dense(g, order))
            .collect::<Result<Vec<_>>>()?;
        let start = std::time::Instant::now();
        let out = engine::buchberger(gens, order, Limits::current())?;
        let elapsed = start.elapsed();
        let polys: Vec<Polynomial> = out.basis.iter().map(|p| ring.to_sparse(p)).collect();
        let gb = GroebnerBasis {
            order,
            ring,
            dense: out.basis.clone(),
            polys,
        };
        audit::record(self, &gb);
        Ok((gb, out, elapsed))
    }

    /// Fresh reduced Gröbner basis with statistics.
    pub fn groebner(&self, order: MonomialOrder) -> Result<GBReport> {
        let (gb, out, elapsed) = self.compute(order)?;
        let report = GBReport {
            basis: gb.polys.clone(),
            pair_count: out.pair_count,
            reduction_count: out.reduction_count,
            elapsed,
        };
        self.cache.write().unwrap().entry(order).or_insert_with(|| Arc::new(gb));
        Ok(report)
    }

    /// Cached reduced Gröbner basis.
    pub fn basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().unwrap().get(&order) {
            return Ok(gb.clone());
        }
        let (gb, _, _) = self.compute(order)?;
        let mut cache = self.cache.write().unwrap();
        Ok(cache.entry(order).or_insert_with(|| Arc::new(gb)).clone())
    }

    /// The canonical basis: reduced, grevlex over the ambient sequence.
    pub fn reduced_basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.basis(MonomialOrder::Grevlex)
    }

    pub fn normal_form(&self, f: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        self.basis(order)?.reduce(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduced_basis()?.reduce(f)?.is_zero())
    }

    pub fn contains_all<'a>(&self, fs: impl IntoIterator<Item = &'a Polynomial>) -> Result<bool> {
        let gb = self.reduced_basis()?;
        for f in fs {
            if !gb.reduce(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.reduced_basis()?.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// `I ∩ k[keep]`, computed with a block order eliminating the complement.
    pub fn elimination_ideal(&self, keep: &[Var]) -> Result<Ideal> {
        let keep_set: BTreeSet<Var> = keep.iter().copied().collect();
        if let Some(v) = keep.iter().find(|v| !self.ambient.contains(v)) {
            return Err(Error::ForeignVariable(v.to_string()));
        }
        let drop: Vec<Var> = self.ambient.iter().copied().filter(|v| !keep_set.contains(v)).collect();
        let kept: Vec<Var> = self.ambient.iter().copied().filter(|v| keep_set.contains(v)).collect();
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let mut seq = drop.clone();
        seq.extend(kept.iter().copied());
        let tmp = Ideal::new(self.field, seq, self.generators.clone())?;
        let gb = tmp.basis(MonomialOrder::Block(drop.len()))?;
        let survivors: Vec<Polynomial> = gb
            .polys()
            .iter()
            .filter(|p| p.vars().iter().all(|v| keep_set.contains(v)))
            .cloned()
            .collect();
        let out = Ideal::new(self.field, kept, survivors.clone())?;
        // The surviving elements are the reduced grevlex basis of the result.
        let ring = out.ring();
        let dense = survivors
            .iter()
            .map(|p| ring.to_dense(p, MonomialOrder::Grevlex))
            .collect::<Result<Vec<_>>>()?;
        out.cache.write().unwrap().insert(
            MonomialOrder::Grevlex,
            Arc::new(GroebnerBasis {
                order: MonomialOrder::Grevlex,
                ring,
                dense,
                polys: survivors,
            }),
        );
        Ok(out)
    }

    /// `I : f^∞` via an adjoined inverse variable.
    pub fn saturation(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Invalid("saturation by zero".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let aux = (0..)
            .map(Var::Aux)
            .find(|v| !self.ambient.contains(v))
            .unwrap();
        let mut seq = vec![aux];
        seq.extend(self.ambient.iter().copied());
        let y = Polynomial::var(self.field, aux);
        let mut gens = self.generators.clone();
        gens.push(&Polynomial::one(self.field) - &(&y * f));
        let tmp = Ideal::new(self.field, seq, gens)?;
        tmp.elimination_ideal(&self.ambient)
    }

    /// Krull dimension from the leading terms of the grevlex basis.
    pub fn krull_dimension(&self) -> Result<usize> {
        let gb = self.reduced_basis()?;
        if gb.is_unit() {
            return Err(Error::UnitIdeal("dimension of the unit ideal".into()));
        }
        Ok(max_independent(&gb.leading_supports(), self.ambient.len()).count_ones() as usize)
    }

    /// Dimension and a maximal independent set. The set is read off the lex
    /// basis and prefers the least significant variables.
    pub fn dimension(&self) -> Result<Dimension> {
        let dim = self.krull_dimension()?;
        let gb = self.basis(MonomialOrder::Lex)?;
        let mask = max_independent(&gb.leading_supports(), self.ambient.len());
        debug_assert_eq!(mask.count_ones() as usize, dim);
        let mut independent: Vec<Var> = (0..self.ambient.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.ambient[i])
            .collect();
        independent.sort();
        Ok(Dimension { dim, independent })
    }

    /// Equality as ideals, by comparing reduced grevlex bases over the union
    /// of both ambient rings.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        let mut vars: BTreeSet<Var> = self.ambient.iter().copied().collect();
        vars.extend(other.ambient.iter().copied());
        let (a, b) = if vars.len() == self.ambient.len() && self.ambient == other.ambient {
            (self.clone(), other.clone())
        } else {
            let amb = standard_ambient(vars);
            (self.with_ambient(amb.clone())?, other.with_ambient(amb)?)
        };
        let ga = a.reduced_basis()?;
        let gb = b.reduced_basis()?;
        Ok(ga.polys() == gb.polys())
    }
}

/// Largest set of positions containing no leading support; ties prefer
/// higher positions.
fn max_independent(supports: &[u64], n: usize) -> u64 {
    fn ok(supports: &[u64], s: u64) -> bool {
        supports.iter().all(|&m| m & !s != 0)
    }
    fn dfs(supports: &[u64], pos: isize, cur: u64, best: &mut u64) {
        let size = cur.count_ones();
        if size > best.count_ones() {
            *best = cur;
        }
        if pos < 0 || size + (pos as u32 + 1) <= best.count_ones() {
            return;
        }
        let bit = 1u64 << pos;
        if ok(supports, cur | bit) {
            dfs(supports, pos - 1, cur | bit, best);
        }
        dfs(supports, pos - 1, cur, best);
    }
    assert!(n <= 64, "too many variables for dimension computation");
    let mut best = 0u64;
    dfs(supports, n as isize - 1, 0, &mut best);
    best
}
