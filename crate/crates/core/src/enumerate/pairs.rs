//! Canonical, resumable listing of good pairs over Q built from constructed
//! families in stacked coordinates.

use std::collections::BTreeMap;

use log::{debug, warn};
use num_traits::ToPrimitive;

use super::{monomials, polys_with};
use crate::error::{Error, Result};
use crate::generic::DeltaGenericType;
use crate::ideal::{GroebnerBasis, Ideal};
use crate::io::print::poly_to_string;
use crate::io::{ManifestPrimality, PairManifest};
use crate::pair::irreducible::{certify_irreducible, Irreducibility};
use crate::pair::{check_good_pair, CheckOptions, Family, GoodPair, Primality, VarietyPresentation};
use crate::poly::var::x_vars;
use crate::poly::{GroundField, Polynomial, Var};

const Q: GroundField = GroundField::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub n: u32,
    pub r_max: u32,
    pub deg_max: u32,
    pub height_max: u32,
    pub count: usize,
}

impl EnumerationBounds {
    pub fn new(n: u32, r_max: u32, deg_max: u32, height_max: u32, count: usize) -> Result<Self> {
        if n == 0 || r_max == 0 || deg_max == 0 || height_max == 0 {
            return Err(Error::Invalid("enumeration bounds must be positive".into()));
        }
        Ok(EnumerationBounds { n, r_max, deg_max, height_max, count })
    }
}

/// `(height, degree)`, each at least 1; cells are visited in lexicographic order.
pub type Cell = (u32, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    pub ordinal: usize,
    pub cell: Cell,
}

/// A construction recipe, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub blocks: u32,
    pub v: Vec<Polynomial>,
    pub v_family: Family,
    /// Fibre relations of the last block (identifications are implied).
    pub relations: Vec<Polynomial>,
    pub w_family: Family,
    pub cell: Cell,
    pub encoding: String,
}

impl Candidate {
    fn new(blocks: u32, v: Vec<Polynomial>, relations: Vec<Polynomial>, m: usize) -> Candidate {
        let all = v.iter().chain(&relations);
        let height = all.clone().map(|p| p.height().to_u32().unwrap_or(u32::MAX)).max().unwrap_or(0);
        let degree = all.map(|p| p.total_degree()).max().unwrap_or(0);
        let encoding = format!(
            "r{};V[{}];W[{}]",
            blocks,
            v.iter().map(poly_to_string).collect::<Vec<_>>().join(","),
            relations.iter().map(poly_to_string).collect::<Vec<_>>().join(",")
        );
        Candidate {
            blocks,
            v_family: if v.is_empty() { Family::Affine } else { Family::Hypersurface },
            w_family: if m == 0 { Family::Graph } else { Family::Bundle },
            v,
            relations,
            cell: (height.max(1), degree.max(1)),
            encoding,
        }
    }

    fn sort_key(&self) -> (usize, &str) {
        (self.encoding.len(), self.encoding.as_str())
    }

    /// `V`'s generators, the block identifications and the fibre relations.
    pub fn w_generators(&self, n: u32) -> Vec<Polynomial> {
        let mut gens = self.v.clone();
        for j in 0..self.blocks - 1 {
            for i in 1..=n {
                gens.push(&Polynomial::var(Q, Var::U(j * n + i)) - &Polynomial::var(Q, Var::X((j + 1) * n + i)));
            }
        }
        gens.extend(self.relations.iter().cloned());
        gens
    }

    pub fn presentations(&self, n: u32) -> Result<(VarietyPresentation, VarietyPresentation)> {
        let big = n * self.blocks;
        let v = VarietyPresentation::base(Q, big, self.v.clone(), Primality::Constructed(self.v_family))?;
        let w = VarietyPresentation::total(Q, big, self.w_generators(n), Primality::Constructed(self.w_family))?;
        Ok((v, w))
    }
}

#[derive(Debug, Clone)]
pub struct Emission {
    pub index: PairIndex,
    pub candidate: Candidate,
    pub pair: GoodPair,
}

impl Emission {
    pub fn manifest(&self) -> PairManifest {
        let mut m = PairManifest::from_pair(&self.pair);
        m.primality = ManifestPrimality::Constructed { v: self.candidate.v_family, w: self.candidate.w_family };
        m.blocks = Some(self.candidate.blocks);
        m.meta = vec![
            ("index".into(), self.index.ordinal.to_string()),
            ("cell".into(), format!("{},{}", self.index.cell.0, self.index.cell.1)),
            ("recipe".into(), self.candidate.encoding.clone()),
            ("families".into(), "affine|hypersurface base, graph|bundle total space".into()),
        ];
        m
    }

    pub fn ledger_line(&self) -> String {
        format!(
            "emit\t{}\t{},{}\t{}",
            self.index.ordinal, self.index.cell.0, self.index.cell.1, self.candidate.encoding
        )
    }
}

/// Everything the enumerator reports, in stream order.
#[derive(Debug, Clone)]
pub enum Event {
    Emit(Box<Emission>),
    /// A valid candidate equivalent to an earlier emission.
    Merge { into: usize, encoding: String },
}

impl Event {
    pub fn ledger_line(&self) -> String {
        match self {
            Event::Emit(e) => e.ledger_line(),
            Event::Merge { into, encoding } => format!("merge\t{}\t{}", into, encoding),
        }
    }
}

/// Monic irreducible hypersurfaces in `x1..xN` within the bounds.
fn hypersurfaces(vars: &[Var], deg: u32, height: u32) -> Vec<Polynomial> {
    let mons = monomials(vars, deg);
    polys_with(Q, &mons, height)
        .into_iter()
        .filter(|p| {
            !p.is_constant()
                && p.leading_print().map_or(false, |(_, c)| c.is_one())
                && certify_irreducible(p, 0) == Irreducibility::Irreducible
        })
        .collect()
}

fn subsets(n: u32) -> Vec<Vec<u32>> {
    (0..1u32 << n).map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

/// Every recipe within the bounds, grouped by cell and sorted inside each.
pub fn candidates(bounds: &EnumerationBounds) -> Result<BTreeMap<Cell, Vec<Candidate>>> {
    let n = bounds.n;
    let (d, h) = (bounds.deg_max, bounds.height_max);
    let mut cells: BTreeMap<Cell, Vec<Candidate>> = BTreeMap::new();
    for r in 1..=bounds.r_max {
        let big = n * r;
        let xs = x_vars(big);
        let mut bases: Vec<Vec<Polynomial>> = vec![Vec::new()];
        bases.extend(hypersurfaces(&xs, d, h).into_iter().map(|p| vec![p]));
        let full = polys_with(Q, &monomials(&xs, d), h);
        let lower = polys_with(Q, &monomials(&xs, d - 1), h);
        for v in bases {
            let vi = Ideal::standard(Q, xs.clone(), v.clone())?;
            let vb = vi.reduced_basis()?;
            let normal = |ps: &[Polynomial], gb: &GroebnerBasis| -> Result<Vec<Polynomial>> {
                let mut out = Vec::new();
                for p in ps {
                    if gb.reduce(p)? == *p {
                        out.push(p.clone());
                    }
                }
                Ok(out)
            };
            let s0s = normal(&full, &vb)?;
            let sjs = normal(&lower, &vb)?;
            for basis in subsets(n) {
                let targets: Vec<u32> = (1..=n).filter(|i| !basis.contains(i)).collect();
                let last = |i: u32| (r - 1) * n + i;
                // One form per target: s0 + Σ s_b u_b.
                let mut forms: Vec<Polynomial> = Vec::new();
                let mut stack: Vec<(Vec<Polynomial>, usize)> = vec![(Vec::new(), 0)];
                let per_form = 1 + basis.len();
                while let Some((chosen, k)) = stack.pop() {
                    if k == per_form {
                        let mut f = chosen[0].clone();
                        for (j, b) in basis.iter().enumerate() {
                            f = f + &chosen[j + 1] * &Polynomial::var(Q, Var::U(last(*b)));
                        }
                        forms.push(f);
                        continue;
                    }
                    let pool = if k == 0 { &s0s } else { &sjs };
                    for s in pool {
                        let mut c = chosen.clone();
                        c.push(s.clone());
                        stack.push((c, k + 1));
                    }
                }
                let mut choice = vec![0usize; targets.len()];
                loop {
                    let relations: Vec<Polynomial> = targets
                        .iter()
                        .zip(&choice)
                        .map(|(i, &c)| &Polynomial::var(Q, Var::U(last(*i))) - &forms[c])
                        .collect();
                    let cand = Candidate::new(r, v.clone(), relations, basis.len());
                    if cand.cell.0 <= h && cand.cell.1 <= d {
                        cells.entry(cand.cell).or_default().push(cand);
                    }
                    // Odometer over the targets' forms.
                    let mut pos = 0;
                    loop {
                        if pos == choice.len() {
                            break;
                        }
                        choice[pos] += 1;
                        if choice[pos] < forms.len() {
                            break;
                        }
                        choice[pos] = 0;
                        pos += 1;
                    }
                    if pos == choice.len() {
                        break;
                    }
                }
            }
        }
    }
    for list in cells.values_mut() {
        list.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        list.dedup();
    }
    Ok(cells)
}

/// Relations among `x_i^(j)`, `i ≤ n`, `j ≤ k`, at the generic point of the
/// pair's type, in the jet variables.
pub fn jet_ideal(pair: &GoodPair, n: u32, k: u32) -> Result<Ideal> {
    let field = pair.field();
    let tower = DeltaGenericType::new(pair.clone())?;
    let jet = |i: u32, j: u32| Var::D { index: i, order: j + 1 };
    let mut gens: Vec<Polynomial> = pair.w.ideal.reduced_basis()?.polys().to_vec();
    let mut vars: Vec<Var> = pair.w.ideal.ambient().to_vec();
    let mut product = Polynomial::one(field);
    for j in 0..=k {
        for i in 1..=n {
            let (num, den) = tower.expression(i, j)?;
            for v in num.vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.push(jet(i, j));
            gens.push(&(&Polynomial::var(field, jet(i, j)) * &den) - &num);
            if !den.is_constant() {
                product = &product * &den;
            }
        }
    }
    let ideal = Ideal::standard(field, vars, gens)?;
    let ideal = if product.is_constant() { ideal } else { ideal.saturation(&product)? };
    let keep: Vec<Var> = (0..=k).flat_map(|j| (1..=n).map(move |i| jet(i, j))).collect();
    let elim = ideal.elimination_ideal(&keep)?;
    let back = |v: Var| match v {
        Var::D { index, order } => Var::deriv(index, order - 1),
        other => other,
    };
    let gens: Vec<Polynomial> = elim.reduced_basis()?.polys().iter().map(|g| g.rename(back)).collect();
    Ideal::standard(field, (0..=k).flat_map(|j| (1..=n).map(move |i| Var::deriv(i, j))), gens)
}

struct Seen {
    blocks: u32,
    w: Vec<Polynomial>,
    pair: GoodPair,
    jets: BTreeMap<u32, Ideal>,
}

/// The deterministic stream of emissions and merges.
pub struct PairEnumerator {
    bounds: EnumerationBounds,
    opts: CheckOptions,
    queue: std::vec::IntoIter<Candidate>,
    emitted: Vec<Seen>,
}

impl PairEnumerator {
    pub fn new(bounds: EnumerationBounds) -> Result<PairEnumerator> {
        let all: Vec<Candidate> = candidates(&bounds)?.into_values().flatten().collect();
        debug!("enumerate: {} candidates", all.len());
        Ok(PairEnumerator { bounds, opts: CheckOptions::default(), queue: all.into_iter(), emitted: Vec::new() })
    }

    /// Continues a stream whose ledger so far is `ledger`; `bounds.count`
    /// further pairs are emitted.
    pub fn resume(bounds: EnumerationBounds, ledger: &str) -> Result<PairEnumerator> {
        let mut e = PairEnumerator::new(bounds)?;
        for (k, line) in ledger.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split('\t').collect();
            let (emit, encoding) = match fields.as_slice() {
                ["emit", _, _, enc] => (true, *enc),
                ["merge", _, enc] => (false, *enc),
                _ => return Err(Error::Invalid(format!("ledger line {}: unrecognized entry", k + 1))),
            };
            let cand = loop {
                match e.queue.next() {
                    Some(c) if c.encoding == encoding => break c,
                    Some(_) => continue,
                    None => {
                        return Err(Error::Invalid(format!(
                            "ledger line {}: {} is not a candidate under these bounds",
                            k + 1,
                            encoding
                        )))
                    }
                }
            };
            if emit {
                let (v, w) = cand.presentations(e.bounds.n)?;
                let pair = check_good_pair(v, w, &e.opts)?;
                let w_basis = pair.w.ideal.reduced_basis()?.polys().to_vec();
                e.emitted.push(Seen { blocks: cand.blocks, w: w_basis, pair, jets: BTreeMap::new() });
            }
        }
        e.bounds.count += e.emitted.len();
        Ok(e)
    }

    pub fn emitted(&self) -> usize {
        self.emitted.len()
    }

    fn jets(&mut self, idx: usize, k: u32) -> Result<Ideal> {
        if let Some(j) = self.emitted[idx].jets.get(&k) {
            return Ok(j.clone());
        }
        let j = jet_ideal(&self.emitted[idx].pair, self.bounds.n, k)?;
        self.emitted[idx].jets.insert(k, j.clone());
        Ok(j)
    }

    /// Index of an earlier emission equivalent to `pair`: same total space
    /// when the block counts agree, else equal jet ideals up to order
    /// `max(r, r') + 1`.
    fn duplicate_of(&mut self, blocks: u32, w: &[Polynomial], pair: &GoodPair) -> Result<Option<usize>> {
        let mut mine: BTreeMap<u32, Ideal> = BTreeMap::new();
        for idx in 0..self.emitted.len() {
            let other = self.emitted[idx].blocks;
            if other == blocks {
                if self.emitted[idx].w == w {
                    return Ok(Some(idx));
                }
                continue;
            }
            let k = other.max(blocks) + 1;
            if let std::collections::btree_map::Entry::Vacant(e) = mine.entry(k) {
                e.insert(jet_ideal(pair, self.bounds.n, k)?);
            }
            let theirs = self.jets(idx, k)?;
            if theirs.equals(&mine[&k])? {
                return Ok(Some(idx));
            }
        }
        Ok(None)
    }

    pub fn next_event(&mut self) -> Result<Option<Event>> {
        if self.emitted.len() >= self.bounds.count {
            return Ok(None);
        }
        while let Some(cand) = self.queue.next() {
            let (v, w) = cand.presentations(self.bounds.n)?;
            let pair = match check_good_pair(v, w, &self.opts) {
                Ok(p) => p,
                Err(e @ Error::ResourceLimit { .. }) => {
                    warn!("skipping {}: {}", cand.encoding, e);
                    continue;
                }
                Err(e) => {
                    debug!("rejected {}: {}", cand.encoding, e);
                    continue;
                }
            };
            let w_basis = pair.w.ideal.reduced_basis()?.polys().to_vec();
            match self.duplicate_of(cand.blocks, &w_basis, &pair) {
                Ok(Some(into)) => return Ok(Some(Event::Merge { into, encoding: cand.encoding })),
                Ok(None) => {}
                Err(e @ Error::ResourceLimit { .. }) => {
                    warn!("skipping {}: {}", cand.encoding, e);
                    continue;
                }
                Err(e) => return Err(e),
            }
            let index = PairIndex { ordinal: self.emitted.len(), cell: cand.cell };
            self.emitted.push(Seen { blocks: cand.blocks, w: w_basis, pair: pair.clone(), jets: BTreeMap::new() });
            return Ok(Some(Event::Emit(Box::new(Emission { index, candidate: cand, pair }))));
        }
        Ok(None)
    }
}

impl Iterator for PairEnumerator {
    type Item = Result<Emission>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match self.next_event() {
                Ok(Some(Event::Emit(e))) => return Some(Ok(*e)),
                Ok(Some(Event::Merge { .. })) => continue,
                Ok(None) => return None,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// The emissions in order, up to `bounds.count`.
pub fn enumerate_pairs(bounds: EnumerationBounds) -> Result<Vec<Emission>> {
    PairEnumerator::new(bounds)?.collect()
}

/// Re-materializes the `i`-th pair under `bounds` (ignoring `bounds.count`).
pub fn pair_at(bounds: EnumerationBounds, i: usize) -> Result<Emission> {
    let b = EnumerationBounds { count: i + 1, ..bounds };
    PairEnumerator::new(b)?
        .nth(i)
        .unwrap_or_else(|| Err(Error::Invalid(format!("only fewer than {} pairs exist within the bounds", i + 1))))
}
