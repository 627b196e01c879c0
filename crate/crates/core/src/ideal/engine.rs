//! Buchberger's algorithm over a dense exponent representation.
//!
//! Polynomials handed to the engine are converted to [`DPoly`]: terms sorted
//! decreasingly under the active order, exponent vectors indexed by position
//! in the ring's variable sequence. All basis elements are kept monic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::time::Instant;

use super::limits::Limits;
use crate::error::{Error, Result};
use crate::poly::{GroundElement, GroundField, Monomial, MonomialOrder, Polynomial, Var};

pub(crate) type Exp = Box<[u16]>;

#[derive(Debug, Clone)]
pub(crate) struct Ring {
    pub vars: Vec<Var>,
    pub field: GroundField,
    index: HashMap<Var, usize>,
}

impl Ring {
    pub fn new(vars: Vec<Var>, field: GroundField) -> Ring {
        let index = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ring { vars, field, index }
    }

    pub fn position(&self, v: Var) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn to_dense(&self, p: &Polynomial, order: MonomialOrder) -> Result<DPoly> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut e = vec![0u16; self.vars.len()];
            for &(v, k) in m.factors() {
                let i = self.position(v).ok_or_else(|| Error::ForeignVariable(v.to_string()))?;
                e[i] = u16::try_from(k).map_err(|_| Error::Invalid("exponent too large".into()))?;
            }
            terms.push((e.into_boxed_slice(), c.clone()));
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(DPoly { terms })
    }

    pub fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            p.terms.iter().map(|(e, c)| {
                let m = Monomial::from_pairs(
                    e.iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (self.vars[i], k as u32)),
                );
                (m, c.clone())
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DPoly {
    pub terms: Vec<(Exp, GroundElement)>,
}

impl DPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Exp {
        &self.terms[0].0
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.invert().expect("nonzero leading coefficient");
                for t in &mut self.terms {
                    t.1 = t.1.mul(&inv);
                }
            }
        }
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(b: &[u16], a: &[u16]) -> Exp {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn shifted(e: &[u16], s: &[u16]) -> Exp {
    e.iter().zip(s).map(|(x, y)| x + y).collect()
}

/// Step and wall-clock accounting for one computation.
pub(crate) struct Budget {
    pub steps: u64,
    limits: Limits,
    start: Instant,
}

impl Budget {
    pub fn new(limits: Limits) -> Budget {
        Budget {
            steps: 0,
            limits,
            start: Instant::now(),
        }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        let over_steps = self.steps > self.limits.max_steps;
        let over_time = self.steps % 128 == 0 && self.start.elapsed() > self.limits.timeout;
        if over_steps || over_time {
            return Err(Error::ResourceLimit {
                steps: self.steps,
                elapsed: self.start.elapsed(),
            });
        }
        Ok(())
    }
}

/// `p[skip..] - c * x^s * g[gskip..]`, both tails sorted decreasingly.
fn sub_scaled_shift(
    p: &[(Exp, GroundElement)],
    c: &GroundElement,
    s: &[u16],
    g: &[(Exp, GroundElement)],
    order: MonomialOrder,
) -> Vec<(Exp, GroundElement)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Exp> = g.first().map(|t| shifted(&t.0, s));
    while i < p.len() || j < g.len() {
        let ord = match (p.get(i), &gj) {
            (Some(a), Some(b)) => order.cmp(&a.0, b),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let coef = g[j].1.mul(c).neg();
                out.push((gj.take().unwrap(), coef));
                j += 1;
                gj = g.get(j).map(|t| shifted(&t.0, s));
            }
            Ordering::Equal => {
                let coef = p[i].1.sub(&g[j].1.mul(c));
                if !coef.is_zero() {
                    out.push((gj.take().unwrap(), coef));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| shifted(&t.0, s));
            }
        }
    }
    out
}

/// Full reduction of `f` by monic `basis`.
pub(crate) fn reduce(f: &DPoly, basis: &[&DPoly], order: MonomialOrder, budget: &mut Budget) -> Result<DPoly> {
    let mut p: Vec<(Exp, GroundElement)> = f.terms.clone();
    let mut rem: Vec<(Exp, GroundElement)> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (lt, lc) = (&p[start].0, &p[start].1);
        let divisor = basis.iter().find(|g| divides(g.lead(), lt));
        match divisor {
            Some(g) => {
                budget.tick()?;
                let s = quotient(lt, g.lead());
                let c = lc.clone();
                let next = sub_scaled_shift(&p[start + 1..], &c, &s, &g.terms[1..], order);
                p = next;
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(DPoly { terms: rem })
}

fn s_polynomial(f: &DPoly, g: &DPoly, order: MonomialOrder) -> DPoly {
    let l = lcm(f.lead(), g.lead());
    let sf = quotient(&l, f.lead());
    let sg = quotient(&l, g.lead());
    let fpart: Vec<(Exp, GroundElement)> = f.terms[1..].iter().map(|(e, c)| (shifted(e, &sf), c.clone())).collect();
    DPoly {
        terms: sub_scaled_shift(&fpart, &GroundElement::one(), &sg, &g.terms[1..], order),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
}

pub(crate) struct BuchbergerOutput {
    pub basis: Vec<DPoly>,
    pub pair_count: u64,
    pub reduction_count: u64,
}

/// Reduced Gröbner basis, monic, sorted by decreasing leading monomial.
pub(crate) fn buchberger(gens: Vec<DPoly>, order: MonomialOrder, limits: Limits) -> Result<BuchbergerOutput> {
    let mut budget = Budget::new(limits);
    let mut polys: Vec<DPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<(Pair, Exp)> = Vec::new();
    let mut pair_count = 0u64;
    let mut reduction_count = 0u64;

    let mut input: Vec<DPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    for g in &mut input {
        g.make_monic();
    }
    input.sort_by(|a, b| order.cmp(a.lead(), b.lead()));

    let insert = |h: DPoly,
                      polys: &mut Vec<DPoly>,
                      active: &mut Vec<bool>,
                      pairs: &mut Vec<(Pair, Exp)>| {
        let k = polys.len();
        let lh = h.lead().clone();
        polys.push(h);
        active.push(true);
        // Gebauer–Möller: new pairs (g, h)
        let cands: Vec<(usize, Exp)> = (0..k)
            .filter(|&g| active[g])
            .map(|g| (g, lcm(polys[g].lead(), &lh)))
            .collect();
        let mut kept: Vec<(usize, Exp)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let cp = coprime(polys[*g].lead(), &lh);
            let dominated = !cp
                && (cands[idx + 1..].iter().any(|(_, l2)| divides(l2, l))
                    || kept.iter().any(|(_, l2)| divides(l2, l)));
            if !dominated {
                kept.push((*g, l.clone()));
            }
        }
        // drop pairs with equal lcm keeping the first, and coprime ones
        let mut fresh: Vec<(Pair, Exp)> = Vec::new();
        for (g, l) in kept {
            if coprime(polys[g].lead(), &lh) {
                continue;
            }
            fresh.push((Pair { i: g, j: k }, l));
        }
        // old pairs made redundant by h
        pairs.retain(|(p, l)| {
            let li = lcm(polys[p.i].lead(), &lh);
            let lj = lcm(polys[p.j].lead(), &lh);
            !(divides(&lh, l) && &li != l && &lj != l)
        });
        pairs.extend(fresh);
        for g in 0..k {
            if active[g] && divides(&lh, polys[g].lead()) {
                active[g] = false;
            }
        }
    };

    for g in input {
        let basis: Vec<&DPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let mut h = reduce(&g, &basis, order, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].1, &pairs[b].1)
                    .then_with(|| (pairs[a].0.j, pairs[a].0.i).cmp(&(pairs[b].0.j, pairs[b].0.i)))
            })
            .unwrap();
        let (pair, _) = pairs.swap_remove(best);
        pair_count += 1;
        budget.tick()?;
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], order);
        let basis: Vec<&DPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let mut h = reduce(&s, &basis, order, &mut budget)?;
        reduction_count += 1;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    let mut basis: Vec<DPoly> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    // inter-reduce tails
    for k in 0..basis.len() {
        let head = basis[k].terms[0].clone();
        let tail = DPoly {
            terms: basis[k].terms[1..].to_vec(),
        };
        let others: Vec<&DPoly> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let red = reduce(&tail, &others, order, &mut budget)?;
        let mut terms = vec![head];
        terms.extend(red.terms);
        basis[k] = DPoly { terms };
    }
    basis.sort_by(|a, b| order.cmp(b.lead(), a.lead()));
    Ok(BuchbergerOutput {
        basis,
        pair_count,
        reduction_count,
    })
}

/// Checks that all S-polynomials of a monic basis reduce to zero.
pub(crate) fn is_groebner(basis: &[DPoly], order: MonomialOrder, limits: Limits) -> Result<bool> {
    let mut budget = Budget::new(limits);
    let refs: Vec<&DPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if coprime(basis[i].lead(), basis[j].lead()) {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce(&s, &refs, order, &mut budget)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
