//! Univariate factorization over Q: squarefree decomposition, factoring
//! modulo a small prime, Hensel lifting and factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::UPoly;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &[BigInt]) -> isize {
    p.len() as isize - 1
}

/// Primitive integer polynomial with positive leading coefficient, plus the
/// rational factor removed.
fn to_primitive(f: &UPoly) -> ZPoly {
    let coeffs = f.coeffs();
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = coeffs.iter().map(|c| (c * BigRational::from(l.clone())).to_integer()).collect();
    primitive(trim(ints))
}

fn primitive(p: ZPoly) -> ZPoly {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return p;
    }
    let sign = if p.last().map_or(false, |c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    p.into_iter().map(|c| c / &g * &sign).collect()
}

fn to_upoly(p: &[BigInt]) -> UPoly {
    UPoly::from_coeffs(p.iter().map(|c| BigRational::from(c.clone())).collect())
}

// Arithmetic modulo m. Coefficients are kept in [0, m).

fn md(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn pmod(p: &[BigInt], m: &BigInt) -> ZPoly {
    trim(p.iter().map(|c| md(c, m)).collect())
}

fn padd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| md(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)), m)).collect())
}

fn psub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| md(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)), m)).collect())
}

fn pmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    pmod(&out, m)
}

fn pscale(a: &[BigInt], c: &BigInt, m: &BigInt) -> ZPoly {
    pmod(&a.iter().map(|x| x * c).collect::<Vec<_>>(), m)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = md(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(md(&e.x, m))
    } else {
        None
    }
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
fn pdivrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let inv = inv_mod(b.last().unwrap(), m).expect("unit leading coefficient");
    let mut r = pmod(a, m);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = md(&(r.last().unwrap() * &inv), m);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = md(&(&r[shift + i] - &c * bi), m);
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn pmonic(a: &[BigInt], m: &BigInt) -> ZPoly {
    let inv = inv_mod(a.last().unwrap(), m).unwrap();
    pscale(a, &inv, m)
}

fn pgcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ZPoly {
    let (mut a, mut b) = (pmod(a, p), pmod(b, p));
    while !b.is_empty() {
        let (_, r) = pdivrem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        pmonic(&a, p)
    }
}

/// `s, t` with `s*a + t*b = 1 (mod p)` for coprime `a, b`.
fn pxgcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (ZPoly, ZPoly) {
    let (mut r0, mut r1) = (pmod(a, p), pmod(b, p));
    let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(&r0[0], p).expect("coprime inputs");
    (pscale(&s0, &inv, p), pscale(&t0, &inv, p))
}

fn ppowmod(base: &[BigInt], mut e: BigInt, f: &[BigInt], p: &BigInt) -> ZPoly {
    let mut result = vec![BigInt::one()];
    let mut b = pdivrem(base, f, p).1;
    while !e.is_zero() {
        if e.is_odd() {
            result = pdivrem(&pmul(&result, &b, p), f, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    result
}

fn derivative(f: &[BigInt]) -> ZPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Factors a monic squarefree polynomial over F_p (p odd).
fn factor_mod_p(f: &[BigInt], p: &BigInt, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut d = 1usize;
    while deg(&rest) >= 2 * d as isize {
        h = ppowmod(&h, p.clone(), &rest, p);
        let g = pgcd(&psub(&h, &x, p), &rest, p);
        if deg(&g) > 0 {
            out.extend(equal_degree(&g, d, p, rng));
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if deg(&rest) > 0 {
        out.push(pmonic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree(f: &[BigInt], d: usize, p: &BigInt, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = deg(f) as usize;
    if n == d {
        return vec![pmonic(f, p)];
    }
    let e = (p.pow(d as u32) - 1u32) / 2u32;
    let bound = p.to_u64_digits().1.first().copied().unwrap_or(0).max(2);
    loop {
        let a: ZPoly = trim((0..n).map(|_| BigInt::from(rng.gen_range(0..bound))).collect());
        if deg(&a) < 1 {
            continue;
        }
        let b = psub(&ppowmod(&a, e.clone(), f, p), &[BigInt::one()], p);
        let g = pgcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let other = pdivrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Lifts `f = lc * g * h (mod p)` to modulus `p^k`. `g` is monic.
fn hensel_pair(f: &[BigInt], g: &[BigInt], h: &[BigInt], p: &BigInt, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = pxgcd(g, h, p);
    let (mut g, mut h) = (g.to_vec(), h.to_vec());
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * p;
        let diff = psub(f, &pmul(&g, &h, &next), &next);
        let e: ZPoly = trim(diff.iter().map(|c| md(&(c / &pj), p)).collect());
        let (q, r) = pdivrem(&pmul(&t, &e, p), &g, p);
        let hh = padd(&pmul(&s, &e, p), &pmul(&q, &h, p), p);
        g = padd(&g, &pscale(&r, &pj, &next), &next);
        h = padd(&h, &pscale(&hh, &pj, &next), &next);
        pj = next;
    }
    (g, h)
}

/// Lifts all modular factors of `f` (leading coefficient absorbed into the
/// cofactor at each split).
fn hensel_all(f: &[BigInt], factors: &[ZPoly], p: &BigInt, k: u32) -> Vec<ZPoly> {
    let pk = p.pow(k);
    let mut out = Vec::new();
    let mut rest = pmod(f, &pk);
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(pmonic(&rest, &pk));
            break;
        }
        let h = factors[i + 1..].iter().fold(vec![md(f.last().unwrap(), p)], |acc, q| pmul(&acc, q, p));
        let (gl, hl) = hensel_pair(&rest, g, &h, p, k);
        out.push(gl);
        rest = hl;
    }
    out
}

fn symmetric(p: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2u32;
    trim(p.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect())
}

fn divides_exactly(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = to_upoly(f).div_rem(&to_upoly(g));
    if !r.is_zero() {
        return None;
    }
    let coeffs = q.coeffs();
    if coeffs.iter().all(|c| c.is_integer()) {
        Some(coeffs.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

const PRIMES: [u32; 20] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73];

/// Irreducible factors of a primitive squarefree integer polynomial.
fn zassenhaus(f: ZPoly, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = deg(&f);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let df = derivative(&f);
    let p = PRIMES
        .iter()
        .map(|&p| BigInt::from(p))
        .find(|p| !(&lc % p).is_zero() && deg(&pgcd(&f, &df, p)) == 0)
        .expect("a prime keeping f squarefree");
    let monic = pmonic(&pmod(&f, &p), &p);
    let modular = factor_mod_p(&monic, &p, rng);
    if modular.len() == 1 {
        return vec![f];
    }
    // Coefficient bound for factors of lc * f.
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2u32) * lc.abs() * norm * (BigInt::one() << n as usize);
    let mut k = 1;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let mut lifted = hensel_all(&f, &modular, &p, k);
    let mut rest = f;
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), s) {
            let lcr = rest.last().unwrap().clone();
            let g = subset.iter().fold(vec![lcr.clone()], |acc, &i| pmul(&acc, &lifted[i], &pk));
            let g = primitive(symmetric(&g, &pk));
            if let Some(q) = divides_exactly(&rest, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                rest = primitive(q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, q)| q)
                    .collect();
            }
            None => s += 1,
        }
    }
    found.push(rest);
    found
}

/// Squarefree decomposition `f = Π a_i^i` (Yun), on primitive parts.
fn squarefree(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_rem(&a0).0;
    let mut c = d.div_rem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().map_or(false, |n| n > 0) {
        let a = b.gcd(&dd);
        b = b.div_rem(&a).0;
        c = dd.div_rem(&a).0;
        dd = c.sub(&b.derivative());
        if a.degree().map_or(false, |n| n > 0) {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factorization over Q into primitive integer irreducibles with
/// multiplicities, sorted. Constants are dropped.
pub fn factor(f: &UPoly, seed: u64) -> Vec<(UPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, e) in squarefree(f) {
        for g in zassenhaus(to_primitive(&part), &mut rng) {
            out.push((to_upoly(&g), e));
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// True iff `f` has positive degree and no nontrivial factorization over Q.
pub fn is_irreducible(f: &UPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let fs = factor(f, 0);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}
