//! Closed points of G_m over F_q: monic irreducibles other than t.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field_arith::poly::{poly_order, Poly};
use crate::field_arith::{make_field, subfield_embed, FFElem, FieldCtx};

/// Above this many candidates the product sieve gives way to Rabin's test.
pub const SIEVE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Place {
    /// Monic, low degree first, coefficients in F_q.
    pub poly: Poly,
    pub degree: u32,
    /// Canonical root in F_{q^d}: the smallest element of its Frobenius orbit.
    pub beta: FFElem,
    /// Image of `beta` in F_{q^a}.
    pub beta_in_a: FFElem,
}

#[derive(Clone, Debug)]
pub struct PlaceSet {
    pub q: u64,
    pub a: u32,
    pub places: Vec<Place>,
    /// n ↦ π_q(n) for n | a.
    pub counts: BTreeMap<u32, u128>,
    pub base: Arc<FieldCtx>,
    pub ambient: Arc<FieldCtx>,
}

impl PlaceSet {
    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn degree_sum(&self) -> u64 {
        self.places.iter().map(|v| v.degree as u64).sum()
    }

    pub fn residue_field(&self, v: &Place) -> Arc<FieldCtx> {
        make_field(self.base.p(), self.base.e(), v.degree).expect("residue field of a place")
    }
}

fn mobius(mut n: u32) -> i32 {
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// π_q(n): monic irreducibles of degree n over F_q, excluding t.
pub fn count_places(q: u64, n: u32) -> u128 {
    assert!(n >= 1);
    let total: i128 = divisors(n)
        .into_iter()
        .map(|d| mobius(d) as i128 * (q as i128).pow(n / d))
        .sum();
    let count = (total / n as i128) as u128;
    if n == 1 {
        count - 1
    } else {
        count
    }
}

/// Minimal polynomial over F_q of an element of F_{q^d}.
pub fn minimal_polynomial(ext: &FieldCtx, beta: FFElem) -> Result<Poly> {
    let base = ext.base();
    let mut conj = vec![beta];
    loop {
        let next = ext.frobenius(*conj.last().unwrap());
        if next == beta {
            break;
        }
        conj.push(next);
    }
    let mut poly = vec![ext.one()];
    for c in conj {
        let neg = ext.neg(c);
        let mut next = vec![ext.zero(); poly.len() + 1];
        for (i, &x) in poly.iter().enumerate() {
            next[i + 1] = ext.add(next[i + 1], x);
            next[i] = ext.add(next[i], ext.mul(x, neg));
        }
        poly = next;
    }
    let coeffs = poly
        .into_iter()
        .map(|c| ext.restrict(c, base.prime_degree()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(base, coeffs))
}

fn decode(base: &Arc<FieldCtx>, d: u32, mut code: u64) -> Vec<FFElem> {
    let q = base.size();
    let mut c = Vec::with_capacity(d as usize + 1);
    for _ in 0..d {
        c.push(base.from_index(code % q).unwrap());
        code /= q;
    }
    c.push(base.one());
    c
}

fn encode(coeffs: &[FFElem], q: u64) -> u64 {
    coeffs[..coeffs.len() - 1]
        .iter()
        .rev()
        .fold(0u64, |acc, c| acc * q + c.index())
}

fn check_cap(q: u64, d: u32, cap: u64) -> Result<u64> {
    let size = (q as u128).checked_pow(d).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCapExceeded {
            what: format!("enumeration of {q}^{d} elements"),
            size,
            cap: cap as u128,
        });
    }
    Ok(size as u64)
}

/// Sorted monic irreducibles of degree d over F_q, excluding t.
pub fn irreducibles(base: &Arc<FieldCtx>, d: u32, cap: u64) -> Result<Vec<Poly>> {
    let q = base.size();
    let total = check_cap(q, d, cap)?;
    let f = base.as_ref();
    let mut out = Vec::new();
    if total <= SIEVE_CAP {
        let mut reducible = vec![false; total as usize];
        for i in 1..=d / 2 {
            let qi = q.pow(i);
            let qj = q.pow(d - i);
            for a in 0..qi {
                let fa = decode(base, i, a);
                for b in 0..qj {
                    let gb = decode(base, d - i, b);
                    let mut h = vec![f.zero(); d as usize + 1];
                    for (x, &u) in fa.iter().enumerate() {
                        if u.is_zero() {
                            continue;
                        }
                        for (y, &w) in gb.iter().enumerate() {
                            h[x + y] = f.add(h[x + y], f.mul(u, w));
                        }
                    }
                    reducible[encode(&h, q) as usize] = true;
                }
            }
        }
        for code in 0..total {
            if !reducible[code as usize] && !(d == 1 && code == 0) {
                out.push(Poly::new(base.clone(), decode(base, d, code)));
            }
        }
    } else {
        let t = Poly::monomial(base.clone(), base.one(), 1);
        let primes: Vec<u32> = divisors(d).into_iter().filter(|&r| r > 1 && divisors(r).len() == 2).collect();
        for code in 0..total {
            let cand = Poly::new(base.clone(), decode(base, d, code));
            if cand.coeffs()[0].is_zero() {
                continue;
            }
            let qd = (q as u128).pow(d);
            if t.powmod(qd, &cand) != t.rem(&cand) {
                continue;
            }
            let ok = primes.iter().all(|&r| {
                let h = t.powmod((q as u128).pow(d / r), &cand).sub(&t);
                cand.gcd(&h).degree() == 0
            });
            if ok {
                out.push(cand);
            }
        }
    }
    out.sort_by(poly_order);
    Ok(out)
}

/// Places of degree d as (poly, canonical root) pairs, sorted.
fn places_of_degree(base: &Arc<FieldCtx>, d: u32) -> Result<Vec<(Poly, FFElem)>> {
    let ext = make_field(base.p(), base.e(), d)?;
    let size = ext.size() as usize;
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for x in ext.elements().skip(1) {
        if seen[x.index() as usize] {
            continue;
        }
        let mut orbit = vec![x];
        loop {
            let y = ext.frobenius(*orbit.last().unwrap());
            if y == x {
                break;
            }
            orbit.push(y);
        }
        for y in &orbit {
            seen[y.index() as usize] = true;
        }
        if orbit.len() == d as usize {
            out.push((minimal_polynomial(&ext, x)?, x));
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    Ok(out)
}

/// All places of degree dividing a, each with its canonical root.
pub fn place_set(base: &Arc<FieldCtx>, a: u32, cap: u64) -> Result<PlaceSet> {
    if base.k() != 1 {
        return Err(Error::InvalidParameter("place_set expects the base field F_q".into()));
    }
    let q = base.size();
    check_cap(q, a, cap)?;
    let ambient = make_field(base.p(), base.e(), a)?;
    let mut places = Vec::new();
    let mut counts = BTreeMap::new();
    for d in divisors(a) {
        let ext = make_field(base.p(), base.e(), d)?;
        let list = places_of_degree(base, d)?;
        counts.insert(d, list.len() as u128);
        for (poly, beta) in list {
            let beta_in_a = subfield_embed(beta, &ext, &ambient)?;
            places.push(Place {
                poly,
                degree: d,
                beta,
                beta_in_a,
            });
        }
    }
    Ok(PlaceSet {
        q,
        a,
        places,
        counts,
        base: base.clone(),
        ambient,
    })
}
