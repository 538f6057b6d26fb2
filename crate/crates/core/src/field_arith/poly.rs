//! Dense univariate polynomials over a field context, low degree first.

use std::sync::Arc;

use rand::Rng;

use super::{FFElem, FieldCtx};

#[derive(Clone)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FFElem>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<u64> = self.coeffs.iter().map(|c| c.index()).collect();
        write!(f, "Poly{c:?}")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<FFElem>) -> Poly {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ctx.zero());
        }
        Poly { ctx, coeffs }
    }

    pub fn constant(ctx: Arc<FieldCtx>, c: FFElem) -> Poly {
        Poly::new(ctx, vec![c])
    }

    /// The monomial c·t^n.
    pub fn monomial(ctx: Arc<FieldCtx>, c: FFElem, n: usize) -> Poly {
        let mut v = vec![ctx.zero(); n + 1];
        v[n] = c;
        Poly::new(ctx, v)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lead(&self) -> FFElem {
        *self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == self.ctx.one()
    }

    pub fn eval(&self, x: FFElem) -> FFElem {
        let f = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate at an element of a larger field containing the coefficients.
    pub fn eval_in(&self, target: &FieldCtx, x: FFElem) -> FFElem {
        self.coeffs.iter().rev().fold(target.zero(), |acc, &c| {
            let ce = super::subfield_embed(c, &self.ctx, target).expect("coefficient field embeds");
            target.add(target.mul(acc, x), ce)
        })
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.ctx;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = o.coeffs.get(i).copied().unwrap_or_default();
                f.add(a, b)
            })
            .collect();
        Poly::new(f.clone(), v)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.ctx;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: FFElem) -> Poly {
        let f = &self.ctx;
        Poly::new(f.clone(), self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let f = &self.ctx;
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f.clone(), v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut r = Poly::constant(self.ctx.clone(), self.ctx.one());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn monic(&self) -> Poly {
        let inv = self.ctx.inv(self.lead()).expect("nonzero polynomial");
        self.scale(inv)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.ctx;
        let dn = d.degree();
        if self.degree() < dn || self.is_zero() {
            return (Poly::constant(f.clone(), f.zero()), self.clone());
        }
        let inv = f.inv(d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); self.degree() - dn + 1];
        for i in (dn..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            q[i - dn] = c;
            for j in 0..=dn {
                r[i - dn + j] = f.sub(r[i - dn + j], f.mul(c, d.coeffs[j]));
            }
        }
        r.truncate(dn.max(1));
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.ctx;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), v)
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut r = Poly::constant(self.ctx.clone(), self.ctx.one()).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        r
    }

    /// Number of times `d` divides self, and the cofactor.
    pub fn valuation(&self, d: &Poly) -> (u32, Poly) {
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d);
            if !r.is_zero() || cur.is_zero() {
                return (v, cur);
            }
            v += 1;
            cur = q;
        }
    }

    /// Monic irreducible factors of a squarefree monic polynomial, sorted by
    /// (degree, coefficients from the top).
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<Poly> {
        let f = &self.ctx;
        let q = f.size() as u128;
        let t = Poly::monomial(f.clone(), f.one(), 1);
        let mut out = Vec::new();
        let mut rest = self.monic();
        let mut h = t.clone();
        let mut d = 1usize;
        while rest.degree() >= 2 * d {
            h = h.powmod(q, &rest);
            let g = rest.gcd(&h.sub(&t));
            if g.degree() > 0 {
                out.extend(equal_degree_split(&g, d, rng));
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
            }
            d += 1;
        }
        if rest.degree() > 0 {
            out.push(rest.monic());
        }
        out.sort_by(poly_order);
        out
    }
}

/// Order on polynomials: degree, then coefficients from the top.
pub fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-d irreducibles.
fn equal_degree_split<R: Rng>(g: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    if g.degree() == d {
        return vec![g.monic()];
    }
    let f = g.ctx();
    let q = f.size() as u128;
    let exponent = (q.pow(d as u32) - 1) / 2;
    loop {
        let r: Vec<FFElem> = (0..g.degree())
            .map(|_| f.from_index(rng.gen_range(0..f.size())).unwrap())
            .collect();
        let r = Poly::new(f.clone(), r);
        if r.degree() == 0 {
            continue;
        }
        let s = r.powmod(exponent, g).sub(&Poly::constant(f.clone(), f.one()));
        let h = g.gcd(&s);
        if h.degree() > 0 && h.degree() < g.degree() {
            let mut a = equal_degree_split(&h, d, rng);
            a.extend(equal_degree_split(&g.divrem(&h).0, d, rng));
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_arith::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(ctx: &Arc<FieldCtx>, c: &[u64]) -> Poly {
        Poly::new(ctx.clone(), c.iter().map(|&i| ctx.from_index(i).unwrap()).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = make_field(5, 1, 1).unwrap();
        let a = p(&f, &[1, 2, 3, 4, 1, 2]);
        let b = p(&f, &[3, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn t3_minus_t_over_f3_splits_into_linears() {
        let f = make_field(3, 1, 1).unwrap();
        let wp = p(&f, &[0, 2, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fac = wp.factor_squarefree(&mut rng);
        assert_eq!(fac, vec![p(&f, &[0, 1]), p(&f, &[1, 1]), p(&f, &[2, 1])]);
    }

    #[test]
    fn factoring_recovers_product() {
        let f = make_field(3, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = p(&f, &[1, 1]);
        let b = p(&f, &[3, 0, 1]);
        let c = p(&f, &[5, 1, 0, 1]);
        let prod = a.mul(&b).mul(&c);
        let fac = prod.factor_squarefree(&mut rng);
        let back = fac.iter().fold(Poly::constant(f.clone(), f.one()), |acc, x| acc.mul(x));
        assert_eq!(back, prod);
        for x in &fac {
            assert!(x.is_monic());
        }
    }
}
