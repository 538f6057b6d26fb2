//! F_{p^n} as F_p[X]/(modulus) with elements packed as base-p integers.
//!
//! Fields small enough to enumerate also carry discrete-log and Zech tables
//! built from a generator chosen compatibly with every subfield, so that the
//! embedding F_{p^m} -> F_{p^n} is multiplication of logarithms by
//! (p^n - 1)/(p^m - 1).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::prime_poly::{mulmod_u, prime_factors, smallest_irreducible};

/// Largest field for which log tables are built.
pub const TABLE_CAP: u64 = 1 << 22;

pub(crate) const NONE: u32 = u32::MAX;

pub(crate) struct Tables {
    pub m: u64,
    pub generator: u64,
    pub exp: Vec<u32>,
    pub log: Vec<u32>,
    pub zech: Vec<u32>,
    pub trace: Vec<u32>,
}

impl Tables {
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(if s >= self.m { s - self.m } else { s }) as usize] as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize] as u64;
        let lb = self.log[b as usize] as u64;
        let d = if lb >= la { lb - la } else { lb + self.m - la };
        let z = self.zech[d as usize];
        if z == NONE {
            return 0;
        }
        let s = la + z as u64;
        self.exp[(if s >= self.m { s - self.m } else { s }) as usize] as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.m / 2;
        self.exp[(if s >= self.m { s - self.m } else { s }) as usize] as u64
    }
}

pub(crate) struct Extension {
    pub p: u64,
    pub n: u32,
    pub size: u64,
    pub modulus: Vec<u64>,
    tables: OnceLock<Option<Arc<Tables>>>,
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), Arc<Extension>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Extension>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared context for F_{p^n}; caller has validated p and the size.
pub(crate) fn extension(p: u64, n: u32) -> Arc<Extension> {
    if let Some(e) = cache().lock().unwrap().get(&(p, n)) {
        return e.clone();
    }
    let ext = Arc::new(Extension {
        p,
        n,
        size: p.pow(n),
        modulus: smallest_irreducible(p, n),
        tables: OnceLock::new(),
    });
    cache()
        .lock()
        .unwrap()
        .entry((p, n))
        .or_insert(ext)
        .clone()
}

impl Extension {
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                if self.size <= TABLE_CAP {
                    Some(Arc::new(self.build_tables()))
                } else {
                    None
                }
            })
            .as_deref()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        if let Some(t) = self.tables() {
            return t.add(a, b);
        }
        self.add_generic(a, b)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.n == 1 {
            return (self.p - a) % self.p;
        }
        if let Some(t) = self.tables() {
            return t.neg(a);
        }
        let d: Vec<u64> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return mulmod_u(a, b, self.p);
        }
        if let Some(t) = self.tables() {
            return t.mul(a, b);
        }
        self.mul_generic(a, b)
    }

    pub fn pow(&self, a: u64, e: u128) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if self.n > 1 {
            if let Some(t) = self.tables() {
                let l = (t.log[a as usize] as u128 * (e % t.m as u128)) % t.m as u128;
                return t.exp[l as usize] as u64;
            }
        }
        self.pow_with(a, e, |x, y| self.mul(x, y))
    }

    fn pow_with(&self, mut a: u64, mut e: u128, mul: impl Fn(u64, u64) -> u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn add_generic(&self, a: u64, b: u64) -> u64 {
        let da = self.digits(a);
        let db = self.digits(b);
        let d: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let n = self.n as usize;
        if n == 1 {
            return mulmod_u(a, b, p);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + mulmod_u(da[i], db[j], p)) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let s = mulmod_u(c, self.modulus[j], p);
                prod[i - n + j] = (prod[i - n + j] + p - s) % p;
            }
        }
        self.from_digits(&prod[..n])
    }

    pub fn pow_generic(&self, a: u64, e: u128) -> u64 {
        self.pow_with(a, e, |x, y| self.mul_generic(x, y))
    }

    /// Absolute trace to F_p without tables.
    pub fn abs_trace_generic(&self, a: u64) -> u64 {
        let mut acc = 0u64;
        let mut y = a;
        for _ in 0..self.n {
            acc = self.add_generic(acc, y);
            y = self.pow_generic(y, self.p as u128);
        }
        debug_assert!(acc < self.p);
        acc
    }

    fn is_primitive_generic(&self, c: u64, factors: &[u64]) -> bool {
        let m = self.size - 1;
        c != 0 && factors.iter().all(|&r| self.pow_generic(c, (m / r) as u128) != 1)
    }

    /// Minimal polynomial over F_p of the table generator, low degree first.
    fn generator_minpoly(&self) -> Vec<u64> {
        let g = self.tables().expect("subfield tables").generator;
        let mut poly = vec![1u64];
        let mut conj = g;
        for _ in 0..self.n {
            let neg = self.neg(conj);
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.add(next[i], self.mul(c, neg));
            }
            poly = next;
            conj = self.pow(conj, self.p as u128);
        }
        assert!(poly.iter().all(|&c| c < self.p), "minimal polynomial leaves F_p");
        poly
    }

    fn choose_generator(&self) -> u64 {
        let m = self.size - 1;
        let factors = prime_factors(m);
        if self.n == 1 {
            return (1..self.p)
                .find(|&c| self.is_primitive_generic(c, &factors))
                .unwrap();
        }
        let constraints: Vec<(u64, Vec<u64>)> = prime_factors(self.n as u64)
            .into_iter()
            .map(|r| {
                let sub = extension(self.p, self.n / r as u32);
                let exponent = m / (sub.size - 1);
                (exponent, sub.generator_minpoly())
            })
            .collect();
        (1..self.size)
            .find(|&c| {
                self.is_primitive_generic(c, &factors)
                    && constraints.iter().all(|(exponent, minpoly)| {
                        let h = self.pow_generic(c, *exponent as u128);
                        let mut acc = 0u64;
                        for &coef in minpoly.iter().rev() {
                            acc = self.add_generic(self.mul_generic(acc, h), coef);
                        }
                        acc == 0
                    })
            })
            .expect("a compatible primitive element exists")
    }

    fn build_tables(&self) -> Tables {
        let size = self.size;
        let m = size - 1;
        let p = self.p;
        let g = self.choose_generator();
        let mut exp = Vec::with_capacity(m as usize);
        let mut log = vec![NONE; size as usize];
        let mut x = 1u64;
        for i in 0..m {
            exp.push(x as u32);
            assert_eq!(log[x as usize], NONE, "generator is not primitive");
            log[x as usize] = i as u32;
            x = self.mul_generic(x, g);
        }
        let zech = (0..m as usize)
            .map(|i| {
                let v = exp[i] as u64;
                let w = if v % p == p - 1 { v - (p - 1) } else { v + 1 };
                log[w as usize]
            })
            .collect();
        let basis_traces: Vec<u64> = (0..self.n)
            .map(|i| self.abs_trace_generic(p.pow(i)))
            .collect();
        let trace = (0..size)
            .map(|a| {
                let mut a = a;
                let mut acc = 0u64;
                for t in &basis_traces {
                    acc = (acc + (a % p) * t) % p;
                    a /= p;
                }
                acc as u32
            })
            .collect();
        Tables {
            m,
            generator: g,
            exp,
            log,
            zech,
            trace,
        }
    }
}
