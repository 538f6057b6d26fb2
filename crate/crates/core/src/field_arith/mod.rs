//! Finite fields F_{q^k}, q = p^e, p odd.
//!
//! An element is stored as its power-basis coordinates packed into a single
//! integer, `index = Σ coords[i]·p^i`.  The index order is the enumeration
//! order used everywhere a "smallest" element is chosen.
//!
//! ```
//! use aslfunc_core::field_arith::make_field;
//!
//! let f9 = make_field(3, 1, 2).unwrap();
//! let x = f9.from_index(4).unwrap();
//! assert_eq!(f9.mul(x, f9.inv(x).unwrap()), f9.one());
//! ```

mod extension;
pub mod poly;
pub(crate) mod prime_poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
pub(crate) use extension::{Tables, NONE};
use extension::{extension, Extension};
pub use extension::TABLE_CAP;

/// Default bound on the number of elements of any field context.
pub const DEFAULT_FIELD_SIZE_CAP: u128 = 1 << 40;

/// A field element, identified by its packed coordinate index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem(u64);

impl FFElem {
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field F_{q^k} with q = p^e.
pub struct FieldCtx {
    p: u64,
    e: u32,
    k: u32,
    ext: Arc<Extension>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("k", &self.k)
            .field("modulus", &self.ext.modulus)
            .finish()
    }
}

fn ctx_cache() -> &'static Mutex<HashMap<(u64, u32, u32), Arc<FieldCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Context for F_{q^k}, q = p^e, with the default size cap.
pub fn make_field(p: u64, e: u32, k: u32) -> Result<Arc<FieldCtx>> {
    make_field_with_cap(p, e, k, DEFAULT_FIELD_SIZE_CAP)
}

pub fn make_field_with_cap(p: u64, e: u32, k: u32, cap: u128) -> Result<Arc<FieldCtx>> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !prime_poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || k == 0 {
        return Err(Error::InvalidParameter("extension degrees must be positive".into()));
    }
    let n = e.checked_mul(k).ok_or_else(|| Error::InvalidParameter("degree overflow".into()))?;
    let size = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
    if size > cap || size > (1u128 << 62) {
        return Err(Error::SizeCapExceeded {
            what: format!("field of size {p}^{n}"),
            size,
            cap,
        });
    }
    if let Some(c) = ctx_cache().lock().unwrap().get(&(p, e, k)) {
        return Ok(c.clone());
    }
    let ctx = Arc::new(FieldCtx {
        p,
        e,
        k,
        ext: extension(p, n),
    });
    Ok(ctx_cache()
        .lock()
        .unwrap()
        .entry((p, e, k))
        .or_insert(ctx)
        .clone())
}

/// Split q = p^e.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let p = prime_poly::prime_factors(q)[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok((p, e))
}

/// Context for F_q given q = p^e.
pub fn base_field(q: u64) -> Result<Arc<FieldCtx>> {
    let (p, e) = prime_power(q)?;
    make_field(p, e, 1)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Size of the base field F_q.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Number of elements q^k.
    pub fn size(&self) -> u64 {
        self.ext.size
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.ext.n
    }

    /// Defining polynomial over F_p, low degree first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.ext.modulus
    }

    pub fn base(&self) -> Arc<FieldCtx> {
        make_field(self.p, self.e, 1).expect("base of a valid field is valid")
    }

    pub(crate) fn tables(&self) -> Option<&Tables> {
        self.ext.tables()
    }

    /// True when elements can be enumerated with table-backed arithmetic.
    pub fn is_enumerable(&self) -> bool {
        self.ext.size <= TABLE_CAP
    }

    pub fn zero(&self) -> FFElem {
        FFElem(0)
    }

    pub fn one(&self) -> FFElem {
        FFElem(1)
    }

    pub fn from_index(&self, i: u64) -> Result<FFElem> {
        if i >= self.ext.size {
            return Err(Error::InvalidParameter(format!(
                "index {i} outside field of size {}",
                self.ext.size
            )));
        }
        Ok(FFElem(i))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn coords(&self, x: FFElem) -> Vec<u64> {
        self.ext.digits(x.0)
    }

    pub fn from_coords(&self, c: &[u64]) -> Result<FFElem> {
        if c.len() != self.ext.n as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidParameter(format!("bad coordinates {c:?}")));
        }
        Ok(FFElem(self.ext.from_digits(c)))
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.ext.size).map(FFElem)
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.ext.add(a.0, b.0))
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        FFElem(self.ext.neg(a.0))
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.ext.mul(a.0, b.0))
    }

    pub fn square(&self, a: FFElem) -> FFElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FFElem, e: u128) -> FFElem {
        FFElem(self.ext.pow(a.0, e))
    }

    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, (self.ext.size - 2) as u128))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        let bi = self.inv(b).ok_or_else(|| Error::DivisionByZero("field division".into()))?;
        Ok(self.mul(a, bi))
    }

    /// x ↦ x^q.
    pub fn frobenius(&self, x: FFElem) -> FFElem {
        self.pow(x, self.q() as u128)
    }

    /// λ(x): 0 at zero, +1 on nonzero squares, −1 otherwise.
    pub fn quadratic_character(&self, x: FFElem) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if let Some(t) = self.tables() {
            return if t.log[x.0 as usize] % 2 == 0 { 1 } else { -1 };
        }
        if self.ext.pow_generic(x.0, ((self.ext.size - 1) / 2) as u128) == 1 {
            1
        } else {
            -1
        }
    }

    /// Tr_{F/F_p}(x) as a residue in [0, p).
    pub fn absolute_trace(&self, x: FFElem) -> u64 {
        if let Some(t) = self.tables() {
            return t.trace[x.0 as usize] as u64;
        }
        self.ext.abs_trace_generic(x.0)
    }

    /// Σ_{j<k} x^{q^j}, still as an element of this field.
    pub fn relative_trace(&self, x: FFElem) -> FFElem {
        let mut acc = self.zero();
        let mut y = x;
        for _ in 0..self.k {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        acc
    }

    /// Tr_{F_{q^k}/F_q}(x) as an element of the base context.
    pub fn trace_to_base(&self, x: FFElem) -> FFElem {
        let s = self.relative_trace(x);
        self.restrict(s, self.e)
            .expect("trace lies in the base field")
    }

    /// Image of an element of F_q under the fixed embedding F_q -> F_{q^k}.
    pub fn embed_base(&self, x: FFElem) -> FFElem {
        FFElem(embed_index(x.0, &self.base().ext, &self.ext).expect("base field embeds"))
    }

    /// Pull an element of the subfield F_{p^m} back to that subfield's
    /// own coordinates.  Fails if x is not in the subfield.
    pub(crate) fn restrict(&self, x: FFElem, m: u32) -> Result<FFElem> {
        let n = self.ext.n;
        if m == n || x.0 < self.p {
            return Ok(x);
        }
        let sub = extension(self.p, m);
        let (Some(ts), Some(tt)) = (sub.tables(), self.ext.tables()) else {
            return Err(Error::SizeCapExceeded {
                what: "subfield restriction needs enumerable fields".into(),
                size: self.ext.size as u128,
                cap: TABLE_CAP as u128,
            });
        };
        let r = tt.m / ts.m;
        let l = tt.log[x.0 as usize] as u64;
        if !l.is_multiple_of(r) {
            return Err(Error::NotASubfield {
                source_degree: n,
                target_degree: m,
            });
        }
        Ok(FFElem(ts.exp[(l / r) as usize] as u64))
    }
}

fn embed_index(x: u64, source: &Extension, target: &Extension) -> Result<u64> {
    if source.n == target.n || x < source.p {
        return Ok(x);
    }
    let (Some(ts), Some(tt)) = (source.tables(), target.tables()) else {
        return Err(Error::SizeCapExceeded {
            what: "embedding needs enumerable fields".into(),
            size: target.size as u128,
            cap: TABLE_CAP as u128,
        });
    };
    let r = tt.m / ts.m;
    let l = ts.log[x as usize] as u64 * r;
    Ok(tt.exp[l as usize] as u64)
}

/// Image of x ∈ F_{q^d} in F_{q^a} under the fixed embedding.
///
/// The embeddings are compatible along towers: embedding F_{q^d} into
/// F_{q^{d'}} and then into F_{q^a} agrees with the direct map.
pub fn subfield_embed(x: FFElem, source: &FieldCtx, target: &FieldCtx) -> Result<FFElem> {
    if source.p != target.p || source.e != target.e {
        return Err(Error::ContextMismatch);
    }
    if !target.k.is_multiple_of(source.k) {
        return Err(Error::NotASubfield {
            source_degree: source.k,
            target_degree: target.k,
        });
    }
    embed_index(x.0, &source.ext, &target.ext).map(FFElem)
}
