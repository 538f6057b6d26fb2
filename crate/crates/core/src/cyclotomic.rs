//! Exact arithmetic in Z[ζ_p].
//!
//! A `CycNum` stores the coordinates of Σ c_j ζ^j on the basis
//! 1, ζ, …, ζ^{p−2}; the power ζ^{p−1} is always rewritten as
//! −(1 + ζ + … + ζ^{p−2}).

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u64,
    coords: Vec<BigInt>,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[p={}](", self.p)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl CycNum {
    pub fn zero(p: u64) -> CycNum {
        CycNum {
            p,
            coords: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_int<T: Into<BigInt>>(p: u64, n: T) -> CycNum {
        let mut z = CycNum::zero(p);
        z.coords[0] = n.into();
        z
    }

    pub fn one(p: u64) -> CycNum {
        CycNum::from_int(p, 1)
    }

    /// ζ^t for t taken mod p.
    pub fn zeta_pow(p: u64, t: u64) -> CycNum {
        let mut counts = vec![0i64; p as usize];
        counts[(t % p) as usize] = 1;
        CycNum::from_counts(&counts)
    }

    /// Σ_j counts[j]·ζ^j with counts indexed by 0..p.
    pub fn from_counts(counts: &[i64]) -> CycNum {
        let p = counts.len() as u64;
        let top = counts[(p - 1) as usize];
        CycNum {
            p,
            coords: counts[..(p - 1) as usize]
                .iter()
                .map(|&c| BigInt::from(c - top))
                .collect(),
        }
    }

    /// Canonical form of Σ_j full[j]·ζ^j for a length-p vector.
    fn from_full(p: u64, mut full: Vec<BigInt>) -> CycNum {
        let top = full.pop().unwrap();
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        CycNum { p, coords: full }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The integrality gate: the constant coordinate if x ∈ Z.
    pub fn to_rational_integer(&self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(self.coords[0].clone())
        } else {
            Err(Error::NotRationalInteger {
                coords: self.coords.iter().map(|c| c.to_string()).collect(),
            })
        }
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        debug_assert_eq!(self.p, o.p);
        CycNum {
            p: self.p,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &CycNum) {
        for (a, b) in self.coords.iter_mut().zip(&o.coords) {
            *a += b;
        }
    }

    pub fn sub(&self, o: &CycNum) -> CycNum {
        CycNum {
            p: self.p,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            p: self.p,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycNum {
        CycNum {
            p: self.p,
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        CycNum::from_full(self.p, full)
    }

    pub fn square(&self) -> CycNum {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut r = CycNum::one(self.p);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.square();
            }
        }
        r
    }

    /// The automorphism σ_c: ζ ↦ ζ^c, c prime to p.
    pub fn galois(&self, c: u64) -> CycNum {
        let p = self.p as usize;
        let c = (c % self.p) as usize;
        assert!(c != 0, "σ_0 is not an automorphism");
        let mut full = vec![BigInt::zero(); p];
        for (j, a) in self.coords.iter().enumerate() {
            full[(j * c) % p] = a.clone();
        }
        CycNum::from_full(self.p, full)
    }

    /// ζ ↦ ζ^{−1}.
    pub fn conj_bar(&self) -> CycNum {
        self.galois(self.p - 1)
    }

    /// Norm to Q as the product of all conjugates.
    pub fn norm(&self) -> BigInt {
        let n = (1..self.p).fold(CycNum::one(self.p), |acc, c| acc.mul(&self.galois(c)));
        n.to_rational_integer().expect("norm is rational")
    }

    /// Evaluation at ζ = e^{2πi/p}.
    pub fn embed_complex(&self) -> Complex64 {
        self.embed_complex_with(1)
    }

    /// Evaluation at ζ = e^{2πic/p}.
    pub fn embed_complex_with(&self, c: u64) -> Complex64 {
        let p = self.p;
        self.coords
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (j, a)| {
                let ang = 2.0 * PI * ((j as u64 * c) % p) as f64 / p as f64;
                acc + Complex64::from_polar(1.0, ang) * big_to_f64(a)
            })
    }

    /// self −= c·src for c given by small integer coordinates.
    pub(crate) fn sub_mul_small(&mut self, src: &CycNum, c: &[i64], scratch: &mut [BigInt]) {
        let p = self.p as usize;
        for s in scratch.iter_mut() {
            s.set_zero();
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, sj) in src.coords.iter().enumerate() {
                if !sj.is_zero() {
                    scratch[(i + j) % p] += sj * ci;
                }
            }
        }
        let top = std::mem::take(&mut scratch[p - 1]);
        for (a, s) in self.coords.iter_mut().zip(scratch.iter()) {
            *a -= s;
            *a += &top;
        }
    }

    /// self += k·src.
    pub(crate) fn add_scaled(&mut self, src: &CycNum, k: &BigInt) {
        for (a, b) in self.coords.iter_mut().zip(&src.coords) {
            if !b.is_zero() {
                *a += b * k;
            }
        }
    }

    /// Coordinates as machine integers, if they fit.
    pub fn small_coords(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_i64()).collect()
    }

    /// Largest absolute coordinate, for sizing diagnostics.
    pub fn max_abs_coord(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

pub(crate) fn big_to_f64(a: &BigInt) -> f64 {
    a.to_f64().unwrap_or(if a.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// ψ(t) = ζ_p^t for a prime-field residue t.
pub fn character_value(p: u64, t: u64) -> CycNum {
    CycNum::zeta_pow(p, t)
}
