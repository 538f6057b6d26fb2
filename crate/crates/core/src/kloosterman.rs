//! Kloosterman sums Kl_F(ψ; α) = −Σ_{x∈F^×} ψ(x + α/x) and the place sums
//! Kln_γ(v) = Kl_{F_v}(ψ; γβ_v²).
//!
//! The additive character is ψ_b(x) = ζ_p^{Tr_{F/F_p}(b·x)} for a twist
//! b ∈ F_q^×; the default twist is b = 1.

use num_bigint::BigInt;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field_arith::NONE;
use crate::field_arith::{make_field, FFElem, FieldCtx};
use crate::places::Place;

/// The nontrivial additive character ψ_b, b given by its index in F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveCharacter {
    pub twist: u64,
}

impl Default for AdditiveCharacter {
    fn default() -> Self {
        AdditiveCharacter { twist: 1 }
    }
}

impl AdditiveCharacter {
    fn in_field(&self, ctx: &FieldCtx) -> Result<FFElem> {
        let base = ctx.base();
        let b = base.from_index(self.twist)?;
        if b.is_zero() {
            return Err(Error::InvalidParameter("character twist must be nonzero".into()));
        }
        Ok(ctx.embed_base(b))
    }
}

#[derive(Clone, Debug)]
pub struct KloostermanValue {
    pub field_size: u64,
    pub degree: u32,
    pub alpha: FFElem,
    pub value: CycNum,
    pub real_value: f64,
    pub theta: f64,
}

impl KloostermanValue {
    /// Package a sum over a field of `field_size` elements, evaluated at the
    /// embedding ζ ↦ e^{2πic/p}.
    pub fn new(value: CycNum, field_size: u64, degree: u32, alpha: FFElem, embedding: u64) -> Self {
        let real_value = value.embed_complex_with(embedding).re;
        let x = real_value / (2.0 * (field_size as f64).sqrt());
        KloostermanValue {
            field_size,
            degree,
            alpha,
            value,
            real_value,
            theta: x.clamp(-1.0, 1.0).acos(),
        }
    }
}

fn require_nonzero(alpha: FFElem) -> Result<()> {
    if alpha.is_zero() {
        Err(Error::ZeroParameter)
    } else {
        Ok(())
    }
}

pub fn kloosterman_sum(ctx: &FieldCtx, alpha: FFElem) -> Result<CycNum> {
    kloosterman_sum_with(ctx, alpha, AdditiveCharacter::default())
}

/// Kl by its definition, one character evaluation per x ∈ F^×.
pub fn kloosterman_sum_with(ctx: &FieldCtx, alpha: FFElem, chi: AdditiveCharacter) -> Result<CycNum> {
    require_nonzero(alpha)?;
    let b = chi.in_field(ctx)?;
    let p = ctx.p() as usize;
    let mut counts = vec![0i64; p];
    if let Some(t) = ctx.tables() {
        let m = t.m;
        let la = t.log[alpha.index() as usize] as u64;
        let lb = t.log[b.index() as usize] as u64;
        for lx in 0..m {
            let d = (la + 2 * m - 2 * lx) % m;
            let z = t.zech[d as usize];
            let tr = if z == NONE {
                0
            } else {
                let l = (lx + z as u64 + lb) % m;
                t.trace[t.exp[l as usize] as usize]
            };
            counts[tr as usize] -= 1;
        }
    } else {
        for x in ctx.elements().skip(1) {
            let y = ctx.add(x, ctx.div(alpha, x)?);
            counts[ctx.absolute_trace(ctx.mul(b, y)) as usize] -= 1;
        }
    }
    Ok(CycNum::from_counts(&counts))
}

pub fn kloosterman_salie(ctx: &FieldCtx, alpha: FFElem) -> Result<CycNum> {
    kloosterman_salie_with(ctx, alpha, AdditiveCharacter::default())
}

/// Kl via Salié's formula −Σ_y λ(y² − 4α)ψ(y).
pub fn kloosterman_salie_with(ctx: &FieldCtx, alpha: FFElem, chi: AdditiveCharacter) -> Result<CycNum> {
    require_nonzero(alpha)?;
    let b = chi.in_field(ctx)?;
    let p = ctx.p() as usize;
    let mut counts = vec![0i64; p];
    let minus4a = ctx.mul(ctx.from_int(-4), alpha);
    counts[0] -= ctx.quadratic_character(minus4a) as i64;
    if let Some(t) = ctx.tables() {
        let m = t.m;
        let l4 = t.log[minus4a.index() as usize] as u64;
        let lb = t.log[b.index() as usize] as u64;
        for ly in 0..m {
            let d = (l4 + 2 * m - 2 * ly) % m;
            let z = t.zech[d as usize];
            if z == NONE {
                continue;
            }
            let lam = if z % 2 == 0 { 1 } else { -1 };
            let tr = t.trace[t.exp[((ly + lb) % m) as usize] as usize];
            counts[tr as usize] -= lam;
        }
    } else {
        for y in ctx.elements().skip(1) {
            let lam = ctx.quadratic_character(ctx.add(ctx.square(y), minus4a)) as i64;
            counts[ctx.absolute_trace(ctx.mul(b, y)) as usize] -= lam;
        }
    }
    Ok(CycNum::from_counts(&counts))
}

/// Kln_γ(v) with the default character and embedding.
pub fn kln(v: &Place, gamma: FFElem) -> Result<KloostermanValue> {
    kln_with(v, gamma, AdditiveCharacter::default(), 1)
}

pub fn kln_with(v: &Place, gamma: FFElem, chi: AdditiveCharacter, embedding: u64) -> Result<KloostermanValue> {
    require_nonzero(gamma)?;
    let base = v.poly.ctx();
    let fv = make_field(base.p(), base.e(), v.degree)?;
    kln_at_root(&fv, v.beta, gamma, chi, embedding)
}

/// Kl_{F_v}(ψ; γβ²) for an arbitrary root β of the place polynomial.
pub fn kln_at_root(
    fv: &FieldCtx,
    beta: FFElem,
    gamma: FFElem,
    chi: AdditiveCharacter,
    embedding: u64,
) -> Result<KloostermanValue> {
    require_nonzero(gamma)?;
    let alpha = fv.mul(fv.embed_base(gamma), fv.square(beta));
    let value = kloosterman_sum_with(fv, alpha, chi)?;
    Ok(KloostermanValue::new(value, fv.size(), fv.k(), alpha, embedding))
}

/// s_m = kl^m + kl'^m from s_0 = 2, s_1 = Kl, s_{m+1} = Kl·s_m − |F|·s_{m−1}.
pub fn lift_recurrence(kl: &CycNum, field_size: u64, m: u32) -> CycNum {
    let p = kl.p();
    let qd = BigInt::from(field_size);
    let mut prev = CycNum::from_int(p, 2);
    if m == 0 {
        return prev;
    }
    let mut cur = kl.clone();
    for _ in 1..m {
        let next = kl.mul(&cur).sub(&prev.scale(&qd));
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact certificate that |Kl| ≠ 2|F|^{1/2}: Kl² − 4|F| ≠ 0 in Z[ζ_p].
pub fn weil_certificate(value: &CycNum, field_size: u64) -> bool {
    !value
        .square()
        .sub(&CycNum::from_int(value.p(), BigInt::from(field_size) * 4))
        .is_zero()
}

/// c_p = 2(p−1).
pub fn minimal_angle_exponent(p: u64) -> f64 {
    2.0 * (p as f64 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::place_set;

    #[test]
    fn f3_examples() {
        let f3 = make_field(3, 1, 1).unwrap();
        let one = f3.one();
        let two = f3.from_int(2);
        assert_eq!(kloosterman_sum(&f3, one).unwrap(), CycNum::from_int(3, 1));
        assert_eq!(kloosterman_sum(&f3, two).unwrap(), CycNum::from_int(3, -2));
        assert_eq!(kloosterman_salie(&f3, one).unwrap(), CycNum::from_int(3, 1));
        assert_eq!(kloosterman_salie(&f3, two).unwrap(), CycNum::from_int(3, -2));
    }

    #[test]
    fn zero_parameter_rejected() {
        let f5 = make_field(5, 1, 1).unwrap();
        assert_eq!(kloosterman_sum(&f5, f5.zero()).unwrap_err(), Error::ZeroParameter);
        assert_eq!(kloosterman_salie(&f5, f5.zero()).unwrap_err(), Error::ZeroParameter);
    }

    #[test]
    fn worked_place_values() {
        let f3 = make_field(3, 1, 1).unwrap();
        let ps = place_set(&f3, 1, 1 << 20).unwrap();
        for v in &ps.places {
            let k = kln(v, f3.one()).unwrap();
            assert_eq!(k.value, CycNum::from_int(3, 1));
            assert!((k.theta - (1.0 / (2.0 * 3f64.sqrt())).acos()).abs() < 1e-12);
            assert!((k.theta - 1.27795).abs() < 1e-5);
        }
    }

    #[test]
    fn generic_path_matches_tables() {
        let f = make_field(5, 1, 2).unwrap();
        for a in f.elements().skip(1).step_by(5) {
            let fast = kloosterman_sum(&f, a).unwrap();
            let mut counts = vec![0i64; 5];
            for x in f.elements().skip(1) {
                let y = f.add(x, f.div(a, x).unwrap());
                counts[f.absolute_trace(y) as usize] -= 1;
            }
            assert_eq!(fast, CycNum::from_counts(&counts));
        }
    }

    #[test]
    fn recurrence_base_cases() {
        let kl = CycNum::from_int(3, 1);
        assert_eq!(lift_recurrence(&kl, 3, 0), CycNum::from_int(3, 2));
        assert_eq!(lift_recurrence(&kl, 3, 1), kl);
        assert_eq!(lift_recurrence(&kl, 3, 2), CycNum::from_int(3, 1 - 6));
    }
}
