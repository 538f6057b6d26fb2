//! The point-counting side: the curve model, its discriminant, Frobenius
//! traces A(τ, q^n) of the fibres, the Dirichlet coefficients S_n of log L,
//! and the character-sum identities that link them to Kloosterman sums.
//!
//! Nothing here calls into the L-polynomial assembly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field_arith::poly::Poly;
use crate::field_arith::{base_field, make_field, FFElem, FieldCtx, NONE};
use crate::kloosterman::{kloosterman_sum, kloosterman_sum_with, AdditiveCharacter};
use crate::places::place_set;
use crate::Limits;

#[derive(Clone, Debug)]
pub struct CurveParams {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub a: u32,
    /// γ ∈ F_q^×, as an element of the base context.
    pub gamma: FFElem,
    pub limits: Limits,
}

impl CurveParams {
    /// Parameters with γ given by its index in the enumeration of F_q.
    pub fn new(q: u64, a: u32, gamma: u64) -> Result<CurveParams> {
        CurveParams::with_limits(q, a, gamma, Limits::default())
    }

    pub fn with_limits(q: u64, a: u32, gamma: u64, limits: Limits) -> Result<CurveParams> {
        let base = base_field(q)?;
        if a == 0 {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        let g = base.from_index(gamma)?;
        if g.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(CurveParams {
            q,
            p: base.p(),
            e: base.e(),
            a,
            gamma: g,
            limits,
        })
    }

    pub fn base(&self) -> Arc<FieldCtx> {
        make_field(self.p, self.e, 1).expect("validated base field")
    }

    /// q^a.
    pub fn qa(&self) -> u64 {
        self.q.pow(self.a)
    }

    /// b = 3(q^a − 1).
    pub fn expected_degree(&self) -> usize {
        3 * (self.qa() as usize - 1)
    }
}

/// ℘_a(τ) = τ^{q^a} − τ in any field containing F_q.
pub fn wp(ctx: &FieldCtx, tau: FFElem, q: u64, a: u32) -> FFElem {
    let e = (q as u128).pow(a);
    ctx.sub(ctx.pow(tau, e), tau)
}

fn enumerable(params: &CurveParams, n: u32) -> Result<Arc<FieldCtx>> {
    let size = (params.q as u128).checked_pow(n).unwrap_or(u128::MAX);
    if size > params.limits.enumeration_cap as u128 {
        return Err(Error::SizeCapExceeded {
            what: format!("F_{}^{}", params.q, n),
            size,
            cap: params.limits.enumeration_cap as u128,
        });
    }
    make_field(params.p, params.e, n)
}

/// A(τ, q^n): −Σ_x λ(x(x+16γ)(x+℘_a(τ)²)) for finite τ, and 1 at τ = ∞.
pub fn frobenius_trace(params: &CurveParams, tau: Option<FFElem>, n: u32) -> Result<i64> {
    let Some(tau) = tau else {
        return Ok(1);
    };
    let f = enumerable(params, n)?;
    params.limits.check_work(f.size() as u128)?;
    let c = f.mul(f.from_int(16), f.embed_base(params.gamma));
    let w = f.square(wp(&f, tau, params.q, params.a));
    let mut s = 0i64;
    for x in f.elements() {
        let v = f.mul(f.mul(x, f.add(x, c)), f.add(x, w));
        s += f.quadratic_character(v) as i64;
    }
    Ok(-s)
}

/// S_n as the literal sum of `frobenius_trace` over P¹(F_{q^n}).
pub fn dirichlet_coefficient_literal(params: &CurveParams, n: u32) -> Result<i64> {
    let f = enumerable(params, n)?;
    params.limits.check_work((f.size() as u128).pow(2))?;
    let mut s = frobenius_trace(params, None, n)?;
    for tau in f.elements() {
        s += frobenius_trace(params, Some(tau), n)?;
    }
    Ok(s)
}

/// S_n = Σ_{τ∈P¹(F_{q^n})} A(τ, q^n), by point counting.
///
/// The inner sum only depends on w = ℘_a(τ)², so it is evaluated once per
/// distinct w.
pub fn dirichlet_coefficient(params: &CurveParams, n: u32) -> Result<i64> {
    let f = enumerable(params, n)?;
    params.limits.check_work((f.size() as u128).pow(2))?;
    let Some(t) = f.tables() else {
        return dirichlet_coefficient_literal(params, n);
    };
    let m = t.m;
    let c = f.mul(f.from_int(16), f.embed_base(params.gamma));
    let lc = t.log[c.index() as usize] as u64;
    // u[lx] = λ(x)·λ(x + c) for x = g^lx
    let u: Vec<i8> = (0..m)
        .map(|lx| {
            let z = t.zech[((lc + m - lx) % m) as usize];
            if z == NONE {
                0
            } else {
                let lam_x = if lx % 2 == 0 { 1 } else { -1 };
                let lam_sum = if (lx + z as u64).is_multiple_of(2) { 1 } else { -1 };
                lam_x * lam_sum
            }
        })
        .collect();
    let inner = |w: FFElem| -> i64 {
        if w.is_zero() {
            return (0..m)
                .map(|lx| u[lx as usize] as i64 * if lx % 2 == 0 { 1 } else { -1 })
                .sum();
        }
        let lw = t.log[w.index() as usize] as u64;
        let mut s = 0i64;
        for lx in 0..m {
            let ux = u[lx as usize];
            if ux == 0 {
                continue;
            }
            let z = t.zech[((lw + m - lx) % m) as usize];
            if z == NONE {
                continue;
            }
            s += if (lx + z as u64).is_multiple_of(2) { ux as i64 } else { -(ux as i64) };
        }
        s
    };
    let mut memo = vec![i64::MIN; f.size() as usize];
    let mut total = 1i64;
    for tau in f.elements() {
        let w = f.square(wp(&f, tau, params.q, params.a));
        let slot = &mut memo[w.index() as usize];
        if *slot == i64::MIN {
            *slot = inner(w);
        }
        total -= *slot;
    }
    Ok(total)
}

/// S_n = −Σ_{β∈(F_{q^a}∩F_{q^n})∖0} (Kl_{q^n}(ψ; γβ²)² − q^n).
pub fn dirichlet_coefficient_via_kloosterman(params: &CurveParams, n: u32) -> Result<BigInt> {
    let f = enumerable(params, n)?;
    let b = params.a.gcd(&n);
    let sub = make_field(params.p, params.e, b)?;
    let gamma = f.embed_base(params.gamma);
    let mut total = CycNum::zero(params.p);
    let qn = CycNum::from_int(params.p, f.size());
    for beta in sub.elements().skip(1) {
        let be = crate::field_arith::subfield_embed(beta, &sub, &f)?;
        let kl = kloosterman_sum(&f, f.mul(gamma, f.square(be)))?;
        total = total.sub(&kl.square().sub(&qn));
    }
    total.to_rational_integer()
}

/// M_F(β, γ) = Σ_x Σ_z λ(x(x+16γ)(x+z²))·ψ(βz), γ ∈ F^×.
pub fn m_sum(ctx: &FieldCtx, beta: FFElem, gamma: FFElem, limits: &Limits) -> Result<CycNum> {
    m_sum_with(ctx, beta, gamma, AdditiveCharacter::default(), limits)
}

pub fn m_sum_with(
    ctx: &FieldCtx,
    beta: FFElem,
    gamma: FFElem,
    chi: AdditiveCharacter,
    limits: &Limits,
) -> Result<CycNum> {
    if gamma.is_zero() {
        return Err(Error::ZeroParameter);
    }
    limits.check_work((ctx.size() as u128).pow(2))?;
    let b = ctx.embed_base(ctx.base().from_index(chi.twist)?);
    let c = ctx.mul(ctx.from_int(16), gamma);
    let mut counts = vec![0i64; ctx.p() as usize];
    for z in ctx.elements() {
        let w = ctx.square(z);
        let tr = ctx.absolute_trace(ctx.mul(b, ctx.mul(beta, z))) as usize;
        for x in ctx.elements() {
            let v = ctx.mul(ctx.mul(x, ctx.add(x, c)), ctx.add(x, w));
            counts[tr] += ctx.quadratic_character(v) as i64;
        }
    }
    Ok(CycNum::from_counts(&counts))
}

/// The closed form of M_F(β, γ): 1 if β = 0, else Kl(ψ; γβ²)² − |F|.
pub fn m_sum_closed_form(ctx: &FieldCtx, beta: FFElem, gamma: FFElem, chi: AdditiveCharacter) -> Result<CycNum> {
    if beta.is_zero() {
        return Ok(CycNum::one(ctx.p()));
    }
    let kl = kloosterman_sum_with(ctx, ctx.mul(gamma, ctx.square(beta)), chi)?;
    Ok(kl.square().sub(&CycNum::from_int(ctx.p(), ctx.size())))
}

/// Both sides of the counting lemma for ℘_a on F = F_{q^n}:
/// the number of τ ∈ F with ℘_a(τ) = z, and Σ_{β∈F_{q^a}∩F} ψ_F(βz).
pub fn artin_schreier_count(ctx: &FieldCtx, z: FFElem, a: u32, limits: &Limits) -> Result<(u64, BigInt)> {
    if ctx.size() > limits.enumeration_cap {
        return Err(Error::SizeCapExceeded {
            what: "counting lemma field".into(),
            size: ctx.size() as u128,
            cap: limits.enumeration_cap as u128,
        });
    }
    limits.check_work(2 * ctx.size() as u128)?;
    let q = ctx.q();
    let count = ctx.elements().filter(|&t| wp(ctx, t, q, a) == z).count() as u64;
    let b = a.gcd(&ctx.k());
    let sub = make_field(ctx.p(), ctx.e(), b)?;
    let mut counts = vec![0i64; ctx.p() as usize];
    for beta in sub.elements() {
        let be = crate::field_arith::subfield_embed(beta, &sub, ctx)?;
        counts[ctx.absolute_trace(ctx.mul(be, z)) as usize] += 1;
    }
    let chars = CycNum::from_counts(&counts).to_rational_integer()?;
    Ok((count, chars))
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceValuation {
    /// Coefficient indices in F_q, low degree first.
    pub poly: Vec<u64>,
    pub degree: usize,
    pub valuation: u32,
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub disc: Poly,
    /// Δ from the b-invariants equals 2^12 γ² ℘^4 (℘² − 16γ)².
    pub disc_matches_closed_form: bool,
    pub finite_disc_degree: usize,
    pub deg_delta_min: usize,
    pub deg_conductor: usize,
    pub b: usize,
    /// H = q^{height_exponent}.
    pub height_exponent: u64,
    pub wp_squarefree: bool,
    pub wp2_squarefree: bool,
    /// c4 is a unit at every bad place, so all bad fibres are multiplicative.
    pub multiplicative_reduction: bool,
    pub wp_factors: Vec<PlaceValuation>,
    pub wp2_factors: Vec<PlaceValuation>,
    /// The irreducible factors of ℘_a are t together with the places of P_q(a).
    pub wp_factors_are_places: bool,
}

impl ReductionReport {
    pub fn wp_degree_sum(&self) -> usize {
        self.wp_factors.iter().map(|v| v.degree).sum()
    }

    pub fn wp2_degree_sum(&self) -> usize {
        self.wp2_factors.iter().map(|v| v.degree).sum()
    }
}

fn poly_indices(p: &Poly) -> Vec<u64> {
    p.coeffs().iter().map(|c| c.index()).collect()
}

pub fn reduction_report(params: &CurveParams) -> Result<ReductionReport> {
    let qa = params.qa();
    if qa > params.limits.factorization_cap {
        return Err(Error::SizeCapExceeded {
            what: "factorization of ℘_a".into(),
            size: qa as u128,
            cap: params.limits.factorization_cap as u128,
        });
    }
    let f = params.base();
    let konst = |n: i64| Poly::constant(f.clone(), f.from_int(n));
    let gamma = Poly::constant(f.clone(), params.gamma);
    let t = Poly::monomial(f.clone(), f.one(), 1);
    let wp_poly = Poly::monomial(f.clone(), f.one(), qa as usize).sub(&t);
    let wp_sq = wp_poly.mul(&wp_poly);
    let c16 = konst(16).mul(&gamma);
    let wp2 = wp_sq.sub(&c16);

    // Weierstrass invariants of y² = x³ + a2 x² + a4 x
    let a2 = c16.add(&wp_sq);
    let a4 = c16.mul(&wp_sq);
    let b2 = konst(4).mul(&a2);
    let b4 = konst(2).mul(&a4);
    let b8 = a4.mul(&a4).neg();
    let disc = b2
        .mul(&b2)
        .mul(&b8)
        .neg()
        .sub(&konst(8).mul(&b4.mul(&b4).mul(&b4)));
    let closed = konst(4096)
        .mul(&gamma.mul(&gamma))
        .mul(&wp_sq.mul(&wp_sq))
        .mul(&wp2.mul(&wp2));
    let c4 = konst(16).mul(&a2.mul(&a2).sub(&konst(3).mul(&a4)));

    // minimal model at ∞: smallest k with deg a_i ≤ i·k
    let k = (a2.degree().div_ceil(2)).max(a4.degree().div_ceil(4));
    let deg_delta_min = 12 * k;
    let inf_multiplicative = c4.degree() == 4 * k;

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let wp_fac = wp_poly.factor_squarefree(&mut rng);
    let wp2_fac = wp2.factor_squarefree(&mut rng);
    let valuations = |fac: &[Poly]| -> Vec<PlaceValuation> {
        fac.iter()
            .map(|g| PlaceValuation {
                poly: poly_indices(g),
                degree: g.degree(),
                valuation: disc.valuation(g).0,
            })
            .collect()
    };
    let wp_factors = valuations(&wp_fac);
    let wp2_factors = valuations(&wp2_fac);
    let finite_multiplicative = wp_fac
        .iter()
        .chain(&wp2_fac)
        .all(|g| !c4.rem(g).is_zero());

    let ps = place_set(&f, params.a, params.limits.enumeration_cap)?;
    let mut expected: Vec<Vec<u64>> = ps.places.iter().map(|v| poly_indices(&v.poly)).collect();
    expected.push(poly_indices(&t));
    let mut got: Vec<Vec<u64>> = wp_factors.iter().map(|v| v.poly.clone()).collect();
    expected.sort();
    got.sort();

    let deg_conductor = wp_fac.iter().chain(&wp2_fac).map(|g| g.degree()).sum::<usize>() + 1;
    Ok(ReductionReport {
        disc_matches_closed_form: disc == closed,
        finite_disc_degree: disc.degree(),
        deg_delta_min,
        deg_conductor,
        b: deg_conductor - 4,
        height_exponent: (deg_delta_min / 12) as u64,
        wp_squarefree: wp_poly.gcd(&wp_poly.derivative()).degree() == 0,
        wp2_squarefree: wp2.gcd(&wp2.derivative()).degree() == 0,
        multiplicative_reduction: finite_multiplicative && inf_multiplicative,
        wp_factors,
        wp2_factors,
        wp_factors_are_places: expected == got,
        disc,
    })
}
