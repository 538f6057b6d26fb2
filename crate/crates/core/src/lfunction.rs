//! The L-polynomial
//!
//!   L(T) = Π_{v∈P_q(a)} (1 − q^d T^d)(1 − (Kln_γ(v)² − 2q^d) T^d + q^{2d} T^{2d}),
//!
//! with d = deg v, assembled exactly in Z[ζ_p][T] and reduced to Z[T] once
//! at the end.  Rank, special value, functional equation and the series
//! check against point counts are derived from it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curve_oracle::{dirichlet_coefficient, CurveParams};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::family::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly {
    pub q: u64,
    pub a: u32,
    /// Index of γ in the enumeration of F_q.
    pub gamma: u64,
    pub coeffs: Vec<BigInt>,
}

/// JSON shape of an L-polynomial; coefficients are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LPolyJson {
    pub q: u64,
    pub a: u32,
    pub gamma: u64,
    pub coeffs: Vec<String>,
}

impl LPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as i64; panics if any overflows.
    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }

    pub fn to_json(&self) -> LPolyJson {
        LPolyJson {
            q: self.q,
            a: self.a,
            gamma: self.gamma,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &LPolyJson) -> Result<LPoly> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::InvalidParameter(format!("bad coefficient {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LPoly {
            q: j.q,
            a: j.a,
            gamma: j.gamma,
            coeffs,
        })
    }

    /// L(x) for rational x.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }
}

pub fn l_polynomial(params: &CurveParams) -> Result<LPoly> {
    l_polynomial_from(&Family::new(params)?)
}

/// Assemble the product over places in cyclotomic coefficients, then apply
/// the integrality gate to every coefficient.
pub fn l_polynomial_from(fam: &Family) -> Result<LPoly> {
    let params = &fam.params;
    let p = params.p;
    let b = params.expected_degree();
    let mut coeffs = vec![CycNum::zero(p); b + 1];
    coeffs[0] = CycNum::one(p);
    let mut scratch = vec![BigInt::zero(); p as usize];
    let mut deg = 0usize;
    for (v, kl) in fam.places.places.iter().zip(&fam.klns) {
        let d = v.degree as usize;
        let qd = BigInt::from(params.q).pow(v.degree);
        let q2d = &qd * &qd;
        if deg + 3 * d > b {
            return Err(Error::InvalidParameter("place degrees exceed q^a − 1".into()));
        }
        let neg_qd = -&qd;
        for k in (d..=deg + d).rev() {
            let (lo, hi) = coeffs.split_at_mut(k);
            hi[0].add_scaled(&lo[k - d], &neg_qd);
        }
        deg += d;
        let c = kl
            .value
            .square()
            .sub(&CycNum::from_int(p, &qd * 2u32))
            .small_coords()
            .ok_or_else(|| Error::InvalidParameter("local factor coefficient too large".into()))?;
        for k in (d..=deg + 2 * d).rev() {
            let (lo, hi) = coeffs.split_at_mut(k);
            hi[0].sub_mul_small(&lo[k - d], &c, &mut scratch);
            if k >= 2 * d {
                hi[0].add_scaled(&lo[k - 2 * d], &q2d);
            }
        }
        deg += 2 * d;
    }
    if deg != b {
        return Err(Error::InvalidParameter(format!("assembled degree {deg} != {b}")));
    }
    let coeffs = coeffs
        .iter()
        .map(|c| c.to_rational_integer())
        .collect::<Result<Vec<_>>>()?;
    Ok(LPoly {
        q: params.q,
        a: params.a,
        gamma: params.gamma.index(),
        coeffs,
    })
}

/// Exact quotient of f by (1 − qT) when q^{-1} is a root.
fn divide_one_minus_qt(f: &[BigInt], q: &BigInt) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(f.len());
    let mut prev = BigInt::zero();
    for c in f {
        prev = c + q * &prev;
        out.push(prev.clone());
    }
    if out.pop().map(|r| r.is_zero()).unwrap_or(false) {
        Some(out)
    } else {
        None
    }
}

/// Multiplicity of T = 1/q as a root, by repeated exact division.
pub fn analytic_rank(l: &LPoly) -> usize {
    let q = BigInt::from(l.q);
    let mut f = l.coeffs.clone();
    let mut rho = 0;
    while f.len() > 1 {
        match divide_one_minus_qt(&f, &q) {
            Some(g) => {
                f = g;
                rho += 1;
            }
            None => break,
        }
    }
    rho
}

/// ε with c_{b−k}·q^{2k} = ε·q^b·c_k for all k.
pub fn verify_functional_equation(l: &LPoly) -> Result<i8> {
    let b = l.degree();
    let q = BigInt::from(l.q);
    let qb = q.pow(b as u32);
    let eps: i8 = if l.coeffs[b] == &qb * &l.coeffs[0] {
        1
    } else if l.coeffs[b] == -(&qb * &l.coeffs[0]) {
        -1
    } else {
        return Err(Error::FunctionalEquationViolated { k: 0 });
    };
    let mut q2k = BigInt::one();
    let q2 = &q * &q;
    for k in 0..=b {
        let lhs = &l.coeffs[b - k] * &q2k;
        let rhs = &l.coeffs[k] * &qb * eps as i32;
        if lhs != rhs {
            return Err(Error::FunctionalEquationViolated { k });
        }
        q2k *= &q2;
    }
    Ok(eps)
}

/// S_1, …, S_{n_max} with log L = Σ S_n T^n / n (Newton's identities).
pub fn series_coefficients(l: &LPoly, n_max: usize) -> Vec<BigInt> {
    let c = |k: usize| l.coeffs.get(k).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut v = c(n) * n;
        for k in 1..n {
            v -= &s[k - 1] * c(n - k);
        }
        s.push(v);
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    /// (n, S_n) pairs that matched.
    pub matched: Vec<(u32, String)>,
}

/// Compare S_n from L with the point-count oracle for 1 ≤ n ≤ n_max.
pub fn verify_series(params: &CurveParams, l: &LPoly, n_max: u32) -> Result<SeriesReport> {
    let from_l = series_coefficients(l, n_max as usize);
    let mut matched = Vec::new();
    for n in 1..=n_max {
        let pts = BigInt::from(dirichlet_coefficient(params, n)?);
        let sl = &from_l[n as usize - 1];
        if *sl != pts {
            return Err(Error::MismatchAt {
                n,
                from_l: sl.to_string(),
                from_points: pts.to_string(),
            });
        }
        matched.push((n, pts.to_string()));
    }
    Ok(SeriesReport { matched })
}

#[derive(Clone, Debug)]
pub struct SpecialValueReport {
    pub rank: usize,
    pub special_value: BigRational,
    /// L*·q^b, a positive integer.
    pub numerator: BigInt,
    pub b: usize,
    pub log_special_value: f64,
    /// exp(log L*); infinite when it overflows a double.
    pub float_value: f64,
    pub log_ratio: f64,
    /// (Σ_v log 4d_v)/(b log q), the trivial upper bound for the ratio.
    pub log_ratio_upper: f64,
    /// Σ_v log(4d_v sin²θ_v), the float route to log L*.
    pub log_special_value_from_angles: f64,
}

/// Natural log of a positive big integer.
pub fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn rational_ln(x: &BigRational) -> f64 {
    big_ln(x.numer()) - big_ln(x.denom())
}

pub fn special_value(params: &CurveParams) -> Result<SpecialValueReport> {
    let fam = Family::new(params)?;
    let l = l_polynomial_from(&fam)?;
    special_value_from(&fam, &l)
}

pub fn special_value_from(fam: &Family, l: &LPoly) -> Result<SpecialValueReport> {
    let params = &fam.params;
    let q = BigInt::from(params.q);
    let b = l.degree();

    let mut rank = 0usize;
    let mut f = l.coeffs.clone();
    while let Some(g) = divide_one_minus_qt(&f, &q) {
        f = g;
        rank += 1;
    }
    // R(1/q) = Σ r_k q^{−k}
    let top = f.len() - 1;
    let num_a = f
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (k, r)| acc + r * q.pow((top - k) as u32));
    let route_a = BigRational::new(num_a, q.pow(top as u32));

    let p = params.p;
    let mut prod = CycNum::one(p);
    let mut degs = BigInt::one();
    let mut exponent = 0u32;
    for (v, kl) in fam.places.places.iter().zip(&fam.klns) {
        let four_qd = BigInt::from(params.q).pow(v.degree) * 4;
        prod = prod.mul(&CycNum::from_int(p, four_qd).sub(&kl.value.square()));
        degs *= v.degree;
        exponent += v.degree;
    }
    let prod = prod.to_rational_integer()?;
    let route_b = BigRational::new(prod * degs, q.pow(exponent));

    if route_a != route_b {
        return Err(Error::SpecialValueMismatch {
            division: route_a.to_string(),
            product: route_b.to_string(),
        });
    }
    if !route_a.is_positive() {
        return Err(Error::DivisionByZero("special value is not positive".into()));
    }
    let scaled = &route_a * BigRational::from_integer(q.pow(b as u32));
    if !scaled.is_integer() {
        return Err(Error::InvalidParameter("L*·q^b is not an integer".into()));
    }
    let log_sv = rational_ln(&route_a);
    let logq = (params.q as f64).ln();
    let sum_log4d: f64 = fam
        .places
        .places
        .iter()
        .map(|v| (4.0 * v.degree as f64).ln())
        .sum();
    let from_angles: f64 = fam
        .places
        .places
        .iter()
        .zip(&fam.klns)
        .map(|(v, kl)| (4.0 * v.degree as f64).ln() + kl.theta.sin().powi(2).ln())
        .sum();
    Ok(SpecialValueReport {
        rank,
        numerator: scaled.to_integer(),
        special_value: route_a,
        b,
        log_special_value: log_sv,
        float_value: log_sv.exp(),
        log_ratio: log_sv / (b as f64 * logq),
        log_ratio_upper: sum_log4d / (b as f64 * logq),
        log_special_value_from_angles: from_angles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> (Family, LPoly) {
        let params = CurveParams::new(3, 1, 1).unwrap();
        let fam = Family::new(&params).unwrap();
        let l = l_polynomial_from(&fam).unwrap();
        (fam, l)
    }

    #[test]
    fn worked_instance_polynomial() {
        let (_, l) = worked();
        assert_eq!(l.coeffs_i64(), vec![1, 4, -8, -78, -72, 324, 729]);
        assert_eq!(l.degree(), 6);
    }

    #[test]
    fn worked_instance_rank_and_sign() {
        let (_, l) = worked();
        assert_eq!(analytic_rank(&l), 2);
        assert_eq!(verify_functional_equation(&l).unwrap(), 1);
    }

    #[test]
    fn worked_instance_special_value() {
        let (fam, l) = worked();
        let r = special_value_from(&fam, &l).unwrap();
        assert_eq!(r.special_value, BigRational::new(121.into(), 9.into()));
        assert_eq!(r.numerator, BigInt::from(9801));
        assert!((r.log_ratio - 0.3942).abs() < 1e-4);
        assert!((r.log_special_value_from_angles - r.log_special_value).abs() < 1e-9);
    }

    #[test]
    fn worked_instance_series() {
        let (fam, l) = worked();
        let s = series_coefficients(&l, 2);
        assert_eq!(s[0], BigInt::from(4));
        verify_series(&fam.params, &l, 2).unwrap();
        assert!(verify_series(&fam.params, &l, 0).unwrap().matched.is_empty());
    }

    #[test]
    fn mutation_breaks_functional_equation() {
        let (_, l) = worked();
        let b = l.degree();
        for k in 0..=b {
            let mut m = l.clone();
            m.coeffs[k] += 1;
            if k == b / 2 {
                // the middle coefficient is its own partner when ε = +1
                assert_eq!(verify_functional_equation(&m).unwrap(), 1);
            } else {
                assert!(verify_functional_equation(&m).is_err(), "k={k}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let (_, l) = worked();
        assert_eq!(LPoly::from_json(&l.to_json()).unwrap(), l);
    }
}
