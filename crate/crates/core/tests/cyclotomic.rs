use aslfunc_core::cyclotomic::CycNum;
use aslfunc_core::field_arith::make_field;
use aslfunc_core::kloosterman::kloosterman_sum;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn cyc(p: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-6i64..=6, p as usize).prop_map(|c| CycNum::from_counts(&c))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

/// Determinant by fraction-free Gaussian elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    prev * sign
}

/// Res(Φ_p, f) from the Sylvester matrix; f given low degree first.
fn resultant_with_cyclotomic(p: usize, f: &[BigInt]) -> BigInt {
    let mut f = f.to_vec();
    while f.len() > 1 && f.last().unwrap().is_zero() {
        f.pop();
    }
    let m = p - 1;
    let n = f.len() - 1;
    if n == 0 {
        return f[0].pow(m as u32);
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for j in 0..=m {
            s[r][r + j] = BigInt::from(1);
        }
    }
    for r in 0..m {
        for (j, c) in f.iter().rev().enumerate() {
            s[n + r][r + j] = c.clone();
        }
    }
    bareiss(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((x, y, z) in prime().prop_flat_map(|p| (cyc(p), cyc(p), cyc(p)))) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert_eq!(x.mul(&CycNum::one(x.p())), x.clone());
    }

    #[test]
    fn conjugation_matches_complex_conjugate(x in prime().prop_flat_map(cyc)) {
        let a = x.conj_bar().embed_complex();
        let b = x.embed_complex().conj();
        prop_assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn galois_action_matches_embeddings(x in prime().prop_flat_map(cyc), c in 1u64..13) {
        let p = x.p();
        prop_assume!(c % p != 0);
        let a = x.galois(c).embed_complex();
        let b = x.embed_complex_with(c);
        prop_assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn norm_matches_resultant_and_float_product(counts in prime().prop_flat_map(|p| prop::collection::vec(-4i64..=4, p as usize))) {
        let p = counts.len();
        let x = CycNum::from_counts(&counts);
        let exact = x.norm();
        let f: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        prop_assert_eq!(&exact, &resultant_with_cyclotomic(p, &f));
        let float = (1..p as u64).fold(num_complex::Complex64::new(1.0, 0.0), |acc, c| acc * x.embed_complex_with(c));
        let e = exact.to_f64().unwrap();
        prop_assert!(float.im.abs() <= 1e-6 * e.abs().max(1.0));
        prop_assert!((float.re - e).abs() <= 1e-6 * e.abs().max(1.0));
    }
}

#[test]
fn integrality_gate() {
    assert_eq!(CycNum::from_int(5, 7).to_rational_integer().unwrap(), BigInt::from(7));
    assert!(CycNum::zeta_pow(5, 1).to_rational_integer().is_err());
    // 1 + ζ + … + ζ^{p−1} = 0
    let s = (0..7).fold(CycNum::zero(7), |acc, t| acc.add(&CycNum::zeta_pow(7, t)));
    assert!(s.is_zero());
}

#[test]
fn kloosterman_sums_are_totally_real() {
    for (p, e, k) in [(3, 1, 4), (5, 1, 2), (7, 1, 2), (3, 2, 2)] {
        let f = make_field(p, e, k).unwrap();
        for alpha in f.elements().skip(1) {
            let kl = kloosterman_sum(&f, alpha).unwrap();
            assert_eq!(kl.conj_bar(), kl);
            assert!(kl.embed_complex().im.abs() < 1e-9);
            assert!(kl.max_abs_coord().abs() < BigInt::from(f.size()));
        }
    }
}
