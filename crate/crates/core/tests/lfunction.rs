use aslfunc_core::curve_oracle::CurveParams;
use aslfunc_core::family::Family;
use aslfunc_core::kloosterman::AdditiveCharacter;
use aslfunc_core::lfunction::{
    analytic_rank, l_polynomial, l_polynomial_from, series_coefficients, special_value, verify_functional_equation,
    verify_series, LPoly,
};
use aslfunc_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn worked() -> LPoly {
    l_polynomial(&CurveParams::new(3, 1, 1).unwrap()).unwrap()
}

#[test]
fn worked_polynomial_factors() {
    let l = worked();
    assert_eq!(l.coeffs_i64(), vec![1, 4, -8, -78, -72, 324, 729]);
    // (1 − 3T)²(1 + 5T + 9T²)²
    let mut prod = vec![BigInt::from(1)];
    for f in [vec![1, -3], vec![1, -3], vec![1, 5, 9], vec![1, 5, 9]] {
        let mut next = vec![BigInt::from(0); prod.len() + f.len() - 1];
        for (i, a) in prod.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        prod = next;
    }
    assert_eq!(l.coeffs, prod);
    assert_eq!(series_coefficients(&l, 1), vec![BigInt::from(4)]);
    assert_eq!(analytic_rank(&l), 2);
    assert_eq!(verify_functional_equation(&l).unwrap(), 1);
}

#[test]
fn worked_special_value() {
    let r = special_value(&CurveParams::new(3, 1, 1).unwrap()).unwrap();
    assert_eq!(r.special_value, BigRational::new(121.into(), 9.into()));
    assert_eq!(r.numerator, BigInt::from(9801));
    assert!((r.log_ratio - 0.39422).abs() < 1e-5);
    assert!((r.log_special_value - r.log_special_value_from_angles).abs() < 1e-9);
    // L(1/q) vanishes to order exactly ρ
    let third = BigRational::new(1.into(), 3.into());
    assert_eq!(worked().eval(&third), BigRational::from_integer(0.into()));
}

#[test]
fn json_round_trip() {
    let l = worked();
    let j = l.to_json();
    assert_eq!(j.coeffs[0], "1");
    assert_eq!(LPoly::from_json(&j).unwrap(), l);
}

/// Perturbing c_k breaks the symmetry unless k is the self-paired middle
/// coefficient of a sign +1 polynomial.
#[test]
fn mutations_break_the_functional_equation() {
    for (q, a, g) in [(3u64, 1u32, 1u64), (3, 2, 1), (5, 1, 2), (7, 1, 3)] {
        let l = l_polynomial(&CurveParams::new(q, a, g).unwrap()).unwrap();
        let eps = verify_functional_equation(&l).unwrap();
        let b = l.degree();
        for k in 0..=b {
            let mut m = l.clone();
            m.coeffs[k] += 1;
            let r = verify_functional_equation(&m);
            if eps == 1 && 2 * k == b {
                assert!(r.is_ok(), "middle coefficient is self-paired");
            } else {
                assert!(matches!(r, Err(Error::FunctionalEquationViolated { .. })), "q={q} a={a} k={k}");
            }
        }
    }
}

#[test]
fn character_choice_does_not_change_l() {
    for (q, a, g) in [(3u64, 2u32, 1u64), (5, 2, 3), (7, 1, 2), (9, 2, 5)] {
        let p = CurveParams::new(q, a, g).unwrap();
        let reference = l_polynomial(&p).unwrap();
        for twist in 1..q {
            for c in 1..p.p {
                let fam = Family::with_character(&p, AdditiveCharacter { twist }, c).unwrap();
                assert_eq!(l_polynomial_from(&fam).unwrap(), reference, "q={q} twist={twist} c={c}");
            }
        }
    }
}

#[test]
fn embeddings_permute_the_angles() {
    for (q, a, g) in [(5u64, 2u32, 1u64), (7, 2, 3), (9, 2, 2)] {
        let p = CurveParams::new(q, a, g).unwrap();
        let sorted = |c: u64| {
            let fam = Family::with_character(&p, AdditiveCharacter::default(), c).unwrap();
            let mut t: Vec<f64> = fam.klns.iter().map(|k| k.theta).collect();
            t.sort_by(f64::total_cmp);
            t
        };
        let base = sorted(1);
        for c in 2..p.p {
            for (x, y) in base.iter().zip(sorted(c)) {
                assert!((x - y).abs() < 1e-9, "q={q} c={c}");
            }
        }
    }
}

#[test]
fn series_check_reports_the_first_mismatch() {
    let p = CurveParams::new(3, 1, 1).unwrap();
    let mut l = worked();
    assert_eq!(verify_series(&p, &l, 4).unwrap().matched.len(), 4);
    l.coeffs[2] += 1;
    match verify_series(&p, &l, 4) {
        Err(Error::MismatchAt { n, .. }) => assert_eq!(n, 2),
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn assembled_polynomials_are_consistent(q in prop::sample::select(vec![3u64, 5, 7, 9]), a in 1u32..4, g in 1u64..9) {
        prop_assume!(g < q && q.pow(a) <= 729);
        let p = CurveParams::new(q, a, g).unwrap();
        let fam = Family::new(&p).unwrap();
        let l = l_polynomial_from(&fam).unwrap();
        prop_assert_eq!(l.degree(), p.expected_degree());
        prop_assert_eq!(&l.coeffs[0], &BigInt::from(1));
        let eps = verify_functional_equation(&l).unwrap();
        prop_assert_eq!(eps as i32, if fam.rank().is_multiple_of(2) { 1 } else { -1 });
        prop_assert_eq!(analytic_rank(&l), fam.rank());
        let r = aslfunc_core::lfunction::special_value_from(&fam, &l).unwrap();
        prop_assert!(r.numerator > BigInt::from(0));
        prop_assert!(r.log_ratio >= -1.0);
        prop_assert!(r.log_ratio <= r.log_ratio_upper + 1e-9);
        prop_assert!((r.log_special_value - r.log_special_value_from_angles).abs() < 1e-6 * r.log_special_value.abs().max(1.0));
        let n = (1..=3).take_while(|&n| q.pow(2 * n) <= 1_000_000).last().unwrap_or(1);
        prop_assert!(verify_series(&p, &l, n).is_ok());
    }
}
