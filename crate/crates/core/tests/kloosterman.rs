use std::f64::consts::PI;

use aslfunc_core::cyclotomic::CycNum;
use aslfunc_core::field_arith::{base_field, make_field, subfield_embed};
use aslfunc_core::kloosterman::{
    kln, kloosterman_salie, kloosterman_sum, kloosterman_sum_with, lift_recurrence, minimal_angle_exponent,
    weil_certificate, AdditiveCharacter,
};
use aslfunc_core::places::place_set;
use aslfunc_core::Error;
use proptest::prelude::*;

#[test]
fn worked_sums_over_f3() {
    let f = make_field(3, 1, 1).unwrap();
    assert_eq!(kloosterman_sum(&f, f.from_int(1)).unwrap(), CycNum::from_int(3, 1));
    assert_eq!(kloosterman_sum(&f, f.from_int(2)).unwrap(), CycNum::from_int(3, -2));
    assert_eq!(kloosterman_salie(&f, f.from_int(1)).unwrap(), CycNum::from_int(3, 1));
    assert_eq!(kloosterman_salie(&f, f.from_int(2)).unwrap(), CycNum::from_int(3, -2));
    assert_eq!(kloosterman_sum(&f, f.zero()).unwrap_err(), Error::ZeroParameter);
    assert_eq!(kloosterman_salie(&f, f.zero()).unwrap_err(), Error::ZeroParameter);
}

#[test]
fn worked_place_values() {
    let base = base_field(3).unwrap();
    let ps = place_set(&base, 1, 1 << 22).unwrap();
    for v in &ps.places {
        let k = kln(v, base.one()).unwrap();
        assert_eq!(k.value, CycNum::from_int(3, 1));
        assert!((k.theta - (1.0 / (2.0 * 3f64.sqrt())).acos()).abs() < 1e-12);
        assert!((k.theta - 1.27795).abs() < 1e-5);
    }
}

#[test]
fn salie_frobenius_and_weil_on_small_fields() {
    for (p, e, k) in [(3, 1, 1), (3, 1, 2), (3, 1, 3), (3, 1, 4), (5, 1, 1), (5, 1, 2), (7, 1, 1), (7, 1, 2), (3, 2, 1), (3, 2, 2), (11, 1, 1), (13, 1, 1)] {
        let f = make_field(p, e, k).unwrap();
        let bound = 2.0 * (f.size() as f64).sqrt();
        for alpha in f.elements().skip(1) {
            let kl = kloosterman_sum(&f, alpha).unwrap();
            assert_eq!(kloosterman_salie(&f, alpha).unwrap(), kl);
            assert_eq!(kloosterman_sum(&f, f.frobenius(alpha)).unwrap(), kl);
            assert!(weil_certificate(&kl, f.size()));
            assert!(kl.embed_complex().re.abs() < bound);
        }
    }
}

#[test]
fn lifting_recurrence_along_towers() {
    for (p, e, d, big) in [(3, 1, 1, 2), (3, 1, 1, 4), (3, 1, 2, 4), (3, 1, 2, 6), (5, 1, 1, 3), (7, 1, 1, 2), (3, 2, 1, 2), (3, 2, 1, 3)] {
        let fd = make_field(p, e, d).unwrap();
        let fb = make_field(p, e, big).unwrap();
        let m = big / d;
        for alpha in fd.elements().skip(1) {
            let small = kloosterman_sum(&fd, alpha).unwrap();
            let lifted = kloosterman_sum(&fb, subfield_embed(alpha, &fd, &fb).unwrap()).unwrap();
            assert_eq!(lift_recurrence(&small, fd.size(), m), lifted, "p={p} e={e} {d}|{big}");
        }
    }
}

#[test]
fn improved_weil_bound_and_minimal_angle_at_places() {
    for (q, a) in [(3u64, 5u32), (5, 3), (7, 2), (9, 2), (11, 2)] {
        let base = base_field(q).unwrap();
        let ps = place_set(&base, a, 1 << 22).unwrap();
        let cp = minimal_angle_exponent(base.p());
        for gamma in base.elements().skip(1) {
            for v in &ps.places {
                let k = kln(v, gamma).unwrap();
                let qd = k.field_size as f64;
                let improved = 2.0 * qd.sqrt() * (1.0 - 2.0 / (PI * PI) * qd.powf(-2.0 * cp));
                assert!(k.real_value.abs() <= improved + 1e-12);
                assert!(k.theta.min(PI - k.theta) > qd.powf(-cp));
                assert!((k.real_value - 2.0 * qd.sqrt() * k.theta.cos()).abs() < 1e-9);
                assert_eq!(k.value.conj_bar(), k.value);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Kl_{ψ_b}(α) = Kl_ψ(b²α).
    #[test]
    fn twisted_character_rescales_the_argument(
        (p, e, k) in prop::sample::select(vec![(3u64, 1u32, 3u32), (5, 1, 2), (7, 1, 2), (3, 2, 2)]),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let f = make_field(p, e, k).unwrap();
        let base = f.base();
        let alpha = f.from_index(1 + a % (f.size() - 1)).unwrap();
        let twist = 1 + b % (base.size() - 1);
        let bb = f.embed_base(base.from_index(twist).unwrap());
        let lhs = kloosterman_sum_with(&f, alpha, AdditiveCharacter { twist }).unwrap();
        let rhs = kloosterman_sum(&f, f.mul(f.square(bb), alpha)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Salié agrees with the definition for random α in a field too large to
    /// sweep in a unit test.
    #[test]
    fn salie_on_large_fields(a in any::<u64>()) {
        let f = make_field(3, 1, 9).unwrap();
        let alpha = f.from_index(1 + a % (f.size() - 1)).unwrap();
        prop_assert_eq!(kloosterman_salie(&f, alpha).unwrap(), kloosterman_sum(&f, alpha).unwrap());
    }
}
