use std::collections::BTreeSet;

use aslfunc_core::field_arith::{base_field, make_field};
use aslfunc_core::kloosterman::{kln_at_root, AdditiveCharacter};
use aslfunc_core::places::{count_places, divisors, irreducibles, minimal_polynomial, place_set};

const CAP: u64 = 1 << 22;

/// (q, a) pairs of the frozen grid.
fn grid() -> Vec<(u64, u32)> {
    let mut g = Vec::new();
    for q in [3u64, 5, 7, 9] {
        let mut a = 1;
        while q.pow(a) <= 2187 {
            g.push((q, a));
            a += 1;
        }
    }
    g
}

#[test]
fn sieve_matches_mobius_count() {
    for (q, dmax) in [(3u64, 7u32), (5, 4), (7, 3), (9, 3), (11, 2)] {
        let base = base_field(q).unwrap();
        for d in 1..=dmax {
            let polys = irreducibles(&base, d, CAP).unwrap();
            assert_eq!(polys.len() as u128, count_places(q, d), "q={q} d={d}");
            assert!(polys.iter().all(|f| f.degree() == d as usize && f.is_monic()));
        }
    }
}

#[test]
fn places_partition_the_multiplicative_group() {
    for (q, a) in grid() {
        let ps = place_set(&base_field(q).unwrap(), a, CAP).unwrap();
        assert_eq!(ps.degree_sum(), q.pow(a) - 1, "q={q} a={a}");
        let expect: u128 = divisors(a).into_iter().map(|d| count_places(q, d)).sum();
        assert_eq!(ps.len() as u128, expect);
        let polys: BTreeSet<Vec<u64>> = ps
            .places
            .iter()
            .map(|v| v.poly.coeffs().iter().map(|c| c.index()).collect())
            .collect();
        assert_eq!(polys.len(), ps.len(), "places are distinct");
    }
}

#[test]
fn place_orbits_have_the_right_size() {
    for (q, a) in grid() {
        let ps = place_set(&base_field(q).unwrap(), a, CAP).unwrap();
        for v in &ps.places {
            let fv = ps.residue_field(v);
            let mut orbit = 1;
            let mut y = fv.frobenius(v.beta);
            while y != v.beta {
                orbit += 1;
                y = fv.frobenius(y);
            }
            assert_eq!(orbit, v.degree);
            assert_eq!(minimal_polynomial(&fv, v.beta).unwrap().coeffs(), v.poly.coeffs());
            assert!(v.poly.eval_in(&fv, v.beta).is_zero());
            assert!(v.poly.is_monic());
        }
    }
}

#[test]
fn prime_number_theorem_sandwich() {
    for q in [3u64, 5, 7, 9, 11, 13] {
        for n in 2..=12u32 {
            let qn = (q as i128).pow(n);
            if qn > 1 << 60 {
                break;
            }
            let npi = n as i128 * count_places(q, n) as i128;
            assert!(npi <= qn, "q={q} n={n}");
            assert!(below_by_at_most_2q_sqrt(qn, npi, q), "q={q} n={n}");
        }
    }
}

/// value ≥ x − 2q·√x, compared exactly by squaring.
fn below_by_at_most_2q_sqrt(x: i128, value: i128, q: u64) -> bool {
    let d = x - value;
    d <= 0 || d * d <= 4 * (q as i128).pow(2) * x
}

#[test]
fn rank_lower_bound_shape() {
    for (q, a) in grid() {
        let ps = place_set(&base_field(q).unwrap(), a, CAP).unwrap();
        let qa = q.pow(a) as i128;
        assert!(below_by_at_most_2q_sqrt(qa, ps.len() as i128 * a as i128, q), "q={q} a={a}");
    }
}

#[test]
fn kloosterman_value_does_not_depend_on_the_root() {
    for (q, a) in [(3u64, 4u32), (5, 3), (7, 2), (9, 2), (3, 6)] {
        let base = base_field(q).unwrap();
        let ps = place_set(&base, a, CAP).unwrap();
        for gamma in base.elements().skip(1) {
            for v in ps.places.iter().filter(|v| v.degree > 1) {
                let fv = make_field(base.p(), base.e(), v.degree).unwrap();
                let first = kln_at_root(&fv, v.beta, gamma, AdditiveCharacter::default(), 1).unwrap();
                let mut beta = fv.frobenius(v.beta);
                for _ in 1..v.degree {
                    let other = kln_at_root(&fv, beta, gamma, AdditiveCharacter::default(), 1).unwrap();
                    assert_eq!(other.value, first.value);
                    beta = fv.frobenius(beta);
                }
            }
        }
    }
}

#[test]
fn worked_places() {
    let ps = place_set(&base_field(3).unwrap(), 1, CAP).unwrap();
    let polys: Vec<Vec<u64>> = ps.places.iter().map(|v| v.poly.coeffs().iter().map(|c| c.index()).collect()).collect();
    assert_eq!(polys, vec![vec![1, 1], vec![2, 1]]);
    assert_eq!(place_set(&base_field(3).unwrap(), 7, CAP).unwrap().len(), 314);
}
