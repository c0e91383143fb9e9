use ehrhart_magic::analysis::{cycle_b_term, cycle_c, real_root_report, subsets};
use ehrhart_magic::bases::{is_magic_positive, is_palindromic, power_to_hstar, power_to_magic};
use ehrhart_magic::counting::{
    count_cycle_dual, count_stasheff_dual, spread_count, GraphShape, DEFAULT_BUDGET,
};
use ehrhart_magic::exactpoly::{big_binom, binom_linear};
use ehrhart_magic::families::{
    cycle_dual, stasheff_aux, stasheff_dual, type_a_dual, FamilyId, FamilyKind,
};
use ehrhart_magic::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=8).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn factorial(d: usize) -> Rational {
    (1..=d).fold(Rational::one(), |acc, k| {
        acc * Rational::from_integer(k.into())
    })
}

proptest! {
    #[test]
    fn distributive((p, q, r) in (small_poly(6), small_poly(6), small_poly(6))) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    }

    #[test]
    fn eval_is_a_ring_map((p, q, x) in (small_poly(6), small_poly(6), small_rational())) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
    }

    #[test]
    fn magic_endpoints((p, extra) in (small_poly(10), 0usize..3)) {
        let d = p.degree().unwrap_or(0) + extra;
        let m = power_to_magic(&p, d).unwrap();
        prop_assert_eq!(&m.a[0], &p.eval_int(0));
        let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(&m.a[d], &(sign * p.eval_int(-1)));
    }

    #[test]
    fn hstar_sum_is_normalised_volume(p in small_poly(10)) {
        prop_assume!(!p.is_zero());
        let d = p.degree().unwrap();
        let h = power_to_hstar(&p, d).unwrap();
        prop_assert_eq!(h.sum(), factorial(d) * p.leading().unwrap());
    }

    #[test]
    fn root_report_ignores_positive_scaling((p, c) in (small_poly(7), 1i64..50)) {
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&Rational::new(c.into(), 7.into()));
        prop_assert_eq!(real_root_report(&p).unwrap(), real_root_report(&scaled).unwrap());
    }

    #[test]
    fn products_of_linear_factors_are_real_rooted(roots in proptest::collection::vec(-6i64..6, 1..7)) {
        let p = roots.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::from_ints(&[-r, 1]));
        let report = real_root_report(&p).unwrap();
        prop_assert!(report.real_rooted);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(report.distinct_real_roots, distinct.len());
    }
}

#[test]
fn binom_linear_matches_binomials() {
    for d in 0..8usize {
        let p = binom_linear(1, d as i64, d);
        for n in 0..12u64 {
            let want = Rational::from_integer(BigInt::from(big_binom(n + d as u64, d as u64)));
            assert_eq!(p.eval_int(n as i64), want, "d={d} n={n}");
        }
    }
}

#[test]
fn stasheff_recurrence_holds() {
    // recompute the right-hand side from scratch, not from the cache
    let two_n1 = Poly::from_ints(&[1, 2]);
    let half = Rational::new(1.into(), 2.into());
    let n_n1_half = Poly::from_ints(&[0, 1, 1]).scale(&half);
    for d in 2..=30 {
        let rhs = &(&two_n1 * &stasheff_dual(d - 1)) - &(&n_n1_half * &stasheff_dual(d - 2));
        assert_eq!(stasheff_dual(d), rhs, "d={d}");
        assert_eq!(stasheff_dual(d).degree(), Some(d));
        assert!(stasheff_dual(d).eval_int(0).is_one());
    }
}

#[test]
fn stasheff_integral_only_in_low_dimensions() {
    // 6n^3 + 9n^2 + 5n + 1 at d = 3 is the one integral case past d = 1
    let integral: Vec<usize> = (0..=30)
        .filter(|&d| stasheff_dual(d).has_integer_coeffs())
        .collect();
    assert_eq!(integral, vec![0, 1, 3]);
}

#[test]
fn stasheff_and_aux_magic_positive() {
    for d in 1..=30 {
        for p in [stasheff_dual(d), stasheff_aux(d)] {
            assert!(is_magic_positive(&power_to_magic(&p, d).unwrap()).is_positive());
        }
    }
}

#[test]
fn cycle_palindromic_and_small_cases() {
    for d in 2..=50 {
        let m = power_to_magic(&cycle_dual(d), d).unwrap();
        assert!(is_palindromic(&m), "d={d}");
        assert!(m.a[0].is_one() && m.a[d].is_one());
    }
    let c3: FamilyId = "cycle:2".parse().unwrap();
    let k3: FamilyId = "complete:2".parse().unwrap();
    assert_eq!(c3.ehrhart(), k3.ehrhart());
}

#[test]
fn brute_counters_agree_with_closed_forms() {
    for d in 1..=5 {
        let st = stasheff_dual(d);
        let cy = cycle_dual(d);
        for n in 0..=3u64 {
            let c = count_stasheff_dual(d, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(Rational::from_integer(c.into()), st.eval_int(n as i64));
            let c = count_cycle_dual(d, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(Rational::from_integer(c.into()), cy.eval_int(n as i64));
        }
    }
}

#[test]
fn graph_counters_match_tree_and_complete_aliases() {
    for v in 2..=5usize {
        let tree = FamilyId::new(FamilyKind::TreeDual, v - 1)
            .unwrap()
            .ehrhart();
        let complete = FamilyId::new(FamilyKind::CompleteDual, v - 1)
            .unwrap()
            .ehrhart();
        for n in 0..=3u64 {
            let path = GraphShape::Path { v }
                .count(n, DEFAULT_BUDGET)
                .unwrap()
                .count;
            assert_eq!(Rational::from_integer(path.into()), tree.eval_int(n as i64));
            let kv = GraphShape::Complete { v }
                .count(n, DEFAULT_BUDGET)
                .unwrap()
                .count;
            assert_eq!(
                Rational::from_integer(kv.into()),
                complete.eval_int(n as i64)
            );
        }
    }
}

#[test]
fn complete_graph_spread_sum() {
    for v in 2..=6usize {
        for n in 0..=5u64 {
            let total: BigInt = (0..=n).map(|s| BigInt::from(spread_count(v - 1, s))).sum();
            assert_eq!(
                Rational::from_integer(total),
                type_a_dual(v - 1).eval_int(n as i64)
            );
        }
    }
}

#[test]
fn family_hstar_vectors_are_well_behaved() {
    for kind in FamilyKind::ALL {
        for d in kind.min_dim()..=20 {
            let f = FamilyId::new(kind, d).unwrap();
            let h = power_to_hstar(&f.ehrhart(), d).unwrap();
            assert!(
                h.h.iter().all(|x| x.is_integer() && !x.is_negative()),
                "{f}"
            );
            assert!(h.h.iter().eq(h.h.iter().rev()), "{f}");
            assert!(real_root_report(&h.as_poly()).unwrap().real_rooted, "{f}");
        }
    }
}

/// The three pair cases of the positivity argument for `a_2`, plus `a_1`.
#[test]
fn subset_sign_cases() {
    for d in 2..=40usize {
        let h = d / 2;
        let mut a1 = Rational::zero();
        for i in 1..=d {
            let c = cycle_c(d, &[i]);
            assert!(c.is_positive(), "d={d} I={{{i}}}");
            if i > h {
                assert_eq!(c, cycle_b_term(d, 0, &[i]));
            }
            a1 += c;
        }
        let mut a2 = Rational::zero();
        for pair in subsets(d, 2) {
            let (i, j) = (pair[0], pair[1]);
            let c = cycle_c(d, &pair);
            assert!(c.is_positive(), "d={d} I={{{i},{j}}}");
            if i > h {
                // every shifted term vanishes
                assert_eq!(c, cycle_b_term(d, 0, &pair));
            }
            if j <= h {
                let want =
                    Rational::new(BigInt::from(i * j), BigInt::from((d + 1 - i) * (d + 1 - j)));
                assert_eq!(c, want);
            }
            a2 += c;
        }
        let m = power_to_magic(&cycle_dual(d), d).unwrap();
        assert_eq!(a1, m.a[1], "a_1 at d={d}");
        assert_eq!(a2, m.a[2], "a_2 at d={d}");
    }
}

#[test]
fn vanishing_rule_for_shifted_terms() {
    for d in 2..=9usize {
        for k in 0..=d {
            for subset in subsets(d, k) {
                for i in 1..=d / 2 {
                    let vanish = !subset.contains(&i) || subset.contains(&(d + 1 - i));
                    if vanish {
                        assert!(cycle_b_term(d, i, &subset).is_zero());
                    }
                }
            }
        }
    }
}
