//! Cross-module invariants and property tests beyond the acceptance gate.

use artin_floor::bound_search::{
    build_aux, eval_bound, search_bound, signature_bound, AuxMethod, ExponentMode, SearchOptions,
};
use artin_floor::bundled;
use artin_floor::char_table::ClassFunction;
use artin_floor::factored::FactoredInteger;
use artin_floor::kernel::{big_m, theta, DEFAULT_TOL};
use artin_floor::tame::{c_hat, c_tame};
use artin_floor::transfer::{extract_segment, parse_gfl, solve_in_perm_basis};
use artin_floor::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Iterated prime power maps must agree no matter the factorization order;
/// this walks the divisors of each element order with the prime factors
/// applied smallest-first and largest-first.
#[test]
fn power_map_paths_agree() {
    for t in bundled::all() {
        for idx in 0..t.class_count() {
            let ord = t.classes[idx].element_order;
            for k in 1..=ord {
                if ord % k != 0 {
                    continue;
                }
                let forward = t.class_power(idx, k);
                // Largest prime factor first.
                let mut at = idx;
                let mut primes = Vec::new();
                let mut m = k;
                let mut p = 2;
                while m > 1 {
                    while m % p == 0 {
                        primes.push(p);
                        m /= p;
                    }
                    p += 1;
                }
                for &p in primes.iter().rev() {
                    at = t.classes[at].power_map[&p];
                }
                assert_eq!(forward, at, "{} class {idx} power {k}", t.group_name);
            }
        }
    }
}

/// The tame exponent of a genuine character is a count of non-unital
/// eigenvalues, so it must be a nonnegative integer.
#[test]
fn tame_exponents_of_characters_are_nonnegative_integers() {
    for t in bundled::all() {
        for row in t.chars.iter().chain(&t.perm_chars) {
            let f = row.class_function();
            for idx in 0..t.class_count() {
                let v = c_tame(&t, &f, idx);
                assert!(
                    v.is_integer() && !v.is_negative(),
                    "{}::{} at {}: {v}",
                    t.group_name,
                    row.label,
                    t.classes[idx].label
                );
            }
        }
    }
}

#[test]
fn m_is_monotone_in_signature() {
    for n in [2.0, 10.0, 100.0] {
        let lo = big_m(n, 0.0, 1.0, DEFAULT_TOL).unwrap().value;
        let mid = big_m(n, n / 2.0, 1.0, DEFAULT_TOL).unwrap().value;
        let hi = big_m(n, n, 1.0, DEFAULT_TOL).unwrap().value;
        assert!(lo <= mid && mid <= hi, "n = {n}: {lo}, {mid}, {hi}");
    }
}

#[test]
fn m_scale_invariance() {
    for k in [2.0, 10.0] {
        for (n, r, u) in [(3.0, 1.0, 1.0), (8.0, -2.0, 2.0), (60.0, 0.0, 1.0)] {
            let a = big_m(n, r, u, DEFAULT_TOL).unwrap().value;
            let b = big_m(k * n, k * r, k * u, DEFAULT_TOL).unwrap().value;
            assert!(
                ((a - b) / a).abs() <= 10.0 * DEFAULT_TOL.max(1e-10),
                "k = {k}, ({n}, {r}, {u}): {a} vs {b}"
            );
        }
    }
}

#[test]
fn totally_real_sandwich_below_theta() {
    let m2 = big_m(1e2, 1e2, 1.0, DEFAULT_TOL).unwrap().value;
    let m4 = big_m(1e4, 1e4, 1.0, DEFAULT_TOL).unwrap().value;
    let m6 = big_m(1e6, 1e6, 1.0, DEFAULT_TOL).unwrap().value;
    assert!(m2 < m4 && m4 < m6 && m6 < theta());
}

/// With complex conjugation at the identity the quadratic auxiliary bound
/// dominates the square one.
#[test]
fn quadratic_beats_square_in_the_totally_real_case() {
    for (t, label) in [(bundled::c5(), "4"), (bundled::s3(), "2")] {
        let chi = t.char_row(label).unwrap().class_function();
        let sq = build_aux(&t, &chi, AuxMethod::Square).unwrap();
        let quad = build_aux(&t, &chi, AuxMethod::Quadratic).unwrap();
        let s = eval_bound(&t, &chi, 0, &sq, ExponentMode::AlphaHat, DEFAULT_TOL).unwrap();
        let q = eval_bound(&t, &chi, 0, &quad, ExponentMode::AlphaHat, DEFAULT_TOL).unwrap();
        assert!(
            q.value >= s.value * (1.0 - 1e-12),
            "{} chi_{label}: quad {} vs square {}",
            t.group_name,
            q.value,
            s.value
        );
    }
}

/// When the second-largest character value is n - 2, the square-auxiliary
/// bound coincides with the degree-based signature bound.
#[test]
fn square_aux_matches_signature_bound_at_hat_n_minus_2() {
    let s5 = bundled::s5();
    let chi = s5.char_row("4a").unwrap().class_function();
    let sq = build_aux(&s5, &chi, AuxMethod::Square).unwrap();
    for (class, r) in [("2A", 0.0), ("2B", 2.0)] {
        let idx = s5.class_index(class).unwrap();
        let via_square =
            eval_bound(&s5, &chi, idx, &sq, ExponentMode::AlphaHat, DEFAULT_TOL).unwrap();
        let via_signature = signature_bound(4.0, r, 1.0, DEFAULT_TOL).unwrap();
        assert!(
            ((via_square.value - via_signature) / via_signature).abs() < 1e-7,
            "c = {class}: {} vs {via_signature}",
            via_square.value
        );
    }
}

#[test]
fn search_is_deterministic() {
    let s5 = bundled::s5();
    let a = search_bound(&s5, "4b", &SearchOptions::default()).unwrap();
    let b = search_bound(&s5, "4b", &SearchOptions::default()).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.tag(), b.tag());
    assert_eq!(a.source, b.source);
}

#[test]
fn segment_extraction_is_deterministic() {
    let s5 = bundled::s5();
    let gfl = parse_gfl(bundled::s5_tame_demo_gfl()).unwrap();
    let sol = solve_in_perm_basis(&s5, "6a", &gfl.uses).unwrap();
    let bound = rat(10);
    let a = extract_segment(&s5, &sol, &gfl.fields, &bound).unwrap();
    let b = extract_segment(&s5, &sol, &gfl.fields, &bound).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

/// Signed-permutation (Weyl group) conductor arithmetic: with synthetic
/// records honoring D_{phi_2k} = D_{phi_k} * D_{chi_k} and the index-2
/// divisibility D_{phi_k}^2 | D_{phi_2k}, the reflection character's root
/// conductor dominates the degree-k field's root discriminant.
#[test]
fn weyl_records_order_root_conductors() {
    let d_phi_k = FactoredInteger::parse("2^4,3^2").unwrap();
    let d_chi_k = d_phi_k.mul(&FactoredInteger::parse("3^2,7^4").unwrap());
    let d_phi_2k = d_phi_k.mul(&d_chi_k);
    assert!(d_phi_k.pow(2).divides(&d_phi_2k));
    // D_{phi_k} | D_{chi_k}, hence with equal degree k the roots order.
    assert!(d_phi_k.divides(&d_chi_k));
    assert_eq!(
        artin_floor::factored::cmp_roots(&d_phi_k, 6, &d_chi_k, 6),
        std::cmp::Ordering::Less
    );
}

proptest! {
    /// Tame quantities are linear in the class function.
    #[test]
    fn tame_additivity(fv in proptest::collection::vec(-30i64..30, 7),
                       gv in proptest::collection::vec(-30i64..30, 7)) {
        let s5 = bundled::s5();
        let f = ClassFunction::from_integers(&fv);
        let g = ClassFunction::from_integers(&gv);
        let sum = f.add(&g).unwrap();
        for idx in 0..s5.class_count() {
            prop_assert_eq!(
                c_tame(&s5, &sum, idx),
                c_tame(&s5, &f, idx) + c_tame(&s5, &g, idx)
            );
            prop_assert_eq!(
                c_hat(&s5, &sum, idx),
                c_hat(&s5, &f, idx) + c_hat(&s5, &g, idx)
            );
        }
    }

    /// Factored multiplication is a homomorphism onto the integers.
    #[test]
    fn factored_mul_matches_values(ea in proptest::collection::vec(0i64..6, 3),
                                   eb in proptest::collection::vec(0i64..6, 3)) {
        let primes = [2u64, 3, 5];
        let a = FactoredInteger::from_factors(primes.iter().copied().zip(ea.iter().copied())).unwrap();
        let b = FactoredInteger::from_factors(primes.iter().copied().zip(eb.iter().copied())).unwrap();
        prop_assert_eq!(a.mul(&b).to_biguint(), a.to_biguint() * b.to_biguint());
    }

    /// Inner products are bilinear over scaling.
    #[test]
    fn inner_product_scaling(fv in proptest::collection::vec(-20i64..20, 7), k in 1i64..8) {
        let s5 = bundled::s5();
        let f = ClassFunction::from_integers(&fv);
        let one = s5.chars[0].class_function();
        let base = s5.inner_product(&f, &one).unwrap();
        let scaled = s5.inner_product(&f.scale(&rat(k)), &one).unwrap();
        prop_assert_eq!(scaled, base * rat(k));
    }
}

/// Every candidate the search audits is nonnegative by construction; the
/// winning auxiliary itself must be a nonnegative nonzero function and the
/// reported bound must dominate each per-class winner.
#[test]
fn search_report_is_internally_consistent() {
    let a5 = bundled::a5();
    for label in ["4", "5", "6"] {
        let r = search_bound(&a5, label, &SearchOptions::default()).unwrap();
        assert!(r.best_phi.is_nonnegative() && !r.best_phi.is_zero());
        assert!(r.value > 0.0);
        for cb in &r.per_conjugation {
            assert!(r.value <= cb.value * (1.0 + 1e-9));
        }
        assert!(r
            .per_conjugation
            .iter()
            .any(|cb| (cb.value - r.value).abs() <= 1e-9 * r.value));
        // The unital vertex is audited as skipped, never evaluated.
        assert!(r
            .all_evaluated
            .iter()
            .all(|row| { row.value.is_some() || row.note.is_some() }));
        // Per-class dominance: the class winner beats every audited
        // candidate evaluated at that class.
        for cb in &r.per_conjugation {
            for row in &r.all_evaluated {
                if row.conj_label == cb.conj_label {
                    if let Some(v) = row.value {
                        assert!(cb.value >= v * (1.0 - 1e-9));
                    }
                }
            }
        }
    }
}

/// Completeness declarations are honored: a complete table passes the
/// degree-sum identity, and the one-row subtable is accepted as partial.
#[test]
fn partial_tables_parse_but_skip_polytope() {
    let text = "GROUP P\nORDER 6\nTW 0\nCOMPLETE 0\nCLASS 1A 1 1\nCLASS 2A 2 3\nCLASS 3A 3 2\n\
                POWER 2A 2 1A\nPOWER 3A 3 1A\nCHAR 1a 1 1 1\nCHAR 2 2 0 -1\nPERM phi3 3 1 0\n";
    let t = artin_floor::char_table::parse_gct(text).unwrap();
    assert!(!t.complete);
    // Transfer-only workflows still run on the partial table.
    let sol = solve_in_perm_basis(&t, "2", &["1".to_string(), "phi3".to_string()]).unwrap();
    assert_eq!(sol.coefficients[0].1, rat(-1));
    assert_eq!(sol.coefficients[1].1, Rat::one());
    // Polytope enumeration refuses it.
    assert!(artin_floor::polytope::enumerate_vertices(&t, 1000).is_err());
}
