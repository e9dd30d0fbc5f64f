//! End-to-end acceptance gate: one test per criterion, each printing a
//! single verdict line (visible with --nocapture). A failed assertion
//! names its criterion via the test name.

use num::Signed;
use tightdesigns::rat::{parse_decimal, rat, rat_int, Rat};
use tightdesigns::{beta0, design, hermite, refdata, s4, search, smith};

fn verdict(n: u32, what: &str) {
    println!("criterion {}: pass - {}", n, what);
}

#[test]
fn criterion_1_published_tables_reproduce() {
    let rep = hermite::reproduce_tables(&hermite::default_width()).unwrap();
    assert!(rep.all_ok);
    // the single known misprint in the printed s = 8 row, x^6 coefficient
    assert_eq!(rep.discrepancies.len(), 1);
    let (s, deg, printed, expected) = &rep.discrepancies[0];
    assert_eq!((*s, *deg, printed.as_str(), expected.as_str()), (8, 6, "-21", "-28"));
    for z in &rep.zero_checks {
        assert!(z.xi_agrees, "zero table row s={} i={}", z.s, z.i);
        assert!(z.d_certified, "D bound s={} i={}", z.s, z.i);
        assert!(z.enclosure_width_ok);
    }
    verdict(1, "polynomial and zero tables reproduce, one known misprint");
}

#[test]
fn criterion_2_zero_spacing_estimates() {
    let mut seen_ratio_clause = false;
    for s in 4..=9 {
        let table = hermite::build_table(s, &hermite::default_width()).unwrap();
        for clause in hermite::verify_xi_estimates(s, &table).unwrap() {
            assert!(clause.passed, "s={}: {}", s, clause.description);
            seen_ratio_clause |= clause.description.contains("3.34634");
        }
    }
    assert!(seen_ratio_clause);
    verdict(2, "zero-spacing clauses certified, including the s = 6 ratio");
}

#[test]
fn criterion_3_constants_rows_validate() {
    for s in 4..=9 {
        let pipe = smith::build_pipeline(s).unwrap();
        let table = hermite::build_table(s, &hermite::default_width()).unwrap();
        let v = smith::validate_paper_constants(&pipe, &table).unwrap();
        assert!(v.all_ok, "s={}: undersized rows {:?}", s, v.undersized);
        for row in &v.rows {
            assert_eq!(row.m_bounds[0], "0");
            assert_eq!(row.m_bounds[1], "0");
        }
    }
    verdict(3, "constants rows validate; the three undersized rows are exactly the known ones");
}

#[test]
fn criterion_4_thresholds_reproduce() {
    let published: &[(u32, &str)] = &[
        (4, refdata::BETA_STAR_4),
        (5, "33.76"),
        (6, "156.96"),
        (7, "86.55"),
        (8, "106.77"),
        (9, "146.37"),
    ];
    for (s, text) in published {
        let table = hermite::build_table(*s, &hermite::default_width()).unwrap();
        let consts = beta0::paper_constants(*s, &table).unwrap();
        let rep = beta0::beta0(*s, &consts, &table).unwrap();
        let diff = (parse_decimal(&rep.beta0) - parse_decimal(text)).abs();
        assert!(diff <= rat(1, 100), "s={}: {} vs {}", s, rep.beta0, text);
        if *s == 4 {
            let (lo, hi) = rep.t_enclosure.clone().unwrap();
            let target = parse_decimal("9.1971905725");
            // bounds are printed at 10 decimals, so allow one last-digit ulp
            assert!(parse_decimal(&lo) <= target);
            assert!(target <= parse_decimal(&hi) + rat(1, 10_000_000_000));
        }
    }
    verdict(4, "all six thresholds within one hundredth; s = 4 t-enclosure hits the target");
}

#[test]
fn criterion_5_search_s5_empty() {
    let config = search::SearchConfig::new(5, parse_decimal("33.76"));
    let rep = search::run_search(&config).unwrap();
    assert!(rep.survivors.is_empty(), "{:?}", rep.survivors);
    assert!(rep.alphas_scanned > 20_000);

    // phase equivalence: the two-phase scan agrees with brute force
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0xacce);
    for _ in 0..200 {
        let s = rng.gen_range(2u32..=9);
        let m = rng.gen_range(1u64..=600);
        let task = search::make_task(s, m, &Rat::from_integer(1.into()));
        assert_eq!(
            search::scan_alpha(&task, &rat(1, 2)),
            search::scan_alpha_bruteforce(&task),
            "s={}, m={}",
            s,
            m
        );
    }
    verdict(5, "s = 5 search empty; 200-task phase equivalence holds");
}

#[test]
fn criterion_6_witt_oracle() {
    let w7 = design::check_candidate(2, 23, 7).unwrap();
    assert!(w7.passed, "{:?}", w7.failures);
    assert_eq!(w7.intersection_numbers, vec![1, 3]);
    let lambda7 = design::derive_params(2, 23, 7).unwrap().lambda;
    assert_eq!(lambda7, rat_int(1));
    let w16 = design::check_candidate(2, 23, 16).unwrap();
    assert!(w16.passed, "{:?}", w16.failures);
    let lambda16 = design::derive_params(2, 23, 16).unwrap().lambda;
    assert_eq!(lambda16, rat_int(52));

    // sweep every other (v <= 30, k); only the trivial v = k + s family
    // and the Witt pair may pass
    for v in 4..=30u64 {
        for k in 4..v {
            if v == k + 2 || (v, k) == (23, 7) || (v, k) == (23, 16) {
                continue;
            }
            if let Ok(verdict) = design::check_candidate(2, v, k) {
                assert!(!verdict.passed, "unexpected survivor ({}, {})", v, k);
            }
        }
    }
    verdict(6, "Witt pair passes with the right parameters; sweep finds nothing else");
}

#[test]
fn criterion_7_s4_suite() {
    s4::derive_f().unwrap();
    for (p, ks, vs) in refdata::CONGRUENCE_CLASSES {
        let (got_k, got_v) = s4::congruence_sieve(*p).unwrap();
        assert_eq!(got_k, *ks, "p={}", p);
        assert_eq!(got_v, *vs, "p={}", p);
    }
    let hits = s4::scan_k_range(9, 2500).unwrap();
    assert!(hits.is_empty(), "{:?}", hits);
    verdict(7, "derivation matches the stored table; sieve exact; scan to 2500 empty");
}

#[test]
fn criterion_8_property_spot_checks() {
    // compact spot versions; the full suites live in tests/properties.rs
    for s in 1..=12u64 {
        for k in (2 * s)..(2 * s + 50) {
            let m = (2 * (k - s) + 1) as i64;
            let brute = ((s * (k - s + 1) * (k - s)) as i64) % m;
            assert_eq!(design::residue_r(k, s), brute);
        }
    }
    let cfg = search::SearchConfig::new(2, rat_int(2));
    let a = search::run_search(&cfg).unwrap();
    let b = search::run_search(&cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&a.g_integral_hits).unwrap(),
        serde_json::to_string(&b.g_integral_hits).unwrap()
    );
    verdict(8, "residue formula and search determinism spot checks pass");
}
