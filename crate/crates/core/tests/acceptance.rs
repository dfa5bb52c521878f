//! End-to-end acceptance battery over the shipped instance catalogs. Each
//! test prints a single `criterion NN: pass` line with a short summary; a
//! failed assertion marks the criterion as failed.

use std::sync::Arc;
use std::time::{Duration, Instant};
use workbench_core::invariance::induced::{induced_map, induced_map_cover};
use workbench_core::invariance::theorems::{
    module_catalog, verify_decomposition_theorem, verify_exchange_clean, verify_no_z2_criterion,
    verify_radical_theorem, verify_unit_suite, Direction, Verdict,
};
use workbench_core::invariance::{
    cover_record, envelope_record, is_automorphism_coinvariant, is_automorphism_invariant,
};
use workbench_core::module::cover::{projective_cover, verify_cover};
use workbench_core::module::envelope::{injective_envelope, verify_envelope, SearchOrder};
use workbench_core::module::homs::hom_set;
use workbench_core::module::iso::is_isomorphic;
use workbench_core::module::lattice::maximal_submodules;
use workbench_core::module::{regular_module, FiniteModule, ModuleHom};
use workbench_core::ring::analysis::{is_exchange_ring, unit_generated_subring};
use workbench_core::ring::catalog::quotient_ring_map;
use workbench_core::ring::subrings::{enumerate_unit_stable_subrings, IdentityConvention};
use workbench_core::ring::unitsum::henriksen_diagonal;
use workbench_core::ring::wedderburn::type_decomposition;
use workbench_core::ring::FiniteRing;
use workbench_core::spec::parse_ring_expr;
use workbench_core::Guards;

const SEMISIMPLE: [&str; 9] = [
    "F2",
    "F3",
    "F4",
    "F2 x F2",
    "F2 x M2(F2)",
    "M2(F2)",
    "M2(F3)",
    "F3 x F9",
    "F2 x M2(F3)",
];
const SUBRING_SET: [&str; 4] = ["F2 x F2", "F4", "M2(F2)", "F2 x M2(F2)"];
const NO_Z2_SET: [&str; 4] = ["M2(F3)", "F3", "F9", "F3 x F9"];
const MODULE_RINGS: [&str; 5] = ["Z4", "Z8", "Z9", "F2[x]/(x^2)", "UT(F2,2)"];

fn g() -> Guards {
    Guards::default()
}

/// Budget headroom for the largest endomorphism rings the module catalog
/// reaches (up to 2^16 endomorphisms for free modules over the triangular
/// ring).
fn gm() -> Guards {
    Guards::scaled(16)
}

fn ring(expr: &str) -> FiniteRing {
    parse_ring_expr(expr, &g()).unwrap()
}

fn catalog_modules() -> Vec<FiniteModule> {
    let mut out = Vec::new();
    for expr in MODULE_RINGS {
        let r = Arc::new(ring(expr));
        out.extend(module_catalog(&r, 64, 2, &gm()).unwrap());
    }
    out
}

#[test]
fn criterion_01_two_unit_split_on_semisimple_catalog() {
    let start = Instant::now();
    let mut witnesses = 0usize;
    for expr in SEMISIMPLE {
        let s = ring(expr);
        let reports = verify_unit_suite(&s, &g()).unwrap();
        let td = reports
            .iter()
            .find(|r| r.theorem == "type-decomposition")
            .unwrap();
        assert_eq!(td.verdict, Verdict::Verified, "split on {expr}");
        // the suite certifies exhaustive two-unit coverage of the non-field
        // part; cross-check the witness count against the ring itself
        let decomp = type_decomposition(&s).unwrap();
        let expected = decomp.t2.as_ref().map_or(0, |t| t.ring.order() as usize);
        assert_eq!(decomp.two_unit_witnesses.len(), expected, "coverage on {expr}");
        witnesses += expected;
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 01: pass - split + {} two-unit witnesses on {} rings in {:?}",
        witnesses,
        SEMISIMPLE.len(),
        elapsed
    );
}

#[test]
fn criterion_02_unit_stable_subrings_regular_and_split() {
    let start = Instant::now();
    let mut total = 0usize;
    for expr in SUBRING_SET {
        let s = ring(expr);
        for conv in [IdentityConvention::SharedIdentity, IdentityConvention::OwnIdentity] {
            let subs = enumerate_unit_stable_subrings(&s, conv, &g()).unwrap();
            assert!(!subs.is_empty(), "no subrings for {expr} ({conv:?})");
            for sub in &subs {
                assert!(
                    sub.ring.is_von_neumann_regular(),
                    "non-regular unit-stable subring of {expr}"
                );
                let td = type_decomposition(&sub.ring).unwrap();
                // witnessed central idempotent split
                let e1 = &td.e1;
                assert_eq!(sub.ring.mul(e1, e1), *e1);
                for b in 0..sub.ring.rank() {
                    let eb = sub.ring.basis_element(b);
                    assert_eq!(sub.ring.mul(e1, &eb), sub.ring.mul(&eb, e1));
                }
                total += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "criterion 02: pass - {} unit-stable subrings, all regular with central split, in {:?}",
        total, elapsed
    );
}

#[test]
fn criterion_03_unit_generated_subring_equality() {
    for expr in NO_Z2_SET {
        let s = ring(expr);
        assert!(
            workbench_core::ring::analysis::has_z2_quotient(&s).is_none(),
            "{expr} unexpectedly has an index-2 quotient"
        );
        let sprime = unit_generated_subring(&s).unwrap();
        assert_eq!(
            sprime.elements.len() as u64,
            s.order(),
            "unit-generated subring of {expr} is proper"
        );
    }
    let f2f2 = ring("F2 x F2");
    let sprime = unit_generated_subring(&f2f2).unwrap();
    assert_eq!(sprime.elements.len(), 2);
    println!(
        "criterion 03: pass - S' = S on {} rings without index-2 quotients; |S'| = 2 for F2 x F2",
        NO_Z2_SET.len()
    );
}

#[test]
fn criterion_04_diagonal_two_unit_decompositions() {
    let mut total = 0usize;
    for expr in ["F2", "F3", "Z4", "Z6"] {
        let r = ring(expr);
        let order = r.order();
        for n in 2usize..=4 {
            if order.pow(n as u32) > 4096 {
                continue;
            }
            // all |R|^n diagonals
            let count = order.pow(n as u32);
            for code in 0..count {
                let mut c = code;
                let diag: Vec<Vec<u64>> = (0..n)
                    .map(|_| {
                        let e = r.element(c % order);
                        c /= order;
                        e
                    })
                    .collect();
                let (mn, w) = henriksen_diagonal(&r, &diag)
                    .unwrap_or_else(|e| panic!("diag {diag:?} over {expr}: {e}"));
                assert!(w.verify(&mn), "bad witness for {diag:?} over {expr}");
                assert_eq!(w.summands.len(), 2);
                total += 1;
            }
        }
    }
    println!("criterion 04: pass - {} diagonal matrices decomposed into two units", total);
}

#[test]
fn criterion_05_envelopes_and_covers() {
    let start = Instant::now();
    let mut count = 0usize;
    for m in catalog_modules() {
        let guards = gm();
        let env_lex = injective_envelope(&m, &guards, SearchOrder::Lex).unwrap();
        assert!(verify_envelope(&m, &env_lex, &guards).unwrap(), "envelope of {}", m.name);
        let env_rev = injective_envelope(&m, &guards, SearchOrder::ReverseLex).unwrap();
        assert!(verify_envelope(&m, &env_rev, &guards).unwrap(), "rev envelope of {}", m.name);
        assert!(
            is_isomorphic(&env_lex.module, &env_rev.module, &guards).unwrap(),
            "envelope of {} differs across search orders",
            m.name
        );
        let cov = projective_cover(&m, &guards).unwrap();
        assert!(verify_cover(&m, &cov, &guards).unwrap(), "cover of {}", m.name);
        count += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(900), "took {elapsed:?}");
    println!(
        "criterion 05: pass - envelopes (two search orders, isomorphic) and covers verified for {} modules in {:?}",
        count, elapsed
    );
}

#[test]
fn criterion_06_radical_identification_and_coherence() {
    let guards = gm();
    let mut verified = 0usize;
    let mut skipped = 0usize;
    for m in catalog_modules() {
        for d in [Direction::Envelope, Direction::Cover] {
            let rep = verify_radical_theorem(&m, d, &guards).unwrap();
            assert_ne!(rep.verdict, Verdict::Falsified, "{} ({})", m.name, d.as_str());
            match rep.verdict {
                Verdict::Verified => verified += 1,
                _ => {
                    skipped += 1;
                    continue;
                }
            }
            // coherence: the induced endomorphism-ring map must assemble
            // without any coherence failure
            match d {
                Direction::Envelope => {
                    let env = envelope_record(&m, &guards, SearchOrder::Lex).unwrap();
                    assert!(is_automorphism_invariant(&m, &env, &guards).unwrap().holds);
                    induced_map(&m, &env, &guards)
                        .unwrap_or_else(|e| panic!("coherence on {}: {e}", m.name));
                }
                Direction::Cover => {
                    let cov = cover_record(&m, &guards).unwrap();
                    assert!(is_automorphism_coinvariant(&m, &cov, &guards).unwrap().holds);
                    induced_map_cover(&m, &cov, &guards)
                        .unwrap_or_else(|e| panic!("coherence on {}: {e}", m.name));
                }
            }
        }
    }
    println!(
        "criterion 06: pass - radical identified and induced maps coherent on {} instances ({} hypothesis-not-met)",
        verified, skipped
    );
}

#[test]
fn criterion_07_decomposition_theorem() {
    let guards = gm();
    let mut verified = 0usize;
    let mut skipped = 0usize;
    for m in catalog_modules() {
        for d in [Direction::Envelope, Direction::Cover] {
            let rep = verify_decomposition_theorem(&m, d, &guards).unwrap();
            assert_ne!(rep.verdict, Verdict::Falsified, "{} ({})", m.name, d.as_str());
            if rep.verdict == Verdict::Verified {
                verified += 1;
            } else {
                skipped += 1;
            }
        }
    }
    println!(
        "criterion 07: pass - square-free/endo-invariant decomposition verified on {} instances ({} hypothesis-not-met)",
        verified, skipped
    );
}

#[test]
fn criterion_08_exchange_and_clean() {
    let guards = gm();
    let mut verified = 0usize;
    let mut skipped = 0usize;
    for m in catalog_modules() {
        for d in [Direction::Envelope, Direction::Cover] {
            let rep = verify_exchange_clean(&m, d, &guards).unwrap();
            assert_ne!(rep.verdict, Verdict::Falsified, "{} ({})", m.name, d.as_str());
            if rep.verdict == Verdict::Verified {
                // 100% clean coverage is asserted inside the suite; the
                // recorded count must equal the full endomorphism ring size
                let w = &rep.witnesses;
                assert_eq!(w["clean_decompositions"], w["end_order"], "{}", m.name);
                verified += 1;
            } else {
                skipped += 1;
            }
        }
    }
    println!(
        "criterion 08: pass - exchange + 100% clean decompositions on {} instances ({} hypothesis-not-met)",
        verified, skipped
    );
}

#[test]
fn criterion_09_no_z2_criterion() {
    let guards = gm();
    let mut verified = 0usize;
    let mut not_met = 0usize;
    for m in catalog_modules() {
        for d in [Direction::Envelope, Direction::Cover] {
            let rep = verify_no_z2_criterion(&m, d, &guards).unwrap();
            match rep.verdict {
                Verdict::Falsified => panic!("falsified on {} ({})", m.name, d.as_str()),
                Verdict::Verified => verified += 1,
                Verdict::HypothesisNotMet => not_met += 1,
            }
        }
    }
    assert!(verified > 0, "criterion never applied");
    println!(
        "criterion 09: pass - {} instances verified, {} tallied hypothesis-not-met",
        verified, not_met
    );
}

fn brute_force_hom_count(src: &FiniteModule, dst: &FiniteModule) -> usize {
    // every assignment of a dst element to each src generator, filtered by
    // the full linearity re-check
    let gk = src.rank();
    let total = dst.order().pow(gk as u32);
    let mut count = 0usize;
    for code in 0..total {
        let mut c = code;
        let matrix: Vec<Vec<u64>> = (0..gk)
            .map(|_| {
                let e = dst.element(c % dst.order());
                c /= dst.order();
                e
            })
            .collect();
        let h = ModuleHom { matrix };
        if h.is_linear(src, dst) {
            count += 1;
        }
    }
    count
}

#[test]
fn criterion_10_oracle_cross_checks() {
    let guards = gm();
    // hom counts against brute force
    let mut pairs = 0usize;
    for expr in ["Z4", "UT(F2,2)"] {
        let r = Arc::new(ring(expr));
        let small: Vec<FiniteModule> = module_catalog(&r, 16, 2, &guards).unwrap();
        for a in &small {
            for b in &small {
                let solved = hom_set(a, b, &guards).unwrap().len();
                let brute = brute_force_hom_count(a, b);
                assert_eq!(solved, brute, "hom count {} -> {}", a.name, b.name);
                pairs += 1;
            }
        }
    }
    // radical against the definitional intersection of maximal right ideals
    let mut radicals = 0usize;
    for expr in [
        "Z4", "Z8", "Z9", "F2[x]/(x^2)", "UT(F2,2)", "F2", "F3", "F4", "F9", "F2 x F2",
        "M2(F2)", "F3 x F9", "M2(F3)", "F2 x M2(F2)",
    ] {
        let r = Arc::new(ring(expr));
        if r.order() > 256 {
            continue;
        }
        let reg = regular_module(r.clone());
        let maximal = maximal_submodules(&reg, &guards).unwrap();
        let mut inter: Vec<u64> = (0..r.order()).collect();
        for sub in &maximal {
            inter.retain(|&x| sub.contains(x));
        }
        let mut expected = r.jacobson_radical().elements.clone();
        expected.sort_unstable();
        assert_eq!(inter, expected, "radical of {expr}");
        radicals += 1;
    }
    // exchange predicate against the quotient-regular + lifting criterion
    let mut exchanged = 0usize;
    for expr in [
        "Z4", "Z8", "Z9", "F2[x]/(x^2)", "UT(F2,2)", "F2", "F3", "F4", "F9", "F2 x F2",
        "M2(F2)", "F3 x F9", "M2(F3)", "F2 x M2(F2)", "F2 x M2(F3)", "Z6",
    ] {
        let r = ring(expr);
        let rq = quotient_ring_map(&r, r.jacobson_radical()).unwrap();
        let quotient_regular = rq.ring.is_von_neumann_regular();
        let lifted: std::collections::BTreeSet<Vec<u64>> = r
            .idempotents()
            .iter()
            .map(|&e| rq.project(&r.element(e)))
            .collect();
        let lifts_all = rq.ring.idempotents().len() == lifted.len();
        assert_eq!(
            is_exchange_ring(&r),
            quotient_regular && lifts_all,
            "exchange characterization on {expr}"
        );
        exchanged += 1;
    }
    println!(
        "criterion 10: pass - {} hom-count pairs, {} radicals, {} exchange characterizations cross-checked",
        pairs, radicals, exchanged
    );
}
