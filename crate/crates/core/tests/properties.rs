//! Randomized invariants for the parsers, the congruence solver, and the
//! unit-sum search.

use proptest::prelude::*;
use std::sync::Arc;
use workbench_core::exactlin::CongruenceSystem;
use workbench_core::module::homs::hom_set;
use workbench_core::ring::catalog::cyclic_ring;
use workbench_core::ring::unitsum::sum_of_k_units;
use workbench_core::spec::{parse_module_expr, parse_ring_expr};
use workbench_core::Guards;

proptest! {
    /// The expression parser is total: any input yields Ok or Err, never a
    /// panic, and accepted inputs round-trip through a ring build.
    #[test]
    fn ring_expr_parser_is_total(input in "\\PC{0,40}") {
        let _ = parse_ring_expr(&input, &Guards::default());
    }

    /// Valid cyclic-ring expressions always parse to the expected order.
    #[test]
    fn cyclic_expressions_parse(n in 2u64..200) {
        let r = parse_ring_expr(&format!("Z{n}"), &Guards::default()).unwrap();
        prop_assert_eq!(r.order(), n);
    }

    /// A unit-sum witness returned by the exhaustive search always verifies,
    /// and a None answer really means no decomposition exists (cross-checked
    /// by brute force over unit tuples for k = 2).
    #[test]
    fn unit_sum_witnesses_verify(n in 2u64..30, a in 0u64..30) {
        let r = cyclic_ring(n).unwrap();
        let a = a % n;
        match sum_of_k_units(&r, &r.element(a), 2) {
            Some(w) => prop_assert!(w.verify(&r)),
            None => {
                let units: Vec<u64> = r.units().iter().map(|&(u, _)| u).collect();
                let found = units.iter().any(|&u| {
                    units.iter().any(|&v| r.add_idx(u, v) == a)
                });
                prop_assert!(!found, "missed a two-unit decomposition of {a} in Z{n}");
            }
        }
    }

    /// Every solution the congruence solver reports satisfies every
    /// constraint, and the particular solution is reduced.
    #[test]
    fn congruence_solutions_satisfy_constraints(
        moduli in proptest::collection::vec(2u64..12, 1..4),
        rows in proptest::collection::vec(
            (proptest::collection::vec(0u64..12, 3), 0u64..12, 2u64..12),
            0..4,
        ),
    ) {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        let k = moduli.len();
        let mut sys = CongruenceSystem::new(moduli.clone());
        let mut constraints = Vec::new();
        for (coeffs, rhs, m) in rows {
            // well-definedness: the coefficient of an unknown mod d must be a
            // multiple of m / gcd(m, d)
            let mut padded = vec![0u64; k];
            for (i, c) in coeffs.into_iter().take(k).enumerate() {
                let step = m / gcd(m, moduli[i]);
                padded[i] = (c * step) % m;
            }
            sys.add_constraint(padded.clone(), rhs % m, m);
            constraints.push((padded, rhs % m, m));
        }
        if let Some(sols) = sys.solve() {
            for sol in sols.enumerate(4096).into_iter().flatten() {
                for (i, &x) in sol.iter().enumerate() {
                    prop_assert!(x < moduli[i].max(1));
                }
                for (coeffs, rhs, m) in &constraints {
                    let lhs: u64 = coeffs
                        .iter()
                        .zip(&sol)
                        .map(|(&c, &x)| (c * x) % m)
                        .sum::<u64>() % m;
                    prop_assert_eq!(lhs, *rhs);
                }
            }
        }
    }

    /// Hom sets are closed under composition and every member passes the
    /// exhaustive linearity re-check.
    #[test]
    fn hom_sets_are_linear_and_closed(n in 2u64..13, k in 0u64..13) {
        let g = Guards::default();
        let ring = Arc::new(cyclic_ring(n).unwrap());
        let k = k % n;
        let m = match parse_module_expr(&ring, &format!("Z{n}"), &format!("R/{k}"), &g) {
            Ok(m) => m,
            Err(_) => return Ok(()), // quotient by a unit index etc.
        };
        let homs = hom_set(&m, &m, &g).unwrap();
        prop_assert!(!homs.is_empty());
        for h in &homs {
            prop_assert!(h.is_linear(&m, &m));
        }
        for a in homs.iter().take(6) {
            for b in homs.iter().take(6) {
                let c = a.compose(b, &m, &m, &m);
                prop_assert!(homs.binary_search(&c).is_ok());
            }
        }
    }
}
