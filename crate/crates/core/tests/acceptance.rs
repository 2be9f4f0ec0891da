//! Acceptance suite: every criterion runs at its stated range and
//! tolerance and prints one pass/fail line. All checks are exact; the
//! brute-force sides live here, independent of the closed-form paths they
//! certify.

use std::time::Instant;

use cyclotomic::codes::{self, CodeFamily};
use cyclotomic::cosets::{self, Coset, CosetSpec, SplitKind, SystemKind};
use cyclotomic::factorizer;
use cyclotomic::gf::GFPoly;
use cyclotomic::intarith;

const PRIME_POWERS_49: &[u64] = &[
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
];

fn report(criterion: &str, started: Instant) {
    println!(
        "criterion {criterion}: PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 2: for every prime power q <= 49 and every n <= 400 coprime to
/// q, the closed-form transversal expands to exactly the oracle partition
/// and the closed-form sizes equal the orbit sizes. Zero mismatches,
/// under 180 s.
#[test]
fn criterion_2_oracle_equivalence_sweep() {
    let started = Instant::now();
    let mut instances = 0u64;
    for &q in PRIME_POWERS_49 {
        for n in 1..=400u64 {
            if intarith::gcd(q, n) != 1 {
                continue;
            }
            instances += 1;
            let spec = CosetSpec::new(q, n).unwrap();
            let oracle = cosets::canonical_partition(&cosets::cosets_oracle(&spec).unwrap());

            let reps = cosets::transversal(&spec).unwrap();
            let expanded: Vec<Coset> = reps
                .iter()
                .map(|r| Coset::from_representative(n, q, r.rep()))
                .collect();
            assert_eq!(
                cosets::canonical_partition(&expanded),
                oracle,
                "transversal mismatch at q={q} n={n}"
            );
            for (r, c) in reps.iter().zip(&expanded) {
                assert_eq!(
                    r.size(),
                    c.size(),
                    "closed-form size mismatch at q={q} n={n} rep={}",
                    r.rep()
                );
            }
            assert_eq!(reps.iter().map(|r| r.size()).sum::<u64>(), n);

            let chain = cosets::doubling_chain(&spec).unwrap();
            assert_eq!(
                cosets::canonical_partition(chain.final_level()),
                oracle,
                "doubling chain mismatch at q={q} n={n}"
            );
        }
    }
    assert!(instances > 7000, "sweep covered only {instances} instances");
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 180.0, "criterion 2 took {elapsed:.1}s (budget 180s)");
    report("2 (oracle equivalence sweep)", started);
}

fn criterion_3_4_instances() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &q in &[2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=200u64 {
            if intarith::gcd(q, n) != 1 {
                continue;
            }
            if intarith::mult_order(q, n).unwrap() <= 16 {
                out.push((q, n));
            }
        }
    }
    out
}

/// Criterion 3: for prime powers q <= 9 and n <= 200 coprime to q with
/// ord_n(q) <= 16, the factor product reconstructs X^n - 1 exactly, every
/// factor passes the irreducibility test, and both minimal-polynomial
/// routes agree coefficient for coefficient. Zero mismatches, under 300 s.
#[test]
fn criterion_3_factorization_soundness() {
    let started = Instant::now();
    for (q, n) in criterion_3_4_instances() {
        let spec = CosetSpec::new(q, n).unwrap();
        let f = factorizer::factor_xn_minus_1(&spec).unwrap();
        assert_eq!(f.product(), f.modulus_poly, "multiply-back at q={q} n={n}");
        assert_eq!(
            f.factors.iter().map(|e| e.size).sum::<u64>(),
            n,
            "degree accounting at q={q} n={n}"
        );
        for e in &f.factors {
            assert!(
                e.poly.is_irreducible().unwrap(),
                "reducible factor {} at q={q} n={n}",
                e.poly
            );
            assert_eq!(e.poly.degree(), Some(e.size as usize));
            assert!(e.poly.is_monic());
        }
        let fc = factorizer::FactorContext::new(&spec).unwrap();
        for c in cosets::cosets_oracle(&spec).unwrap() {
            let direct = factorizer::minimal_poly_direct(&fc, &c).unwrap();
            let via_omega = factorizer::minimal_poly_equal_difference(&fc, &c).unwrap();
            assert_eq!(
                direct,
                via_omega,
                "route disagreement at q={q} n={n} rep={}",
                c.representative()
            );
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "criterion 3 took {elapsed:.1}s (budget 300s)");
    report("3 (factorization soundness)", started);
}

/// Criterion 4: the cyclotomic-polynomial factorization multiplies back to
/// the Moebius-formula Phi_n over the same range. Exact.
#[test]
fn criterion_4_phi_cross_check() {
    let started = Instant::now();
    for (q, n) in criterion_3_4_instances() {
        let spec = CosetSpec::new(q, n).unwrap();
        let f = factorizer::factor_cyclotomic(&spec).unwrap();
        let phi = factorizer::phi_poly(f.modulus_poly.ctx(), n).unwrap();
        assert_eq!(f.modulus_poly, phi, "Phi mismatch at q={q} n={n}");
        assert_eq!(f.product(), phi, "Phi product mismatch at q={q} n={n}");
        // Every factor representative is coprime to n.
        for e in &f.factors {
            assert_eq!(intarith::gcd(e.rep, n).min(n), 1.min(n));
        }
    }
    report("4 (Phi_n cross-check)", started);
}

/// Criterion 5: for q in {3,5,7} and n <= 100 coprime to q, factoring over
/// F_{q^omega_1} yields only binomials, and for every proper divisor t of
/// omega_1 some factor over F_{q^t} is not a binomial. Exact.
#[test]
fn criterion_5_binomial_splitting_field() {
    let started = Instant::now();
    for &q in &[3u64, 5, 7] {
        for n in 1..=100u64 {
            if intarith::gcd(q, n) != 1 {
                continue;
            }
            let spec = CosetSpec::new(q, n).unwrap();
            let omega_1 = factorizer::binomial_field_degree(&spec).unwrap();
            let top = factorizer::factor_xn_minus_1_over(&spec, omega_1).unwrap();
            assert_eq!(top.iter().map(|(_, f)| f.degree().unwrap() as u64).sum::<u64>(), n);
            for (rep, f) in &top {
                assert!(
                    f.is_binomial(),
                    "non-binomial {f} over F_{{q^omega_1}} at q={q} n={n} rep={rep}"
                );
            }
            for t in intarith::factorize(omega_1).unwrap().divisors() {
                if t == omega_1 {
                    continue;
                }
                let factors = factorizer::factor_xn_minus_1_over(&spec, t).unwrap();
                assert!(
                    factors.iter().any(|(_, f)| !f.is_binomial()),
                    "every factor over F_{{q^{t}}} is already a binomial at q={q} n={n}"
                );
            }
        }
    }
    report("5 (binomial splitting field)", started);
}

/// Criterion 6: for q = 2 (even m <= 64) and q = 4 (even m <= 30), the
/// self-dual enumeration equals the exhaustive-scan set and the count is
/// (2^v + 1)^(|Sigma''|/2). Exact, under 120 s. Anchor: q=2, m=14 has
/// exactly 3 self-dual codes.
#[test]
fn criterion_6_selfdual_enumeration() {
    let started = Instant::now();

    let anchor = CodeFamily::new(2, 14).unwrap();
    assert_eq!(anchor.selfdual_classify().unwrap().count, 3);

    let mut cases: Vec<(u64, u64)> = (1..=32).map(|k| (2u64, 2 * k)).collect();
    cases.extend((1..=15).map(|k| (4u64, 2 * k)));
    for (q, m) in cases {
        let family = CodeFamily::new(q, m).unwrap();
        let classification = family.selfdual_classify().unwrap();

        // Exhaustive oracle: scan all divisors of X^m - 1 and keep the
        // self-dual ones by direct dual computation.
        let mut oracle: Vec<String> = family
            .enumerate_codes()
            .filter(|c| family.dual_code(c).unwrap() == *c)
            .map(|c| c.generator.to_string())
            .collect();
        oracle.sort();

        let mut got: Vec<String> = family
            .selfdual_enumerate()
            .unwrap()
            .map(|c| {
                assert_eq!(family.dual_code(&c).unwrap(), c, "q={q} m={m}");
                c.generator.to_string()
            })
            .collect();
        got.sort();
        assert_eq!(got, oracle, "enumeration mismatch at q={q} m={m}");
        assert_eq!(got.len() as u128, classification.count);

        // Count formula against the closed-form strata.
        let n = family.n();
        let v = intarith::valuation(2, m).unwrap();
        let counts = codes::count_cosets(&CosetSpec::new(q, n).unwrap()).unwrap();
        assert_eq!(counts.sigma_double_prime % 2, 0);
        let formula = (2u128.pow(v) + 1).pow(counts.sigma_double_prime as u32 / 2);
        assert_eq!(
            classification.count, formula,
            "count formula mismatch at q={q} m={m}"
        );
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "criterion 6 took {elapsed:.1}s (budget 120s)");
    report("6 (self-dual enumeration)", started);
}

/// Criterion 7: the splitting dichotomy predicts the preimage structure of
/// every coset modulo every m <= 300 for every odd prime power q <= 49,
/// verified against actual projection preimages. Exact.
#[test]
fn criterion_7_splitting_dichotomy() {
    let started = Instant::now();
    for &q in PRIME_POWERS_49.iter().filter(|&&q| q % 2 == 1) {
        for m in 1..=300u64 {
            if intarith::gcd(q, 2 * m) != 1 {
                continue;
            }
            let level = cosets::orbit_partition(m, q % m.max(1)).unwrap();
            let doubled = cosets::orbit_partition(2 * m, q % (2 * m)).unwrap();
            for c in &level {
                let preimages = doubled
                    .iter()
                    .filter(|d| {
                        Coset::from_representative(m, q, d.representative() % m).leader()
                            == c.leader()
                    })
                    .collect::<Vec<_>>();
                let kind = cosets::split_test(m, q, c.representative(), c.size()).unwrap();
                match kind {
                    SplitKind::Splitting => {
                        assert_eq!(preimages.len(), 2, "q={q} m={m} rep={}", c.representative());
                        assert!(preimages.iter().all(|d| d.size() == c.size()));
                    }
                    SplitKind::Stable => {
                        assert_eq!(preimages.len(), 1, "q={q} m={m} rep={}", c.representative());
                        assert_eq!(preimages[0].size(), 2 * c.size());
                    }
                }
            }
        }
    }
    report("7 (splitting dichotomy)", started);
}

/// Criterion 8: for odd q <= 11, odd n' <= 45 and depth E <= 6, the chains
/// of the 2-adic system have the stated stable degrees (verified by walking
/// the split test along each chain), their components are genuine cosets of
/// the predicted sizes, and the degree-E components enumerate Z/(2^E n')Z
/// exactly once. Exact.
#[test]
fn criterion_8_two_adic_system_structure() {
    let started = Instant::now();
    for &q in &[3u64, 5, 7, 9, 11] {
        for nprime in (1..=45u64).step_by(2) {
            if intarith::gcd(q, nprime) != 1 {
                continue;
            }
            let base_spec = CosetSpec::new(q, nprime).unwrap();
            let base_reps = cosets::transversal(&base_spec).unwrap();
            for depth in 1..=6u32 {
                let modulus = nprime << depth;
                let mut covered: Vec<u64> = Vec::new();
                for rep in &base_reps {
                    let elements =
                        cosets::system_elements(rep.rep(), nprime, q, depth).unwrap();
                    let mut seen_leaders = std::collections::HashSet::new();
                    for el in &elements {
                        assert_eq!(el.components.len(), depth as usize + 1);
                        // Components are genuine cosets, sizes follow the
                        // closed forms, consecutive levels project.
                        for (i, comp) in el.components.iter().enumerate() {
                            let c = Coset::from_representative(comp.modulus, q, comp.rep);
                            assert_eq!(
                                c.size(),
                                comp.size,
                                "size at degree {i} of {:?} (q={q} n'={nprime})",
                                el.kind
                            );
                            if i > 0 {
                                let prev = &el.components[i - 1];
                                assert_eq!(comp.rep % prev.modulus, prev.rep);
                            }
                        }
                        // Split pattern along the chain: the principal
                        // chain splits everywhere; a stable chain splits
                        // below its stable degree, except for the one-step
                        // stall at d+1 in the q^tau = 3 (mod 4) case.
                        let minus = is_minus_case(q, rep.size());
                        for (i, comp) in el.components.iter().enumerate() {
                            let kind =
                                cosets::split_test(comp.modulus, q, comp.rep, comp.size)
                                    .unwrap();
                            let expect_split = match &el.kind {
                                SystemKind::Principal => true,
                                SystemKind::Stable {
                                    d, stable_degree, ..
                                } => {
                                    let i = i as u32;
                                    i < *stable_degree && !(minus && i == d + 1)
                                }
                            };
                            assert_eq!(
                                kind == SplitKind::Splitting,
                                expect_split,
                                "split pattern at degree {i} of {:?} (q={q} n'={nprime} gamma={})",
                                el.kind,
                                rep.rep()
                            );
                        }
                        // Collect the degree-E component (chains whose
                        // branch points lie beyond E share it).
                        let last = el.components.last().unwrap();
                        let c = Coset::from_representative(modulus, q, last.rep);
                        if seen_leaders.insert(c.leader()) {
                            covered.extend(c.elements_sorted());
                        }
                    }
                }
                covered.sort_unstable();
                assert_eq!(
                    covered,
                    (0..modulus).collect::<Vec<_>>(),
                    "degree-{depth} components do not tile Z/{modulus} (q={q} n'={nprime})"
                );
            }
        }
    }
    report("8 (2-adic system structure)", started);
}

fn is_minus_case(q: u64, tau: u64) -> bool {
    q % 4 == 3 && tau % 2 == 1
}

/// The factor-level assertion layer over the even-modulus tables: every
/// disagreement must be the known h boundary; everything else matches.
#[test]
fn thm1_table_findings_sweep() {
    let started = Instant::now();
    let mut findings = 0u64;
    for &q in &[3u64, 5, 7, 9, 11] {
        for n in (2..=200u64).step_by(2) {
            if intarith::gcd(q, n) != 1 {
                continue;
            }
            let spec = CosetSpec::new(q, n).unwrap();
            for check in factorizer::thm1_assertion_layer(&spec).unwrap() {
                if !check.matches {
                    assert!(
                        check.is_known_h_boundary(),
                        "unclassified table mismatch at q={q} n={n}: {check:?}"
                    );
                    findings += 1;
                }
            }
        }
    }
    println!(
        "thm1 assertion layer: {findings} boundary findings recorded (h floored at 1 vs 0), \
         all other table entries match"
    );
    report("(thm1 assertion layer)", started);
}

/// Library-level reproduction of the paper's worked example, backing the
/// CLI golden test: the doubling chain lists the thirteen cosets modulo 40
/// with the intermediate levels modulo 5, 10, 20.
#[test]
fn paper_example_chain_reproduction() {
    let started = Instant::now();
    let spec = CosetSpec::new(3, 40).unwrap();
    let chain = cosets::doubling_chain(&spec).unwrap();
    let orbits: Vec<Vec<Vec<u64>>> = chain
        .levels
        .iter()
        .map(|lvl| lvl.iter().map(|c| c.orbit()).collect())
        .collect();
    assert_eq!(orbits[0], vec![vec![0], vec![1, 3, 4, 2]]);
    assert_eq!(
        orbits[1],
        vec![vec![0], vec![5], vec![1, 3, 9, 7], vec![6, 8, 4, 2]]
    );
    assert_eq!(
        orbits[2],
        vec![
            vec![0],
            vec![10],
            vec![5, 15],
            vec![1, 3, 9, 7],
            vec![11, 13, 19, 17],
            vec![6, 18, 14, 2],
            vec![16, 8, 4, 12],
        ]
    );
    assert_eq!(
        orbits[3],
        vec![
            vec![0],
            vec![20],
            vec![10, 30],
            vec![5, 15],
            vec![25, 35],
            vec![1, 3, 9, 27],
            vec![21, 23, 29, 7],
            vec![11, 33, 19, 17],
            vec![31, 13, 39, 37],
            vec![6, 18, 14, 2],
            vec![26, 38, 34, 22],
            vec![16, 8, 24, 32],
            vec![36, 28, 4, 12],
        ]
    );
    report("(paper example, library side)", started);
}

/// Degree accounting across the factorizer: factor count equals coset
/// count and each degree equals the closed-form size (exercised on a
/// denser grid than criterion 3's route check).
#[test]
fn factor_degree_accounting() {
    let started = Instant::now();
    for (q, n) in criterion_3_4_instances() {
        if n > 100 {
            continue;
        }
        let spec = CosetSpec::new(q, n).unwrap();
        let f = factorizer::factor_xn_minus_1(&spec).unwrap();
        let oracle = cosets::cosets_oracle(&spec).unwrap();
        assert_eq!(f.factors.len(), oracle.len(), "factor count at q={q} n={n}");
        let mut got: Vec<u64> = f.factors.iter().map(|e| e.size).collect();
        let mut want: Vec<u64> = oracle.iter().map(|c| c.size()).collect();
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(got, want, "degree multiset at q={q} n={n}");
    }
    report("(degree accounting)", started);
}

/// Binomial property restated over the base field: a factor is a binomial
/// exactly when its coset is equal-difference (checked against sorted
/// element gaps), n <= 120.
#[test]
fn equal_difference_binomial_agreement() {
    let started = Instant::now();
    for &q in &[2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=120u64 {
            if intarith::gcd(q, n) != 1 || intarith::mult_order(q, n).unwrap() > 12 {
                continue;
            }
            let spec = CosetSpec::new(q, n).unwrap();
            let fc = factorizer::FactorContext::new(&spec).unwrap();
            for c in cosets::cosets_oracle(&spec).unwrap() {
                let params = cosets::equal_difference_params(&c).unwrap();
                let m = factorizer::minimal_poly_equal_difference(&fc, &c).unwrap();
                let is_binomial = m.is_binomial()
                    || (m.degree() == Some(1) && m.coeff(0).is_zero());
                assert_eq!(
                    params.is_equal_difference,
                    is_binomial,
                    "flag vs shape at q={q} n={n} rep={} ({m})",
                    c.representative()
                );
            }
        }
    }
    report("(equal-difference binomial agreement)", started);
}

/// GFPoly display stays consistent with the documented format (spot pins
/// used by the CLI goldens).
#[test]
fn display_spot_pins() {
    let started = Instant::now();
    let spec = CosetSpec::new(2, 7).unwrap();
    let f = factorizer::factor_xn_minus_1(&spec).unwrap();
    let joined: Vec<String> = f.factors.iter().map(|e| e.poly.to_string()).collect();
    assert!(joined.contains(&"X^3 + X + 1".to_string()));
    let one = GFPoly::one(f.modulus_poly.ctx());
    assert_eq!(one.to_string(), "1");
    report("(display pins)", started);
}
