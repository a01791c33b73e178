//! Acceptance suite: one test per headline computation the crate is expected
//! to reproduce exactly, each with its own tolerance (always exact integer
//! equality) and, where stated, a wall-clock budget. Every test prints a
//! single `criterion N: PASS` line so a full run doubles as a release
//! checklist.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hochschild::dg::registry::{ExampleObject, ExampleParams, ExampleRegistry};
use hochschild::dg::{dualize_algebra, dualize_coalgebra, DGAlgebra, DGCoalgebra};
use hochschild::{
    cohochschild, condition1_check, condition2_check, duality_transport_cohh, ext_from_resolution,
    hochschild, oracle_crosscheck, tensor_rank_bound_demo, truncated_duality_check,
    CoefficientRing, Error, GradedModule, HomologyGroup, PeriodicResolution, Stability, Window,
};

fn gf(p: u32) -> CoefficientRing {
    CoefficientRing::PrimeField { p }
}

fn build(name: &str, params: ExampleParams) -> ExampleObject {
    ExampleRegistry::with_defaults().build(name, &params).unwrap_or_else(|e| panic!("build {name}: {e}"))
}

fn algebra(obj: ExampleObject) -> DGAlgebra {
    match obj {
        ExampleObject::Algebra(a) => a,
        other => panic!("expected an algebra, got a {}", other.kind()),
    }
}

fn coalgebra(obj: ExampleObject) -> DGCoalgebra {
    match obj {
        ExampleObject::Coalgebra(c) => c,
        other => panic!("expected a coalgebra, got a {}", other.kind()),
    }
}

fn w(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

/// HH of Λ(z₋₁) never stabilizes: the level-N truncation shows rank N+1 in
/// degrees 0 and −1 (a divided-power tower collapsing mod p), zero elsewhere,
/// and the flag must say so with the full per-level rank history.
#[test]
fn criterion_1_exterior_hh_rank_growth_over_prime_fields() {
    let start = Instant::now();
    for p in [2u32, 3, 5] {
        for n in 2..=8usize {
            let a = algebra(build(
                "exterior",
                ExampleParams { ring: Some(gf(p)), gen_degrees: vec![-1], ..Default::default() },
            ));
            let table = hochschild(&a, n, w(-3, 2)).unwrap();
            for t in -3..=2i64 {
                let group = table.group(t);
                if t == 0 || t == -1 {
                    assert_eq!(group, HomologyGroup::free(n + 1), "p={p} N={n} degree {t}");
                    let row = table.get(t).unwrap();
                    match &row.stability {
                        Stability::Unstable { ranks_by_level, .. } => {
                            assert_eq!(ranks_by_level.first(), Some(&1), "p={p} N={n} degree {t}");
                            assert_eq!(
                                ranks_by_level.last(),
                                Some(&(n + 1)),
                                "p={p} N={n} degree {t}"
                            );
                            assert!(
                                ranks_by_level.windows(2).all(|pair| pair[1] == pair[0] + 1),
                                "p={p} N={n} degree {t}: growth must be +1 per level, got {ranks_by_level:?}"
                            );
                        }
                        other => panic!(
                            "p={p} N={n} degree {t}: expected an unstable flag, got {}",
                            other.short_name()
                        ),
                    }
                } else {
                    assert!(group.is_zero(), "p={p} N={n} degree {t}: expected zero, got {group}");
                }
            }
            // Independent unnormalized-bar oracle, kept to sizes it can afford.
            if n <= 4 {
                oracle_crosscheck(&a, n, w(-3, 2)).unwrap();
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5s");
    println!(
        "criterion 1: PASS — Λ(z₋₁) over GF(2),GF(3),GF(5), N=2..8: rank N+1 in degrees 0,−1, \
         zero elsewhere in [−3,2], unstable +1/level, oracle agrees for N≤4 ({elapsed:?})"
    );
}

/// Connective one-generator exterior algebra: rank 1 in every degree of
/// [0,6] at N = 8, and the connectivity certificate must cover all of them.
#[test]
fn criterion_2_connective_exterior_certified_line() {
    let start = Instant::now();
    let a = algebra(build(
        "exterior",
        ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1], ..Default::default() },
    ));
    let table = hochschild(&a, 8, w(0, 6)).unwrap();
    for t in 0..=6i64 {
        assert_eq!(table.group(t), HomologyGroup::free(1), "degree {t}");
        let row = table.get(t).unwrap();
        assert!(
            matches!(row.stability, Stability::Certified { .. }),
            "degree {t}: expected certified, got {}",
            row.stability.short_name()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5s");
    println!(
        "criterion 2: PASS — Λ_GF(2)(y₁), N=8, window [0,6]: rank 1 in every degree, \
         all certified ({elapsed:?})"
    );
}

/// The two-cell model of F_p over Z (dε = p, ε² = 0) has HH equal to Z/p in
/// even degrees and zero in odd ones; integral certificates included.
#[test]
fn criterion_3_koszul_model_torsion_pattern() {
    let start = Instant::now();
    for p in [2u32, 3] {
        let a = algebra(build("koszul", ExampleParams { p: Some(p), ..Default::default() }));
        let table = hochschild(&a, 8, w(0, 5)).unwrap();
        for t in 0..=5i64 {
            let expected = if t % 2 == 0 {
                HomologyGroup { free_rank: 0, torsion: vec![p as i64] }
            } else {
                HomologyGroup::zero()
            };
            assert_eq!(table.group(t), expected, "p={p} degree {t}");
            let row = table.get(t).unwrap();
            assert!(
                matches!(row.stability, Stability::Certified { .. }),
                "p={p} degree {t}: expected certified, got {}",
                row.stability.short_name()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}, budget 10s");
    println!(
        "criterion 3: PASS — Koszul model of F_p over Z, p∈{{2,3}}, N=8, window [0,5]: \
         Z/p in degrees 0,2,4, zero in 1,3,5, certified ({elapsed:?})"
    );
}

/// The dual coalgebra's coHH computed two independent ways — directly from
/// the cobar complex and by transporting HH of its dual algebra — must agree
/// on the torsion pattern Z/p in degrees −1, −3, −5.
#[test]
fn criterion_4_dual_koszul_cohh_two_routes_agree() {
    let start = Instant::now();
    for p in [2u32, 3] {
        let c = coalgebra(build("dual-koszul", ExampleParams { p: Some(p), ..Default::default() }));
        let window = w(-5, 0);
        let direct = cohochschild(&c, 8, window).unwrap();
        let transported = duality_transport_cohh(&c, 8, window, false).unwrap();
        assert!(!transported.forced, "p={p}: transport must succeed without force");
        for t in -5..=0i64 {
            let expected = if t % 2 != 0 {
                HomologyGroup { free_rank: 0, torsion: vec![p as i64] }
            } else {
                HomologyGroup::zero()
            };
            assert_eq!(direct.group(t), expected, "p={p} direct, degree {t}");
            assert_eq!(transported.table.group(t), expected, "p={p} transported, degree {t}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}, budget 10s");
    println!(
        "criterion 4: PASS — dual Koszul coalgebra, p∈{{2,3}}, N=8, window [−5,0]: cobar and \
         transport both give Z/p in degrees −1,−3,−5 ({elapsed:?})"
    );
}

/// Truncation fingerprint of the infinite product answer: coHH of the
/// one-generator exterior coalgebra shows rank N+1 in degrees 0 and 1 only,
/// and the transported table matches rank for rank at every level.
#[test]
fn criterion_5_exterior_coalgebra_fingerprint_and_transport() {
    let c = coalgebra(build(
        "exterior-coalgebra",
        ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1], ..Default::default() },
    ));
    let window = w(-2, 3);
    for n in 1..=6usize {
        let direct = cohochschild(&c, n, window).unwrap();
        let transported = duality_transport_cohh(&c, n, window, false).unwrap();
        for t in -2..=3i64 {
            let expected = if t == 0 || t == 1 { n + 1 } else { 0 };
            assert_eq!(direct.group(t).free_rank, expected, "N={n} direct, degree {t}");
            assert!(direct.group(t).torsion.is_empty(), "N={n} degree {t}: field coefficients");
            assert_eq!(
                transported.table.group(t).free_rank,
                expected,
                "N={n} transported, degree {t}"
            );
        }
    }
    println!(
        "criterion 5: PASS — exterior coalgebra on one degree-1 generator, N=1..6: coHH rank \
         N+1 in degrees 0 and 1 only, transport matches rank-for-rank"
    );
}

/// For every field coalgebra the registry can produce, coHH of the object and
/// HH of its linear dual agree rank-for-rank in reflected degrees at the same
/// truncation — the finite avatar of the duality equivalence.
#[test]
fn criterion_6_truncated_duality_across_registry() {
    let registry = ExampleRegistry::with_defaults();
    let mut checked = 0usize;
    for (object, label) in registry.standard_instances().unwrap() {
        let ExampleObject::Coalgebra(c) = object else { continue };
        if !c.ring().is_field() {
            continue;
        }
        for n in 1..=5usize {
            let report = truncated_duality_check(&c, n, w(-3, 3)).unwrap();
            assert!(report.passed, "{label} at N={n}");
            for row in &report.rows {
                assert_eq!(
                    row.cohh_rank, row.hh_dual_rank,
                    "{label} at N={n}, degree {}: per-degree diff must be zero",
                    row.degree
                );
            }
        }
        checked += 1;
    }
    assert!(checked >= 4, "expected at least four field coalgebras in the registry, saw {checked}");
    println!(
        "criterion 6: PASS — truncated duality check passes with zero per-degree diff for all \
         {checked} registry field coalgebras, N=1..5"
    );
}

/// Finite-type objects satisfy both dualizability conditions in every covered
/// degree, for tensor powers up to 3, on registry examples and on randomized
/// exterior algebras; and dualizing twice reproduces the structure constants.
#[test]
fn criterion_7_condition_suite_and_dualize_round_trips() {
    let both_conditions_pass = |x: &hochschild::ChainComplex, label: &str| {
        let span = x.natural_window().unwrap_or_else(|| w(0, 0));
        for n in 0..=3usize {
            let lo = (span.lo * n as i64).min(0) - 1;
            let hi = (span.hi * n as i64).max(0) + 1;
            let report = condition1_check(x, n, w(lo, hi)).unwrap();
            assert!(report.passed(), "{label}: condition 1 at tensor power {n}");
            assert!(report.certifiable, "{label}: condition 1 certificate at tensor power {n}");
        }
        let report = condition2_check(x, w(span.lo.min(0) - 1, span.hi.max(0) + 1)).unwrap();
        assert!(report.passed(), "{label}: condition 2");
        assert!(report.certifiable, "{label}: condition 2 certificate");
    };

    let registry = ExampleRegistry::with_defaults();
    let mut registry_objects = 0usize;
    for (object, label) in registry.standard_instances().unwrap() {
        if !object.complex().is_complete() {
            continue; // declared windows carry no certificate and are tested elsewhere
        }
        both_conditions_pass(object.complex(), &label);
        if let ExampleObject::Algebra(a) = &object {
            let span = a.complex().natural_window().unwrap();
            let dual = dualize_algebra(a, span.reflect()).unwrap();
            let back = dualize_coalgebra(&dual, span).unwrap();
            assert_eq!(a.products(), back.products(), "{label}: product constants after (−)∨∨");
            assert_eq!(a.unit(), back.unit(), "{label}: unit after (−)∨∨");
        }
        registry_objects += 1;
    }
    assert!(registry_objects >= 12, "expected the full finite-type registry, saw {registry_objects}");

    // Randomized finite-type algebras: ≤ 3 generators in degrees [−3,3]\{0}
    // over GF(p), p ≤ 5. Seeded, so failures replay exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce5507);
    for i in 0..50usize {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let count = rng.gen_range(1..=3usize);
        let degrees: Vec<i64> = (0..count)
            .map(|_| loop {
                let d = rng.gen_range(-3..=3i64);
                if d != 0 {
                    break d;
                }
            })
            .collect();
        let a = algebra(build(
            "exterior",
            ExampleParams { ring: Some(gf(p)), gen_degrees: degrees.clone(), ..Default::default() },
        ));
        let label = format!("random #{i}: exterior over GF({p}) on degrees {degrees:?}");
        both_conditions_pass(a.complex(), &label);
        let span = a.complex().natural_window().unwrap();
        let dual = dualize_algebra(&a, span.reflect()).unwrap();
        let back = dualize_coalgebra(&dual, span).unwrap();
        assert_eq!(a.products(), back.products(), "{label}: product constants after (−)∨∨");
        assert_eq!(a.unit(), back.unit(), "{label}: unit after (−)∨∨");
    }
    println!(
        "criterion 7: PASS — conditions 1 (n≤3) and 2 hold in all covered degrees for \
         {registry_objects} finite-type registry objects and 50 randomized exterior algebras; \
         dualize round trips reproduce structure constants exactly"
    );
}

/// Formality obstructions for the exterior algebra on a degree −1 generator:
/// the obstruction bidegrees all vanish, and Ext(k,k) over the periodic
/// resolution is rank 1 on the diagonal in cohomological degrees 0..4.
#[test]
fn criterion_8_ext_obstructions_vanish() {
    let start = Instant::now();
    let res = PeriodicResolution::standard(-1, 8);
    for s in 1..=4i64 {
        // Hom(stage s+2, k ⊕ k[−1] shifted down by s) in internal degree 0:
        // a nonzero group here would obstruct rigidifying the multiplication.
        let target = GradedModule::new(gf(2), [(-s, 1), (-s - 1, 1)].into());
        let table = ext_from_resolution(&res, &target, w(s + 2, s + 2)).unwrap();
        assert!(table.is_zero_at(s + 2, 0), "obstruction bidegree at stage {}", s + 2);
    }
    let res = PeriodicResolution::standard(-1, 5);
    let k = GradedModule::new(gf(2), [(0, 1)].into());
    let table = ext_from_resolution(&res, &k, w(0, 4)).unwrap();
    for s in 0..=4i64 {
        assert_eq!(table.group(s, s), HomologyGroup::free(1), "Ext diagonal, stage {s}");
        for t in 0..=4i64 {
            if t != s {
                assert!(table.is_zero_at(s, t), "Ext off-diagonal ({s},{t})");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(2), "took {elapsed:?}, budget 2s");
    println!(
        "criterion 8: PASS — obstruction bidegrees s=1..4 vanish; Ext over Λ(z₋₁) is rank 1 \
         on the diagonal in cohomological degrees 0..4 ({elapsed:?})"
    );
}

/// The two cautionary demos: the identity pairing needs m simple tensors
/// (rank m vs rank ≤ m−1 separation), and transporting a declared truncation
/// is refused unless forced — with the refusal and the override both on the
/// audit trail.
#[test]
fn criterion_9_counterexample_demos() {
    for m in 1..=6usize {
        let demo = tensor_rank_bound_demo(m, gf(2)).unwrap();
        assert_eq!(demo.identity_rank, m, "m={m}");
        assert!(demo.bound_holds, "m={m}: observed a sum of simple tensors beating its budget");
        if m >= 2 {
            assert_eq!(demo.term_budget, m - 1, "m={m}");
            assert!(
                demo.max_rank_observed < demo.identity_rank,
                "m={m}: no separation, observed {} vs identity {}",
                demo.max_rank_observed,
                demo.identity_rank
            );
        }
    }

    let fvs = coalgebra(build(
        "finite-vector-space",
        ExampleParams { ring: Some(gf(2)), size: Some(3), ..Default::default() },
    ));
    let window = w(-3, 1);
    assert!(
        matches!(duality_transport_cohh(&fvs, 3, window, false), Err(Error::TransportRefused { .. })),
        "a declared window must be refused without force"
    );
    let forced = duality_transport_cohh(&fvs, 3, window, true).unwrap();
    assert!(forced.forced);
    assert!(
        forced.audit.iter().any(|line| line.starts_with("refused:")),
        "audit must record the refusal: {:?}",
        forced.audit
    );
    assert!(
        forced.audit.iter().any(|line| line.starts_with("override:")),
        "audit must record the override: {:?}",
        forced.audit
    );
    for (degree, row) in &forced.table.rows {
        assert!(
            !matches!(row.stability, Stability::Certified { .. }),
            "degree {degree}: forced transport must not claim a certificate"
        );
    }
    println!(
        "criterion 9: PASS — rank-m vs rank-≤(m−1) separation for m=1..6; forced transport \
         emits the refusal→override audit trail and downgrades every flag"
    );
}
