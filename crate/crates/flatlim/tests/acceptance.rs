//! Acceptance gate for the toolkit: one test per numbered criterion, each
//! ending in a single "criterion N: PASS" line (visible with --nocapture;
//! a failing assertion marks the criterion FAILED via the test harness).
//!
//! Criterion 8 is prose, not computation: the Hilbert-scheme connectedness
//! consequence of the construction is not reproducible by this artifact,
//! and acceptance rests on criteria 1-7 below.

use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flatlim::family::{
    catalan_c, certify, check_in_a, check_p_closed_form, curve_ideal, det_a, distinct_sums,
    extremal_ideal, g_product_form, poly_f, poly_p, random_distinct_sum_points, random_point_set,
    vandermonde, worked_example, PointSet,
};
use flatlim::groebner::{div_exact, ideals_equal, initial_ideal, saturate_irrelevant, Ideal};
use flatlim::hilbert::{self, ci_hilbert_check, hilbert_series_monomial};
use flatlim::linalg::RowSpan;
use flatlim::poly::{monomials_of_degree, Monomial, Polynomial, TermOrder, Var};
use flatlim::report::{CertificationReport, Verdict};
use flatlim::scalar::{Field, Scalar};

fn parse(s: &str) -> Polynomial {
    Polynomial::parse(s, Field::Q).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

struct CertifiedInstance {
    d: usize,
    pts: PointSet,
    report: CertificationReport,
}

struct Fixture {
    instances: Vec<CertifiedInstance>,
    elapsed: Duration,
}

/// Certified distinct-sum instances shared by criteria 2, 5 and 6:
/// five seeded point sets each for d = 3, 4, 5 over Q, plus the optional
/// d = 6 leg over F_101 where rational coefficient growth is irrelevant.
fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let start = Instant::now();
        let mut instances = Vec::new();
        for (d, field) in [
            (3, Field::Q),
            (4, Field::Q),
            (5, Field::Q),
            (6, Field::Fp(101)),
        ] {
            for seed in 0..5u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(100 * d as u64 + seed);
                let pts = random_distinct_sum_points(d, field, 10, &mut rng);
                let report = certify(&pts).expect("certification completes");
                instances.push(CertifiedInstance { d, pts, report });
            }
        }
        Fixture { instances, elapsed: start.elapsed() }
    })
}

fn snapshot_ideal(gens: &[String], field: Field) -> Ideal {
    Ideal::new(
        field,
        gens.iter()
            .map(|s| Polynomial::parse(s, field).unwrap())
            .collect(),
    )
}

#[test]
fn criterion_1_documented_instance_reproduced_exactly() {
    let start = Instant::now();
    let pts = worked_example::point_set();
    let parts = det_a(&pts);

    // A equals the printed expansion x*G - z*B, with G and B as factored.
    let g = parse(worked_example::G_FACTORED);
    let b = parse(worked_example::B_FACTORED);
    assert_eq!(parts.g, g);
    assert_eq!(parts.b, b);
    let x = parse("x");
    let z = parse("z");
    assert_eq!(parts.a, x.mul(&g).sub(&z.mul(&b)));

    // in_(4,2,1,1)(A) = 12*(3z+w)*(x*G1 - y^3*F1) with F1 = 2z^3.
    let in_a = parts.a.initial_form(&pts.omega()).unwrap();
    assert_eq!(in_a, parse(worked_example::INITIAL_A_FACTORED));
    let g1 = parse("(z+w)*(2*z+w)*(3*z+w)*(4*z+w)*(5*z+w)");
    let rebuilt = parse("12*(3*z+w)").mul(&x.mul(&g1).sub(&parse("y^3").mul(&parse("2*z^3"))));
    assert_eq!(in_a, rebuilt);

    // The weighted initial ideal of the curve equals, as an ideal, the
    // documented eight-generator list; its saturation the five-generator one.
    let curve = curve_ideal(&pts);
    let initial = initial_ideal(&curve, &pts.omega());
    let documented_initial: Vec<String> = worked_example::INITIAL_IDEAL_GENS
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert!(ideals_equal(
        &initial,
        &snapshot_ideal(&documented_initial, Field::Q)
    ));
    let saturated = saturate_irrelevant(&initial).unwrap();
    let documented_saturated: Vec<String> = worked_example::SATURATED_GENS
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert!(ideals_equal(
        &saturated,
        &snapshot_ideal(&documented_saturated, Field::Q)
    ));

    // Embedded point of length 1 at 3z + w = 0.
    let report = certify(&pts).unwrap();
    assert_eq!(report.verdict, Verdict::EmbeddedPoints { length: 1 });
    let detail = report.detail.unwrap();
    assert_eq!(detail.embedded_length, 1);
    assert_eq!(
        detail.embedded_locus,
        Some(parse(worked_example::EMBEDDED_LOCUS))
    );

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 1: PASS - documented degree-4 instance reproduced exactly in {elapsed:?}");
}

#[test]
fn criterion_2_extremal_limits_at_desk_scale() {
    let fx = fixture();
    for inst in &fx.instances {
        let d = inst.d;
        let field = inst.pts.field();
        assert!(distinct_sums(&inst.pts));
        assert_eq!(
            inst.report.verdict,
            Verdict::ExtremalLimit,
            "d = {d}, points {}",
            inst.pts
        );
        let detail = inst.report.detail.as_ref().unwrap();

        // Saturated limit equals <x^2, xy, y^d, xG - y^(d-1)F> rebuilt from
        // scratch out of the pipeline forms.
        let f = poly_f(&inst.pts);
        let g = det_a(&inst.pts).g;
        let expected = extremal_ideal(d, &f, &g).unwrap();
        let saturated = snapshot_ideal(&detail.saturated_ideal.reduced_groebner, field);
        assert!(ideals_equal(&saturated, &expected));

        // Hilbert polynomial dn + d, i.e. degree d and genus 1 - d.
        assert_eq!(detail.hilbert.saturated.to_string(), format!("{d}*n + {d}"));
        assert_eq!(detail.hilbert.genus_limit, Some(BigInt::from(1 - d as i64)));

        // Degrees deg F = C(d-1,2) + 1, deg G = C(d,2); gcd constant.
        assert_eq!(
            u64::from(detail.f.total_degree()),
            binom(d as u64 - 1, 2) + 1
        );
        assert_eq!(u64::from(detail.g.total_degree()), binom(d as u64, 2));
        assert_eq!(detail.gcd_fg.total_degree(), 0);
        assert!(detail.distinct_sums);
    }
    assert_eq!(fx.instances.len(), 20);
    assert!(
        fx.elapsed < Duration::from_secs(300),
        "took {:?}",
        fx.elapsed
    );
    println!(
        "criterion 2: PASS - 20 seeded distinct-sum instances (d = 3,4,5 over Q; d = 6 over F_101) certified extremal in {:?}",
        fx.elapsed
    );
}

#[test]
fn criterion_3_catalan_recurrence_matches_closed_form() {
    let expected: [u64; 9] = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (d, want) in (2usize..=10).zip(expected) {
        // catalan_c itself asserts recurrence == closed form at every step;
        // re-derive the closed form here independently.
        let closed = binom(2 * d as u64 - 4, d as u64 - 2) / (d as u64 - 1);
        assert_eq!(catalan_c(d), BigInt::from(want));
        assert_eq!(closed, want);
    }
    println!("criterion 3: PASS - c_d for d = 2..10 from the recurrence equals the closed form");
}

#[test]
fn criterion_4_identity_suite_on_random_instances() {
    let start = Instant::now();
    let mut checked = 0usize;
    for d in 3..=6usize {
        let mut rng = ChaCha8Rng::seed_from_u64(4000 + d as u64);
        for _ in 0..100 {
            let pts = random_point_set(d, Field::Q, 12, &mut rng);
            let parts = det_a(&pts);

            // G as the Vandermonde-style product over pairs.
            assert_eq!(parts.g, g_product_form(&pts), "points {pts}");

            // in_omega(A) = xG - y^(d-1) F.
            assert!(check_in_a(&pts), "points {pts}");

            // P(1, -a1-a2) closed form.
            assert!(check_p_closed_form(&pts), "points {pts}");

            // z^(d-2) divides P.
            let p = poly_p(&pts);
            let z_pow = Polynomial::term(
                Scalar::one(Field::Q),
                Monomial::new([0, 0, d as u16 - 2, 0]),
            );
            assert!(div_exact(&p, &z_pow).is_ok(), "points {pts}");

            // Coefficient of z^(d-2) w^C(d-2,2) in P is -c_d * V(a_1..a_d).
            let k = binom(d as u64 - 2, 2) as u16;
            let coeff = p.coefficient(&Monomial::new([0, 0, d as u16 - 2, k]));
            let expected =
                (&Scalar::from_integer(&catalan_c(d), Field::Q) * &vandermonde(&pts)).neg();
            assert_eq!(coeff, expected, "points {pts}");

            checked += 1;
        }
    }
    assert_eq!(checked, 400);
    println!(
        "criterion 4: PASS - 5 exact identities on 100 random rational instances per d = 3..6 in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_5_flatness_of_graded_dimensions() {
    // Independent recomputation on one instance: equality of the Hilbert
    // functions of the curve and its weighted initial ideal through the
    // largest Groebner generator degree plus 4.
    let pts = PointSet::from_integers(&[0, 1, 3], Field::Q).unwrap();
    let curve = curve_ideal(&pts);
    let initial = initial_ideal(&curve, &pts.omega());
    let gb_degree = |i: &Ideal| {
        i.groebner_basis(&TermOrder::Grevlex)
            .elements()
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap()
    };
    let bound = gb_degree(&curve).max(gb_degree(&initial)) + 4;
    for n in 0..=bound {
        assert_eq!(
            hilbert::hilbert_function(&curve, n).unwrap(),
            hilbert::hilbert_function(&initial, n).unwrap(),
            "degree {n}"
        );
    }

    // Every certified instance carries the same check, performed by the
    // pipeline over the same window.
    let mut count = 0usize;
    let one = certify(&worked_example::point_set()).unwrap();
    for report in fixture()
        .instances
        .iter()
        .map(|i| &i.report)
        .chain(std::iter::once(&one))
    {
        let detail = report.detail.as_ref().unwrap();
        assert!(detail.flatness, "instance {:?}", report.instance.points);
        assert!(detail.flatness_checked_through >= 4);
        count += 1;
    }
    println!("criterion 5: PASS - graded dimensions of curve and initial ideal agree on {count} certified instances");
}

#[test]
fn criterion_6_rao_module_hilbert_function() {
    // Pipeline-independent check on the fixture forms: the quotient by
    // <x,y,F,G> has the complete-intersection Hilbert function with total
    // dimension deg F * deg G.
    let mut count = 0usize;
    for inst in &fixture().instances {
        let detail = inst.report.detail.as_ref().unwrap();
        let f = &detail.f;
        let g = &detail.g;
        let ci = ci_hilbert_check(f, g).expect("coprime pipeline forms");
        let df = u64::from(f.total_degree());
        let dg = u64::from(g.total_degree());
        assert_eq!(ci.total, df * dg);
        let series: u64 = ci.dims.iter().sum();
        assert_eq!(series, ci.total);
        assert!(detail.rao.checked, "points {}", inst.pts);
        assert_eq!(detail.rao.total, df * dg);
        assert_eq!(detail.rao.dims, ci.dims);
        assert_eq!(detail.rao.shift_b, df as i64 - 1);
        count += 1;
    }

    // Degenerate instance: the check runs on the common-factor-free forms.
    let report = certify(&worked_example::point_set()).unwrap();
    let detail = report.detail.unwrap();
    assert!(detail.rao.checked);
    assert_eq!(detail.rao.total, 15);
    assert_eq!(detail.rao.dims, vec![1, 2, 3, 3, 3, 2, 1]);
    println!("criterion 6: PASS - torsion-module Hilbert functions match the complete-intersection series on {count} instances plus the degenerate one");
}

fn random_homogeneous(
    degree: u32,
    terms: usize,
    field: Field,
    rng: &mut ChaCha8Rng,
) -> Polynomial {
    let basis = monomials_of_degree(degree);
    let mut acc = Polynomial::zero(field);
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())];
        let c = match field {
            Field::Q => Scalar::from_i64(rng.gen_range(1..=5) * if rng.gen() { 1 } else { -1 }, field),
            Field::Fp(p) => Scalar::from_i64(rng.gen_range(1..p as i64), field),
        };
        acc = acc.add(&Polynomial::term(c, m));
    }
    acc
}

/// Degree-bounded membership oracle: a homogeneous p of degree n lies in
/// the homogeneous ideal iff it lies in the linear span of all m * g_i of
/// degree n. No Groebner machinery involved.
fn span_contains(gens: &[Polynomial], p: &Polynomial, field: Field) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = p.total_degree();
    let basis = monomials_of_degree(n);
    let index: HashMap<Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let coords = |f: &Polynomial| {
        let mut v = vec![Scalar::zero(field); basis.len()];
        for (c, m) in f.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let mut span = RowSpan::new(field, basis.len());
    for g in gens {
        if g.is_zero() || g.total_degree() > n {
            continue;
        }
        for m in monomials_of_degree(n - g.total_degree()) {
            span.insert(coords(&g.mul(&Polynomial::term(Scalar::one(field), m))));
        }
    }
    span.contains(&coords(p))
}

#[test]
fn criterion_7_engine_oracle_equivalence() {
    let start = Instant::now();

    // Groebner membership against the exact linear-algebra span oracle.
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    let mut members = 0usize;
    let mut non_members = 0usize;
    for i in 0..200 {
        let field = if i % 2 == 0 { Field::Fp(101) } else { Field::Q };
        let gens: Vec<Polynomial> = (0..rng.gen_range(2..=4))
            .map(|_| random_homogeneous(rng.gen_range(1..=3), rng.gen_range(1..=3), field, &mut rng))
            .filter(|f| !f.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(field, gens.clone());

        // One candidate built to be a member, one drawn freely.
        let target_degree = gens.iter().map(Polynomial::total_degree).max().unwrap()
            + rng.gen_range(0..=2);
        let mut member = Polynomial::zero(field);
        for g in &gens {
            if g.total_degree() > target_degree {
                continue;
            }
            let cofactor = random_homogeneous(
                target_degree - g.total_degree(),
                rng.gen_range(1..=2),
                field,
                &mut rng,
            );
            member = member.add(&g.mul(&cofactor));
        }
        let free = random_homogeneous(target_degree, rng.gen_range(1..=3), field, &mut rng);

        for candidate in [member, free] {
            let by_groebner = ideal.contains(&candidate);
            let by_span = span_contains(&gens, &candidate, field);
            assert_eq!(by_groebner, by_span, "instance {i}");
            if by_groebner {
                members += 1;
            } else {
                non_members += 1;
            }
        }
    }
    assert!(members >= 100, "only {members} member cases exercised");
    assert!(non_members >= 20, "only {non_members} non-member cases exercised");

    // Monomial Hilbert series against brute-force counting through degree 10.
    let mut rng = ChaCha8Rng::seed_from_u64(7002);
    for i in 0..200 {
        let monos: Vec<Monomial> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let basis = monomials_of_degree(rng.gen_range(1..=4));
                basis[rng.gen_range(0..basis.len())]
            })
            .collect();
        let numerator = hilbert_series_monomial(&monos);
        for n in 0..=10u32 {
            let survivors = monomials_of_degree(n)
                .into_iter()
                .filter(|m| !monos.iter().any(|g| g.divides(m)))
                .count();
            assert_eq!(
                numerator.hilbert_function(n),
                BigInt::from(survivors),
                "instance {i}, degree {n}"
            );
        }
    }

    println!(
        "criterion 7: PASS - membership matches the span oracle ({members} members, {non_members} non-members) and monomial Hilbert series match brute-force counts, in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_summary_note() {
    // Criterion 8 has no computational content (prose consequence about
    // connectedness of Hilbert scheme components); nothing to run.
    println!("criterion 8: NOTE - prose-only consequence, covered by criteria 1-7");
    let _ = Var::ALL;
}
