mod common;

use std::collections::BTreeSet;

use common::{load, random_gluing, weights, Case};
use gentri::error::Error;
use gentri::quiver::{glue, quiver_isomorphic, validate, BlockKind, GenTriQuiver, Role};
use gentri::relations::relations_lambda_dblprime;
use gentri::star::{orbit_data, star_quiver};
use gentri::transforms::{
    delta_construction, detect_exceptional, mutate_stage1, mutate_stage2, roundtrip_check,
    virtual_sequence, DeltaResult, Stage,
};
use gentri::weights::{parse_scalar, Multiplicity, WeightData};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn delta(q: &GenTriQuiver, w: &WeightData) -> DeltaResult {
    let sq = star_quiver(q).unwrap();
    let od = orbit_data(&sq);
    delta_construction(&sq, &od, w).unwrap()
}

fn canon(ids: &[&str]) -> Vec<String> {
    let k = (0..ids.len()).min_by_key(|&i| ids[i]).unwrap();
    ids[k..]
        .iter()
        .chain(&ids[..k])
        .map(|s| s.to_string())
        .collect()
}

fn g_orbits(q: &GenTriQuiver) -> BTreeSet<Vec<String>> {
    let sq = star_quiver(q).unwrap();
    orbit_data(&sq)
        .g_orbits
        .iter()
        .map(|o| {
            canon(
                &o.iter()
                    .map(|&a| q.arrows()[a].id.as_str())
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

#[test]
fn delta_of_type3_type5() {
    let q = load("type3_type5.gtq");
    let w = weights(&q, "type3_type5.wts", &[]);
    let d = delta(&q, &w);
    let dq = &d.quiver;
    assert_eq!(dq.count_kind(BlockKind::II), 3);
    assert!(dq.marking().is_empty());
    let expected: BTreeSet<Vec<String>> = [
        canon(&["V:xi_prime", "V:mu_prime"]),
        canon(&["V:theta", "V:kappa", "V:eta"]),
        canon(&["P:out", "V:zeta", "V:lambda", "V:epsilon", "V:psi", "P:in"]),
        canon(&["P:loop"]),
    ]
    .into();
    assert_eq!(g_orbits(dq), expected);
    let sq = star_quiver(dq).unwrap();
    let od = orbit_data(&sq);
    let f: BTreeSet<Vec<String>> = od
        .f_orbits
        .iter()
        .map(|o| {
            canon(
                &o.iter()
                    .map(|&a| dq.arrows()[a].id.as_str())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let expect_f: BTreeSet<Vec<String>> = [
        canon(&["V:eta", "V:xi_prime", "V:epsilon"]),
        canon(&["V:theta", "V:lambda", "V:mu_prime"]),
        canon(&["V:psi", "V:zeta", "V:kappa"]),
        canon(&["P:out", "P:in", "P:loop"]),
    ]
    .into();
    assert_eq!(f, expect_f);
    let m_of = |a: &str| {
        let o = od.orbit_by_rep(dq, a).unwrap();
        let rep = &dq.arrows()[od.rep(o)].id;
        (d.weights.m[rep].to_string(), d.weights.c[rep].to_string())
    };
    assert_eq!(m_of("V:xi_prime"), ("1".into(), "1".into()));
    assert_eq!(m_of("V:theta"), ("1".into(), "1".into()));
    assert_eq!(m_of("P:out"), ("m".into(), "c".into()));
    assert_eq!(m_of("P:loop"), ("n>=2".into(), "d".into()));
    assert!(od.border.is_empty());
    assert_eq!(virtual_sequence(&d), vec!["V:xi_prime".to_string()]);
}

/// Orbit lengths after the replacement grow by the number of tau and phi arrows.
#[test]
fn delta_orbit_census_on_random_gluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..30 {
        let q = glue(&random_gluing(&mut rng, 8, &BlockKind::ALL)).unwrap();
        let sq = star_quiver(&q).unwrap();
        let od = orbit_data(&sq);
        let w = WeightData::uniform(&q, &od, 2);
        let d = delta_construction(&sq, &od, &w).unwrap();
        let s = q.count_kind(BlockKind::IV);
        let t = q.count_kind(BlockKind::V);
        let dsq = star_quiver(&d.quiver).unwrap();
        let dod = orbit_data(&dsq);
        assert_eq!(dod.g_orbits.len(), od.g_orbits.len() + s + 2 * t);
        let mut expect: Vec<usize> = (0..od.g_orbits.len())
            .map(|o| {
                let grows = od.g_orbits[o]
                    .iter()
                    .filter(|&&a| matches!(q.arrows()[a].role, Role::Tau | Role::Phi))
                    .count();
                od.n(o) + grows
            })
            .chain(std::iter::repeat_n(2, s + t))
            .chain(std::iter::repeat_n(3, t))
            .collect();
        let mut got: Vec<usize> = dod.g_orbits.iter().map(Vec::len).collect();
        expect.sort_unstable();
        got.sort_unstable();
        assert_eq!(got, expect);
        assert_eq!(dod.border, od.border);
        assert!(validate(&d.quiver).is_empty());
        assert_eq!(d.quiver.vertices().len(), q.vertices().len());
    }
}

#[test]
fn roundtrips() {
    let cases: [Case; 5] = [
        (
            "type3_type5.gtq",
            Some("type3_type5.wts"),
            &[("m", 1), ("n", 2)],
        ),
        (
            "type3_type5.gtq",
            Some("type3_type5.wts"),
            &[("m", 3), ("n", 4)],
        ),
        (
            "seven_blocks.gtq",
            Some("seven_blocks.wts"),
            &[("m", 1), ("n", 2), ("p", 2)],
        ),
        (
            "seven_blocks.gtq",
            Some("seven_blocks.wts"),
            &[("m", 2), ("n", 1), ("p", 3)],
        ),
        ("two_iv.gtq", None, &[]),
    ];
    for (f, wf, v) in cases {
        let q = load(f);
        let w = match wf {
            Some(wf) => weights(&q, wf, v),
            None => {
                let sq = star_quiver(&q).unwrap();
                WeightData::uniform(&q, &orbit_data(&sq), 2)
            }
        };
        let r = roundtrip_check(&q, &w);
        assert!(r.passed, "{f}: {}", r.render());
        assert!(r.render().contains("PASS: isomorphism found"));
        assert!(r.witness.is_some());
    }
}

#[test]
fn roundtrip_on_random_gluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut marked = 0;
    for _ in 0..30 {
        let q = glue(&random_gluing(&mut rng, 7, &BlockKind::ALL)).unwrap();
        let sq = star_quiver(&q).unwrap();
        let w = WeightData::uniform(&q, &orbit_data(&sq), 2);
        let r = roundtrip_check(&q, &w);
        assert!(r.passed, "{}", r.render());
        marked += usize::from(!q.marking().is_empty());
    }
    assert!(marked > 0);
}

#[test]
fn stage_structure() {
    let q = load("seven_blocks.gtq");
    let w = weights(&q, "seven_blocks.wts", &[("m", 1), ("n", 2), ("p", 3)]);
    let d = delta(&q, &w);
    let m1 = mutate_stage1(&d).unwrap();
    assert_eq!(m1.stage, Stage::One);
    assert_eq!(
        m1.virtual_sequence,
        vec!["D:xi".to_string(), "V:xi_prime".to_string()]
    );
    assert_eq!(m1.quiver.count_kind(BlockKind::IV), 2);
    assert_eq!(m1.quiver.count_kind(BlockKind::V), 0);
    let regions = m1.regions();
    assert_eq!(regions.len(), 1);
    assert_eq!(regions[0].block, "V");
    assert!(relations_lambda_dblprime(&m1).is_ok());
    let m2 = mutate_stage2(&m1).unwrap();
    assert_eq!(m2.stage, Stage::Two);
    assert!(m2.hat.iter().any(|(a, e)| a == "V:omega" && e == "e_T1:a"));
    assert!(quiver_isomorphic(&q, &m2.quiver).is_some());
    assert!(matches!(mutate_stage2(&m2), Err(Error::Stage(_))));
    assert!(matches!(
        relations_lambda_dblprime(&m2),
        Err(Error::Stage(_))
    ));
}

#[test]
fn exceptional_detection() {
    let q = load("two_loops.gtq");
    let w = weights(&q, "two_loops.wts", &[]);
    assert_eq!(
        detect_exceptional(&delta(&q, &w)),
        vec!["singular disc, triangle and tetrahedral algebras: not checked".to_string()]
    );

    let q = load("two_iv.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let mut w = WeightData::uniform(&q, &od, 1);
    w.set_m(&q, &od, "D1:delta", Multiplicity::Value(2));
    w.set_c(&q, &od, "D1:delta", parse_scalar("-1").unwrap());
    let warn = detect_exceptional(&delta(&q, &w));
    assert_eq!(warn.len(), 2);
    assert!(warn[1].starts_with("singular"));
    w.set_c(&q, &od, "D1:delta", parse_scalar("3").unwrap());
    assert!(detect_exceptional(&delta(&q, &w)).is_empty());
    w.set_m(&q, &od, "D1:tau", Multiplicity::Value(2));
    w.set_c(&q, &od, "D1:delta", parse_scalar("-1").unwrap());
    assert!(detect_exceptional(&delta(&q, &w)).is_empty());
    let sym = WeightData::symbolic(&q, &od);
    let warn = detect_exceptional(&delta(&q, &sym));
    assert!(warn[1].contains("unverifiable"));
}

#[test]
fn determinism() {
    let q = load("thirteen_blocks.gtq");
    let sq = star_quiver(&q).unwrap();
    let w = WeightData::uniform(&q, &orbit_data(&sq), 2);
    let a = roundtrip_check(&q, &w).render();
    let b = roundtrip_check(&q, &w).render();
    assert_eq!(a, b);
}
