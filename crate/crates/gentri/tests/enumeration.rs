mod common;

use std::collections::BTreeMap;

use common::{load, random_gluing, vals, weights};
use gentri::enumeration::{
    basis_at_vertex, basis_counts_closed, basis_table, basis_triangulation, dimension_generalized,
    dimension_triangulation, DimensionPoly,
};
use gentri::error::Error;
use gentri::quiver::{glue, BlockKind};
use gentri::star::{orbit_data, star_quiver};
use gentri::weights::{validate_weights, Multiplicity, WeightData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn poly_display_and_eval() {
    let p = DimensionPoly {
        constant: 13,
        terms: BTreeMap::from([("m".into(), 36), ("n".into(), 1)]),
    };
    assert_eq!(p.to_string(), "36*m + n + 13");
    assert_eq!(p.eval(&vals(&[("m", 2), ("n", 3)])), Some(88));
    assert_eq!(p.eval(&vals(&[("m", 2)])), None);
    assert_eq!(DimensionPoly::constant(0).to_string(), "0");
    assert_eq!(DimensionPoly::constant(7).value(), Some(7));
}

#[test]
fn type3_type5_counts_agree() {
    let q = load("type3_type5.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let symbolic = weights(&q, "type3_type5.wts", &[]);
    let poly = dimension_generalized(&sq, &od, &symbolic).unwrap();
    for m in 1..=3 {
        for n in 2..=4 {
            let w = symbolic.instantiate(&vals(&[("m", m), ("n", n)]));
            let mut total = 0;
            for v in q.vertices() {
                let b = basis_at_vertex(&sq, &od, &w, &v.id).unwrap();
                let c = basis_counts_closed(&sq, &od, &w, &v.id).unwrap();
                assert_eq!(c.value(), Some(b.len() as i64), "{} at m={m} n={n}", v.id);
                assert!(b.elements.iter().all(|p| p.source == v.id));
                total += b.len() as i64;
            }
            assert_eq!(poly.eval(&vals(&[("m", m), ("n", n)])), Some(total));
        }
    }
}

/// Per-vertex count from orbit data alone: every vertex of Q* with two arrows
/// contributes m(n + n^nu + 2n^phi) per arrow; the special vertices of each
/// type IV or V block contribute one such term for delta or psi.
#[test]
fn closed_form_oracle() {
    let q = load("thirteen_blocks.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let w = WeightData::uniform(&q, &od, 2);
    let term = |a: usize| 2 * (od.n_of(a) + od.nu_of(a) + 2 * od.phi_of(a)) as i64;
    let mut expected = 0;
    for &a in &sq.arrows {
        expected += term(a);
    }
    for b in q.blocks() {
        match b.kind {
            BlockKind::IV => {
                expected += term(q.arrow_index(b.arrow(gentri::quiver::Role::Delta)).unwrap())
            }
            BlockKind::V => {
                expected += 2 * term(q.arrow_index(b.arrow(gentri::quiver::Role::Psi)).unwrap())
            }
            _ => {}
        }
    }
    assert_eq!(
        dimension_generalized(&sq, &od, &w).unwrap().value(),
        Some(expected)
    );
    let total: usize = basis_table(&sq, &od, &w)
        .unwrap()
        .iter()
        .map(|r| r.enumerated)
        .sum();
    assert_eq!(total as i64, expected);
}

#[test]
fn case_tags() {
    let q = load("seven_blocks.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let w = weights(&q, "seven_blocks.wts", &[("m", 1), ("n", 1), ("p", 2)]);
    let tag = |v: &str| basis_at_vertex(&sq, &od, &w, v).unwrap().case_tag;
    assert_eq!(tag("D:c"), "c-vertex");
    assert_eq!(tag("D:d"), "d-vertex");
    assert_eq!(tag("V:x1"), "x1-vertex");
    assert_eq!(tag("V:x2"), "x2-vertex");
    assert_eq!(tag("V:y1"), "y1-vertex");
    assert_eq!(tag("V:y2"), "y2-vertex");
    assert_eq!(tag("K:x"), "virtual-bar");
    assert_eq!(tag("T2:b"), "two-arrows");
    let w = weights(&q, "seven_blocks.wts", &[("m", 1), ("n", 1), ("p", 3)]);
    assert_eq!(
        basis_at_vertex(&sq, &od, &w, "K:x").unwrap().case_tag,
        "two-arrows"
    );
}

#[test]
fn delta_dimension_polynomial() {
    let q = load("type3_type5_delta.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let w = weights(&q, "type3_type5_delta.wts", &[]);
    let poly = dimension_triangulation(&sq, &od, &w).unwrap();
    assert_eq!(poly.to_string(), "36*m + n + 13");
    for (m, n) in [(1, 2), (2, 3), (3, 5)] {
        let wc = w.instantiate(&vals(&[("m", m), ("n", n)]));
        let total: usize = q
            .vertices()
            .iter()
            .map(|v| basis_triangulation(&sq, &od, &wc, &v.id).unwrap().len())
            .sum();
        assert_eq!(total as u64, 36 * m + n + 13);
    }
}

#[test]
fn two_loops_triangulation_basis() {
    let q = load("two_loops.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let w = weights(&q, "two_loops.wts", &[]);
    let b = basis_triangulation(&sq, &od, &w, "A:v").unwrap();
    assert_eq!(b.len(), 3 * 2 * 2);
    assert_eq!(
        dimension_triangulation(&sq, &od, &w).unwrap().value(),
        Some(12)
    );
    let mut w1 = w.clone();
    w1.set_m(&q, &od, "A:loop", Multiplicity::Value(1));
    assert!(matches!(
        basis_triangulation(&sq, &od, &w1, "A:v"),
        Err(Error::Weight(_))
    ));
}

#[test]
fn triangulation_formulas_reject_marked_quivers() {
    let q = load("type3_type5.gtq");
    let sq = star_quiver(&q).unwrap();
    let od = orbit_data(&sq);
    let w = WeightData::uniform(&q, &od, 2);
    assert!(matches!(
        dimension_triangulation(&sq, &od, &w),
        Err(Error::NotTriangulation(_))
    ));
    assert!(matches!(
        basis_triangulation(&sq, &od, &w, "P:y"),
        Err(Error::NotTriangulation(_))
    ));
}

fn random_weights<R: Rng>(rng: &mut R, q: &gentri::quiver::GenTriQuiver) -> Option<WeightData> {
    let sq = star_quiver(q).unwrap();
    let od = orbit_data(&sq);
    let mut w = WeightData::uniform(q, &od, 1);
    for o in 0..od.g_orbits.len() {
        let id = q.arrows()[od.rep(o)].id.clone();
        w.set_m(q, &od, &id, Multiplicity::Value(rng.gen_range(1..=3)));
    }
    validate_weights(&sq, &od, &w).is_empty().then_some(w)
}

#[test]
fn counts_agree_on_random_gluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut tried = 0;
    let mut virtual_seen = 0;
    while tried < 60 {
        let q = glue(&random_gluing(&mut rng, 8, &BlockKind::ALL)).unwrap();
        let Some(w) = random_weights(&mut rng, &q) else {
            continue;
        };
        tried += 1;
        let sq = star_quiver(&q).unwrap();
        let od = orbit_data(&sq);
        let rows = basis_table(&sq, &od, &w).unwrap();
        for r in &rows {
            assert_eq!(r.closed.value(), Some(r.enumerated as i64), "{}", r.vertex);
            virtual_seen += usize::from(r.case_tag == "virtual-bar");
        }
        let total: usize = rows.iter().map(|r| r.enumerated).sum();
        assert_eq!(
            dimension_generalized(&sq, &od, &w).unwrap().value(),
            Some(total as i64)
        );
    }
    assert!(virtual_seen > 0);
}

#[test]
fn triangulation_counts_on_random_gluings() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let kinds = [BlockKind::I, BlockKind::II, BlockKind::III];
    let mut tried = 0;
    while tried < 40 {
        let q = glue(&random_gluing(&mut rng, 8, &kinds)).unwrap();
        let Some(w) = random_weights(&mut rng, &q) else {
            continue;
        };
        tried += 1;
        let sq = star_quiver(&q).unwrap();
        let od = orbit_data(&sq);
        let total: usize = q
            .vertices()
            .iter()
            .map(|v| basis_triangulation(&sq, &od, &w, &v.id).unwrap().len())
            .sum();
        let oracle: usize = od
            .g_orbits
            .iter()
            .map(|o| w.m[&q.arrows()[o[0]].id].value().unwrap() as usize * o.len() * o.len())
            .sum();
        assert_eq!(total, oracle);
        assert_eq!(
            dimension_triangulation(&sq, &od, &w).unwrap().value(),
            Some(total as i64)
        );
    }
}
