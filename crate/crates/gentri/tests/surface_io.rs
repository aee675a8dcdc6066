mod common;

use common::{load, load_surface, read};
use gentri::error::Error;
use gentri::quiver::{quiver_isomorphic, validate, BlockKind, Color};
use gentri::star::star_quiver;
use gentri::surface::{parse_surface, surface_to_quiver, Rule, Triangle};

#[test]
fn two_marked_folds_model() {
    let s = parse_surface(&read("two_marked_folds.surf")).unwrap();
    assert_eq!(s.edges.len(), 6);
    assert_eq!(s.marked_count(), 2);
    assert!(s.boundary_edges().is_empty());
    assert!(s.triangles.contains(&Triangle::SelfFolded {
        folded: "1".into(),
        enclosing: "2".into(),
        marked: false
    }));
}

#[test]
fn two_marked_folds_quiver() {
    let sq = surface_to_quiver(&parse_surface(&read("two_marked_folds.surf")).unwrap()).unwrap();
    let q = &sq.quiver;
    let rules: Vec<Rule> = sq.applied.iter().map(|r| r.rule).collect();
    assert_eq!(rules, vec![Rule::TwoMarkedFolds, Rule::UnmarkedFold]);
    let v = q.block("T1").unwrap();
    assert_eq!(v.kind, BlockKind::V);
    assert_eq!(
        (v.vertex("z"), v.vertex("x1"), v.vertex("x2")),
        ("2", "5", "3")
    );
    assert_eq!((v.vertex("y1"), v.vertex("y2")), ("6", "4"));
    assert_eq!(q.vertex("1").unwrap().color, Color::Black);
    assert!(quiver_isomorphic(q, &load("type3_type5.gtq")).is_some());
}

#[test]
fn tetrahedral_sphere() {
    let a = load_surface("tetra.surf");
    let b = load_surface("tetra_marked.surf");
    assert_eq!(a.vertices().len(), 6);
    assert_eq!(a.count_kind(BlockKind::II), 4);
    assert_eq!(b.count_kind(BlockKind::II), 4);
    assert!(b.marking().is_empty());
    assert!(quiver_isomorphic(&a, &b).is_some());
    let sq = star_quiver(&a).unwrap();
    assert_eq!(sq.arrows.len(), 12);
}

#[test]
fn one_triangle_disc() {
    let q = load_surface("disc.surf");
    assert_eq!(q.vertices().len(), 3);
    assert_eq!(q.count_kind(BlockKind::I), 3);
    assert_eq!(q.count_kind(BlockKind::II), 1);
    assert_eq!(
        q.arrows().iter().filter(|a| a.source == a.target).count(),
        3
    );
}

#[test]
fn unmarking_gives_triangulation_quiver() {
    for f in ["two_marked_folds.surf", "tetra_marked.surf", "disc.surf"] {
        let s = parse_surface(&read(f)).unwrap();
        let q = surface_to_quiver(&s.unmarked()).unwrap().quiver;
        assert!(validate(&q).is_empty());
        assert!(q.marking().is_empty());
        assert_eq!(q.vertices().len(), s.edges.len());
        let sq = star_quiver(&q).unwrap();
        assert_eq!(sq.arrows.len(), q.arrows().len());
    }
}

#[test]
fn single_marked_fold_gives_type_four() {
    let s = parse_surface(
        "edge a boundary\nedge b boundary\nedge c\nedge d\ntriangle a b c\nselffolded d c marked\n",
    )
    .unwrap();
    let q = surface_to_quiver(&s).unwrap().quiver;
    assert_eq!(q.count_kind(BlockKind::IV), 1);
    assert_eq!(q.count_kind(BlockKind::I), 2);
    let iv = q.block("T1").unwrap();
    assert_eq!(
        (
            iv.vertex("a"),
            iv.vertex("b"),
            iv.vertex("c"),
            iv.vertex("d")
        ),
        ("a", "b", "c", "d")
    );
    assert!(validate(&q).is_empty());
}

#[test]
fn rejections() {
    assert!(matches!(
        parse_surface(&read("digon.surf")),
        Err(Error::Structure(_))
    ));
    let marked_boundary = "edge d\nedge c boundary\nselffolded d c marked\nedge e\n";
    assert!(matches!(
        parse_surface(marked_boundary),
        Err(Error::Structure(_))
    ));
    assert!(matches!(
        parse_surface("edge a\nedge a\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_surface("edge a\nedge b\nfold a b\n"),
        Err(Error::Parse { line: 3, .. })
    ));
    let three_slots = "edge a\nedge b\nedge c\ntriangle a b c\ntriangle a b c\ntriangle a b c\n";
    assert!(matches!(
        parse_surface(three_slots),
        Err(Error::Structure(_))
    ));
    let lonely = "edge d\nedge c\nedge e\nselffolded d c marked\nselffolded e c\n";
    let s = parse_surface(lonely).unwrap();
    assert!(matches!(surface_to_quiver(&s), Err(Error::Structure(_))));
}
