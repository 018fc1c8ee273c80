//! Worked examples across module boundaries, using only the public API.

use std::sync::Arc;

use lochness_core::deckgraph::{self, GeneratorSet};
use lochness_core::resonance::{self, AngleChoice, DeckGroup, GroupElementCoord};
use lochness_core::ribbon::{self, BoundarySelector, FiniteQuotient, RibbonGraph};
use lochness_core::surgery::{self, SubcaseTag, Word};
use lochness_core::unfold::{self, GeometricPolygon, HaltReason, Point, SvgStyle};
use lochness_core::{AngleValue, AngleVector, IrrationalBasis, Order, RotationClass};
use num_bigint::BigInt;

fn basis(symbols: &[&str]) -> Arc<IrrationalBasis> {
    Arc::new(IrrationalBasis::new(symbols.iter().copied()).unwrap())
}

fn angles(symbols: &[&str], lits: &[&str]) -> AngleVector {
    AngleVector::parse(&basis(symbols), lits).unwrap()
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[test]
fn rotation_classes_and_orders() {
    let b = basis(&["a"]);
    let class = |s: &str| RotationClass::from_angle(&AngleValue::parse(&b, s).unwrap());
    assert_eq!(class("3/2").value().to_string(), "1/2");
    assert_eq!(class("-1/3").value().to_string(), "2/3");
    assert_eq!(class("1 + a"), class("a"));
    assert_eq!(class("3/5").order(), Order::Finite(BigInt::from(5)));
    assert_eq!(class("a").order(), Order::Infinite);
    assert_eq!(class("0").order(), Order::Finite(BigInt::from(1)));
}

#[test]
fn lattices_and_quotients() {
    let b = basis(&["a", "b"]);
    let v = |s: &str| AngleValue::parse(&b, s).unwrap();
    let cases: [(Vec<AngleValue>, Vec<Vec<BigInt>>, usize, Vec<i64>); 3] = [
        (vec![v("a"), v("a")], ints(&[&[1, -1]]), 1, vec![]),
        (vec![v("a"), v("b")], vec![], 2, vec![]),
        (vec![v("1/2"), v("1/3")], ints(&[&[2, 0], &[0, 3]]), 0, vec![6]),
    ];
    for (values, want, rank, torsion) in cases {
        let deck = DeckGroup::new(AngleChoice::from_values(&b, values)).unwrap();
        assert_eq!(deck.lattice.basis, want);
        assert_eq!(deck.quotient.rank, rank);
        assert_eq!(deck.quotient.torsion, torsion.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>());
    }
    let half_third = AngleChoice::from_values(&b, vec![v("1/2"), v("1/3")]);
    let c = resonance::deck_group_element(&ints(&[&[1, 1]])[0], &half_third).unwrap();
    assert_eq!(c.value().to_string(), "5/6");
    let aa = AngleChoice::from_values(&b, vec![v("a"), v("a")]);
    assert!(resonance::deck_group_element(&ints(&[&[1, -1]])[0], &aa).unwrap().is_zero());
}

#[test]
fn total_irrationality_witness() {
    assert!(resonance::is_totally_irrational(&angles(&["a", "b"], &["a", "b", "1 - a - b"])).totally_irrational);
    let t = resonance::is_totally_irrational(&angles(&["a"], &["a", "a", "1 - 2*a"]));
    assert!(!t.totally_irrational);
    let (choice, n) = t.witness.unwrap();
    assert_eq!(choice, vec![0, 1]);
    assert_eq!(n, ints(&[&[1, -1]])[0]);
    assert!(!resonance::is_totally_irrational(&AngleVector::rational(&[(1, 2); 4]).unwrap()).totally_irrational);
}

#[test]
fn balls_and_ends() {
    let e = |free: Vec<i64>, torsion: Vec<i64>| GroupElementCoord { free, torsion };
    let z2 = GeneratorSet::new(2, vec![], vec![e(vec![1, 0], vec![]), e(vec![0, 1], vec![])]);
    let z = GeneratorSet::new(1, vec![], vec![e(vec![1], vec![])]);
    let z6 = GeneratorSet::new(0, vec![6], vec![e(vec![], vec![1])]);
    assert_eq!(deckgraph::ball(&z2, 1).len(), 5);
    assert_eq!(deckgraph::ball(&z, 3).len(), 7);
    assert_eq!(deckgraph::ball(&z6, 10).len(), 6);
    assert_eq!(deckgraph::complement_components(&z2, 3, 10), 1);
    assert_eq!(deckgraph::complement_components(&z, 3, 10), 2);
    assert_eq!(deckgraph::complement_components(&z6, 7, 10), 0);
    assert_eq!((0..4).map(deckgraph::end_count_for_rank).collect::<Vec<_>>(), vec![0, 2, 1, 1]);
}

#[test]
fn ribbon_surfaces_and_capping() {
    let annulus = RibbonGraph::new(vec![vec![0, 1]], vec![1, 0]).unwrap();
    let r = ribbon::surface_report(&annulus).unwrap();
    assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (0, 2, 0));
    let capped = ribbon::cap_boundaries(&annulus, &BoundarySelector::All).unwrap();
    assert_eq!((capped.euler_characteristic, capped.boundary_count, capped.genus), (2, 0, 0));

    let torus = RibbonGraph::new(vec![vec![0, 2, 1, 3]], vec![1, 0, 3, 2]).unwrap();
    let r = ribbon::surface_report(&torus).unwrap();
    assert_eq!((r.boundary_count, r.genus), (1, 1));
    assert_eq!(ribbon::cap_boundaries(&torus, &BoundarySelector::Only(vec![0])).unwrap().genus, 1);

    let discs = RibbonGraph::new(vec![vec![], vec![]], vec![]).unwrap();
    let r = ribbon::surface_report(&discs).unwrap();
    assert_eq!((r.components, r.euler_characteristic, r.boundary_count, r.genus), (2, 2, 2, 0));

    let b = basis(&["a"]);
    for k in 1..=8 {
        let rose = ribbon::planar_rose(&b, &vec![RotationClass::zero(&b); k]);
        assert_eq!(ribbon::trace_boundaries(rose.graph()).len(), k + 1);
    }
}

#[test]
fn text_format_round_trip() {
    let b = basis(&["a", "b"]);
    let rose = ribbon::planar_rose(&b, &[AngleValue::symbol(&b, 0).rotation_class(), AngleValue::symbol(&b, 1).rotation_class()]);
    let text = rose.to_text();
    let (g, v) = ribbon::parse_text(&text).unwrap();
    assert_eq!(&g, rose.graph());
    assert_eq!(v.unwrap().to_text(), text);
}

#[test]
fn finite_lifts() {
    let b = basis(&[]);
    let third = AngleValue::from_ratio(&b, 1, 3);
    let rose = ribbon::planar_rose(&b, &[third.rotation_class()]);
    let deck = DeckGroup::new(AngleChoice::from_values(&b, vec![third])).unwrap();
    let lift = ribbon::finite_quotient_lift(&rose, &FiniteQuotient::new(deck, 1).unwrap()).unwrap();
    let r = ribbon::surface_report(&lift.graph).unwrap();
    assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (0, 2, 0));

    let square = AngleVector::rational(&[(1, 2); 4]).unwrap();
    let (lift, g) = ribbon::rational_cover(&square).unwrap();
    assert_eq!(lift.group_order, 2);
    assert_eq!(g.bordered.euler_characteristic, -4);
    assert_eq!(g.genus, 1);
    for (v, want) in [(vec![(1, 5), (1, 5), (3, 5)], 2), (vec![(1, 2), (1, 3), (1, 6)], 1), (vec![(2, 3); 6], 4)] {
        let a = AngleVector::rational(&v).unwrap();
        assert_eq!(ribbon::genus_rational_polygon(&a).unwrap().genus, want);
        assert_eq!(ribbon::genus_formula(&a).unwrap(), want);
    }
}

#[test]
fn polygon_roses_carry_vertex_classes() {
    let tri = angles(&["a"], &["a", "a", "1 - 2*a"]);
    let pr = ribbon::rose_for_polygon(&tri, &AngleChoice::omitting(&tri, 2).unwrap()).unwrap();
    assert_eq!(pr.rose.graph().edge_count(), 2);
    let mut classes: Vec<(usize, String)> = pr.boundary_vertices.iter().map(|(c, v)| (*v, pr.rose.cycle_voltage(c).to_string())).collect();
    classes.sort();
    assert_eq!(classes.len(), 3);
    assert_eq!(classes[0].1, "a");
    assert_eq!(classes[1].1, "a");
}

#[test]
fn words_prefixes_and_subcases() {
    assert_eq!(surgery::handle_word(SubcaseTag::Case1).len(), 8);
    assert_eq!(surgery::handle_word(SubcaseTag::S23).len(), 5);
    assert_eq!(surgery::handle_word(SubcaseTag::S24).len(), 4);

    let b = basis(&["a", "b"]);
    let (a, bb) = (AngleValue::symbol(&b, 0).rotation_class(), AngleValue::symbol(&b, 1).rotation_class());
    let p = surgery::prefix_set(&Word::parse("[B1,B2]").unwrap(), &[a.clone(), bb.clone()], &b).unwrap();
    // Read left to right, the commutator visits {0, a, a+b, b} shifted by −(a+b).
    let shift = a.add(&bb).neg();
    let expected: Vec<RotationClass> = [RotationClass::zero(&b), a.clone(), a.add(&bb), bb.clone()].iter().map(|g| g.add(&shift)).collect();
    let mut got = p.visited.clone();
    got.sort_by_key(|g| g.to_string());
    let mut want = expected;
    want.sort_by_key(|g| g.to_string());
    assert_eq!(got, want);
    assert!(p.is_closed());
    let p = surgery::prefix_set(&surgery::handle_word(SubcaseTag::S23), &[a.clone(), a.clone()], &b).unwrap();
    let mut got = p.visited.clone();
    got.sort_by_key(|g| g.to_string());
    let mut want = vec![RotationClass::zero(&b), a.neg(), a.clone()];
    want.sort_by_key(|g| g.to_string());
    assert_eq!(got, want);
    assert_eq!(p.endpoint, a);
    assert_eq!(surgery::prefix_set(&Word::empty(), &[], &b).unwrap().visited.len(), 1);

    let v = |s: &str| AngleValue::parse(&b, s).unwrap();
    assert_eq!(surgery::subcase_classify(&v("a"), &v("b")).unwrap().tag, SubcaseTag::Case1);
    assert_eq!(surgery::subcase_classify(&v("a"), &v("1 - 2*a")).unwrap().tag, SubcaseTag::S21);
    assert_eq!(surgery::subcase_classify(&v("a"), &v("a")).unwrap().tag, SubcaseTag::S23);
}

#[test]
fn certificates() {
    for (syms, lits, tag) in [(vec!["a"], vec!["a", "a", "1 - 2*a"], SubcaseTag::S23), (vec!["a", "b"], vec!["a", "b", "1 - a - b"], SubcaseTag::Case1)] {
        let c = surgery::infinite_genus_certificate(&angles(&syms, &lits), 5).unwrap();
        assert_eq!(c.family.verdict.tag, tag);
        assert_eq!(c.family.members.len(), 5);
        assert!(c.family.members.iter().all(|m| m.report.genus == 1));
    }
    let (a, b) = surgery::sample_pair(SubcaseTag::Case1);
    let one = surgery::disjoint_tori_family(&a, &b, 1).unwrap();
    let torus = surgery::verify_torus_lift(&a, &b).unwrap();
    assert_eq!(one.members[0].report.genus, torus.lift.report.genus);
    assert!(surgery::infinite_genus_certificate(&AngleVector::rational(&[(1, 2); 4]).unwrap(), 3).is_err());
}

#[test]
fn measured_angles_and_unfolding() {
    let sq = GeometricPolygon::new(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    assert_eq!(unfold::angles_from_vertices(&sq, 12, 1e-9).unwrap().angles.literals(), vec!["1/2"; 4]);
    let rt = GeometricPolygon::new(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
    assert_eq!(unfold::angles_from_vertices(&rt, 12, 1e-9).unwrap().angles.literals(), vec!["1/2", "1/4", "1/4"]);
    let generic = GeometricPolygon::new(&[[0.0, 0.0], [1.0, 0.0], [0.3, 0.9]]).unwrap();
    let m = unfold::angles_from_vertices(&generic, 10, 1e-9).unwrap();
    assert_eq!(m.angles.basis().len(), 2);
    assert!(!unfold::direction_orbit(&generic, 8).closed.is_some());

    let rec = unfold::unfold_trajectory(&sq, Point::new(0.25, 0.25), Point::new(1.0, 2.0), 50).unwrap();
    assert_eq!(rec.crossings(), 50);
    assert!(rec.collinearity_defect() < 1e-9);
    unfold::check_fold_back(&sq, &rec).unwrap();
    let corner = unfold::unfold_trajectory(&sq, Point::new(0.5, 0.5), Point::new(1.0, 1.0), 50).unwrap();
    assert_eq!(corner.halt, HaltReason::CornerHit);

    let ten = unfold::unfold_trajectory(&sq, Point::new(0.25, 0.25), Point::new(1.0, 2.0), 10).unwrap();
    let svg = unfold::render_unfolding_svg(&sq, &ten, &SvgStyle::default());
    assert_eq!(svg.matches("<polygon").count(), 11);
}
