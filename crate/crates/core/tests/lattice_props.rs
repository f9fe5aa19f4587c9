use std::cmp::Ordering;

use edgeiso::lattice::{
    colex_compare, edge_boundary, neighbors, reflect, CellSet, GridSpec, NormExponent, Point,
    Rational,
};
use proptest::prelude::*;

fn specs() -> Vec<GridSpec> {
    let p = |n, d| NormExponent::Finite(Rational::new(n, d));
    let r = |n, d| Rational::new(n, d);
    vec![
        GridSpec::king_quadrant(),
        GridSpec::l1_plane(),
        GridSpec::new(2, 0, NormExponent::Infinity, r(1, 1)).unwrap(),
        GridSpec::new(1, 1, NormExponent::Infinity, r(1, 1)).unwrap(),
        GridSpec::new(0, 3, p(3, 2), r(3, 2)).unwrap(),
        GridSpec::new(1, 2, p(2, 1), r(5, 3)).unwrap(),
        GridSpec::new(3, 0, p(1, 1), r(2, 1)).unwrap(),
    ]
}

fn point_in(spec: &GridSpec, raw: &[i64]) -> Point {
    let mut c: Vec<i64> = raw[..spec.dim()].to_vec();
    for v in c.iter_mut().skip(spec.free_dims()) {
        *v = v.abs();
    }
    Point::new(c)
}

proptest! {
    #[test]
    fn neighborhoods_are_symmetric(which in 0usize..7, raw in prop::collection::vec(-6i64..=6, 3)) {
        let spec = &specs()[which];
        let x = point_in(spec, &raw);
        for y in neighbors(spec, &x).unwrap() {
            prop_assert!(neighbors(spec, &y).unwrap().contains(&x), "{x:?} -> {y:?}");
        }
    }

    #[test]
    fn boundary_is_additive_over_separated_sets(
        a in prop::collection::vec((0i64..6, 0i64..6), 1..15),
        b in prop::collection::vec((0i64..6, 0i64..6), 1..15),
        shift in 7i64..12,
    ) {
        let sa = CellSet::quadrant(a.iter().copied()).unwrap();
        let sb = CellSet::quadrant(b.iter().map(|&(x, y)| (x + shift, y))).unwrap();
        let union = CellSet::quadrant(a.iter().copied().chain(b.iter().map(|&(x, y)| (x + shift, y)))).unwrap();
        prop_assert_eq!(edge_boundary(&union), edge_boundary(&sa) + edge_boundary(&sb));
    }

    #[test]
    fn reflection_is_an_involution(x in prop::collection::vec(-50i64..50, 3), y in prop::collection::vec(-50i64..50, 3)) {
        let (x, y) = (Point::new(x), Point::new(y));
        prop_assert_eq!(reflect(&x, &reflect(&x, &y)), y);
    }

    #[test]
    fn colex_is_a_total_order(
        a in prop::collection::vec(-3i64..3, 3),
        b in prop::collection::vec(-3i64..3, 3),
        c in prop::collection::vec(-3i64..3, 3),
    ) {
        let (a, b, c) = (Point::new(a), Point::new(b), Point::new(c));
        prop_assert_eq!(colex_compare(&a, &b), colex_compare(&b, &a).reverse());
        prop_assert_eq!(colex_compare(&a, &b) == Ordering::Equal, a == b);
        if colex_compare(&a, &b) != Ordering::Greater && colex_compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(colex_compare(&a, &c), Ordering::Greater);
        }
    }
}

#[test]
fn king_single_cell_boundaries() {
    let one = |x, y| edge_boundary(&CellSet::quadrant([(x, y)]).unwrap());
    assert_eq!(one(0, 0), 3);
    assert_eq!(one(4, 0), 5);
    assert_eq!(one(0, 4), 5);
    assert_eq!(one(3, 3), 8);
}
