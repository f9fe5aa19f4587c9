use edgeiso::exact::{run, to_cellset, EnumerationBudget};
use edgeiso::lattice::{edge_boundary, CellSet, GridSpec, NormExponent, Point, Rational};
use edgeiso::reduction::{check_reflection_free, normalize, removable_point, young_heights};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn quadrant_set() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..10, 0i64..10), 1..=25)
}

proptest! {
    #![proptest_config(Config::with_cases(10_000))]

    #[test]
    fn normalize_never_increases_the_boundary(cells in quadrant_set()) {
        let a = CellSet::quadrant(cells).unwrap();
        let out = normalize(&a).unwrap();
        for s in &out.trace.steps {
            prop_assert!(s.b_after <= s.b_before, "{s:?}");
        }
        prop_assert!(edge_boundary(&out.set) <= edge_boundary(&a));
        prop_assert_eq!(out.params.materialize(), out.set.clone());
        let p = out.params;
        prop_assert!(p.a1 >= p.c);
        if p.in_formula_regime() {
            prop_assert_eq!(p.perimeter(), edge_boundary(&out.set));
        }
        let h = young_heights(&out.set).unwrap();
        prop_assert!(h[p.c as usize - 1..].windows(2).all(|w| w[0] == w[1] + 1 || w[0] > w[1]));
    }
}

fn covered_specs() -> Vec<GridSpec> {
    let r = |n, d| Rational::new(n, d);
    let fin = |n, d| NormExponent::Finite(Rational::new(n, d));
    vec![
        GridSpec::l1_plane(),
        GridSpec::new(2, 0, NormExponent::Infinity, r(1, 1)).unwrap(),
        GridSpec::king_quadrant(),
        GridSpec::new(1, 1, NormExponent::Infinity, r(1, 1)).unwrap(),
        GridSpec::new(3, 0, fin(2, 1), r(3, 1)).unwrap(),
        GridSpec::new(0, 3, fin(1, 1), r(1, 1)).unwrap(),
        GridSpec::new(1, 2, fin(3, 2), r(3, 2)).unwrap(),
        GridSpec::new(2, 1, fin(2, 1), r(7, 4)).unwrap(),
        GridSpec::new(0, 2, fin(1, 1), r(3, 2)).unwrap(),
    ]
}

fn random_set(spec: &GridSpec, raw: &[Vec<i64>]) -> CellSet {
    let pts = raw.iter().map(|c| {
        let mut c = c[..spec.dim()].to_vec();
        for v in c.iter_mut().skip(spec.free_dims()) {
            *v = v.abs();
        }
        Point::new(c)
    });
    CellSet::new(spec.clone(), pts).unwrap()
}

proptest! {
    #![proptest_config(Config::with_cases(1_000))]

    #[test]
    fn reflection_and_removal_in_covered_regimes(
        which in 0usize..9,
        raw in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=20),
    ) {
        let spec = &covered_specs()[which];
        let a = random_set(spec, &raw);
        let report = check_reflection_free(&a).unwrap();
        prop_assert!(report.passed(), "{report:?}");
        if a.len() >= 2 {
            let r = removable_point(&a).unwrap();
            prop_assert!(r.boundary_after <= r.boundary_before);
            prop_assert_eq!(r.point, report.extremal);
        }
    }
}

#[test]
fn optimal_witnesses_survive_normalization() {
    let r = run(10, &EnumerationBudget::default()).unwrap();
    for n in 1..=10 {
        let lv = r.level(n).unwrap();
        for w in &lv.optima {
            let out = normalize(&to_cellset(w)).unwrap();
            assert!(
                edge_boundary(&out.set) <= lv.min_boundary as u64,
                "n={n} {w:?}"
            );
        }
    }
}

#[test]
fn removal_gives_monotone_minima() {
    // dropping the extremal cell of an optimal (n+1)-set leaves an n-set no worse
    let r = run(10, &EnumerationBudget::default()).unwrap();
    for n in 1..10 {
        let bigger = r.level(n + 1).unwrap();
        let set = to_cellset(&bigger.optima[0]);
        let rem = removable_point(&set).unwrap();
        assert!(rem.boundary_after <= bigger.min_boundary as u64);
        assert!(r.level(n).unwrap().min_boundary <= bigger.min_boundary);
    }
}
