use edgeiso::exact::{optimum_partition_shaped, partition_shaped_values};
use edgeiso::lattice::edge_boundary;
use edgeiso::staircase::{from_heights, objective, optimize, params_for, StaircaseParams};

fn all_params(max_a1: u64) -> impl Iterator<Item = StaircaseParams> {
    (1..=max_a1).flat_map(move |a1| {
        (1..=a1).flat_map(move |c| {
            (c..=c + a1 - 1).flat_map(move |k| {
                let cap = if k == c { a1 } else { a1 - (k - 1 - c) };
                let lo = if k == c { a1 } else { 1 };
                (lo..=cap).filter_map(move |ak| StaircaseParams::new(a1, c, k, ak).ok())
            })
        })
    })
}

#[test]
fn materialized_volume_and_perimeter() {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in all_params(30) {
        let set = p.materialize();
        assert_eq!(set.len() as u64, p.volume(), "{p:?}");
        if p.in_formula_regime() {
            checked += 1;
            if p.perimeter() != edge_boundary(&set) {
                mismatches.push(p);
            }
        }
    }
    assert!(checked > 10_000);
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn formula_misses_two_when_the_last_drop_is_zero() {
    for p in all_params(12).filter(|p| !p.in_formula_regime()) {
        assert_eq!(edge_boundary(&p.materialize()), p.perimeter() + 2, "{p:?}");
    }
}

#[test]
fn objective_matches_parameter_perimeter() {
    for n in 1u64..=500 {
        for a1 in 1..=n {
            for c in 1..=a1 {
                let Ok(v) = objective(n, a1, c) else { continue };
                let p = params_for(n, a1, c).unwrap();
                assert_eq!(p.volume(), n);
                assert_eq!(v, p.perimeter(), "n={n} a1={a1} c={c}");
            }
        }
    }
}

fn partitions(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut dyn FnMut(&[u64])) {
    if n == 0 {
        out(prefix);
        return;
    }
    for h in (1..=n.min(max)).rev() {
        prefix.push(h);
        partitions(n - h, h, prefix, out);
        prefix.pop();
    }
}

#[test]
fn partition_scan_agrees_with_dynamic_program() {
    let dp = partition_shaped_values(24);
    for n in 1..=24u64 {
        let mut best = u64::MAX;
        partitions(n, n, &mut Vec::new(), &mut |h| {
            best = best.min(edge_boundary(&from_heights(h)))
        });
        assert_eq!(dp[n as usize - 1], best, "n={n}");
    }
}

#[test]
fn optimize_matches_partition_minimum() {
    let dp = partition_shaped_values(40);
    for n in 1..=40u64 {
        assert_eq!(optimize(n).perimeter, dp[n as usize - 1], "n={n}");
    }
    assert_eq!(optimum_partition_shaped(11), 16);
}

#[test]
fn optimize_is_monotone_and_realized() {
    let mut prev = 0;
    for n in 1..=5000u64 {
        let o = optimize(n);
        assert!(o.perimeter >= prev, "n={n}");
        assert_eq!(o.params.volume(), n);
        prev = o.perimeter;
    }
    for n in 1..=300u64 {
        let o = optimize(n);
        assert_eq!(edge_boundary(&o.params.materialize()), o.perimeter, "n={n}");
    }
}

#[test]
fn a_deep_last_column_means_the_next_volume_is_free() {
    for n in 1..5000u64 {
        let p = optimize(n).params;
        if p.k > p.c && p.ak + 1 < p.a1 - (p.k - 1 - p.c) {
            assert_eq!(optimize(n + 1).perimeter, optimize(n).perimeter, "n={n}");
        }
    }
}

#[test]
fn degenerate_volumes_stay_rectangular() {
    assert_eq!(optimize(1).params.column_heights(), vec![1]);
    assert_eq!(optimize(2).params.column_heights(), vec![2]);
    assert_eq!(optimize(4).params.column_heights(), vec![2, 2]);
}
