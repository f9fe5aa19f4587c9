//! Named invariant suites for `edgeiso check`.

use edgeiso::bounds::{
    find_plateaus, gap_within_limit, lower_bound, max_plateau_len, staircase_values, upper_bound,
    verify_relaxation_grid, Precision,
};
use edgeiso::exact::{partition_shaped_values, run, EnumerationBudget};
use edgeiso::lattice::{edge_boundary, CellSet, GridSpec, NormExponent, Point, Rational};
use edgeiso::reduction::{check_reflection_free, normalize, removable_point};
use edgeiso::staircase::{optimize, StaircaseParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITES: &[&str] = &[
    "reflection",
    "removal",
    "normalize",
    "formula",
    "partition",
    "monotone",
    "bracket",
    "gap",
    "relaxation",
    "plateaus",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub passed: bool,
    pub detail: String,
}

fn verdict(failures: usize, detail: String) -> SuiteResult {
    SuiteResult {
        passed: failures == 0,
        detail,
    }
}

/// The four planar configurations of the reflection argument.
pub fn reflection_configs() -> Vec<(&'static str, GridSpec)> {
    let one = Rational::from_integer(1);
    vec![
        ("l1-Z2", GridSpec::l1_plane()),
        (
            "linf-Z2",
            GridSpec::new(2, 0, NormExponent::Infinity, one).expect("valid"),
        ),
        ("linf-N2", GridSpec::king_quadrant()),
        (
            "linf-Z1xN1",
            GridSpec::new(1, 1, NormExponent::Infinity, one).expect("valid"),
        ),
    ]
}

/// A random set of `1..=max_n` cells in a box of side `side` around the
/// origin, clipped to the graph.
pub fn random_set(rng: &mut ChaCha8Rng, spec: &GridSpec, max_n: usize, side: i64) -> CellSet {
    let n = rng.gen_range(1..=max_n);
    let mut set = CellSet::empty(spec.clone());
    while set.len() < n {
        let c: Vec<i64> = (0..spec.dim())
            .map(|i| {
                if i < spec.free_dims() {
                    rng.gen_range(-side..=side)
                } else {
                    rng.gen_range(0..=side)
                }
            })
            .collect();
        set.insert(Point::new(c)).expect("in graph");
    }
    set
}

fn reflection() -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for (name, spec) in reflection_configs() {
        for _ in 0..1000 {
            let a = random_set(&mut rng, &spec, 20, 5);
            match check_reflection_free(&a) {
                Ok(r) if r.passed() => {}
                other => failures.push(format!("{name}: {other:?}")),
            }
        }
    }
    let detail = match failures.first() {
        None => "4000 random sets, no failures".to_string(),
        Some(f) => format!("4000 random sets, {} failures, first {f}", failures.len()),
    };
    verdict(failures.len(), detail)
}

fn removal() -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11);
    let mut failures = 0;
    for (_, spec) in reflection_configs() {
        for _ in 0..1000 {
            let a = random_set(&mut rng, &spec, 20, 5);
            if a.len() >= 2 && removable_point(&a).is_err() {
                failures += 1;
            }
        }
    }
    verdict(
        failures,
        format!("4000 random sets, {failures} without a removable point"),
    )
}

fn normalization() -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0b);
    let spec = GridSpec::king_quadrant();
    let mut failures = 0;
    for _ in 0..2000 {
        let a = random_set(&mut rng, &spec, 25, 9);
        match normalize(&a) {
            Ok(out) if out.trace.is_monotone() && out.params.materialize() == out.set => {}
            _ => failures += 1,
        }
    }
    verdict(failures, format!("2000 random sets, {failures} failures"))
}

fn formula() -> SuiteResult {
    let mut checked = 0;
    let mut bad = Vec::new();
    for a1 in 1..=30u64 {
        for c in 1..=a1 {
            for k in c..c + a1 {
                for ak in 1..=a1 {
                    let Ok(p) = StaircaseParams::new(a1, c, k, ak) else {
                        continue;
                    };
                    if !p.in_formula_regime() {
                        continue;
                    }
                    checked += 1;
                    if p.perimeter() != edge_boundary(&p.materialize()) {
                        bad.push(p);
                    }
                }
            }
        }
    }
    verdict(
        bad.len(),
        match bad.first() {
            None => format!("{checked} parameter sets, no mismatches"),
            Some(b) => format!(
                "{checked} parameter sets, {} mismatches, first {b:?}",
                bad.len()
            ),
        },
    )
}

fn partition() -> SuiteResult {
    let dp = partition_shaped_values(40);
    let bad: Vec<u64> = (1..=40u64)
        .filter(|&n| optimize(n).perimeter != dp[n as usize - 1])
        .collect();
    verdict(
        bad.len(),
        if bad.is_empty() {
            "n <= 40, no mismatches".to_string()
        } else {
            format!("n <= 40, mismatches at {bad:?}")
        },
    )
}

fn monotone(budget_cells: usize) -> SuiteResult {
    let n = budget_cells.min(11);
    match run(n, &EnumerationBudget::with_max_volume(budget_cells)) {
        Ok(r) => {
            let rep = r.verify_monotonicity(n).expect("in run");
            verdict(
                rep.violation.map_or(0, |_| 1),
                format!("exact minima {:?}", rep.values),
            )
        }
        Err(e) => verdict(1, e.to_string()),
    }
}

fn bracket() -> SuiteResult {
    let values = staircase_values(5000);
    let prec = Precision::default();
    let bad: Vec<u64> = (36..=5000u64)
        .filter(|&n| {
            let l = lower_bound(n, prec).expect("lower");
            let u = upper_bound(n, prec).expect("upper").value;
            let s = values[n as usize - 1];
            !(l <= s && s <= u && u - l <= 18)
        })
        .collect();
    verdict(bad.len(), format!("36 <= n <= 5000, failures at {bad:?}"))
}

fn gap() -> SuiteResult {
    let bad: Vec<u64> = (36..=5000u64)
        .filter(|&n| !gap_within_limit(n, Precision::default()).unwrap_or(false))
        .collect();
    verdict(
        bad.len(),
        format!("u - l <= 35/2 for 36 <= n <= 5000, failures at {bad:?}"),
    )
}

fn relaxation() -> SuiteResult {
    let tol = BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
    let mut failures = 0;
    let mut detail = Vec::new();
    for n in [50u64, 100, 500, 1000] {
        match verify_relaxation_grid(n, 100, &tol, 128) {
            Ok(r) => {
                failures += r.violations.len();
                detail.push(format!(
                    "n={n}: {} points, {} below",
                    r.evaluated,
                    r.violations.len()
                ));
            }
            Err(e) => {
                failures += 1;
                detail.push(format!("n={n}: {e}"));
            }
        }
    }
    verdict(failures, detail.join("; "))
}

fn plateaus() -> SuiteResult {
    let values = staircase_values(5000);
    let lens: Vec<u64> = [500usize, 1000, 5000]
        .iter()
        .map(|&n| max_plateau_len(&values[..n]))
        .collect();
    let ok = !find_plateaus(5000, 3).is_empty() && lens.windows(2).all(|w| w[0] <= w[1]);
    verdict(
        usize::from(!ok),
        format!("longest runs at 500/1000/5000: {lens:?}"),
    )
}

/// Runs a suite by name; `None` if the name is unknown.
pub fn run_suite(name: &str, budget_cells: usize) -> Option<SuiteResult> {
    Some(match name {
        "reflection" => reflection(),
        "removal" => removal(),
        "normalize" => normalization(),
        "formula" => formula(),
        "partition" => partition(),
        "monotone" => monotone(budget_cells),
        "bracket" => bracket(),
        "gap" => gap(),
        "relaxation" => relaxation(),
        "plateaus" => plateaus(),
        _ => return None,
    })
}
