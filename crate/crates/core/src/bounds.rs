//! Continuous relaxation of the staircase objective and the resulting
//! integer bounds on the optimal king-graph perimeter.
//!
//! With `l(n) = sqrt(7/2) sqrt(8n - 1) - 2` and
//! `x = n + 2 sqrt(7n) - 8`,
//!
//! ```text
//! u(n) = 15/sqrt(7) sqrt(x) - 1/2 sqrt(4x/7 - 12/sqrt(7) sqrt(x) + 1)
//! ```
//!
//! bounded optimal sets satisfy `ceil(l(n)) <= |dA| <= floor(u(n))` once
//! `n >= 36`. Every floor and ceiling here is decided on exact rational
//! intervals, so the integers do not depend on floating-point rounding.

use std::cmp::Ordering;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::interval::{resolve, Interval, IntervalError, DEFAULT_CAP_BITS, DEFAULT_START_BITS};
use crate::staircase::optimize;

/// Smallest volume at which `u` is real.
pub const UPPER_MIN_VOLUME: u64 = 36;
/// Smallest volume at which `u` without the `+1` under the inner root is real.
pub const SIMPLIFIED_UPPER_MIN_VOLUME: u64 = 39;
/// Limit of `u(n) - l(n)`.
pub const GAP_LIMIT: (i64, i64) = (35, 2);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("{what} is defined for n >= {min}, got n = {n}")]
    OutOfDomain {
        what: &'static str,
        n: u64,
        min: u64,
    },
    #[error("point outside the feasible region: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Starting precision and cap (in bits) for adaptive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: DEFAULT_START_BITS,
            cap_bits: DEFAULT_CAP_BITS,
        }
    }
}

fn int(v: i64) -> Interval {
    Interval::from_int(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_u64(v: BigInt) -> u64 {
    v.to_u64().expect("bound fits in u64")
}

fn half() -> BigRational {
    rat(1, 2)
}

// ---------------------------------------------------------------------------
// The relaxation
// ---------------------------------------------------------------------------

/// `4 a1 + 3c - 3 - (1 + sqrt R)/2` with `R = 1 + 8 (a1(a1-1)/2 - n + c a1)`,
/// on interval arguments.
pub fn relaxed_objective_interval(
    n: &Interval,
    a1: &Interval,
    c: &Interval,
    prec: u32,
) -> Result<Interval, IntervalError> {
    let choose = (a1 * &(a1 - &int(1))).scale(&half());
    let r = &int(1) + &(&(&choose - n) + &(c * a1)).scale(&rat(8, 1));
    let s = r.sqrt(prec)?;
    let lin = &(&a1.scale(&rat(4, 1)) + &c.scale(&rat(3, 1))) - &int(3);
    Ok(&lin - &(&int(1) + &s).scale(&half()))
}

/// Whether `(a1, c)` lies in the feasible region for volume `n`:
/// `1 <= a1 <= n`, `1 <= c <= a1` and `c a1 >= n - a1(a1-1)/2`.
pub fn is_feasible(n: u64, a1: &BigRational, c: &BigRational) -> bool {
    let one = BigRational::one();
    let nq = BigRational::from_integer(BigInt::from(n));
    let choose = a1 * (a1 - &one) * half();
    *a1 >= one && *a1 <= nq && *c >= one && c <= a1 && c * a1 >= &nq - &choose
}

/// The relaxed objective at an exact feasible point.
pub fn relaxed_objective(
    n: u64,
    a1: &BigRational,
    c: &BigRational,
    prec: u32,
) -> Result<Interval, BoundsError> {
    if !is_feasible(n, a1, c) {
        return Err(BoundsError::Infeasible(format!("n={n}, a1={a1}, c={c}")));
    }
    Ok(relaxed_objective_interval(
        &int(n as i64),
        &Interval::point(a1.clone()),
        &Interval::point(c.clone()),
        prec,
    )?)
}

/// Floating-point version for screening.
pub fn relaxed_objective_f64(n: f64, a1: f64, c: f64) -> f64 {
    let r = 1.0 + 8.0 * (a1 * (a1 - 1.0) / 2.0 - n + c * a1);
    4.0 * a1 + 3.0 * c - 3.0 - 0.5 * (1.0 + r.sqrt())
}

#[derive(Debug, Clone)]
pub struct Minimizer {
    pub a1: Interval,
    pub c: Interval,
    pub value: Interval,
}

/// Closed-form minimizer of the relaxation: with `s = sqrt(8n - 1)`,
/// `a1 = 3s / (2 sqrt 14)`, `c = (14 + sqrt(14) s)/28`, value
/// `sqrt(7/2) s - 2`.
pub fn continuous_minimizer(n: u64, prec: u32) -> Result<Minimizer, BoundsError> {
    if n < 2 {
        return Err(BoundsError::OutOfDomain {
            what: "continuous minimizer",
            n,
            min: 2,
        });
    }
    let s = int(8 * n as i64 - 1).sqrt(prec)?;
    let r14 = int(14).sqrt(prec)?;
    let a1 = (&s * &r14).scale(&rat(3, 28));
    let c = (&int(14) + &(&r14 * &s)).scale(&rat(1, 28));
    let value = lower_expression(&BigRational::from_integer(BigInt::from(n)), prec)?;
    Ok(Minimizer { a1, c, value })
}

/// `l(n) = sqrt((56n - 7)/2) - 2` for real `n`.
pub fn lower_expression(n: &BigRational, prec: u32) -> Result<Interval, IntervalError> {
    let q = (n * rat(56, 1) - rat(7, 1)) * half();
    Ok(&Interval::point(q).sqrt(prec)? - &int(2))
}

/// `ceil(l(n))`. Certified for bounded optimal sets once `n >= 36`; the
/// expression itself is evaluated for every `n >= 1`.
pub fn lower_bound(n: u64, prec: Precision) -> Result<u64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::OutOfDomain {
            what: "lower bound",
            n,
            min: 1,
        });
    }
    let nq = BigRational::from_integer(BigInt::from(n));
    let v = resolve(
        prec.start_bits,
        prec.cap_bits,
        |p| lower_expression(&nq, p),
        |iv| iv.ceil(),
    )?;
    Ok(to_u64(v))
}

/// `u(n)` for real `n`, with or without the `+1` under the inner root.
pub fn upper_expression(
    n: &BigRational,
    with_one: bool,
    prec: u32,
) -> Result<Interval, IntervalError> {
    let nq = Interval::point(n.clone());
    let root7n = Interval::point(n * rat(7, 1)).sqrt(prec)?;
    let x = &(&nq + &root7n.scale(&rat(2, 1))) - &int(8);
    let sx = x.sqrt(prec)?;
    // 15/sqrt 7 = 15 sqrt(7)/7 and 12/sqrt 7 = 12 sqrt(7)/7
    let r7 = int(7).sqrt(prec)?;
    let head = (&r7 * &sx).scale(&rat(15, 7));
    let mut inner = &x.scale(&rat(4, 7)) - &(&r7 * &sx).scale(&rat(12, 7));
    if with_one {
        inner = &inner + &int(1);
    }
    Ok(&head - &inner.sqrt(prec)?.scale(&half()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u64,
    /// Smallest `m` with `n <= 7 m^2`.
    pub m: u64,
    /// Feasible construction point `(7m^2, 3m, m)`.
    pub construction: (u64, u64, u64),
}

/// Smallest `m` with `7 (m-1)^2 < n <= 7 m^2`.
pub fn witness_m(n: u64) -> u64 {
    let mut m = ((n as f64 / 7.0).sqrt() as u64).max(1);
    while 7 * m * m < n {
        m += 1;
    }
    while m > 1 && 7 * (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// `floor(u(n))` for `n >= 36`.
pub fn upper_bound(n: u64, prec: Precision) -> Result<UpperBound, BoundsError> {
    if n < UPPER_MIN_VOLUME {
        return Err(BoundsError::OutOfDomain {
            what: "upper bound",
            n,
            min: UPPER_MIN_VOLUME,
        });
    }
    let nq = BigRational::from_integer(BigInt::from(n));
    let v = resolve(
        prec.start_bits,
        prec.cap_bits,
        |p| upper_expression(&nq, true, p),
        |iv| iv.floor(),
    )?;
    let m = witness_m(n);
    Ok(UpperBound {
        value: to_u64(v),
        m,
        construction: (7 * m * m, 3 * m, m),
    })
}

/// Constant term of `g(a1, c) = 4 a1 + 3c - k - (1 + sqrt R)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GOffset {
    /// `k = 2`: at least the integer objective, since the floor loses < 1.
    Two,
    /// `k = 3`: the relaxed objective, at most the integer objective.
    Three,
}

/// `g(a1, c)` at integer arguments.
pub fn g_value(
    n: u64,
    a1: u64,
    c: u64,
    offset: GOffset,
    prec: u32,
) -> Result<Interval, BoundsError> {
    let a = BigRational::from_integer(BigInt::from(a1));
    let cq = BigRational::from_integer(BigInt::from(c));
    let relaxed = relaxed_objective(n, &a, &cq, prec)?;
    Ok(match offset {
        GOffset::Three => relaxed,
        GOffset::Two => &relaxed + &int(1),
    })
}

/// `15m - sqrt(4m^2 - 12m + 1)/2 - 5/2`, the closed form of `g` with offset
/// two at the construction point for `m`.
pub fn construction_value(m: u64, prec: u32) -> Result<Interval, BoundsError> {
    let m = m as i64;
    let r = int(4 * m * m - 12 * m + 1).sqrt(prec)?;
    Ok(&(&int(15 * m) - &r.scale(&half())) - &Interval::point(rat(5, 2)))
}

#[derive(Debug, Clone)]
pub struct Gap {
    /// `u(n) - l(n)`.
    pub full: Interval,
    /// Same with the `+1` dropped, for `n >= 39`.
    pub simplified: Option<Interval>,
}

/// Real-valued difference between the upper and lower expressions.
pub fn gap(n: u64, prec: u32) -> Result<Gap, BoundsError> {
    if n < UPPER_MIN_VOLUME {
        return Err(BoundsError::OutOfDomain {
            what: "gap",
            n,
            min: UPPER_MIN_VOLUME,
        });
    }
    let nq = BigRational::from_integer(BigInt::from(n));
    let l = lower_expression(&nq, prec)?;
    let full = &upper_expression(&nq, true, prec)? - &l;
    let simplified = if n >= SIMPLIFIED_UPPER_MIN_VOLUME {
        Some(&upper_expression(&nq, false, prec)? - &l)
    } else {
        None
    };
    Ok(Gap { full, simplified })
}

/// Decides `u(n) - l(n) <= 35/2`.
pub fn gap_within_limit(n: u64, prec: Precision) -> Result<bool, BoundsError> {
    let limit = rat(GAP_LIMIT.0, GAP_LIMIT.1);
    Ok(resolve(
        prec.start_bits,
        prec.cap_bits,
        |p| {
            gap(n, p).map(|g| g.full).map_err(|e| match e {
                BoundsError::Interval(e) => e,
                _ => IntervalError::Ambiguous { bits: p },
            })
        },
        |iv| iv.le(&limit),
    )?)
}

/// Sign of the forward difference quotient `(d(n + h) - d(n)) / h` of the
/// simplified gap, a proxy for the sign of its derivative at `n`.
pub fn simplified_gap_slope(
    n: &BigRational,
    h: &BigRational,
    prec: Precision,
) -> Result<Ordering, BoundsError> {
    let d = |x: &BigRational, p: u32| -> Result<Interval, IntervalError> {
        Ok(&upper_expression(x, false, p)? - &lower_expression(x, p)?)
    };
    let right = n + h;
    Ok(resolve(
        prec.start_bits,
        prec.cap_bits,
        |p| Ok(&d(&right, p)? - &d(n, p)?),
        |iv| {
            if iv.lo().is_positive() {
                Some(Ordering::Greater)
            } else if iv.hi().is_negative() {
                Some(Ordering::Less)
            } else if iv.is_point() && iv.lo().is_zero() {
                Some(Ordering::Equal)
            } else {
                None
            }
        },
    )?)
}

// ---------------------------------------------------------------------------
// Grid verification of the relaxation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub n: u64,
    /// Grid points evaluated (after the pruning bound).
    pub evaluated: u64,
    /// Points re-checked in exact interval arithmetic.
    pub verified: u64,
    /// Smallest value seen in floating point.
    pub min_seen: f64,
    /// Grid points whose value is below the closed form minus the tolerance.
    pub violations: Vec<(BigRational, BigRational)>,
}

/// Evaluates the relaxation on the grid `a1, c in (1/steps_per_unit) Z`
/// intersected with the feasible region and compares against the closed
/// form minimum. Points whose floating-point value comes within `1e-3` of
/// the target are re-evaluated on intervals of at least `min_bits` bits.
///
/// The objective is at least `3 a1 + 2c - 3` (since
/// `sqrt R <= 2 a1 + 2c - 1`), which bounds the part of the grid that can
/// come near the minimum.
pub fn verify_relaxation_grid(
    n: u64,
    steps_per_unit: i64,
    tolerance: &BigRational,
    min_bits: u32,
) -> Result<GridReport, BoundsError> {
    let prec = Precision {
        start_bits: min_bits,
        cap_bits: min_bits.max(DEFAULT_CAP_BITS),
    };
    let target = continuous_minimizer(n, min_bits)?.value;
    let target_f = target.mid_f64();
    let s = steps_per_unit;
    let ni = n as i64;
    // 3 a1 - 1 <= target + 1  (with c >= 1)
    let i_max = (((target_f + 2.0) / 3.0) * s as f64).ceil() as i64;
    type Row = (u64, u64, f64, Vec<(BigRational, BigRational)>);
    let rows: Vec<Result<Row, BoundsError>> = (s..=i_max.min(ni * s))
        .into_par_iter()
        .map(|i| {
            let a1 = i as f64 / s as f64;
            // c a1 >= n - a1(a1-1)/2  <=>  2ij >= 2 n s^2 - i^2 + i s
            let need = 2 * ni * s * s - i * i + i * s;
            let j_lo = if need <= 0 {
                s
            } else {
                ((need + 2 * i - 1) / (2 * i)).max(s)
            };
            let c_cap = ((target_f + 4.0 - 3.0 * a1) / 2.0 * s as f64).floor() as i64;
            let j_hi = i.min(c_cap);
            let (mut evaluated, mut verified, mut min_seen) = (0u64, 0u64, f64::INFINITY);
            let mut bad = Vec::new();
            for j in j_lo..=j_hi {
                let c = j as f64 / s as f64;
                let v = relaxed_objective_f64(n as f64, a1, c);
                evaluated += 1;
                min_seen = min_seen.min(v);
                if v < target_f + 1e-3 {
                    verified += 1;
                    let aq = rat(i, s);
                    let cq = rat(j, s);
                    let below = resolve(
                        prec.start_bits,
                        prec.cap_bits,
                        |p| {
                            let val = relaxed_objective(n, &aq, &cq, p)
                                .map_err(|_| IntervalError::Ambiguous { bits: p })?;
                            let t = continuous_minimizer(n, p)
                                .map_err(|_| IntervalError::Ambiguous { bits: p })?;
                            Ok(&(&val - &t.value) + &Interval::point(tolerance.clone()))
                        },
                        |iv| {
                            if !iv.lo().is_negative() {
                                Some(false)
                            } else if iv.hi().is_negative() {
                                Some(true)
                            } else {
                                None
                            }
                        },
                    )?;
                    if below {
                        bad.push((aq, cq));
                    }
                }
            }
            Ok((evaluated, verified, min_seen, bad))
        })
        .collect();
    let mut report = GridReport {
        n,
        evaluated: 0,
        verified: 0,
        min_seen: f64::INFINITY,
        violations: Vec::new(),
    };
    for row in rows {
        let (e, v, m, bad) = row?;
        report.evaluated += e;
        report.verified += v;
        report.min_seen = report.min_seen.min(m);
        report.violations.extend(bad);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Plateaus and tables
// ---------------------------------------------------------------------------

/// Optimal staircase perimeters for `1..=n_max`, index `n - 1`.
pub fn staircase_values(n_max: u64) -> Vec<u64> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| optimize(n).perimeter)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plateau {
    pub start: u64,
    pub length: u64,
    pub value: u64,
}

/// Maximal runs of equal values in `values` (volume `i + 1` at index `i`).
pub fn plateaus_of(values: &[u64]) -> Vec<Plateau> {
    let mut out: Vec<Plateau> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(p) if p.value == v => p.length += 1,
            _ => out.push(Plateau {
                start: i as u64 + 1,
                length: 1,
                value: v,
            }),
        }
    }
    out
}

/// Maximal runs of equal optimal staircase perimeter over `1..=n_max` with
/// length at least `min_len`.
pub fn find_plateaus(n_max: u64, min_len: u64) -> Vec<Plateau> {
    if n_max < 2 {
        return Vec::new();
    }
    plateaus_of(&staircase_values(n_max))
        .into_iter()
        .filter(|p| p.length >= min_len)
        .collect()
}

/// Length of the longest run of equal values.
pub fn max_plateau_len(values: &[u64]) -> u64 {
    plateaus_of(values)
        .iter()
        .map(|p| p.length)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub n: u64,
    /// Lower bound for bounded optimal sets.
    pub lower: u64,
    pub staircase_opt: u64,
    pub exact_opt: Option<u64>,
    pub upper: Option<u64>,
    /// Continuous minimizer; absent for `n = 1`.
    pub relax: Option<Minimizer>,
}

impl BoundsReport {
    pub fn gap(&self) -> Option<u64> {
        self.upper.map(|u| u - self.lower)
    }
}

/// One report per volume in `from..=to`, in increasing order. `exact` maps a
/// volume to a known exact optimum.
pub fn table(
    from: u64,
    to: u64,
    exact: &(dyn Fn(u64) -> Option<u64> + Sync),
    prec: Precision,
) -> Result<Vec<BoundsReport>, BoundsError> {
    (from..=to)
        .into_par_iter()
        .map(|n| {
            Ok(BoundsReport {
                n,
                lower: lower_bound(n, prec)?,
                staircase_opt: optimize(n).perimeter,
                exact_opt: exact(n),
                upper: match upper_bound(n, prec) {
                    Ok(u) => Some(u.value),
                    Err(BoundsError::OutOfDomain { .. }) => None,
                    Err(e) => return Err(e),
                },
                relax: if n >= 2 {
                    Some(continuous_minimizer(n, prec.start_bits)?)
                } else {
                    None
                },
            })
        })
        .collect()
}

fn opt_field(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes `n,lower,staircase_opt,exact_opt,upper,gap`; absent values are
/// empty fields and `gap` is `upper - lower`.
pub fn write_csv<W: Write>(mut out: W, rows: &[BoundsReport]) -> std::io::Result<()> {
    writeln!(out, "n,lower,staircase_opt,exact_opt,upper,gap")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.lower,
            r.staircase_opt,
            opt_field(r.exact_opt),
            opt_field(r.upper),
            opt_field(r.gap())
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn relaxed_examples() {
        // radicand 1 + 8 (3 - 11 + 9) = 9
        let v = relaxed_objective(11, &rat(3, 1), &rat(3, 1), 128).unwrap();
        assert!(v.is_point());
        assert_eq!(v.lo(), &rat(16, 1));
        let v = relaxed_objective(1, &rat(1, 1), &rat(1, 1), 64).unwrap();
        assert!(v.is_point());
        // 4 + 3 - 3 - (1 + 1)/2
        assert_eq!(v.lo(), &rat(3, 1));
        assert!(relaxed_objective(11, &rat(2, 1), &rat(1, 1), 64).is_err());
    }

    #[test]
    fn minimizer_matches_objective() {
        for n in [2u64, 11, 100, 1000] {
            let m = continuous_minimizer(n, 128).unwrap();
            let at = relaxed_objective_interval(&int(n as i64), &m.a1, &m.c, 128).unwrap();
            assert!((at.mid_f64() - m.value.mid_f64()).abs() < 1e-20, "n={n}");
        }
        let m = continuous_minimizer(2, 128).unwrap();
        assert!((m.value.mid_f64() - (3.5f64.sqrt() * 15f64.sqrt() - 2.0)).abs() < 1e-12);
        assert!(continuous_minimizer(1, 64).is_err());
    }

    #[test]
    fn minimizer_tracks_construction() {
        let m = 1000u64;
        let min = continuous_minimizer(7 * m * m, 128).unwrap();
        assert!((min.a1.mid_f64() / (3 * m) as f64 - 1.0).abs() < 1e-3);
        assert!((min.c.mid_f64() / m as f64 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(lower_bound(36, p()).unwrap(), 30);
        assert_eq!(lower_bound(105, p()).unwrap(), 53);
        assert_eq!(lower_bound(2, p()).unwrap(), 6);
    }

    #[test]
    fn lower_matches_integer_square_root() {
        for n in 1u64..3000 {
            let q = 56 * n - 7;
            let mut t = (q / 2).sqrt();
            while 2 * t * t < q {
                t += 1;
            }
            assert_eq!(lower_bound(n, p()).unwrap(), t - 2, "n={n}");
        }
    }

    #[test]
    fn upper_examples() {
        let u = upper_bound(36, p()).unwrap();
        assert_eq!((u.value, u.m), (43, 3));
        assert_eq!(u.construction, (63, 9, 3));
        assert!(matches!(
            upper_bound(35, p()),
            Err(BoundsError::OutOfDomain { min: 36, .. })
        ));
    }

    #[test]
    fn construction_value_at_seven_m_squared() {
        let g = g_value(700, 30, 10, GOffset::Two, 128).unwrap();
        let closed = construction_value(10, 128).unwrap();
        assert!((g.mid_f64() - closed.mid_f64()).abs() < 1e-20);
        assert!((closed.mid_f64() - (150.0 - 0.5 * 281f64.sqrt() - 2.5)).abs() < 1e-12);
    }

    #[test]
    fn offset_two_bounds_the_integer_objective() {
        use crate::staircase::objective;
        for m in 3u64..40 {
            let n = 7 * m * m;
            let obj = objective(n, 3 * m, m).unwrap() as f64;
            let two = g_value(n, 3 * m, m, GOffset::Two, 128).unwrap();
            let three = g_value(n, 3 * m, m, GOffset::Three, 128).unwrap();
            assert!(obj <= two.lo_f64() + 1e-12, "m={m}");
            assert!(three.hi_f64() <= obj + 1e-12, "m={m}");
        }
    }

    #[test]
    fn construction_needs_m_at_least_three() {
        assert!(g_value(28, 6, 2, GOffset::Two, 64).is_err());
        assert!(g_value(63, 9, 3, GOffset::Two, 64).is_ok());
    }

    #[test]
    fn witness_brackets_volume() {
        for n in 1u64..2000 {
            let m = witness_m(n);
            assert!(7 * (m - 1) * (m - 1) < n && n <= 7 * m * m, "n={n}");
        }
    }

    #[test]
    fn gap_examples() {
        let g = gap(36, 128).unwrap();
        assert!(g.full.hi_f64() <= 17.5);
        assert!(g.simplified.is_none());
        assert!(gap(39, 128).unwrap().simplified.is_some());
        let far = gap(1_000_000, 128).unwrap();
        assert!(far.full.hi_f64() < 17.5 && far.full.lo_f64() > 17.4);
        for n in 36..=38 {
            assert!(gap_within_limit(n, p()).unwrap());
        }
    }

    #[test]
    fn simplified_gap_dips_after_its_first_point() {
        let h = rat(1, 1 << 20);
        let at = |n: i64| simplified_gap_slope(&rat(n, 1), &h, p()).unwrap();
        assert_eq!(at(39), Ordering::Less);
        assert_eq!(at(40), Ordering::Less);
        assert_eq!(at(45), Ordering::Greater);
        assert_eq!(at(1000), Ordering::Greater);
    }

    #[test]
    fn plateaus_examples() {
        assert!(find_plateaus(1, 1).is_empty());
        let runs = find_plateaus(11, 2);
        assert!(!runs.is_empty());
        assert_eq!(
            runs[0],
            Plateau {
                start: 7,
                length: 2,
                value: 13
            }
        );
        assert!(!find_plateaus(5000, 5).is_empty());
    }

    #[test]
    fn csv_leaves_out_of_domain_fields_empty() {
        let rows = table(35, 36, &|n| (n == 35).then_some(0), p()).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,lower,staircase_opt,exact_opt,upper,gap");
        assert!(lines[1].ends_with(",,"), "{}", lines[1]);
        assert!(lines[2].starts_with("36,30,"));
        assert!(lines[2].ends_with(",43,13"), "{}", lines[2]);
    }
}
