//! Staircase column profiles on the king-graph quadrant.
//!
//! A profile is described by `(a1, c, k, ak)`: `c` columns of height `a1`,
//! then columns whose heights drop by one each step, then a last column of
//! height `ak`. Column `t` (1-based) occupies the cells `(t-1, 0..h_t)`.
//!
//! The closed forms here are
//!
//! * volume `(k-1) a1 + ak - (k-c-1)(k-c)/2`,
//! * perimeter `3 a1 + 2c + k - 3`, valid whenever the last drop is at
//!   least one or the profile is constant,
//! * `k` recovered from `(n, a1, c)` by
//!   `k = ceil((2 a1 - 1 - sqrt(1 + 8 (C(a1,2) - n + c a1))) / 2) + c`,
//! * the integer objective `4 a1 + 3c - 3 - floor((1 + sqrt(..)) / 2)`.
//!
//! Every square root is an exact integer square root.

use std::io::Write;

use crate::lattice::CellSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StaircaseError {
    #[error("invalid staircase ({a1}, {c}, {k}, {ak}): {reason}")]
    Invalid {
        a1: u64,
        c: u64,
        k: u64,
        ak: u64,
        reason: &'static str,
    },
    #[error("(a1={a1}, c={c}) is infeasible for volume {n}")]
    Infeasible { n: u64, a1: u64, c: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircaseParams {
    pub a1: u64,
    pub c: u64,
    pub k: u64,
    pub ak: u64,
}

impl StaircaseParams {
    pub fn new(a1: u64, c: u64, k: u64, ak: u64) -> Result<Self, StaircaseError> {
        let bad = |reason| StaircaseError::Invalid {
            a1,
            c,
            k,
            ak,
            reason,
        };
        if a1 == 0 || ak == 0 {
            return Err(bad("heights must be positive"));
        }
        if c == 0 || c > k {
            return Err(bad("need 1 <= c <= k"));
        }
        if k == c {
            if ak != a1 {
                return Err(bad("a constant profile has ak = a1"));
            }
        } else {
            // height of column k-1 is a1 - (k-1-c)
            let descent = k - 1 - c;
            if descent >= a1 {
                return Err(bad("descending columns reach height zero"));
            }
            if ak > a1 - descent {
                return Err(bad("last column taller than the one before it"));
            }
        }
        Ok(StaircaseParams { a1, c, k, ak })
    }

    /// Column heights `h_1..h_k`.
    pub fn column_heights(&self) -> Vec<u64> {
        (1..=self.k)
            .map(|i| {
                if i == self.k {
                    self.ak
                } else if i <= self.c {
                    self.a1
                } else {
                    self.a1 + self.c - i
                }
            })
            .collect()
    }

    pub fn volume(&self) -> u64 {
        let (a1, c, k, ak) = (
            self.a1 as i128,
            self.c as i128,
            self.k as i128,
            self.ak as i128,
        );
        let v = (k - 1) * a1 + ak - (k - c - 1) * (k - c) / 2;
        v as u64
    }

    pub fn perimeter(&self) -> u64 {
        3 * self.a1 + 2 * self.c + self.k - 3
    }

    /// Whether the perimeter formula is known to equal the true boundary:
    /// the last column sits at least one below its predecessor, or all
    /// columns are equal.
    pub fn in_formula_regime(&self) -> bool {
        self.k == self.c || self.ak + (self.k - 1 - self.c) < self.a1
    }

    /// The cells `{(t-1, y) : 0 <= y < h_t}`.
    pub fn materialize(&self) -> CellSet {
        from_heights(&self.column_heights())
    }
}

/// The set whose column `t` (0-based) holds `heights[t]` cells from the axis up.
pub fn from_heights(heights: &[u64]) -> CellSet {
    CellSet::quadrant(
        heights
            .iter()
            .enumerate()
            .flat_map(|(x, &h)| (0..h as i64).map(move |y| (x as i64, y))),
    )
    .expect("quadrant cells are nonnegative")
}

fn choose2(a: u64) -> u64 {
    a * a.saturating_sub(1) / 2
}

/// Radicand `1 + 8 (C(a1,2) - n + c a1)` after checking `(a1, c)` is a
/// realizable choice for `n`: `1 <= c <= a1`, `c a1 <= n`, and
/// `n - C(a1,2) <= c a1`.
fn radicand(n: u64, a1: u64, c: u64) -> Result<u64, StaircaseError> {
    let infeasible = StaircaseError::Infeasible { n, a1, c };
    if n == 0 || a1 == 0 || c == 0 || c > a1 {
        return Err(infeasible);
    }
    let full = c.checked_mul(a1).ok_or(infeasible.clone())?;
    if full > n || n > full + choose2(a1) {
        return Err(infeasible);
    }
    Ok(1 + 8 * (choose2(a1) + full - n))
}

/// The number of columns `k` of the staircase with first height `a1`,
/// `c` constant columns and volume `n`.
pub fn solve_k(n: u64, a1: u64, c: u64) -> Result<u64, StaircaseError> {
    let r = radicand(n, a1, c)?;
    let s = r.isqrt();
    // ceil((2a1 - 1 - sqrt r)/2) = ceil((2a1 - 1 - floor sqrt r)/2), exact or not
    let m = 2 * a1 - 1 - s;
    Ok(m.div_ceil(2) + c)
}

/// Staircase parameters determined by `(n, a1, c)`.
pub fn params_for(n: u64, a1: u64, c: u64) -> Result<StaircaseParams, StaircaseError> {
    let k = solve_k(n, a1, c)?;
    let ak = n as i128 - (k as i128 - 1) * a1 as i128
        + (k as i128 - c as i128 - 1) * (k as i128 - c as i128) / 2;
    if ak <= 0 {
        return Err(StaircaseError::Infeasible { n, a1, c });
    }
    StaircaseParams::new(a1, c, k, ak as u64)
}

/// The integer objective `4 a1 + 3c - 3 - floor((1 + sqrt R)/2)`.
pub fn objective(n: u64, a1: u64, c: u64) -> Result<u64, StaircaseError> {
    let r = radicand(n, a1, c)?;
    let s = r.isqrt();
    Ok(4 * a1 + 3 * c - 3 - s.div_ceil(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StaircaseOptimum {
    pub n: u64,
    pub params: StaircaseParams,
    pub perimeter: u64,
}

/// Minimizes the integer objective over all feasible `(a1, c)`; ties go to
/// the smaller `a1`, then the smaller `c`.
pub fn optimize(n: u64) -> StaircaseOptimum {
    assert!(n >= 1, "volume must be positive");
    let mut best: Option<(u64, u64, u64)> = None;
    for a1 in 1..=n {
        // perimeter = 3a1 + 2c + k - 3 >= 3a1 since c, k >= 1
        if matches!(best, Some((b, _, _)) if 3 * a1 >= b) {
            break;
        }
        let c_lo = {
            let need = n.saturating_sub(choose2(a1));
            need.div_ceil(a1).max(1)
        };
        let c_hi = a1.min(n / a1);
        for c in c_lo..=c_hi {
            // k >= c gives perimeter >= 3a1 + 3c - 3
            if matches!(best, Some((b, _, _)) if 3 * a1 + 3 * c - 3 >= b) {
                break;
            }
            if let Ok(v) = objective(n, a1, c) {
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, a1, c));
                }
            }
        }
    }
    let (perimeter, a1, c) = best.expect("a1 = n, c = 1 is always feasible");
    let params = params_for(n, a1, c).expect("optimum is feasible");
    StaircaseOptimum {
        n,
        params,
        perimeter,
    }
}

/// Writes `n,a1,c,k,ak,perimeter` rows.
pub fn write_csv<W: Write>(out: W, rows: &[StaircaseOptimum]) -> std::io::Result<()> {
    let mut out = out;
    writeln!(out, "n,a1,c,k,ak,perimeter")?;
    for r in rows {
        let p = r.params;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, p.a1, p.c, p.k, p.ak, r.perimeter
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge_boundary;

    fn p(a1: u64, c: u64, k: u64, ak: u64) -> StaircaseParams {
        StaircaseParams::new(a1, c, k, ak).unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(p(3, 3, 4, 2).column_heights(), vec![3, 3, 3, 2]);
        assert_eq!(p(1, 1, 1, 1).column_heights(), vec![1]);
        assert_eq!(
            p(14, 1, 14, 1).column_heights(),
            (1..=14).rev().collect::<Vec<_>>()
        );
    }

    #[test]
    fn volumes() {
        assert_eq!(p(3, 3, 4, 2).volume(), 11);
        assert_eq!(p(1, 1, 1, 1).volume(), 1);
        assert_eq!(p(14, 1, 14, 1).volume(), 105);
    }

    #[test]
    fn perimeters() {
        assert_eq!(p(3, 3, 4, 2).perimeter(), 16);
        assert_eq!(p(1, 1, 1, 1).perimeter(), 3);
        assert_eq!(p(2, 2, 2, 2).perimeter(), 9);
    }

    #[test]
    fn materialized_sets() {
        assert_eq!(p(1, 1, 1, 1).materialize().xy_cells(), vec![(0, 0)]);
        let block = p(2, 2, 2, 2).materialize();
        assert_eq!(block.len(), 4);
        assert_eq!(edge_boundary(&block), 9);
        let s = p(3, 3, 4, 2).materialize();
        assert_eq!(s.len(), 11);
        assert_eq!(edge_boundary(&s), 16);
    }

    #[test]
    fn invalid_params() {
        assert!(StaircaseParams::new(3, 0, 2, 1).is_err());
        assert!(StaircaseParams::new(3, 3, 2, 1).is_err());
        assert!(StaircaseParams::new(2, 2, 2, 1).is_err());
        // heights 2,1,0 would be needed
        assert!(StaircaseParams::new(2, 1, 4, 1).is_err());
        // last column taller than its predecessor
        assert!(StaircaseParams::new(3, 1, 3, 3).is_err());
        assert!(StaircaseParams::new(3, 1, 3, 0).is_err());
    }

    #[test]
    fn k_recovery() {
        assert_eq!(solve_k(11, 3, 3), Ok(4));
        assert_eq!(solve_k(11, 4, 2), Ok(3));
        assert_eq!(solve_k(1, 1, 1), Ok(1));
        assert!(matches!(
            solve_k(11, 1, 1),
            Err(StaircaseError::Infeasible { .. })
        ));
        // c * a1 > n
        assert!(matches!(
            solve_k(11, 5, 3),
            Err(StaircaseError::Infeasible { .. })
        ));
    }

    #[test]
    fn objectives() {
        assert_eq!(objective(11, 3, 3), Ok(16));
        assert_eq!(objective(11, 5, 1), Ok(17));
        assert_eq!(
            params_for(11, 5, 1).unwrap().column_heights(),
            vec![5, 4, 2]
        );
        assert_eq!(objective(4, 2, 2), Ok(9));
    }

    #[test]
    fn optimize_small() {
        assert_eq!(optimize(11).perimeter, 16);
        assert_eq!(optimize(1).perimeter, 3);
        assert_eq!(optimize(1).params, p(1, 1, 1, 1));
        // the degenerate volumes get constant profiles
        assert_eq!(optimize(2).params.column_heights(), vec![2]);
        assert_eq!(optimize(4).params, p(2, 2, 2, 2));
        let simplex = p(14, 1, 14, 1);
        let o = optimize(105);
        assert!(o.perimeter <= 54 && o.perimeter < simplex.perimeter());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[optimize(11)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,a1,c,k,ak,perimeter"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("11,") && row.ends_with(",16"), "{row}");
    }
}
