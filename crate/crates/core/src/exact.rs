//! Exhaustive search for optimal king-graph sets in the quadrant.
//!
//! Every connected set touching both axes is the anchored translate of
//! exactly one fixed polyking, so enumerating fixed polykings (Redelmeier's
//! algorithm, rooted at the lowest-leftmost cell) visits the search space
//! once each. The edge boundary of the anchored translate is kept
//! incrementally:
//!
//! ```text
//! B = 8n - 2e - 3 |{cells in the leftmost column}| - 3 |{cells in the bottom row}|
//!     + [bottom-left corner present]
//! ```
//!
//! where `e` counts adjacent pairs inside the set.
//!
//! Restricting to connected anchored sets loses nothing: sliding a set
//! that misses an axis toward it strictly lowers the boundary, and a
//! disconnected set either has a component that can slide or consists of
//! nested components whose boundaries add up. [`ExactRun::connectivity_certificate`]
//! checks the latter numerically.

use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;

use crate::lattice::CellSet;

/// Default largest volume searched.
pub const DEFAULT_MAX_VOLUME: usize = 11;
/// Hard ceiling; the grid encoding uses 8-bit coordinates.
pub const HARD_MAX_VOLUME: usize = 16;
/// Default number of optimal sets stored per volume.
pub const DEFAULT_OPTIMA_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("volume must be at least 1")]
    ZeroVolume,
    #[error("volume {n} exceeds the enumeration budget of {max} cells")]
    BudgetExceeded { n: usize, max: usize },
    #[error("more than {cap} optimal sets at volume {n}; raise the cap")]
    OptimaOverflow { n: usize, cap: usize },
    #[error("volume {n} was not part of this run (searched up to {max})")]
    NotEnumerated { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_volume: usize,
    /// Count sets related by the reflection in `y = x` once.
    pub canonicalization: bool,
    /// Sets with a larger boundary are never stored as witnesses. Counting
    /// and minimization remain exhaustive.
    pub prune_bound: Option<u32>,
    pub optima_cap: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_volume: DEFAULT_MAX_VOLUME,
            canonicalization: true,
            prune_bound: None,
            optima_cap: DEFAULT_OPTIMA_CAP,
        }
    }
}

impl EnumerationBudget {
    pub fn with_max_volume(max_volume: usize) -> Self {
        EnumerationBudget {
            max_volume,
            ..Default::default()
        }
    }

    fn check(&self, n: usize) -> Result<(), ExactError> {
        if n == 0 {
            return Err(ExactError::ZeroVolume);
        }
        let max = self.max_volume.min(HARD_MAX_VOLUME);
        if n > max {
            return Err(ExactError::BudgetExceeded { n, max });
        }
        Ok(())
    }
}

/// Cells as `(x, y)` in colexicographic order (by `y`, then `x`).
pub type Cells = Vec<(u8, u8)>;

fn sort_colex(cells: &mut Cells) {
    cells.sort_unstable_by_key(|&(x, y)| (y, x));
}

fn reflected(cells: &Cells) -> Cells {
    let mut r: Cells = cells.iter().map(|&(x, y)| (y, x)).collect();
    sort_colex(&mut r);
    r
}

fn colex_key(cells: &Cells) -> Vec<(u8, u8)> {
    cells.iter().map(|&(x, y)| (y, x)).collect()
}

/// Whether `cells` is the colex-least of itself and its reflection.
fn is_canonical(cells: &Cells) -> bool {
    colex_key(cells) <= colex_key(&reflected(cells))
}

pub fn to_cellset(cells: &Cells) -> CellSet {
    CellSet::quadrant(cells.iter().map(|&(x, y)| (x as i64, y as i64))).expect("nonnegative cells")
}

pub fn cells_json(cells: &Cells) -> String {
    let parts: Vec<String> = cells.iter().map(|(x, y)| format!("[{x},{y}]")).collect();
    format!("[{}]", parts.join(","))
}

// ---------------------------------------------------------------------------
// Enumerator
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Enumerator {
    max: usize,
    w: usize,
    off: i64,
    seen: Vec<bool>,
    inset: Vec<bool>,
    colcount: Vec<u16>,
    cells: Vec<usize>,
    e: u32,
    y0: u32,
    minx: i64,
    minx_stack: Vec<i64>,
    bufs: Vec<Vec<usize>>,
    nbr: [isize; 8],
}

impl Enumerator {
    fn new(max: usize) -> Self {
        let w = 2 * max + 1;
        let off = max as i64;
        let rows = max + 2;
        let mut seen = vec![false; w * rows];
        for row in 0..rows {
            for col in 0..w {
                let x = col as i64 - off;
                let y = row as i64 - 1;
                let pad = row == 0 || row == rows - 1 || col == 0 || col == w - 1;
                if pad || (y == 0 && x < 0) {
                    seen[row * w + col] = true;
                }
            }
        }
        let wi = w as isize;
        let nbr = [-wi - 1, -wi, -wi + 1, -1, 1, wi - 1, wi, wi + 1];
        let root = w + off as usize;
        seen[root] = true;
        let mut bufs = vec![Vec::with_capacity(8 * max + 8); max + 1];
        bufs[0].push(root);
        Enumerator {
            max,
            w,
            off,
            seen,
            inset: vec![false; w * rows],
            colcount: vec![0; w],
            cells: Vec::with_capacity(max),
            e: 0,
            y0: 0,
            minx: i64::MAX,
            minx_stack: Vec::with_capacity(max),
            bufs,
            nbr,
        }
    }

    fn xy(&self, i: usize) -> (i64, i64) {
        ((i % self.w) as i64 - self.off, (i / self.w) as i64 - 1)
    }

    fn size(&self) -> usize {
        self.cells.len()
    }

    fn add(&mut self, c: usize) {
        for d in self.nbr {
            if self.inset[(c as isize + d) as usize] {
                self.e += 1;
            }
        }
        self.inset[c] = true;
        self.cells.push(c);
        let (x, y) = self.xy(c);
        self.colcount[(x + self.off) as usize] += 1;
        if y == 0 {
            self.y0 += 1;
        }
        self.minx_stack.push(self.minx);
        self.minx = self.minx.min(x);
    }

    fn remove(&mut self) {
        let c = self.cells.pop().expect("nonempty");
        self.inset[c] = false;
        for d in self.nbr {
            if self.inset[(c as isize + d) as usize] {
                self.e -= 1;
            }
        }
        let (x, y) = self.xy(c);
        self.colcount[(x + self.off) as usize] -= 1;
        if y == 0 {
            self.y0 -= 1;
        }
        self.minx = self.minx_stack.pop().expect("paired with add");
    }

    fn boundary(&self) -> u32 {
        let n = self.size() as u32;
        let left = self.colcount[(self.minx + self.off) as usize] as u32;
        let corner = self.inset[self.w + (self.minx + self.off) as usize] as u32;
        8 * n + corner - 2 * self.e - 3 * left - 3 * self.y0
    }

    /// The anchored translate, colex-sorted.
    fn anchored(&self) -> Cells {
        let mut out: Cells = self
            .cells
            .iter()
            .map(|&i| {
                let (x, y) = self.xy(i);
                ((x - self.minx) as u8, y as u8)
            })
            .collect();
        sort_colex(&mut out);
        out
    }

    /// Redelmeier step: try every untried cell at depth `d`, recursing with
    /// the remaining untried cells plus the newly reachable ones. When the
    /// set reaches `split_at` cells the state is saved to `tasks` instead.
    fn grow<S: Sink>(
        &mut self,
        d: usize,
        sink: &mut S,
        split_at: usize,
        tasks: &mut Vec<(Enumerator, usize)>,
    ) {
        while let Some(c) = self.bufs[d].pop() {
            self.add(c);
            sink.record(self);
            if self.size() < self.max {
                let mut child = std::mem::take(&mut self.bufs[d + 1]);
                child.clear();
                child.extend_from_slice(&self.bufs[d]);
                let mut fresh = [0usize; 8];
                let mut nf = 0;
                for k in 0..8 {
                    let nb = (c as isize + self.nbr[k]) as usize;
                    if !self.seen[nb] {
                        self.seen[nb] = true;
                        child.push(nb);
                        fresh[nf] = nb;
                        nf += 1;
                    }
                }
                self.bufs[d + 1] = child;
                if self.size() == split_at {
                    tasks.push((self.clone(), d + 1));
                } else {
                    self.grow(d + 1, sink, split_at, tasks);
                }
                for &nb in &fresh[..nf] {
                    self.seen[nb] = false;
                }
            }
            self.remove();
        }
    }
}

trait Sink {
    fn record(&mut self, e: &Enumerator);
}

// ---------------------------------------------------------------------------
// Per-volume statistics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub n: usize,
    /// Connected sets touching both axes (fixed polykings).
    pub count: u64,
    pub min_boundary: u32,
    /// Optimal sets, counting a set and its reflection separately.
    pub optima_total: u64,
    /// Optimal sets equal to their own reflection.
    pub optima_symmetric: u64,
    /// Stored optimal sets (colex-sorted cells), sorted.
    pub optima: Vec<Cells>,
}

impl LevelStats {
    fn empty(n: usize) -> Self {
        LevelStats {
            n,
            count: 0,
            min_boundary: u32::MAX,
            optima_total: 0,
            optima_symmetric: 0,
            optima: Vec::new(),
        }
    }

    /// Optimal sets up to the reflection in `y = x`.
    pub fn optima_up_to_reflection(&self) -> u64 {
        (self.optima_total + self.optima_symmetric) / 2
    }

    /// Whether some optimal sets were not stored.
    pub fn overflowed(&self) -> bool {
        (self.optima.len() as u64) < self.optima_total
    }

    fn merge(&mut self, other: LevelStats, cap: usize) {
        self.count += other.count;
        if other.min_boundary < self.min_boundary {
            self.min_boundary = other.min_boundary;
            self.optima_total = other.optima_total;
            self.optima_symmetric = other.optima_symmetric;
            self.optima = other.optima;
        } else if other.min_boundary == self.min_boundary {
            self.optima_total += other.optima_total;
            self.optima_symmetric += other.optima_symmetric;
            let room = cap.saturating_sub(self.optima.len());
            self.optima.extend(other.optima.into_iter().take(room));
        }
    }
}

struct StatsSink {
    levels: Vec<LevelStats>,
    cap: usize,
    prune: Option<u32>,
}

impl StatsSink {
    fn new(max: usize, cap: usize, prune: Option<u32>) -> Self {
        StatsSink {
            levels: (0..=max).map(LevelStats::empty).collect(),
            cap,
            prune,
        }
    }
}

impl Sink for StatsSink {
    fn record(&mut self, e: &Enumerator) {
        let b = e.boundary();
        let lv = &mut self.levels[e.size()];
        lv.count += 1;
        if b > lv.min_boundary {
            return;
        }
        if b < lv.min_boundary {
            lv.min_boundary = b;
            lv.optima_total = 0;
            lv.optima_symmetric = 0;
            lv.optima.clear();
        }
        lv.optima_total += 1;
        let cells = e.anchored();
        if reflected(&cells) == cells {
            lv.optima_symmetric += 1;
        }
        if lv.optima.len() < self.cap && self.prune.is_none_or(|p| b <= p) {
            lv.optima.push(cells);
        }
    }
}

struct CollectSink<F: FnMut(&Cells, u32)> {
    n: usize,
    f: F,
}

impl<F: FnMut(&Cells, u32)> Sink for CollectSink<F> {
    fn record(&mut self, e: &Enumerator) {
        if e.size() == self.n {
            (self.f)(&e.anchored(), e.boundary());
        }
    }
}

/// Calls `f(cells, boundary)` for every connected set of `n` cells touching
/// both axes, in a fixed order.
pub fn for_each_connected(n: usize, f: impl FnMut(&Cells, u32)) {
    assert!((1..=HARD_MAX_VOLUME).contains(&n), "volume out of range");
    let mut en = Enumerator::new(n);
    let mut sink = CollectSink { n, f };
    en.grow(0, &mut sink, usize::MAX, &mut Vec::new());
}

/// Every connected `n`-cell set touching both axes; with
/// `canonicalization` only the colex-least of each reflection pair.
pub fn enumerate_connected(
    n: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<CellSet>, ExactError> {
    budget.check(n)?;
    let mut out = Vec::new();
    for_each_connected(n, |cells, _| {
        if !budget.canonicalization || is_canonical(cells) {
            out.push(to_cellset(cells));
        }
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

/// Results of one exhaustive run over volumes `1..=max_volume`.
#[derive(Debug, Clone)]
pub struct ExactRun {
    pub max_volume: usize,
    pub optima_cap: usize,
    /// Index `n - 1` holds volume `n`.
    pub levels: Vec<LevelStats>,
}

/// Enumerates every connected anchored set with at most `n_max` cells and
/// collects per-volume minima and optimal sets. Work is split into
/// independent subtrees run on the rayon pool; results are merged in a
/// fixed order, so the output does not depend on the thread count.
pub fn run(n_max: usize, budget: &EnumerationBudget) -> Result<ExactRun, ExactError> {
    budget.check(n_max)?;
    let cap = budget.optima_cap;
    let split_at = if n_max > 6 { 4 } else { usize::MAX };
    let mut root = Enumerator::new(n_max);
    let mut head = StatsSink::new(n_max, cap, budget.prune_bound);
    let mut tasks = Vec::new();
    root.grow(0, &mut head, split_at, &mut tasks);
    let parts: Vec<Vec<LevelStats>> = tasks
        .into_par_iter()
        .map(|(mut en, d)| {
            let mut sink = StatsSink::new(n_max, cap, budget.prune_bound);
            en.grow(d, &mut sink, usize::MAX, &mut Vec::new());
            sink.levels
        })
        .collect();
    let mut levels = head.levels;
    for part in parts {
        for (lv, other) in levels.iter_mut().zip(part) {
            lv.merge(other, cap);
        }
    }
    let mut levels: Vec<LevelStats> = levels.into_iter().skip(1).collect();
    for lv in &mut levels {
        lv.optima.sort_unstable_by_key(colex_key);
    }
    Ok(ExactRun {
        max_volume: n_max,
        optima_cap: cap,
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub n: usize,
    pub min_boundary: u32,
    /// Colex-least optimal set.
    pub witness: Cells,
    /// Optimal sets up to the reflection in `y = x`.
    pub optima_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// Minimum boundary at volumes `1..=n_max`.
    pub values: Vec<u32>,
    /// First `n` with `value(n) > value(n + 1)`.
    pub violation: Option<usize>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nesting {
    /// Optimal sets `A_1 ⊂ A_2 ⊂ ... ⊂ A_n`.
    Chain(Vec<Cells>),
    /// No chain reaches `n_max`: `reachable[i]` optimal sets at volume
    /// `i + 1` lie on a chain from volume 1, and none at `dead_end + 1`.
    NoChain {
        dead_end: usize,
        reachable: Vec<usize>,
    },
}

impl Nesting {
    pub fn exists(&self) -> bool {
        matches!(self, Nesting::Chain(_))
    }
}

fn is_subset(small: &Cells, big: &Cells) -> bool {
    // both colex-sorted
    let mut it = big.iter();
    small.iter().all(|c| it.by_ref().any(|b| b == c))
}

impl ExactRun {
    pub fn level(&self, n: usize) -> Result<&LevelStats, ExactError> {
        if n == 0 {
            return Err(ExactError::ZeroVolume);
        }
        self.levels.get(n - 1).ok_or(ExactError::NotEnumerated {
            n,
            max: self.max_volume,
        })
    }

    pub fn optimum(&self, n: usize) -> Result<Optimum, ExactError> {
        let lv = self.level(n)?;
        let witness = lv
            .optima
            .first()
            .cloned()
            .ok_or(ExactError::OptimaOverflow {
                n,
                cap: self.optima_cap,
            })?;
        Ok(Optimum {
            n,
            min_boundary: lv.min_boundary,
            witness,
            optima_count: lv.optima_up_to_reflection(),
        })
    }

    pub fn values(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.min_boundary).collect()
    }

    pub fn verify_monotonicity(&self, n_max: usize) -> Result<MonotonicityReport, ExactError> {
        self.level(n_max)?;
        let values: Vec<u32> = self.values().into_iter().take(n_max).collect();
        let violation = values.windows(2).position(|w| w[0] > w[1]).map(|i| i + 1);
        Ok(MonotonicityReport { values, violation })
    }

    /// Whether optimal sets at volumes `1..=n_max` can be chosen nested.
    /// Needs every optimal set stored; reachability runs level by level
    /// over the subset relation.
    pub fn nested_chain(&self, n_max: usize) -> Result<Nesting, ExactError> {
        self.level(n_max)?;
        for lv in &self.levels[..n_max] {
            if lv.overflowed() {
                return Err(ExactError::OptimaOverflow {
                    n: lv.n,
                    cap: self.optima_cap,
                });
            }
        }
        // parent[i][j]: index of a predecessor of optimum j at volume i + 1
        let mut parents: Vec<Vec<Option<usize>>> = vec![vec![Some(0); self.levels[0].optima.len()]];
        let mut reachable = vec![self.levels[0].optima.len()];
        for n in 2..=n_max {
            let prev = &self.levels[n - 2].optima;
            let prev_ok = &parents[n - 2];
            let cur: Vec<Option<usize>> = self.levels[n - 1]
                .optima
                .iter()
                .map(|big| {
                    prev.iter()
                        .enumerate()
                        .find(|(i, small)| prev_ok[*i].is_some() && is_subset(small, big))
                        .map(|(i, _)| i)
                })
                .collect();
            let count = cur.iter().filter(|p| p.is_some()).count();
            reachable.push(count);
            parents.push(cur);
            if count == 0 {
                return Ok(Nesting::NoChain {
                    dead_end: n - 1,
                    reachable,
                });
            }
        }
        let mut chain = Vec::with_capacity(n_max);
        let mut j = parents[n_max - 1]
            .iter()
            .position(|p| p.is_some())
            .expect("count > 0");
        for n in (1..=n_max).rev() {
            chain.push(self.levels[n - 1].optima[j].clone());
            if n > 1 {
                j = parents[n - 1][j].expect("on a chain");
            }
        }
        chain.reverse();
        Ok(Nesting::Chain(chain))
    }

    /// Checks that no disconnected set beats the connected optimum for any
    /// volume in the run. A disconnected set either has a component that
    /// can slide toward an axis (strictly lowering the boundary) or has all
    /// components touching both axes; then they are nested around the
    /// corner, their boundaries add, and every component but the innermost
    /// has at least four cells. Returns the volumes where the inequality
    /// fails to be strict (empty when the restriction is exact).
    pub fn connectivity_certificate(&self) -> Vec<usize> {
        let v = self.values();
        let n_max = v.len();
        // best[s][small]: least sum of optima over partitions of s into
        // parts >= 4, plus (when small) one part of any size
        let inf = u32::MAX / 2;
        let mut big = vec![inf; n_max + 1];
        big[0] = 0;
        for s in 1..=n_max {
            for part in 4..=s {
                big[s] = big[s].min(big[s - part] + v[part - 1]);
            }
        }
        let mut failures = Vec::new();
        for n in 2..=n_max {
            // at least two parts: one part of size t (any), rest >= 4 nonempty
            let mut best = inf;
            for t in 1..n {
                if big[n - t] < inf {
                    best = best.min(v[t - 1] + big[n - t]);
                }
            }
            if best <= v[n - 1] {
                failures.push(n);
            }
        }
        failures
    }

    /// Rows `n,min_boundary,optima_count,witness`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,min_boundary,optima_count,witness")?;
        for lv in &self.levels {
            let witness = lv.optima.first().map(cells_json).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},\"{}\"",
                lv.n,
                lv.min_boundary,
                lv.optima_up_to_reflection(),
                witness
            )?;
        }
        Ok(())
    }
}

/// Exhaustive optimum at a single volume.
pub fn optimum(n: usize, budget: &EnumerationBudget) -> Result<Optimum, ExactError> {
    run(n, budget)?.optimum(n)
}

// ---------------------------------------------------------------------------
// Young diagrams
// ---------------------------------------------------------------------------

/// Boundary edges between two neighbouring columns of heights `a` and `b`
/// (one endpoint in each column).
fn column_pair_cost(a: u64, b: u64) -> u64 {
    let top = a.max(b) + 2;
    let mut count = 0;
    for y in 0..top {
        for z in y.saturating_sub(1)..=y + 1 {
            if (y < a) != (z < b) {
                count += 1;
            }
        }
    }
    count
}

/// Least boundary over Young diagrams (non-increasing column heights) of
/// every volume `1..=n_max`. A column contributes its top edge plus the
/// edges to its right neighbour; nothing crosses the left axis.
pub fn partition_shaped_values(n_max: u64) -> Vec<u64> {
    let m = n_max as usize;
    let mut pair = vec![vec![0u64; m + 1]; m + 1];
    for (a, row) in pair.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate().take(a + 1) {
            *cell = column_pair_cost(a as u64, b as u64);
        }
    }
    // cost[r][p]: least cost of the columns after one of height p, holding r
    // cells, including the edges from that column rightward
    let mut cost = vec![vec![u64::MAX; m + 1]; m + 1];
    for p in 0..=m {
        cost[0][p] = pair[p][0];
    }
    for r in 1..=m {
        for p in 1..=m {
            let mut best = u64::MAX;
            for h in 1..=p.min(r) {
                let rest = cost[r - h][h];
                if rest != u64::MAX {
                    best = best.min(1 + pair[p][h] + rest);
                }
            }
            cost[r][p] = best;
        }
    }
    (1..=m)
        .map(|n| (1..=n).map(|h| 1 + cost[n - h][h]).min().expect("h = n"))
        .collect()
}

/// Least boundary over Young diagrams of volume `n`.
pub fn optimum_partition_shaped(n: u64) -> u64 {
    assert!(n >= 1, "volume must be positive");
    partition_shaped_values(n)[n as usize - 1]
}

/// Distinct anchored connected sets of size `n` reachable by growth, as a
/// cross-check on the enumerator for tiny volumes.
pub fn naive_connected_count(n: usize) -> usize {
    let king = [
        (-1i64, -1i64),
        (0, -1),
        (1, -1),
        (-1, 0),
        (1, 0),
        (-1, 1),
        (0, 1),
        (1, 1),
    ];
    let normalize = |cells: &mut Vec<(i64, i64)>| {
        let mx = cells.iter().map(|c| c.0).min().unwrap_or(0);
        let my = cells.iter().map(|c| c.1).min().unwrap_or(0);
        for c in cells.iter_mut() {
            c.0 -= mx;
            c.1 -= my;
        }
        cells.sort_unstable();
    };
    let mut level: HashSet<Vec<(i64, i64)>> = HashSet::from([vec![(0, 0)]]);
    for _ in 1..n {
        let mut next = HashSet::new();
        for set in &level {
            for &(x, y) in set {
                for (dx, dy) in king {
                    let c = (x + dx, y + dy);
                    if !set.contains(&c) {
                        let mut grown = set.clone();
                        grown.push(c);
                        normalize(&mut grown);
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    level.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge_boundary;

    #[test]
    fn enumerator_boundary_matches_direct_count() {
        for n in 1..=6 {
            for_each_connected(n, |cells, b| {
                assert_eq!(b as u64, edge_boundary(&to_cellset(cells)), "{cells:?}");
            });
        }
    }

    #[test]
    fn small_volumes() {
        let budget = EnumerationBudget::default();
        let one = enumerate_connected(1, &budget).unwrap();
        assert_eq!(one, vec![CellSet::quadrant([(0, 0)]).unwrap()]);
        assert_eq!(enumerate_connected(2, &budget).unwrap().len(), 3);
        let raw = EnumerationBudget {
            canonicalization: false,
            ..budget
        };
        assert_eq!(enumerate_connected(2, &raw).unwrap().len(), 4);
    }

    #[test]
    fn counts_match_naive_growth() {
        let r = run(6, &EnumerationBudget::default()).unwrap();
        for n in 1..=6 {
            assert_eq!(
                r.level(n).unwrap().count as usize,
                naive_connected_count(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn small_optima() {
        let r = run(8, &EnumerationBudget::default()).unwrap();
        assert_eq!(r.values(), vec![3, 6, 7, 9, 10, 11, 13, 13]);
        let four = r.optimum(4).unwrap();
        assert_eq!(four.witness, vec![(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(r.verify_monotonicity(8).unwrap().holds());
        assert!(r.connectivity_certificate().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let b = EnumerationBudget::with_max_volume(5);
        assert_eq!(
            optimum(6, &b),
            Err(ExactError::BudgetExceeded { n: 6, max: 5 })
        );
        assert_eq!(optimum(0, &b), Err(ExactError::ZeroVolume));
    }

    #[test]
    fn nested_small() {
        let r = run(4, &EnumerationBudget::default()).unwrap();
        let Nesting::Chain(chain) = r.nested_chain(4).unwrap() else {
            panic!("expected a chain");
        };
        assert_eq!(chain.len(), 4);
        for w in chain.windows(2) {
            assert!(is_subset(&w[0], &w[1]));
        }
        assert!(r.nested_chain(1).unwrap().exists());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(optimum_partition_shaped(1), 3);
        assert_eq!(optimum_partition_shaped(11), 16);
        assert_eq!(column_pair_cost(1, 0), 2);
        assert_eq!(column_pair_cost(2, 2), 2);
    }

    #[test]
    fn csv_quotes_witness() {
        let r = run(2, &EnumerationBudget::default()).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,min_boundary,optima_count,witness\n1,3,1,\"[[0,0]]\"\n2,6,1,\"[[0,0],[1,0]]\"\n"
        );
    }
}
