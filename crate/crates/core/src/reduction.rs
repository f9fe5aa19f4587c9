//! Boundary-preserving transformations.
//!
//! Two groups live here. The first works on any `l_p` lattice in the covered
//! regimes: the extremal point (colex-greatest cell of the outermost
//! `l_inf` shell), the reflection check around it, and the removable point
//! it yields. The second is the normalization pipeline for the king-graph
//! quadrant, which turns an arbitrary finite set into a staircase profile
//! without increasing the edge boundary:
//!
//! 1. `connect_and_anchor` slides components toward the axes until one
//!    connected set touching both axes remains;
//! 2. `fill_bounded` adds every lattice point enclosed by the set's king
//!    edges and the axes;
//! 3. `fill_gaps` closes row and column gaps, leaving a Young diagram;
//! 4. `rebalance_columns`, `normalize_shape` and `ensure_width_dominance`
//!    move single cells between columns until the profile is a staircase.
//!
//! Every step recomputes the boundary from scratch and the pipeline refuses
//! to continue if a step ever increased it.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::lattice::{
    axis_fold, edge_boundary, is_locally_symmetric, neighbors, radius_below_two, reflect,
    shell_index, Adjacency, CellSet, GridSpec, LatticeError, Point,
};
use crate::staircase::{from_heights, StaircaseError, StaircaseParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("the set is empty")]
    Empty,
    #[error("operation is defined on the king-graph quadrant only")]
    NotKingQuadrant,
    #[error(
        "graph is outside the covered regimes (locally symmetric on Z^k, or l_p with radius < 2)"
    )]
    UncoveredRegime,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("step `{step}` increased the boundary from {before} to {after}")]
    BoundaryIncreased {
        step: &'static str,
        before: u64,
        after: u64,
    },
    #[error("step `{step}` changed the volume from {before} to {after}")]
    VolumeChanged {
        step: &'static str,
        before: u64,
        after: u64,
    },
    #[error("no cell can be removed without increasing the boundary")]
    NoRemovablePoint,
    #[error("components could not be merged without increasing the boundary")]
    CannotConnect,
    #[error("normalization did not reach a staircase with a1 >= c")]
    NotNormalized,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

// ---------------------------------------------------------------------------
// Extremal points and the reflection argument
// ---------------------------------------------------------------------------

/// The colex-greatest cell among those of maximal `l_inf` norm.
pub fn extremal_point(a: &CellSet) -> Result<Point, ReductionError> {
    let r = a
        .iter()
        .map(shell_index)
        .max()
        .ok_or(ReductionError::Empty)?;
    Ok(a.iter()
        .filter(|p| shell_index(p) == r)
        .max()
        .cloned()
        .expect("shell r is attained"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionMode {
    /// Plain point reflection on `Z^k` with a centrally symmetric stencil.
    PointReflection,
    /// Point reflection followed by folding across the half-space axes.
    AxisFold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReflectionViolation {
    ImageInSet {
        neighbor: Point,
        image: Point,
    },
    ImageOutsideGraph {
        neighbor: Point,
        image: Point,
    },
    ImageNotAdjacent {
        neighbor: Point,
        image: Point,
    },
    NotInjective {
        first: Point,
        second: Point,
        image: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionReport {
    pub mode: ReflectionMode,
    pub extremal: Point,
    /// Neighbours of the extremal point inside the set.
    pub checked: usize,
    pub violation: Option<ReflectionViolation>,
}

impl ReflectionReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn reflection_mode(spec: &GridSpec) -> Result<ReflectionMode, ReductionError> {
    if spec.half_dims() == 0 {
        if is_locally_symmetric(spec).holds() {
            return Ok(ReflectionMode::PointReflection);
        }
    } else if matches!(spec.adjacency(), Adjacency::Norm { .. }) && radius_below_two(spec) {
        return Ok(ReflectionMode::AxisFold);
    }
    Err(ReductionError::UncoveredRegime)
}

/// Maps every in-set neighbour of the extremal point through the reflection
/// (and axis folding on half-spaces) and checks that the images are distinct
/// in-graph neighbours lying outside the set.
pub fn check_reflection_free(a: &CellSet) -> Result<ReflectionReport, ReductionError> {
    let spec = a.spec();
    let mode = reflection_mode(spec)?;
    let p = extremal_point(a)?;
    let nbrs = neighbors(spec, &p)?;
    let nbr_set: HashSet<&Point> = nbrs.iter().collect();
    let mut seen: Vec<(Point, Point)> = Vec::new();
    let mut checked = 0;
    let report = |checked, violation| ReflectionReport {
        mode,
        extremal: p.clone(),
        checked,
        violation,
    };
    for y in nbrs.iter().filter(|y| a.contains(y)) {
        checked += 1;
        let image = match mode {
            ReflectionMode::PointReflection => reflect(&p, y),
            ReflectionMode::AxisFold => axis_fold(spec, &p, y),
        };
        let v =
            |kind: fn(Point, Point) -> ReflectionViolation| Some(kind(y.clone(), image.clone()));
        if !spec.contains(&image) {
            return Ok(report(
                checked,
                v(|neighbor, image| ReflectionViolation::ImageOutsideGraph { neighbor, image }),
            ));
        }
        if a.contains(&image) {
            return Ok(report(
                checked,
                v(|neighbor, image| ReflectionViolation::ImageInSet { neighbor, image }),
            ));
        }
        if !nbr_set.contains(&image) {
            return Ok(report(
                checked,
                v(|neighbor, image| ReflectionViolation::ImageNotAdjacent { neighbor, image }),
            ));
        }
        if let Some((first, _)) = seen.iter().find(|(_, img)| *img == image) {
            return Ok(report(
                checked,
                Some(ReflectionViolation::NotInjective {
                    first: first.clone(),
                    second: y.clone(),
                    image,
                }),
            ));
        }
        seen.push((y.clone(), image));
    }
    Ok(ReflectionReport {
        mode,
        extremal: p,
        checked,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub point: Point,
    pub boundary_before: u64,
    pub boundary_after: u64,
}

/// A cell whose removal does not increase the edge boundary. The extremal
/// point is tried first, then the remaining cells from colex-greatest down.
pub fn removable_point(a: &CellSet) -> Result<Removal, ReductionError> {
    if a.len() < 2 {
        return Err(ReductionError::Precondition("need at least two cells"));
    }
    reflection_mode(a.spec())?;
    let before = edge_boundary(a);
    let first = extremal_point(a)?;
    let candidates =
        std::iter::once(first.clone()).chain(a.iter().rev().filter(|q| **q != first).cloned());
    for q in candidates {
        let mut rest = a.clone();
        rest.remove(&q);
        let after = edge_boundary(&rest);
        if after <= before {
            return Ok(Removal {
                point: q,
                boundary_before: before,
                boundary_after: after,
            });
        }
    }
    Err(ReductionError::NoRemovablePoint)
}

// ---------------------------------------------------------------------------
// King-quadrant helpers
// ---------------------------------------------------------------------------

type Cells = BTreeSet<(i64, i64)>;

const KING: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

fn quadrant_cells(a: &CellSet) -> Result<Cells, ReductionError> {
    if !a.spec().is_king_quadrant() {
        return Err(ReductionError::NotKingQuadrant);
    }
    Ok(a.iter().map(Point::as_xy).collect())
}

fn to_cellset(cells: &Cells) -> CellSet {
    CellSet::quadrant(cells.iter().copied()).expect("quadrant cells are nonnegative")
}

fn quad_boundary(cells: &Cells) -> u64 {
    let mut b = 0;
    for &(x, y) in cells {
        for (dx, dy) in KING {
            let (u, v) = (x + dx, y + dy);
            if u >= 0 && v >= 0 && !cells.contains(&(u, v)) {
                b += 1;
            }
        }
    }
    b
}

fn components(cells: &Cells) -> Vec<Cells> {
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = Cells::new();
        let mut queue = VecDeque::from([start]);
        while let Some((x, y)) = queue.pop_front() {
            comp.insert((x, y));
            for (dx, dy) in KING {
                let q = (x + dx, y + dy);
                if cells.contains(&q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn touches_both_axes(cells: &Cells) -> bool {
    cells.iter().any(|c| c.0 == 0) && cells.iter().any(|c| c.1 == 0)
}

fn is_connected(cells: &Cells) -> bool {
    components(cells).len() <= 1
}

fn translate(cells: &Cells, dx: i64, dy: i64) -> Cells {
    cells.iter().map(|&(x, y)| (x + dx, y + dy)).collect()
}

fn adjacent(a: &Cells, b: &Cells) -> bool {
    a.iter()
        .any(|&(x, y)| KING.iter().any(|(dx, dy)| b.contains(&(x + dx, y + dy))))
}

/// Moves one component so that it touches another, choosing the placement
/// with the smallest resulting boundary. Used only when every component
/// already touches both axes (one encloses another).
fn relocate_component(cells: &Cells, comps: &[Cells]) -> Option<Cells> {
    let current = quad_boundary(cells);
    let max_x = cells.iter().map(|c| c.0).max()?;
    let max_y = cells.iter().map(|c| c.1).max()?;
    let mut best: Option<(u64, Cells)> = None;
    for comp in comps {
        let rest: Cells = cells.difference(comp).copied().collect();
        let cx = comp.iter().map(|c| c.0).min()?;
        let cy = comp.iter().map(|c| c.1).min()?;
        let cw = comp.iter().map(|c| c.0).max()? - cx;
        let ch = comp.iter().map(|c| c.1).max()? - cy;
        for ny in 0..=(max_y + 1 - ch).max(0) {
            for nx in 0..=(max_x + 1 - cw).max(0) {
                let (dx, dy) = (nx - cx, ny - cy);
                if (dx, dy) == (0, 0) {
                    continue;
                }
                let moved = translate(comp, dx, dy);
                if moved.iter().any(|c| rest.contains(c)) || !adjacent(&moved, &rest) {
                    continue;
                }
                let mut union = rest.clone();
                union.extend(moved.iter().copied());
                let b = quad_boundary(&union);
                if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                    best = Some((b, union));
                }
            }
        }
    }
    best.filter(|(b, _)| *b <= current).map(|(_, s)| s)
}

/// Translates components toward the origin until a single connected set
/// touching both axes remains. The component with the smallest minimal
/// coordinate sum that can still move goes first, decreasing `x` before `y`.
pub fn connect_and_anchor(a: &CellSet) -> Result<CellSet, ReductionError> {
    let mut cells = quadrant_cells(a)?;
    if cells.is_empty() {
        return Err(ReductionError::Empty);
    }
    loop {
        let mut comps = components(&cells);
        if comps.len() == 1 && touches_both_axes(&cells) {
            return Ok(to_cellset(&cells));
        }
        comps.sort_by_key(|c| {
            let key = c
                .iter()
                .map(|&(x, y)| (x + y, y, x))
                .min()
                .expect("nonempty");
            key
        });
        let movable = comps
            .iter()
            .find(|c| c.iter().all(|p| p.0 > 0) || c.iter().all(|p| p.1 > 0));
        match movable {
            Some(comp) => {
                let (dx, dy) = if comp.iter().all(|p| p.0 > 0) {
                    (-1, 0)
                } else {
                    (0, -1)
                };
                let moved = translate(comp, dx, dy);
                let mut next: Cells = cells.difference(comp).copied().collect();
                // a component is not adjacent to the rest, so a unit move cannot collide
                debug_assert!(moved.iter().all(|c| !next.contains(c)));
                next.extend(moved);
                cells = next;
            }
            None => {
                cells = relocate_component(&cells, &comps).ok_or(ReductionError::CannotConnect)?;
            }
        }
    }
}

/// Adds every lattice point enclosed by the king edges of the set and the
/// two axes.
///
/// The plane is sampled on a doubled grid: even-even nodes are lattice
/// points, odd nodes are edge midpoints and square centres. Cells, edge
/// midpoints of present edges and centres crossed by a present diagonal are
/// walls; a flood fill from beyond the bounding box marks the unbounded
/// face, and every unreached lattice point is enclosed.
pub fn fill_bounded(a: &CellSet) -> Result<CellSet, ReductionError> {
    let cells = quadrant_cells(a)?;
    if cells.is_empty() {
        return Err(ReductionError::Empty);
    }
    if !is_connected(&cells) || !touches_both_axes(&cells) {
        return Err(ReductionError::Precondition(
            "set must be connected and touch both axes",
        ));
    }
    let max_x = cells.iter().map(|c| c.0).max().expect("nonempty");
    let max_y = cells.iter().map(|c| c.1).max().expect("nonempty");
    let w = (2 * max_x + 3) as usize;
    let h = (2 * max_y + 3) as usize;
    let idx = |u: i64, v: i64| v as usize * w + u as usize;
    let mut wall = vec![false; w * h];
    for &(x, y) in &cells {
        wall[idx(2 * x, 2 * y)] = true;
        for (dx, dy) in [(1, 0), (0, 1), (1, 1), (-1, 1)] {
            if cells.contains(&(x + dx, y + dy)) {
                wall[idx(2 * x + dx, 2 * y + dy)] = true;
            }
        }
    }
    let mut outside = vec![false; w * h];
    let start = (w as i64 - 1, h as i64 - 1);
    outside[idx(start.0, start.1)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((u, v)) = queue.pop_front() {
        for (du, dv) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (nu, nv) = (u + du, v + dv);
            if nu < 0 || nv < 0 || nu >= w as i64 || nv >= h as i64 {
                continue;
            }
            let i = idx(nu, nv);
            if !wall[i] && !outside[i] {
                outside[i] = true;
                queue.push_back((nu, nv));
            }
        }
    }
    let mut filled = cells.clone();
    for y in 0..=max_y {
        for x in 0..=max_x {
            if !outside[idx(2 * x, 2 * y)] {
                filled.insert((x, y));
            }
        }
    }
    Ok(to_cellset(&filled))
}

/// Fills 1-gaps (missing cells left of a cell in the same row) lowest row
/// first, then 2-gaps (missing cells below a cell in the same column), and
/// repeats until neither kind remains.
pub fn fill_gaps(a: &CellSet) -> Result<CellSet, ReductionError> {
    let mut cells = quadrant_cells(a)?;
    if cells.is_empty() {
        return Err(ReductionError::Empty);
    }
    loop {
        let before = cells.len();
        let max_y = cells.iter().map(|c| c.1).max().expect("nonempty");
        for y in 0..=max_y {
            if let Some(right) = cells.iter().filter(|c| c.1 == y).map(|c| c.0).max() {
                cells.extend((0..right).map(|x| (x, y)));
            }
        }
        let max_x = cells.iter().map(|c| c.0).max().expect("nonempty");
        for x in 0..=max_x {
            if let Some(top) = cells.iter().filter(|c| c.0 == x).map(|c| c.1).max() {
                cells.extend((0..top).map(|y| (x, y)));
            }
        }
        if cells.len() == before {
            return Ok(to_cellset(&cells));
        }
    }
}

/// Column heights of a Young-diagram-shaped set (columns start at the axis,
/// have no holes and never grow to the right); `None` otherwise.
pub fn young_heights(a: &CellSet) -> Option<Vec<u64>> {
    if !a.spec().is_king_quadrant() || a.is_empty() {
        return None;
    }
    let cells: Cells = a.iter().map(Point::as_xy).collect();
    let max_x = cells.iter().map(|c| c.0).max()?;
    let mut heights = Vec::with_capacity(max_x as usize + 1);
    for x in 0..=max_x {
        let h = cells.iter().filter(|c| c.0 == x).count() as u64;
        if h == 0 || (0..h as i64).any(|y| !cells.contains(&(x, y))) {
            return None;
        }
        if heights.last().is_some_and(|&prev| prev < h) {
            return None;
        }
        heights.push(h);
    }
    Some(heights)
}

fn heights_of(a: &CellSet) -> Result<Vec<u64>, ReductionError> {
    if !a.spec().is_king_quadrant() {
        return Err(ReductionError::NotKingQuadrant);
    }
    young_heights(a).ok_or(ReductionError::Precondition(
        "set must be bounded, gap-free and have non-increasing columns",
    ))
}

/// Moves cells from the last column onto the first column that sits two or
/// more below its left neighbour, until at most one such drop is left and it
/// is the final one.
pub fn rebalance_heights(h: &mut Vec<u64>) {
    loop {
        let k = h.len();
        let Some(t0) = (0..k.saturating_sub(2)).find(|&t| h[t] - h[t + 1] >= 2) else {
            return;
        };
        while h[t0] - h[t0 + 1] >= 2 && t0 + 1 < h.len() - 1 {
            let last = h.len() - 1;
            h[last] -= 1;
            h[t0 + 1] += 1;
            if h[last] == 0 {
                h.pop();
            }
        }
    }
}

/// Brings rebalanced heights into the form "constant, then strictly
/// decreasing". Only the profiles `[1]`, `[2]`, `[1, 1]` and `[2, 2]` stay
/// constant; every other constant profile has a strictly cheaper neighbour.
pub fn normalize_heights(h: &mut Vec<u64>) {
    let n: u64 = h.iter().sum();
    loop {
        rebalance_heights(h);
        let k = h.len();
        match (0..k - 1).find(|&i| h[i] > h[i + 1]) {
            Some(i) => match (i + 1..k - 1).find(|&m| h[m] == h[m + 1]) {
                Some(m) => {
                    let last = k - 1;
                    h[last] -= 1;
                    h[m] += 1;
                    if h[last] == 0 {
                        h.pop();
                    }
                }
                None => return,
            },
            None => {
                if n <= 2 || (k == 2 && h[0] == 2) {
                    return;
                }
                match k {
                    1 => {
                        h[0] -= 1;
                        h.push(1);
                    }
                    2 => {
                        h[1] -= 1;
                        h.push(1);
                    }
                    _ => {
                        h[k - 1] -= 1;
                        h[0] += 1;
                        if h[k - 1] == 0 {
                            h.pop();
                        }
                    }
                }
            }
        }
    }
}

/// Row lengths of a Young diagram, i.e. its reflection in `y = x`.
pub fn conjugate(h: &[u64]) -> Vec<u64> {
    let top = h.first().copied().unwrap_or(0);
    (0..top)
        .map(|y| h.iter().filter(|&&v| v > y).count() as u64)
        .collect()
}

fn constant_prefix(h: &[u64]) -> u64 {
    h.iter().take_while(|&&v| v == h[0]).count() as u64
}

/// Reflects in `y = x` and renormalizes until the first column is at least
/// as tall as the constant prefix is long.
pub fn width_dominant_heights(h: &mut Vec<u64>) -> Result<(), ReductionError> {
    for _ in 0..4 {
        if h[0] >= constant_prefix(h) {
            return Ok(());
        }
        *h = conjugate(h);
        normalize_heights(h);
    }
    if h[0] >= constant_prefix(h) {
        Ok(())
    } else {
        Err(ReductionError::NotNormalized)
    }
}

pub fn rebalance_columns(a: &CellSet) -> Result<CellSet, ReductionError> {
    let mut h = heights_of(a)?;
    rebalance_heights(&mut h);
    Ok(from_heights(&h))
}

pub fn normalize_shape(a: &CellSet) -> Result<CellSet, ReductionError> {
    let mut h = heights_of(a)?;
    normalize_heights(&mut h);
    Ok(from_heights(&h))
}

pub fn ensure_width_dominance(a: &CellSet) -> Result<CellSet, ReductionError> {
    let mut h = heights_of(a)?;
    width_dominant_heights(&mut h)?;
    Ok(from_heights(&h))
}

/// Reads staircase parameters off a normalized column profile.
pub fn params_from_heights(h: &[u64]) -> Result<StaircaseParams, ReductionError> {
    let k = h.len() as u64;
    Ok(StaircaseParams::new(
        h[0],
        constant_prefix(h),
        k,
        h[h.len() - 1],
    )?)
}

// ---------------------------------------------------------------------------
// Traces and the full pipeline
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub n_before: u64,
    pub b_before: u64,
    pub n_after: u64,
    pub b_after: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformTrace {
    pub steps: Vec<TraceStep>,
}

impl TransformTrace {
    /// Boundary never increased.
    pub fn is_monotone(&self) -> bool {
        self.steps.iter().all(|s| s.b_after <= s.b_before)
    }

    /// No step changed anything.
    pub fn is_trivial(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.n_before == s.n_after && s.b_before == s.b_after)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("plain data serializes"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Normalized {
    pub params: StaircaseParams,
    pub trace: TransformTrace,
    pub set: CellSet,
}

type Step = fn(&CellSet) -> Result<CellSet, ReductionError>;

fn run_step(
    name: &'static str,
    f: Step,
    fills: bool,
    set: CellSet,
    trace: &mut TransformTrace,
) -> Result<CellSet, ReductionError> {
    let n_before = set.len() as u64;
    let b_before = edge_boundary(&set);
    let out = f(&set)?;
    let n_after = out.len() as u64;
    let b_after = edge_boundary(&out);
    trace.steps.push(TraceStep {
        step: name.to_string(),
        n_before,
        b_before,
        n_after,
        b_after,
    });
    if b_after > b_before {
        return Err(ReductionError::BoundaryIncreased {
            step: name,
            before: b_before,
            after: b_after,
        });
    }
    if (fills && n_after < n_before) || (!fills && n_after != n_before) {
        return Err(ReductionError::VolumeChanged {
            step: name,
            before: n_before,
            after: n_after,
        });
    }
    Ok(out)
}

/// Runs the whole pipeline and reads off the staircase parameters.
pub fn normalize(a: &CellSet) -> Result<Normalized, ReductionError> {
    if !a.spec().is_king_quadrant() {
        return Err(ReductionError::NotKingQuadrant);
    }
    if a.is_empty() {
        return Err(ReductionError::Empty);
    }
    let mut trace = TransformTrace::default();
    let mut set = a.clone();
    set = run_step(
        "connect_and_anchor",
        connect_and_anchor,
        false,
        set,
        &mut trace,
    )?;
    set = run_step("fill_bounded", fill_bounded, true, set, &mut trace)?;
    set = run_step("fill_gaps", fill_gaps, true, set, &mut trace)?;
    // later steps may undo an earlier postcondition; iterate to a joint fixed point
    loop {
        let start = set.clone();
        set = run_step(
            "rebalance_columns",
            rebalance_columns,
            false,
            set,
            &mut trace,
        )?;
        set = run_step("normalize_shape", normalize_shape, false, set, &mut trace)?;
        set = run_step(
            "ensure_width_dominance",
            ensure_width_dominance,
            false,
            set,
            &mut trace,
        )?;
        if set == start {
            break;
        }
    }
    let h = heights_of(&set)?;
    let params = params_from_heights(&h)?;
    Ok(Normalized { params, trace, set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{NormExponent, Rational};

    fn q(cells: &[(i64, i64)]) -> CellSet {
        CellSet::quadrant(cells.iter().copied()).unwrap()
    }

    fn cols(h: &[u64]) -> CellSet {
        from_heights(h)
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_point(&q(&[(0, 0)])).unwrap(), Point::xy(0, 0));
        let plane = CellSet::new(
            GridSpec::l1_plane(),
            [Point::xy(0, 0), Point::xy(1, 0), Point::xy(0, 1)],
        )
        .unwrap();
        assert_eq!(extremal_point(&plane).unwrap(), Point::xy(0, 1));
        assert_eq!(extremal_point(&cols(&[2, 2])).unwrap(), Point::xy(1, 1));
    }

    #[test]
    fn reflection_singleton_passes_vacuously() {
        let r = check_reflection_free(&q(&[(0, 0)])).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 0);
        assert_eq!(r.mode, ReflectionMode::AxisFold);
    }

    #[test]
    fn reflection_on_block() {
        let r = check_reflection_free(&cols(&[3, 3, 2])).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checked > 0);
    }

    #[test]
    fn reflection_rejects_uncovered_regime() {
        let wide = GridSpec::new(0, 2, NormExponent::Infinity, Rational::from_integer(2)).unwrap();
        let a = CellSet::new(wide, [Point::xy(0, 0)]).unwrap();
        assert_eq!(
            check_reflection_free(&a),
            Err(ReductionError::UncoveredRegime)
        );
        let lopsided = GridSpec::with_stencil(2, 0, vec![vec![1, 0]]).unwrap();
        let a = CellSet::new(lopsided, [Point::xy(0, 0)]).unwrap();
        assert_eq!(
            check_reflection_free(&a),
            Err(ReductionError::UncoveredRegime)
        );
    }

    #[test]
    fn removable_examples() {
        let r = removable_point(&cols(&[2, 2])).unwrap();
        assert_eq!(r.point, Point::xy(1, 1));
        assert_eq!((r.boundary_before, r.boundary_after), (9, 7));

        let r = removable_point(&q(&[(0, 0), (1, 0)])).unwrap();
        assert_eq!(r.point, Point::xy(1, 0));
        assert_eq!((r.boundary_before, r.boundary_after), (6, 3));

        let plane = CellSet::new(GridSpec::l1_plane(), [Point::xy(0, 0), Point::xy(1, 0)]).unwrap();
        let r = removable_point(&plane).unwrap();
        assert_eq!((r.boundary_before, r.boundary_after), (6, 4));

        assert!(matches!(
            removable_point(&q(&[(0, 0)])),
            Err(ReductionError::Precondition(_))
        ));
    }

    #[test]
    fn connect_examples() {
        let a = cols(&[3, 2, 1]);
        assert_eq!(connect_and_anchor(&a).unwrap(), a);
        assert_eq!(connect_and_anchor(&q(&[(5, 5)])).unwrap(), q(&[(0, 0)]));
        let two = q(&[(0, 0), (3, 3)]);
        assert_eq!(edge_boundary(&two), 11);
        let joined = connect_and_anchor(&two).unwrap();
        assert_eq!(joined.len(), 2);
        assert!(is_connected(&quadrant_cells(&joined).unwrap()));
        assert!(edge_boundary(&joined) <= 11);
    }

    #[test]
    fn connect_handles_enclosed_components() {
        // a corner cell inside an L that touches both axes
        let a = q(&[(0, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2)]);
        let b = connect_and_anchor(&a).unwrap();
        assert_eq!(b.len(), 6);
        assert!(is_connected(&quadrant_cells(&b).unwrap()));
        assert!(edge_boundary(&b) <= edge_boundary(&a));
    }

    #[test]
    fn fill_bounded_examples() {
        let block = cols(&[2, 2]);
        assert_eq!(fill_bounded(&block).unwrap(), block);
        let stair = cols(&[4, 3, 2, 1]);
        assert_eq!(fill_bounded(&stair).unwrap(), stair);

        // diagonal pair encloses the corner
        let a = q(&[(1, 0), (0, 1)]);
        let f = fill_bounded(&a).unwrap();
        assert_eq!(f, q(&[(0, 0), (1, 0), (0, 1)]));
        assert_eq!((edge_boundary(&a), edge_boundary(&f)), (8, 7));

        // four cells enclosing two axis points
        let a = q(&[(0, 0), (2, 0), (1, 1), (0, 2)]);
        let f = fill_bounded(&a).unwrap();
        assert_eq!(f, cols(&[3, 2, 1]));
        assert!(edge_boundary(&f) < edge_boundary(&a));

        // open U: nothing enclosed
        let u = q(&[(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (2, 1), (2, 2)]);
        assert_eq!(fill_bounded(&u).unwrap(), u);

        assert!(fill_bounded(&q(&[(3, 3)])).is_err());
    }

    #[test]
    fn fill_gaps_examples() {
        let a = cols(&[3, 2, 2]);
        assert_eq!(fill_gaps(&a).unwrap(), a);
        let holey = q(&[(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (2, 1), (2, 2)]);
        let f = fill_gaps(&holey).unwrap();
        assert_eq!(f, cols(&[3, 3, 3]));
        assert!(edge_boundary(&f) < edge_boundary(&holey));
        let column = cols(&[5]);
        assert_eq!(fill_gaps(&column).unwrap(), column);
    }

    #[test]
    fn rebalance_examples() {
        let a = cols(&[3, 2, 1]);
        assert_eq!(rebalance_columns(&a).unwrap(), a);
        let b = cols(&[2, 2]);
        assert_eq!(rebalance_columns(&b).unwrap(), b);
        let c = cols(&[5, 2, 2, 2]);
        let r = rebalance_columns(&c).unwrap();
        let h = young_heights(&r).unwrap();
        let big: Vec<usize> = (0..h.len() - 1).filter(|&t| h[t] - h[t + 1] >= 2).collect();
        assert!(big.is_empty() || big == vec![h.len() - 2], "{h:?}");
        assert!(edge_boundary(&r) <= edge_boundary(&c));
        assert_eq!(r.len(), 11);
    }

    #[test]
    fn normalize_shape_examples() {
        let a = cols(&[3, 3, 3, 2]);
        assert_eq!(normalize_shape(&a).unwrap(), a);
        let four = normalize_shape(&cols(&[1, 1, 1, 1])).unwrap();
        assert_eq!(young_heights(&four).unwrap(), vec![2, 2]);
        let b = cols(&[4, 4, 2, 2]);
        let r = normalize_shape(&b).unwrap();
        assert!(edge_boundary(&r) <= edge_boundary(&b));
        let h = young_heights(&r).unwrap();
        let c = constant_prefix(&h) as usize;
        assert!(c < h.len());
        assert!(h[c - 1..].windows(2).all(|w| w[0] > w[1]), "{h:?}");
    }

    #[test]
    fn width_dominance_examples() {
        let row = ensure_width_dominance(&cols(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(
            edge_boundary(&row),
            edge_boundary(&cols(&[1, 1, 1, 1, 1])).min(edge_boundary(&row))
        );
        let h = young_heights(&row).unwrap();
        assert!(h[0] >= constant_prefix(&h));
        let a = cols(&[3, 3, 2]);
        assert_eq!(ensure_width_dominance(&a).unwrap(), a);
        let b = cols(&[2, 2, 2]);
        let r = ensure_width_dominance(&b).unwrap();
        assert!(edge_boundary(&r) <= edge_boundary(&b));
    }

    #[test]
    fn conjugate_is_involution() {
        for h in [vec![3, 3, 2], vec![5, 1], vec![1, 1, 1], vec![4, 3, 3, 1]] {
            assert_eq!(conjugate(&conjugate(&h)), h);
        }
    }

    #[test]
    fn normalize_fixed_points() {
        let a = StaircaseParams::new(3, 3, 4, 2).unwrap();
        let out = normalize(&a.materialize()).unwrap();
        assert_eq!(out.params, a);
        assert!(out.trace.is_trivial());
        let one = normalize(&q(&[(0, 0)])).unwrap();
        assert_eq!(one.params, StaircaseParams::new(1, 1, 1, 1).unwrap());
    }

    #[test]
    fn normalize_scattered() {
        let a = q(&[
            (0, 4),
            (3, 3),
            (6, 1),
            (2, 7),
            (5, 5),
            (1, 1),
            (8, 0),
            (4, 2),
            (7, 6),
            (0, 9),
            (9, 9),
        ]);
        let before = edge_boundary(&a);
        let out = normalize(&a).unwrap();
        assert!(out.trace.is_monotone());
        assert!(out.params.perimeter() <= before);
        assert_eq!(edge_boundary(&out.set), out.params.perimeter());
    }

    #[test]
    fn trace_serializes_as_json_lines() {
        let out = normalize(&q(&[(0, 0), (2, 2)])).unwrap();
        let text = out.trace.to_json_lines();
        assert_eq!(text.lines().count(), out.trace.steps.len());
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["step"], "connect_and_anchor");
        for key in ["n_before", "b_before", "n_after", "b_after"] {
            assert!(first[key].is_u64(), "{key}");
        }
    }
}
