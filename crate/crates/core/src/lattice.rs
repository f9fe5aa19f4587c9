//! Lattice graphs on `Z^k x N^d` whose adjacency is given by an `l_p` ball.
//!
//! Vertices are integer points whose last `d` coordinates are nonnegative. Two
//! vertices are adjacent when `0 < ||x - y||_p <= radius`. The offset stencil
//! of a [`GridSpec`] is computed once at construction and shared read-only.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{resolve, Interval, IntervalError, DEFAULT_CAP_BITS};

pub type Rational = Ratio<i64>;

/// Upper limit on the number of candidate offsets examined for a stencil.
const MAX_STENCIL_CANDIDATES: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one dimension")]
    NoDimensions,
    #[error("norm exponent must be at least 1, got {0}")]
    ExponentBelowOne(Rational),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(Rational),
    #[error("stencil too large: {0} candidate offsets")]
    StencilTooLarge(u64),
    #[error("stencil offset {0:?} has the wrong dimension")]
    StencilDimension(Vec<i64>),
    #[error(
        "membership of offset {offset:?} in the l_p ball is undecidable at available precision"
    )]
    UndecidableOffset { offset: Vec<i64> },
    #[error("point {point:?} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        point: Vec<i64>,
        got: usize,
        expected: usize,
    },
    #[error("point {0:?} has a negative half-space coordinate")]
    OutsideGraph(Vec<i64>),
    #[error("coordinate overflow")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormExponent {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExponent::Finite(p) => write!(f, "{p}"),
            NormExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// How the neighbourhood stencil is defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// `{o != 0 : ||o||_p <= radius}`.
    Norm { p: NormExponent, radius: Rational },
    /// An explicit list of offsets. Used to model graphs that need not be
    /// locally symmetric; boundaries treat `x ~ x + o` as undirected.
    Custom(Vec<Vec<i64>>),
}

/// A lattice graph on `Z^free_dims x N^half_dims`.
#[derive(Clone)]
pub struct GridSpec {
    free_dims: usize,
    half_dims: usize,
    adjacency: Adjacency,
    /// Declared offsets (norm ball or custom list), sorted colexicographically.
    stencil: Arc<[Vec<i64>]>,
    /// Closure of `stencil` under negation; this is what adjacency uses.
    symmetric: Arc<[Vec<i64>]>,
}

impl fmt::Debug for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSpec")
            .field("free_dims", &self.free_dims)
            .field("half_dims", &self.half_dims)
            .field("adjacency", &self.adjacency)
            .finish()
    }
}

impl PartialEq for GridSpec {
    fn eq(&self, other: &Self) -> bool {
        self.free_dims == other.free_dims
            && self.half_dims == other.half_dims
            && self.adjacency == other.adjacency
    }
}

impl Eq for GridSpec {}

impl GridSpec {
    pub fn new(
        free_dims: usize,
        half_dims: usize,
        p: NormExponent,
        radius: Rational,
    ) -> Result<Self, LatticeError> {
        let dim = free_dims + half_dims;
        if dim == 0 {
            return Err(LatticeError::NoDimensions);
        }
        if let NormExponent::Finite(p) = p {
            if p < Rational::one() {
                return Err(LatticeError::ExponentBelowOne(p));
            }
        }
        if radius <= Rational::zero() {
            return Err(LatticeError::NonPositiveRadius(radius));
        }
        let reach = radius.floor().to_integer();
        let side = (2 * reach + 1) as u64;
        let candidates = side
            .checked_pow(dim as u32)
            .ok_or(LatticeError::StencilTooLarge(u64::MAX))?;
        if candidates > MAX_STENCIL_CANDIDATES {
            return Err(LatticeError::StencilTooLarge(candidates));
        }
        let mut offsets = Vec::new();
        let mut o = vec![-reach; dim];
        loop {
            if o.iter().any(|&v| v != 0) && within_ball(&o, p, radius)? {
                offsets.push(o.clone());
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == dim {
                    return Ok(Self::from_parts(
                        free_dims,
                        half_dims,
                        Adjacency::Norm { p, radius },
                        offsets,
                    ));
                }
                if o[i] < reach {
                    o[i] += 1;
                    break;
                }
                o[i] = -reach;
                i += 1;
            }
        }
    }

    /// A graph with an explicit offset list.
    pub fn with_stencil(
        free_dims: usize,
        half_dims: usize,
        offsets: Vec<Vec<i64>>,
    ) -> Result<Self, LatticeError> {
        let dim = free_dims + half_dims;
        if dim == 0 {
            return Err(LatticeError::NoDimensions);
        }
        let mut clean = Vec::new();
        for o in offsets {
            if o.len() != dim {
                return Err(LatticeError::StencilDimension(o));
            }
            if o.iter().any(|&v| v != 0) && !clean.contains(&o) {
                clean.push(o);
            }
        }
        let declared = clean.clone();
        Ok(Self::from_parts(
            free_dims,
            half_dims,
            Adjacency::Custom(declared),
            clean,
        ))
    }

    fn from_parts(
        free_dims: usize,
        half_dims: usize,
        adjacency: Adjacency,
        mut offsets: Vec<Vec<i64>>,
    ) -> Self {
        offsets.sort_by(|a, b| colex(a, b));
        let mut sym: BTreeSet<Point> = offsets.iter().cloned().map(Point).collect();
        for o in &offsets {
            sym.insert(Point(o.iter().map(|v| -v).collect()));
        }
        GridSpec {
            free_dims,
            half_dims,
            adjacency,
            stencil: offsets.into(),
            symmetric: sym.into_iter().map(|p| p.0).collect::<Vec<_>>().into(),
        }
    }

    /// `N^2` with Chebyshev adjacency at radius 1: the king-graph quadrant.
    pub fn king_quadrant() -> Self {
        Self::new(0, 2, NormExponent::Infinity, Rational::one()).expect("valid spec")
    }

    /// `Z^2` with the usual grid adjacency.
    pub fn l1_plane() -> Self {
        Self::new(2, 0, NormExponent::Finite(Rational::one()), Rational::one()).expect("valid spec")
    }

    pub fn free_dims(&self) -> usize {
        self.free_dims
    }

    pub fn half_dims(&self) -> usize {
        self.half_dims
    }

    pub fn dim(&self) -> usize {
        self.free_dims + self.half_dims
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    /// Norm exponent, or `None` for custom stencils.
    pub fn norm(&self) -> Option<NormExponent> {
        match &self.adjacency {
            Adjacency::Norm { p, .. } => Some(*p),
            Adjacency::Custom(_) => None,
        }
    }

    /// Ball radius, or `None` for custom stencils.
    pub fn radius(&self) -> Option<Rational> {
        match &self.adjacency {
            Adjacency::Norm { radius, .. } => Some(*radius),
            Adjacency::Custom(_) => None,
        }
    }

    /// The declared offset set.
    pub fn stencil(&self) -> &[Vec<i64>] {
        &self.stencil
    }

    /// Offsets used for adjacency (declared set closed under negation).
    pub fn adjacency_offsets(&self) -> &[Vec<i64>] {
        &self.symmetric
    }

    pub fn is_king_quadrant(&self) -> bool {
        *self == Self::king_quadrant()
    }

    pub fn check_point(&self, x: &Point) -> Result<(), LatticeError> {
        if x.dim() != self.dim() {
            return Err(LatticeError::DimensionMismatch {
                point: x.0.clone(),
                got: x.dim(),
                expected: self.dim(),
            });
        }
        if !self.contains(x) {
            return Err(LatticeError::OutsideGraph(x.0.clone()));
        }
        Ok(())
    }

    /// Whether `x` is a vertex of the graph (dimension assumed to match).
    pub fn contains(&self, x: &Point) -> bool {
        x.0[self.free_dims..].iter().all(|&v| v >= 0)
    }
}

/// Decides `||o||_p <= radius` exactly.
fn within_ball(o: &[i64], p: NormExponent, radius: Rational) -> Result<bool, LatticeError> {
    let rn = BigInt::from(*radius.numer());
    let rd = BigInt::from(*radius.denom());
    match p {
        NormExponent::Infinity => Ok(o.iter().all(|&v| BigInt::from(v.abs()) * &rd <= rn)),
        NormExponent::Finite(p) if p.is_integer() => {
            let e = p.to_integer() as usize;
            let lhs: BigInt = o
                .iter()
                .map(|&v| num_traits::pow(BigInt::from(v.abs()) * &rd, e))
                .sum();
            Ok(lhs <= num_traits::pow(rn, e))
        }
        NormExponent::Finite(p) => {
            let nonzero: Vec<i64> = o.iter().copied().filter(|&v| v != 0).collect();
            if nonzero.len() <= 1 {
                let v = nonzero.first().copied().unwrap_or(0).abs();
                return Ok(BigInt::from(v) * &rd <= rn);
            }
            // sum |o_i|^(a/b) <= (rn/rd)^(a/b)
            let a = *p.numer() as usize;
            let b = *p.denom() as u32;
            let terms: Vec<BigRational> = nonzero
                .iter()
                .map(|&v| BigRational::from_integer(num_traits::pow(BigInt::from(v.abs()), a)))
                .collect();
            let rhs = BigRational::new(num_traits::pow(rn, a), num_traits::pow(rd, a));
            let eval = |bits: u32| -> Result<Interval, IntervalError> {
                let mut acc = Interval::from_int(0);
                for t in &terms {
                    acc = &acc + &Interval::point(t.clone()).root(b, bits)?;
                }
                let r = Interval::point(rhs.clone()).root(b, bits)?;
                Ok(&acc - &r)
            };
            // An exactly rational difference settles equality; otherwise refine.
            let exact =
                eval(64).map_err(|_| LatticeError::UndecidableOffset { offset: o.to_vec() })?;
            if exact.is_point() {
                return Ok(!exact.lo().is_positive());
            }
            resolve(64, DEFAULT_CAP_BITS, eval, |d| d.le(&BigRational::zero()))
                .map_err(|_| LatticeError::UndecidableOffset { offset: o.to_vec() })
        }
    }
}

/// Colexicographic comparison of coordinate slices: the last coordinate is
/// most significant.
pub fn colex(a: &[i64], b: &[i64]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// An integer lattice point. Ordering is colexicographic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Point(coords.into())
    }

    pub fn xy(x: i64, y: i64) -> Self {
        Point(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `(x, y)` for a two-dimensional point.
    pub fn as_xy(&self) -> (i64, i64) {
        debug_assert_eq!(self.0.len(), 2);
        (self.0[0], self.0[1])
    }

    fn offset(&self, o: &[i64]) -> Option<Point> {
        self.0
            .iter()
            .zip(o)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Point)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        colex(&self.0, &other.0)
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of vertices of a lattice graph.
#[derive(Clone, PartialEq, Eq)]
pub struct CellSet {
    spec: GridSpec,
    cells: BTreeSet<Point>,
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cells.iter()).finish()
    }
}

impl CellSet {
    pub fn empty(spec: GridSpec) -> Self {
        CellSet {
            spec,
            cells: BTreeSet::new(),
        }
    }

    /// Builds a set, validating every point; duplicates collapse.
    pub fn new(
        spec: GridSpec,
        cells: impl IntoIterator<Item = Point>,
    ) -> Result<Self, LatticeError> {
        let mut set = CellSet::empty(spec);
        for c in cells {
            set.insert(c)?;
        }
        Ok(set)
    }

    /// Points of the king-graph quadrant from `(x, y)` pairs.
    pub fn quadrant(cells: impl IntoIterator<Item = (i64, i64)>) -> Result<Self, LatticeError> {
        Self::new(
            GridSpec::king_quadrant(),
            cells.into_iter().map(|(x, y)| Point::xy(x, y)),
        )
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.cells.contains(p)
    }

    /// Cells in colexicographic order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Point> + ExactSizeIterator {
        self.cells.iter()
    }

    pub fn insert(&mut self, p: Point) -> Result<bool, LatticeError> {
        self.spec.check_point(&p)?;
        Ok(self.cells.insert(p))
    }

    pub fn remove(&mut self, p: &Point) -> bool {
        self.cells.remove(p)
    }

    /// Two-dimensional cells as `(x, y)` pairs in colex order.
    pub fn xy_cells(&self) -> Vec<(i64, i64)> {
        self.cells.iter().map(Point::as_xy).collect()
    }

    /// The colexicographically greatest cell.
    pub fn colex_max(&self) -> Option<&Point> {
        self.cells.iter().next_back()
    }
}

impl<'a> IntoIterator for &'a CellSet {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}

/// In-graph points `y` with `0 < ||x - y||_p <= radius`, in colex order.
pub fn neighbors(spec: &GridSpec, x: &Point) -> Result<Vec<Point>, LatticeError> {
    spec.check_point(x)?;
    let mut out = Vec::with_capacity(spec.adjacency_offsets().len());
    for o in spec.adjacency_offsets() {
        let y = x.offset(o).ok_or(LatticeError::Overflow)?;
        if spec.contains(&y) {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// Number of in-graph neighbours; cheaper than materializing them.
pub fn degree(spec: &GridSpec, x: &Point) -> usize {
    spec.adjacency_offsets()
        .iter()
        .filter_map(|o| x.offset(o))
        .filter(|y| spec.contains(y))
        .count()
}

/// Edges with exactly one endpoint in `a`, as `(inside, outside)` pairs.
pub fn boundary_edges(a: &CellSet) -> Vec<(Point, Point)> {
    let spec = a.spec();
    let mut out = Vec::new();
    for x in a {
        for o in spec.adjacency_offsets() {
            if let Some(y) = x.offset(o) {
                if spec.contains(&y) && !a.contains(&y) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

/// Size of the edge boundary of `a`.
pub fn edge_boundary(a: &CellSet) -> u64 {
    let spec = a.spec();
    let mut count = 0u64;
    for x in a {
        for o in spec.adjacency_offsets() {
            if let Some(y) = x.offset(o) {
                if spec.contains(&y) && !a.contains(&y) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Size of the vertex boundary of `a`.
pub fn vertex_boundary(a: &CellSet) -> u64 {
    let spec = a.spec();
    let mut seen: HashSet<Point> = HashSet::new();
    for x in a {
        for o in spec.adjacency_offsets() {
            if let Some(y) = x.offset(o) {
                if spec.contains(&y) && !a.contains(&y) {
                    seen.insert(y);
                }
            }
        }
    }
    seen.len() as u64
}

/// Reflection of `y` through `x`: `2x - y`.
pub fn reflect(x: &Point, y: &Point) -> Point {
    assert_eq!(x.dim(), y.dim(), "reflect: dimension mismatch");
    Point(x.0.iter().zip(&y.0).map(|(a, b)| 2 * a - b).collect())
}

/// Reflection of `y` through `b`, followed by folding every negative
/// half-space coordinate back across its axis hyperplane.
pub fn axis_fold(spec: &GridSpec, b: &Point, y: &Point) -> Point {
    let mut z = reflect(b, y);
    for i in spec.free_dims()..spec.dim() {
        if z.0[i] < 0 {
            z.0[i] = -z.0[i];
        }
    }
    z
}

pub fn colex_compare(x: &Point, y: &Point) -> Ordering {
    x.cmp(y)
}

/// `||x||_inf`, the index of the shell containing `x`.
pub fn shell_index(x: &Point) -> u64 {
    x.0.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    /// An offset whose negation is missing from the stencil.
    Violated(Vec<i64>),
}

impl Symmetry {
    pub fn holds(&self) -> bool {
        matches!(self, Symmetry::Symmetric)
    }
}

/// Checks that the declared stencil is centrally symmetric.
pub fn is_locally_symmetric(spec: &GridSpec) -> Symmetry {
    let set: HashSet<&Vec<i64>> = spec.stencil().iter().collect();
    for o in spec.stencil() {
        let neg: Vec<i64> = o.iter().map(|v| -v).collect();
        if !set.contains(&neg) {
            return Symmetry::Violated(o.clone());
        }
    }
    Symmetry::Symmetric
}

/// Whether `radius < 2`, the regime of the half-space reflection argument.
pub fn radius_below_two(spec: &GridSpec) -> bool {
    spec.radius()
        .map(|r| r < Rational::from_integer(2))
        .unwrap_or(false)
}

/// Parses a decimal literal such as `1.5` or `-2e-1` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(Rational::new(q.numer().to_i64()?, q.denom().to_i64()?))
}
