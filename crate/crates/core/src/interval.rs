//! Closed intervals with exact rational endpoints and outward dyadic rounding.
//!
//! Sums, differences and products are exact. Square roots, general roots and
//! reciprocals are rounded outward onto the grid `2^-prec`, so every interval
//! produced here encloses the true real value. [`resolve`] re-evaluates an
//! expression at doubling precision until a caller-supplied decision (a floor,
//! a ceiling, a comparison) becomes unambiguous.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default starting precision for adaptive evaluation.
pub const DEFAULT_START_BITS: u32 = 64;
/// Default precision cap for adaptive evaluation.
pub const DEFAULT_CAP_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntervalError {
    #[error("root of an interval that is not nonnegative (lower end {lo})")]
    NegativeRoot { lo: f64 },
    #[error("reciprocal of an interval containing zero")]
    DivisionByZero,
    #[error("decision still ambiguous at {bits} bits")]
    Ambiguous { bits: u32 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo_f64(), self.hi_f64())
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-prec` that is `<= q`.
fn floor_dyadic(q: &BigRational, prec: u32) -> BigRational {
    let scale = pow2(prec);
    let scaled = (q * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

/// Smallest multiple of `2^-prec` that is `>= q`.
fn ceil_dyadic(q: &BigRational, prec: u32) -> BigRational {
    let scale = pow2(prec);
    let scaled = (q * BigRational::from_integer(scale.clone())).ceil();
    BigRational::new(scaled.to_integer(), scale)
}

/// Exact `k`-th root of a nonnegative rational, if it is rational.
fn exact_root(q: &BigRational, k: u32) -> Option<BigRational> {
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    if num_traits::pow(n.clone(), k as usize) == *q.numer()
        && num_traits::pow(d.clone(), k as usize) == *q.denom()
    {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Lower bound for `q^(1/k)` on the grid `2^-prec`.
fn root_down(q: &BigRational, k: u32, prec: u32) -> BigRational {
    let scaled = (q * BigRational::from_integer(pow2(prec * k)))
        .floor()
        .to_integer();
    BigRational::new(scaled.nth_root(k), pow2(prec))
}

/// Upper bound for `q^(1/k)` on the grid `2^-prec`.
fn root_up(q: &BigRational, k: u32, prec: u32) -> BigRational {
    let scaled = (q * BigRational::from_integer(pow2(prec * k)))
        .ceil()
        .to_integer();
    let mut r = scaled.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) < scaled {
        r += 1;
    }
    BigRational::new(r, pow2(prec))
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::point(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Builds `[lo, hi]`; the endpoints are swapped if given out of order.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        ratio_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        ratio_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        ratio_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Rounds both ends outward onto the grid `2^-prec`.
    pub fn round(&self, prec: u32) -> Self {
        Interval {
            lo: floor_dyadic(&self.lo, prec),
            hi: ceil_dyadic(&self.hi, prec),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Interval::new(&self.lo * q, &self.hi * q)
    }

    pub fn recip(&self, prec: u32) -> Result<Self, IntervalError> {
        if self.lo <= BigRational::zero() && self.hi >= BigRational::zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let a = self.hi.recip();
        let b = self.lo.recip();
        if self.is_point() {
            return Ok(Interval::point(a));
        }
        Ok(Interval::new(a, b).round(prec))
    }

    /// Outward-rounded square root. Fails if the lower end is negative.
    pub fn sqrt(&self, prec: u32) -> Result<Self, IntervalError> {
        self.root(2, prec)
    }

    /// Outward-rounded `k`-th root of a nonnegative interval.
    pub fn root(&self, k: u32, prec: u32) -> Result<Self, IntervalError> {
        assert!(k >= 1, "root degree must be positive");
        if self.lo.is_negative() {
            return Err(IntervalError::NegativeRoot { lo: self.lo_f64() });
        }
        if k == 1 {
            return Ok(self.clone());
        }
        if self.is_point() {
            if let Some(r) = exact_root(&self.lo, k) {
                return Ok(Interval::point(r));
            }
        }
        let lo = match exact_root(&self.lo, k) {
            Some(r) => r,
            None => root_down(&self.lo, k, prec),
        };
        let hi = match exact_root(&self.hi, k) {
            Some(r) => r,
            None => root_up(&self.hi, k, prec),
        };
        Ok(Interval { lo, hi })
    }

    /// Integer power (exact).
    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Interval::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Some(floor)` when every point of the interval has the same floor.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        let b = self.hi.floor().to_integer();
        (a == b).then_some(a)
    }

    /// `Some(ceil)` when every point of the interval has the same ceiling.
    pub fn ceil(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        let b = self.hi.ceil().to_integer();
        (a == b).then_some(a)
    }

    /// `Some(true)` if certainly `<= q`, `Some(false)` if certainly `> q`.
    pub fn le(&self, q: &BigRational) -> Option<bool> {
        if &self.hi <= q {
            Some(true)
        } else if &self.lo > q {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(true)` if certainly `< other` everywhere, `Some(false)` if
    /// certainly `>= other`.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &'a Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &'a Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &'a Interval) -> Interval {
        let p = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = p.iter().min().cloned().expect("four products");
        let hi = p.iter().max().cloned().expect("four products");
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Evaluates `eval` at precisions `start, 2*start, ...` up to `cap` and
/// returns the first decision `decide` can make.
pub fn resolve<T>(
    start: u32,
    cap: u32,
    mut eval: impl FnMut(u32) -> Result<Interval, IntervalError>,
    decide: impl Fn(&Interval) -> Option<T>,
) -> Result<T, IntervalError> {
    let mut bits = start.max(8);
    loop {
        let iv = eval(bits)?;
        if let Some(t) = decide(&iv) {
            return Ok(t);
        }
        if bits >= cap {
            return Err(IntervalError::Ambiguous { bits });
        }
        bits = (bits * 2).min(cap);
    }
}

/// Converts a finite `f64` to the exact rational it denotes.
pub fn ratio_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Integer `floor(q)` of a rational.
pub fn floor_int(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Integer `ceil(a/b)` for `b > 0`.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}
