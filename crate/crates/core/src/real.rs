//! Scalar abstraction and the few error-free floating point kernels the rest
//! of the crate leans on.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the whole crate is generic over: `f32`, `f64`, or
/// [`Quad`](crate::Quad) with the `quad` feature.
///
/// The implementation assumes IEEE binary semantics and a correctly rounded
/// `mul_add`; the exact product comparisons in [`cmp_products`] depend on it.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Literals used by this crate are all exactly
    /// representable or meant as the nearest value in `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_index(i: i64) -> Self {
        Self::from_i64(i).expect("index representable")
    }

    /// Lossy conversion for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Low part of pi: `PI() + pi_lo()` approximates pi to twice the working
    /// precision. Uses `sin(fl(pi)) = sin(pi - fl(pi))`, which libm evaluates
    /// to full relative accuracy.
    #[inline]
    fn pi_lo() -> Self {
        Self::PI().sin()
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// `a + b = s + err` exactly.
#[inline]
pub fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// `a * b = p + err` exactly (barring overflow/underflow).
#[inline]
pub fn two_product<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

/// Sign of the exact sum of `terms`, via a nonoverlapping expansion.
pub fn exact_sum_sign<T: Real>(terms: &[T]) -> Ordering {
    let mut expansion: Vec<T> = Vec::with_capacity(terms.len() * 2);
    for &t in terms {
        let mut q = t;
        let mut next = Vec::with_capacity(expansion.len() + 1);
        for &e in &expansion {
            let (s, err) = two_sum(q, e);
            if err != T::zero() {
                next.push(err);
            }
            q = s;
        }
        next.push(q);
        expansion = next;
    }
    expansion
        .iter()
        .rev()
        .find(|c| **c != T::zero())
        .map_or(Ordering::Equal, |c| {
            if *c > T::zero() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
}

/// Exact comparison of `a*b` against `c*d`.
pub fn cmp_products<T: Real>(a: T, b: T, c: T, d: T) -> Ordering {
    let (p1, e1) = two_product(a, b);
    let (p2, e2) = two_product(c, d);
    exact_sum_sign(&[p1, e1, -p2, -e2])
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DoubleWord<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> DoubleWord<T> {
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn pi() -> Self {
        Self::new(T::PI(), T::pi_lo())
    }

    pub fn mul_scalar(self, b: T) -> Self {
        let (p, e) = two_product(self.hi, b);
        Self::new(p, e + self.lo * b)
    }

    pub fn div(self, den: Self) -> Self {
        let q1 = self.hi / den.hi;
        // remainder self - q1*den, leading part exact via fma
        let r = (-q1).mul_add(den.hi, self.hi) + self.lo - q1 * den.lo;
        let q2 = r / den.hi;
        Self::new(q1, q2)
    }

    pub fn sqrt(self) -> T {
        let s = self.hi.sqrt();
        if s == T::zero() {
            return s;
        }
        let r = (-s).mul_add(s, self.hi) + self.lo;
        s + r / (s + s)
    }

    /// Natural log, first-order corrected for the low word.
    pub fn ln(self) -> Self {
        let l = self.hi.ln();
        Self::new(l, self.lo / self.hi)
    }
}

/// Neumaier's compensated accumulator.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}
