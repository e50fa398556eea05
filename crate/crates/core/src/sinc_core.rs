//! Shifted sinc basis and finite cardinal sums on a uniform mesh.

use crate::error::{domain, Result};
use crate::real::{CompensatedSum, Real};

/// Below this |u| the basis uses its Taylor expansion.
const TAYLOR_CUTOFF: f64 = 1e-9;

/// A point within this many ulps of `u` of a node is treated as that node.
const NODE_SNAP_ULPS: f64 = 8.0;

fn check_mesh<T: Real>(h: T) -> Result<()> {
    if !(h.is_finite() && h > T::zero()) {
        return Err(domain(format!(
            "mesh size must be positive and finite, got {h}"
        )));
    }
    Ok(())
}

/// `(-1)^j` for integral `j`.
#[inline]
fn parity_sign<T: Real>(j: T) -> T {
    let two = T::lit(2.0);
    if (j / two).floor() * two == j {
        T::one()
    } else {
        -T::one()
    }
}

/// `sin(pi v)/(pi v)` for `v = j + r`, `j` integer, `|r| <= 1/2`.
///
/// The sine is taken of the reduced argument so that integer `v` gives an
/// exact zero and large `v` loses no accuracy.
#[inline]
fn sinc_reduced<T: Real>(j: T, r: T) -> T {
    if j == T::zero() {
        if r == T::zero() {
            return T::one();
        }
        if r.abs() < T::lit(TAYLOR_CUTOFF) {
            let pr = T::PI() * r;
            return T::one() - pr * pr / T::lit(6.0);
        }
    }
    let sign = parity_sign(j);
    let v = j + r;
    let s = sign * (T::PI() * r).sin() / (T::PI() * v);
    s.max(-T::one()).min(T::one())
}

/// `S(k,h)(x) = sin(pi(x/h - k)) / (pi(x/h - k))`.
pub fn sinc_basis<T: Real>(k: i64, h: T, x: T) -> Result<T> {
    check_mesh(h)?;
    if !x.is_finite() {
        return Err(domain(format!("evaluation point must be finite, got {x}")));
    }
    let u = x / h - T::from_index(k);
    let j = u.round();
    Ok(sinc_reduced(j, u - j))
}

/// `sum_{k=lo}^{hi} values[k-lo] * S(k,h)(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CardinalSum<T> {
    h: T,
    lo: i64,
    hi: i64,
    values: Vec<T>,
}

impl<T: Real> CardinalSum<T> {
    pub fn new(h: T, lo: i64, hi: i64, values: Vec<T>) -> Result<Self> {
        check_mesh(h)?;
        if lo > hi {
            return Err(domain(format!("empty index range {lo}..={hi}")));
        }
        let expected = (hi - lo + 1) as usize;
        if values.len() != expected {
            return Err(domain(format!(
                "expected {expected} coefficients for {lo}..={hi}, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!(
                "coefficient at k = {} is not finite",
                lo + i as i64
            )));
        }
        Ok(Self { h, lo, hi, values })
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Evaluates the sum with compensated accumulation.
    ///
    /// One sine is computed per call: with `u = x/h = j + r`, every term is
    /// `(-1)^(j-k) sin(pi r) / (pi (u - k))`.
    pub fn evaluate(&self, x: T) -> Result<T> {
        self.evaluate_with(x, Accumulation::Compensated)
    }

    /// Plain left-to-right summation; reference path for checking that
    /// compensation does not change results beyond rounding.
    pub fn evaluate_naive(&self, x: T) -> Result<T> {
        self.evaluate_with(x, Accumulation::Naive)
    }

    fn evaluate_with(&self, x: T, acc: Accumulation) -> Result<T> {
        if !x.is_finite() {
            return Err(domain(format!("evaluation point must be finite, got {x}")));
        }
        let u = x / self.h;
        let j = u.round();
        let r = u - j;

        let snap = T::lit(NODE_SNAP_ULPS) * T::epsilon() * u.abs().max(T::one());
        let in_range = j >= T::from_index(self.lo) && j <= T::from_index(self.hi);
        if in_range && r.abs() <= snap {
            let idx = j.to_i64().expect("index in range") - self.lo;
            return Ok(self.values[idx as usize]);
        }

        let pi = T::PI();
        let taylor = r.abs() < T::lit(TAYLOR_CUTOFF);
        let centre = if taylor {
            let pr = pi * r;
            T::one() - pr * pr / T::lit(6.0)
        } else {
            T::zero()
        };
        // (-1)^(j-k) sin(pi r)/pi, sign flipped as k advances
        let mut num = parity_sign(j - T::from_index(self.lo)) * (pi * r).sin() / pi;

        let mut sum = CompensatedSum::new();
        let mut naive = T::zero();
        let mut kf = T::from_index(self.lo);
        for &c in &self.values {
            let basis = if taylor && kf == j {
                centre
            } else {
                num / (u - kf)
            };
            let term = c * basis;
            match acc {
                Accumulation::Compensated => sum.add(term),
                Accumulation::Naive => naive = naive + term,
            }
            num = -num;
            kf = kf + T::one();
        }
        Ok(match acc {
            Accumulation::Compensated => sum.value(),
            Accumulation::Naive => naive,
        })
    }
}

#[derive(Clone, Copy)]
enum Accumulation {
    Compensated,
    Naive,
}

/// Free-function form of [`CardinalSum::evaluate`].
pub fn cardinal_sum<T: Real>(sum: &CardinalSum<T>, x: T) -> Result<T> {
    sum.evaluate(x)
}

#[cfg(test)]
#[allow(clippy::excessive_precision, clippy::approx_constant)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // frozen from tests/oracle/gen_oracle.py
    const TWO_OVER_PI: f64 = 0.6366197723675813430755351;

    #[test]
    fn basis_at_node_and_half_node() {
        assert_eq!(sinc_basis(0, 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(sinc_basis(3, 0.5, 1.5).unwrap(), 1.0);
        assert!((sinc_basis(0, 1.0, 0.5).unwrap() - TWO_OVER_PI).abs() <= 1e-15);
        assert!((sinc_basis(0, 1.0, -0.5).unwrap() - TWO_OVER_PI).abs() <= 1e-15);
    }

    #[test]
    fn basis_vanishes_at_other_nodes() {
        for j in -50..=50 {
            if j != 0 {
                assert_eq!(sinc_basis(0, 0.25, 0.25 * j as f64).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn basis_rejects_bad_mesh() {
        assert!(sinc_basis(0, 0.0, 1.0).is_err());
        assert!(sinc_basis(0, -1.0, 1.0).is_err());
        assert!(sinc_basis(0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn basis_near_node_uses_series() {
        let v = sinc_basis(0, 1.0, 1e-12).unwrap();
        assert!(v <= 1.0 && 1.0 - v < 1e-20);
    }

    #[test]
    fn cardinal_sum_matches_single_basis() {
        let cs = CardinalSum::new(1.0, 0, 0, vec![1.0]).unwrap();
        assert!((cs.evaluate(0.5).unwrap() - TWO_OVER_PI).abs() <= 1e-15);
    }

    #[test]
    fn three_term_sums() {
        let cs = CardinalSum::new(1.0, -1, 1, vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(cs.evaluate(0.0).unwrap(), 1.0);
        assert!((cs.evaluate(0.5).unwrap() - TWO_OVER_PI).abs() <= 1e-15);
        let ones = CardinalSum::new(1.0, -1, 1, vec![1.0; 3]).unwrap();
        assert_eq!(ones.evaluate(1.0).unwrap(), 1.0);
    }

    #[test]
    fn constant_coefficients_reproduce_one_inside_the_range() {
        let h = 0.1;
        let cs = CardinalSum::new(h, -2000, 2000, vec![1.0f64; 4001]).unwrap();
        // truncation error of sum of sincs is O(1/(range)) near the middle
        assert!((cs.evaluate(0.037).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn cardinal_sum_validates_shape() {
        assert!(CardinalSum::new(1.0, 2, 1, vec![]).is_err());
        assert!(CardinalSum::new(1.0, 0, 2, vec![1.0, 2.0]).is_err());
        assert!(CardinalSum::new(1.0, 0, 1, vec![1.0, f64::NAN]).is_err());
        assert!(CardinalSum::new(1.0, 0, 0, vec![1.0])
            .unwrap()
            .evaluate(f64::INFINITY)
            .is_err());
    }

    proptest! {
        #[test]
        fn basis_is_bounded_by_one(k in -1000i64..1000, h in 1e-3f64..10.0, x in -1e4f64..1e4) {
            let v = sinc_basis(k, h, x).unwrap();
            prop_assert!(v.abs() <= 1.0);
        }

        #[test]
        fn basis_is_even_about_its_node(k in -100i64..100, h in 1e-2f64..4.0, t in 0.0f64..50.0) {
            // evaluate at k +- t on the u-scale, where x/h reproduces u exactly enough
            let a = sinc_basis(0, 1.0, t).unwrap();
            let b = sinc_basis(0, 1.0, -t).unwrap();
            prop_assert_eq!(a, b);
            let c = sinc_basis(k, h, (k as f64 + 0.25) * h).unwrap();
            let e = sinc_basis(k, h, (k as f64 - 0.25) * h).unwrap();
            prop_assert!((c - e).abs() <= 1e-12);
        }

        #[test]
        fn node_values_are_reproduced_exactly(
            lo in -60i64..0,
            len in 1usize..120,
            h in 1e-3f64..3.0,
            seed in any::<u64>(),
        ) {
            let values: Vec<f64> = (0..len)
                .map(|i| ((seed.wrapping_mul(i as u64 + 1) % 2001) as f64 - 1000.0) / 37.0)
                .collect();
            let hi = lo + len as i64 - 1;
            let cs = CardinalSum::new(h, lo, hi, values.clone()).unwrap();
            for j in lo..=hi {
                prop_assert_eq!(cs.evaluate(j as f64 * h).unwrap(), values[(j - lo) as usize]);
            }
        }

        #[test]
        fn sum_is_bounded_by_coefficient_mass(
            values in proptest::collection::vec(-1e3f64..1e3, 1..80),
            lo in -40i64..40,
            h in 1e-2f64..3.0,
            x in -200.0f64..200.0,
        ) {
            let mass: f64 = values.iter().map(|v| v.abs()).sum();
            let cs = CardinalSum::new(h, lo, lo + values.len() as i64 - 1, values).unwrap();
            prop_assert!(cs.evaluate(x).unwrap().abs() <= mass * (1.0 + 1e-12));
        }

        #[test]
        fn compensated_and_naive_agree(
            len in 1usize..400,
            h in 1e-2f64..2.0,
            x in -50.0f64..50.0,
            seed in any::<u64>(),
        ) {
            let lo = -(len as i64) / 2;
            let values: Vec<f64> = (0..len)
                .map(|i| (((seed ^ (i as u64).wrapping_mul(0x9e37_79b9)) % 10_000) as f64) / 7.0 - 700.0)
                .collect();
            let cs = CardinalSum::new(h, lo, lo + len as i64 - 1, values).unwrap();
            let mut scale = 0.0;
            for k in cs.lo()..=cs.hi() {
                scale += (cs.values()[(k - cs.lo()) as usize] * sinc_basis(k, h, x).unwrap()).abs();
            }
            let a = cs.evaluate(x).unwrap();
            let b = cs.evaluate_naive(x).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }
    }
}
