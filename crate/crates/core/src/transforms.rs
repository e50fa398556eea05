//! Variable transformations mapping the real line onto the approximation
//! interval, with numerically stable inverses.

use std::fmt;

use crate::error::{domain, Result};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    /// `(-inf, inf)`
    WholeLine,
    /// `(0, inf)`
    HalfLine,
}

impl Interval {
    pub fn contains<T: Real>(self, t: T) -> bool {
        match self {
            Interval::WholeLine => t.is_finite(),
            Interval::HalfLine => t.is_finite() && t > T::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// `sinh x`
    Se1,
    /// `e^x`
    Se2,
    /// `asinh(e^x)`
    Se3,
    /// `sinh((pi/2) sinh t)`
    De1,
    /// `exp((pi/2) sinh t)`
    De2,
    /// `log(1 + exp((pi/2) sinh t))`
    De3Old,
    /// `log(1 + exp(pi sinh t))`
    De3DDagger,
}

impl TransformKind {
    pub const ALL: [TransformKind; 7] = [
        TransformKind::Se1,
        TransformKind::Se2,
        TransformKind::Se3,
        TransformKind::De1,
        TransformKind::De2,
        TransformKind::De3Old,
        TransformKind::De3DDagger,
    ];

    pub fn interval(self) -> Interval {
        match self {
            TransformKind::Se1 | TransformKind::De1 => Interval::WholeLine,
            _ => Interval::HalfLine,
        }
    }

    pub fn is_double_exponential(self) -> bool {
        matches!(
            self,
            TransformKind::De1
                | TransformKind::De2
                | TransformKind::De3Old
                | TransformKind::De3DDagger
        )
    }

    /// Short tag used in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            TransformKind::Se1 => "se1",
            TransformKind::Se2 => "se2",
            TransformKind::Se3 => "se3",
            TransformKind::De1 => "de1",
            TransformKind::De2 => "de2",
            TransformKind::De3Old => "de3_old",
            TransformKind::De3DDagger => "de3_ddagger",
        }
    }

    pub fn forward<T: Real>(self, x: T) -> Result<T> {
        forward(self, x)
    }

    pub fn inverse<T: Real>(self, t: T) -> Result<T> {
        inverse(self, t)
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `log(1 + e^s)` without overflow or loss for large negative `s`.
pub fn log1p_exp<T: Real>(s: T) -> T {
    if s > T::zero() {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

/// `log(e^t - 1)` for `t > 0`.
pub fn log_expm1<T: Real>(t: T) -> T {
    if t > T::lit(0.5) {
        t + (-(-t).exp()).ln_1p()
    } else {
        t.exp_m1().ln()
    }
}

fn clamp_half_line<T: Real>(v: T) -> T {
    if v.is_infinite() {
        T::max_value()
    } else if v < T::min_positive_value() {
        T::min_positive_value()
    } else {
        v
    }
}

fn clamp_whole_line<T: Real>(v: T) -> T {
    if v.is_infinite() {
        v.signum() * T::max_value()
    } else {
        v
    }
}

/// Maps `x` in the real line to `t = phi(x)`.
///
/// Results that would overflow saturate at the largest finite value; results
/// on the half line that would underflow saturate at the smallest positive
/// normal value, keeping `t` inside the open interval.
pub fn forward<T: Real>(kind: TransformKind, x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(domain(format!(
            "transform argument must be finite, got {x}"
        )));
    }
    let half_pi = T::FRAC_PI_2();
    let t = match kind {
        TransformKind::Se1 => clamp_whole_line(x.sinh()),
        TransformKind::Se2 => clamp_half_line(x.exp()),
        TransformKind::Se3 => {
            let ex = x.exp();
            if ex.is_finite() {
                clamp_half_line(ex.asinh())
            } else {
                x + T::LN_2()
            }
        }
        TransformKind::De1 => clamp_whole_line((half_pi * x.sinh()).sinh()),
        TransformKind::De2 => clamp_half_line((half_pi * x.sinh()).exp()),
        TransformKind::De3Old => clamp_half_line(log1p_exp(half_pi * x.sinh())),
        TransformKind::De3DDagger => clamp_half_line(log1p_exp(T::PI() * x.sinh())),
    };
    Ok(t)
}

/// Maps `t` in the target interval back to `x = phi^{-1}(t)`.
pub fn inverse<T: Real>(kind: TransformKind, t: T) -> Result<T> {
    if !kind.interval().contains(t) {
        return Err(domain(format!(
            "{t} is outside the interval of the {kind} transform"
        )));
    }
    let two_over_pi = T::FRAC_2_PI();
    let x = match kind {
        TransformKind::Se1 => t.asinh(),
        TransformKind::Se2 => t.ln(),
        TransformKind::Se3 => {
            if t <= T::lit(20.0) {
                t.sinh().ln()
            } else {
                t - T::LN_2() + (-(-(t + t)).exp()).ln_1p()
            }
        }
        TransformKind::De1 => (two_over_pi * t.asinh()).asinh(),
        TransformKind::De2 => (two_over_pi * t.ln()).asinh(),
        TransformKind::De3Old => (two_over_pi * log_expm1(t)).asinh(),
        TransformKind::De3DDagger => (log_expm1(t) / T::PI()).asinh(),
    };
    Ok(x)
}
