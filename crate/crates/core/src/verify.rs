//! Pointwise checks of the auxiliary inequalities behind the error bounds.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::real::Real;

const REAL_TOL: f64 = 1e-12;
const COMPLEX_TOL: f64 = 1e-10;

/// `log(1 + e^x)` for real `x`.
fn log1p_exp_real<T: Real>(x: T) -> T {
    crate::transforms::log1p_exp(x)
}

/// `sqrt(x^2 + pi^2) >= (1 + e^{-x}) log(1 + e^x)`.
pub fn check_last_inequality<T: Real>(x: T) -> bool {
    if !x.is_finite() {
        return false;
    }
    let lhs = x.hypot(T::PI());
    let rhs = if x > T::zero() {
        (T::one() + (-x).exp()) * log1p_exp_real(x)
    } else {
        // (1 + e^{-x}) log(1+y) = (1+y) log(1+y)/y with y = e^x
        let y = x.exp();
        let ratio = if y == T::zero() {
            T::one()
        } else {
            y.ln_1p() / y
        };
        (T::one() + y) * ratio
    };
    lhs + T::lit(REAL_TOL) >= rhs
}

/// `log(1+w)` for complex `w`, accurate for small `|w|`.
fn complex_log1p<T: Real>(w: Complex<T>) -> Complex<T> {
    let (a, b) = (w.re, w.im);
    let two = T::lit(2.0);
    let re = (two * a + a * a + b * b).ln_1p() / two;
    Complex::new(re, b.atan2(T::one() + a))
}

/// `log(1 + exp(pi sinh(x + iy)))`, continued analytically from the real axis
/// along horizontal lines inside `|y| < pi/2`.
fn log1p_exp_de<T: Real>(x: T, y: T) -> Complex<T> {
    let w = Complex::new(x, y).sinh() * T::PI();
    if x <= T::zero() {
        complex_log1p(w.exp())
    } else {
        w + complex_log1p((-w).exp())
    }
}

/// `|log(1+exp(pi sinh(x+iy)))| <=
///  pi cosh x / (cos((pi/2) sin y) cos y (1 + exp(-pi sinh x cos y)))`.
pub fn check_log_de<T: Real>(x: T, y: T) -> bool {
    if !(x.is_finite() && y.abs() < T::FRAC_PI_2()) {
        return false;
    }
    let lhs = log1p_exp_de(x, y).norm();
    let denom = (T::FRAC_PI_2() * y.sin()).cos()
        * y.cos()
        * (T::one() + (-T::PI() * x.sinh() * y.cos()).exp());
    let rhs = T::PI() * x.cosh() / denom;
    lhs <= rhs * (T::one() + T::lit(COMPLEX_TOL))
}

/// Real-axis forms:
/// `asinh(e^x)/(1+asinh(e^x)) <= e^x/(1+e^x)` and
/// `1/(e^x + sqrt(1+e^{2x})) <= 1/(1+e^x)`.
pub fn check_asinh_lemmas<T: Real>(x: T) -> bool {
    if !x.is_finite() {
        return false;
    }
    let one = T::one();
    let tol = one + T::lit(REAL_TOL);
    let a = if x > T::lit(20.0) {
        x + T::LN_2() + (-(x + x)).exp() / T::lit(4.0)
    } else {
        x.exp().asinh()
    };
    let first = a / (one + a) <= tol / (one + (-x).exp());

    let second = if x > T::zero() {
        let e = (-x).exp();
        e / (one + (e * e + one).sqrt()) <= tol * e / (e + one)
    } else {
        let e = x.exp();
        one / (e + (one + e * e).sqrt()) <= tol / (one + e)
    };
    first && second
}

/// Strip forms on `|Im z| <= pi/2`:
/// `|asinh(e^z)/(1+asinh(e^z))| <= sqrt(2) |e^z/(1+e^z)|` and
/// `|1/(e^z + sqrt(1+e^{2z}))| <= sqrt(2) |1/(1+e^z)|`.
pub fn check_asinh_lemmas_strip<T: Real>(x: T, y: T) -> bool {
    if !(x.is_finite() && y.abs() <= T::FRAC_PI_2()) {
        return false;
    }
    let one = Complex::new(T::one(), T::zero());
    let tol = T::one() + T::lit(COMPLEX_TOL);
    let ez = Complex::new(x, y).exp();
    let a = ez.asinh();
    let first = (a / (one + a)).norm() <= tol * T::SQRT_2() * (ez / (one + ez)).norm();
    // e^z + sqrt(1+e^{2z}) on the branch continuous in the strip is exp(asinh(e^z))
    let second = (-a.re).exp() <= tol * T::SQRT_2() * (one / (one + ez)).norm();
    first && second
}

/// `|1/(1+exp(pi sinh(x+iy)))| <= 1/((1+exp(pi sinh x cos y)) cos((pi/2) sin y))`
/// and the same with `x` replaced by `-x` for `1/(1+exp(-pi sinh(x+iy)))`.
pub fn check_defunc_estim<T: Real>(x: T, y: T) -> bool {
    if !(x.is_finite() && y.abs() < T::FRAC_PI_2()) {
        return false;
    }
    let one = Complex::new(T::one(), T::zero());
    let tol = T::one() + T::lit(COMPLEX_TOL);
    let w = Complex::new(x, y).sinh() * T::PI();
    let damp = (T::FRAC_PI_2() * y.sin()).cos();
    let s = T::PI() * x.sinh() * y.cos();
    let plus = (one / (one + w.exp())).norm();
    let minus = (one / (one + (-w).exp())).norm();
    plus <= tol / ((T::one() + s.exp()) * damp) && minus <= tol / ((T::one() + (-s).exp()) * damp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// First failing input, for diagnostics.
    pub first_failure: Option<(String, String)>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn tally<T: Real>(
    name: &'static str,
    points: &[(T, T)],
    check: impl Fn(T, T) -> bool + Sync,
) -> LemmaReport {
    let results: Vec<bool> = points.par_iter().map(|&(x, y)| check(x, y)).collect();
    let failed = results.iter().filter(|ok| !**ok).count();
    let first_failure = results
        .iter()
        .position(|ok| !ok)
        .map(|i| (format!("{}", points[i].0), format!("{}", points[i].1)));
    LemmaReport {
        name,
        passed: results.len() - failed,
        failed,
        first_failure,
    }
}

fn real_edges() -> Vec<f64> {
    let f = 4.0 * std::f64::consts::PI / 3.0;
    vec![
        0.0, f, -f, 50.0, -50.0, 700.0, -700.0, 699.9, -699.9, 1e-300, -1e-300,
    ]
}

fn strip_edges() -> Vec<(f64, f64)> {
    let ys = [
        0.0,
        1.4,
        -1.4,
        std::f64::consts::FRAC_PI_2 - 1e-3,
        -(std::f64::consts::FRAC_PI_2 - 1e-3),
    ];
    let xs = [0.0, 1.0, -1.0, 3.0, -3.0, 5.0, -5.0];
    xs.iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .collect()
}

/// Runs every check on `samples` random admissible inputs per lemma plus the
/// fixed edge sets, with a reproducible ChaCha stream.
pub fn run_suite<T: Real>(samples: usize, seed: u64) -> Vec<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let lit = |(a, b): (f64, f64)| (T::lit(a), T::lit(b));

    let mut real_line: Vec<(f64, f64)> = real_edges().into_iter().map(|x| (x, 0.0)).collect();
    real_line.extend((0..samples).map(|_| (rng.gen_range(-700.0..=700.0), 0.0)));

    let mut strip: Vec<(f64, f64)> = strip_edges();
    // open strip: stay a hair inside |y| < pi/2
    strip.extend((0..samples).map(|_| {
        (
            rng.gen_range(-5.0..=5.0),
            rng.gen_range(-half_pi..half_pi) * (1.0 - 1e-12),
        )
    }));

    // closed strip grid for the complex asinh forms
    let mut closed: Vec<(f64, f64)> = Vec::with_capacity(100 * 100);
    for i in 0..100 {
        for j in 0..100 {
            let x = -30.0 + 60.0 * i as f64 / 99.0;
            let y = -half_pi + std::f64::consts::PI * j as f64 / 99.0;
            closed.push((x, y.clamp(-half_pi, half_pi)));
        }
    }

    let real_line: Vec<(T, T)> = real_line.into_iter().map(lit).collect();
    let strip: Vec<(T, T)> = strip.into_iter().map(lit).collect();
    let closed: Vec<(T, T)> = closed.into_iter().map(lit).collect();

    vec![
        tally("last-inequality", &real_line, |x, _| {
            check_last_inequality(x)
        }),
        tally("log-DE", &strip, check_log_de),
        tally("asinh-SE (real axis)", &real_line, |x, _| {
            check_asinh_lemmas(x)
        }),
        tally("asinh-SE (strip)", &closed, check_asinh_lemmas_strip),
        tally("DEfunc-estim", &strip, check_defunc_estim),
    ]
}
