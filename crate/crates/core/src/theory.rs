//! Function classes, parameter selection and explicit error-bound constants.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::error::{domain, precondition, Result, SincError};
use crate::real::{cmp_products, DoubleWord, Real};
use crate::transforms::{Interval, TransformKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    SeCase1,
    SeCase2,
    SeCase3,
    DeCase1,
    DeCase2,
    DeCase3,
}

impl CaseTag {
    pub fn is_se(self) -> bool {
        matches!(self, CaseTag::SeCase1 | CaseTag::SeCase2 | CaseTag::SeCase3)
    }

    /// Transform the case is paired with.
    pub fn transform(self) -> TransformKind {
        match self {
            CaseTag::SeCase1 => TransformKind::Se1,
            CaseTag::SeCase2 => TransformKind::Se2,
            CaseTag::SeCase3 => TransformKind::Se3,
            CaseTag::DeCase1 => TransformKind::De1,
            CaseTag::DeCase2 => TransformKind::De2,
            CaseTag::DeCase3 => TransformKind::De3DDagger,
        }
    }

    pub fn interval(self) -> Interval {
        self.transform().interval()
    }

    pub fn rate(self) -> RateTag {
        match self {
            CaseTag::SeCase1 | CaseTag::SeCase2 | CaseTag::SeCase3 => RateTag::Se,
            CaseTag::DeCase1 | CaseTag::DeCase2 => RateTag::De,
            CaseTag::DeCase3 => RateTag::De3,
        }
    }
}

/// Analytic function class: `|f(z)| <= K * envelope(z)` on the image of a strip
/// of half-width `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionClass<T> {
    case: CaseTag,
    k: T,
    alpha: T,
    beta: T,
    d: T,
}

impl<T: Real> FunctionClass<T> {
    pub fn new(case: CaseTag, k: T, alpha: T, beta: T, d: T) -> Result<Self> {
        let finite_pos = |v: T| v.is_finite() && v > T::zero();
        if !finite_pos(k) {
            return Err(domain(format!("K must be positive and finite, got {k}")));
        }
        if !finite_pos(alpha) || !finite_pos(beta) {
            return Err(domain(format!(
                "exponents must be positive and finite, got alpha = {alpha}, beta = {beta}"
            )));
        }
        // the case-3 SE map stays univalent on strips up to width pi
        let d_max = if case == CaseTag::SeCase3 {
            T::PI()
        } else {
            T::FRAC_PI_2()
        };
        if !(d > T::zero() && d < d_max) {
            return Err(domain(format!(
                "strip half-width d = {d} must lie in (0, {d_max})"
            )));
        }
        if case == CaseTag::DeCase3 {
            if alpha != beta {
                return Err(domain(format!(
                    "DE case 3 uses a single exponent mu; got alpha = {alpha} != beta = {beta}"
                )));
            }
            if alpha > T::one() {
                return Err(domain(format!("DE case 3 requires mu <= 1, got {alpha}")));
            }
        }
        Ok(Self {
            case,
            k,
            alpha,
            beta,
            d,
        })
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }
    pub fn k(&self) -> T {
        self.k
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }
    pub fn beta(&self) -> T {
        self.beta
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn mu(&self) -> T {
        self.alpha.min(self.beta)
    }
    pub fn nu(&self) -> T {
        self.alpha.max(self.beta)
    }

    /// Mesh size and truncation numbers for this class.
    pub fn select_params(&self, n: usize) -> Result<SincParams<T>> {
        match self.case.rate() {
            RateTag::Se => select_params_se(self, n),
            RateTag::De => select_params_de(self, n),
            RateTag::De3 => select_params_de3(self, n),
        }
    }

    /// Explicit constant and rate for this class.
    pub fn error_bound(&self) -> Result<ErrorBound<T>> {
        let constant = if self.case.is_se() {
            constant_se(self)?
        } else {
            constant_de(self)?
        };
        ErrorBound::new(constant, self.case.rate(), self.d, self.mu())
    }
}

/// `h`, `M`, `N` and the driving `n`; the sum runs over `k = -M..=N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SincParams<T> {
    pub h: T,
    pub m: usize,
    pub n_upper: usize,
    pub n: usize,
}

impl<T: Real> SincParams<T> {
    pub fn lo(&self) -> i64 {
        -(self.m as i64)
    }
    pub fn hi(&self) -> i64 {
        self.n_upper as i64
    }
    pub fn term_count(&self) -> usize {
        self.m + self.n_upper + 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    Ok(())
}

fn as_real<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("n representable")
}

/// Smallest `q` with `b*q >= a*n`, decided on exact products.
fn exact_ceil_ratio<T: Real>(a: T, n: usize, b: T) -> usize {
    let nf = as_real::<T>(n);
    let guess = (a * nf / b).ceil().to_usize().unwrap_or(0);
    let mut q = guess;
    while q > 0 && cmp_products(b, as_real::<T>(q - 1), a, nf) != Ordering::Less {
        q -= 1;
    }
    while cmp_products(b, as_real::<T>(q), a, nf) == Ordering::Less {
        q += 1;
    }
    q
}

/// `h = sqrt(pi d / (mu n))` evaluated in double-word arithmetic.
fn se_mesh<T: Real>(d: T, mu: T, n: usize) -> T {
    let num = DoubleWord::pi().mul_scalar(d);
    let (p, e) = crate::real::two_product(mu, as_real::<T>(n));
    num.div(DoubleWord::new(p, e)).sqrt()
}

/// `log(c d n / mu) / n` with the log argument carried in double-word form.
fn de_mesh<T: Real>(c: T, d: T, mu: T, n: usize) -> T {
    let nf = as_real::<T>(n);
    let (p, e) = crate::real::two_product(c * d, nf);
    let l = DoubleWord::new(p, e)
        .div(DoubleWord::new(mu, T::zero()))
        .ln();
    // (l.hi + l.lo) / n with one rounding of the quotient
    let q = l.hi / nf;
    let r = (-q).mul_add(nf, l.hi) + l.lo;
    q + r / nf
}

pub fn select_params_se<T: Real>(class: &FunctionClass<T>, n: usize) -> Result<SincParams<T>> {
    if !class.case.is_se() {
        return Err(domain(format!("{:?} is not an SE case", class.case)));
    }
    check_n(n)?;
    let (alpha, beta) = (class.alpha, class.beta);
    let h = se_mesh(class.d, class.mu(), n);
    let (m, n_upper) = if alpha <= beta {
        (n, exact_ceil_ratio(alpha, n, beta))
    } else {
        (exact_ceil_ratio(beta, n, alpha), n)
    };
    Ok(SincParams { h, m, n_upper, n })
}

fn de_threshold<T: Real>(nu: T, d: T) -> T {
    nu * T::E() / (T::lit(4.0) * d)
}

fn min_n_for<T: Real>(threshold: T) -> usize {
    threshold.ceil().to_usize().unwrap_or(usize::MAX).max(1)
}

/// Largest `m >= 0` with `m * h <= x`, for `x >= 0`.
fn floor_ratio<T: Real>(x: T, h: T) -> usize {
    let mut m = (x / h).floor().to_usize().unwrap_or(0);
    while m > 0 && cmp_products(as_real::<T>(m), h, x, T::one()) == Ordering::Greater {
        m -= 1;
    }
    while cmp_products(as_real::<T>(m + 1), h, x, T::one()) != Ordering::Greater {
        m += 1;
    }
    m
}

pub fn select_params_de<T: Real>(class: &FunctionClass<T>, n: usize) -> Result<SincParams<T>> {
    if !matches!(class.case, CaseTag::DeCase1 | CaseTag::DeCase2) {
        return Err(domain(format!("{:?} is not DE case 1 or 2", class.case)));
    }
    check_n(n)?;
    let (alpha, beta, d) = (class.alpha, class.beta, class.d);
    let mu = class.mu();
    let threshold = de_threshold(class.nu(), d);
    if as_real::<T>(n) < threshold {
        return Err(SincError::Precondition(format!(
            "DE parameters need n >= nu*e/(4d) = {threshold}; smallest admissible n is {}",
            min_n_for(threshold)
        )));
    }
    let h = de_mesh(T::lit(4.0), d, mu, n);
    let shrink = |ratio: T| -> Result<usize> {
        let cut = floor_ratio(ratio.ln(), h);
        n.checked_sub(cut).ok_or_else(|| {
            precondition(format!(
                "truncation number n - floor(log(nu/mu)/h) is negative for n = {n}"
            ))
        })
    };
    let (m, n_upper) = if alpha <= beta {
        (n, shrink(beta / alpha)?)
    } else {
        (shrink(alpha / beta)?, n)
    };
    Ok(SincParams { h, m, n_upper, n })
}

pub fn select_params_de3<T: Real>(class: &FunctionClass<T>, n: usize) -> Result<SincParams<T>> {
    if class.case != CaseTag::DeCase3 {
        return Err(domain(format!("{:?} is not DE case 3", class.case)));
    }
    check_n(n)?;
    let (mu, d) = (class.mu(), class.d);
    let threshold = mu * T::E() / (T::lit(2.0) * d);
    if as_real::<T>(n) < threshold {
        return Err(SincError::Precondition(format!(
            "DE case-3 parameters need n >= mu*e/(2d) = {threshold}; smallest admissible n is {}",
            min_n_for(threshold)
        )));
    }
    let h = de_mesh(T::lit(2.0), d, mu, n);
    Ok(SincParams {
        h,
        m: n,
        n_upper: n,
        n,
    })
}

/// Parameters of the earlier semi-infinite DE map `log(1+exp((pi/2) sinh t))`,
/// kept for comparison; no explicit bound is attached to them.
pub fn select_params_de3_old<T: Real>(mu: T, d: T, n: usize) -> Result<SincParams<T>> {
    check_n(n)?;
    if !(mu.is_finite() && mu > T::zero()) {
        return Err(domain(format!("mu must be positive and finite, got {mu}")));
    }
    if !(d > T::zero() && d < T::FRAC_PI_2()) {
        return Err(domain(format!("d = {d} must lie in (0, pi/2)")));
    }
    let threshold = de_threshold(mu, d);
    if as_real::<T>(n) < threshold {
        return Err(SincError::Precondition(format!(
            "need n >= mu*e/(4d) = {threshold}; smallest admissible n is {}",
            min_n_for(threshold)
        )));
    }
    let h = de_mesh(T::lit(4.0), d, mu, n);
    Ok(SincParams {
        h,
        m: n,
        n_upper: n,
        n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RateTag {
    /// `sqrt(n) exp(-sqrt(pi d mu n))`
    Se,
    /// `exp(-pi d n / log(4 d n / mu))`
    De,
    /// `exp(-pi d n / log(2 d n / mu))`
    De3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorBound<T> {
    constant: T,
    rate: RateTag,
    d: T,
    mu: T,
}

impl<T: Real> ErrorBound<T> {
    pub fn new(constant: T, rate: RateTag, d: T, mu: T) -> Result<Self> {
        if !(constant.is_finite() && constant > T::zero()) {
            return Err(domain(format!(
                "bound constant must be positive and finite, got {constant}"
            )));
        }
        if !(d.is_finite() && d > T::zero() && mu.is_finite() && mu > T::zero()) {
            return Err(domain("d and mu must be positive and finite"));
        }
        Ok(Self {
            constant,
            rate,
            d,
            mu,
        })
    }

    pub fn constant(&self) -> T {
        self.constant
    }
    pub fn rate(&self) -> RateTag {
        self.rate
    }

    /// Bound on the uniform approximation error at `n`.
    pub fn value(&self, n: usize) -> Result<T> {
        check_n(n)?;
        let nf = as_real::<T>(n);
        let (c, d, mu) = (self.constant, self.d, self.mu);
        let pi = T::PI();
        match self.rate {
            RateTag::Se => {
                let exponent = nf.sqrt().ln() - (pi * d * mu * nf).sqrt();
                Ok(scaled_exp(c, exponent))
            }
            RateTag::De | RateTag::De3 => {
                let factor = if self.rate == RateTag::De {
                    T::lit(4.0)
                } else {
                    T::lit(2.0)
                };
                let arg = factor * d * nf / mu;
                if arg <= T::one() {
                    return Err(precondition(format!(
                        "rate needs log({factor} d n / mu) > 0; got argument {arg} at n = {n}"
                    )));
                }
                Ok(scaled_exp(c, -pi * d * nf / arg.ln()))
            }
        }
    }
}

/// `c * exp(e)` without spurious underflow of the intermediate.
fn scaled_exp<T: Real>(c: T, e: T) -> T {
    let direct = c * e.exp();
    if direct != T::zero() && direct.is_finite() {
        direct
    } else {
        (c.ln() + e).exp()
    }
}

pub fn bound_value<T: Real>(bound: &ErrorBound<T>, n: usize) -> Result<T> {
    bound.value(n)
}

/// Evaluates a product of positive factors, falling back to a log-space sum
/// when the direct product is not representable.
fn positive_product<T: Real>(factors: &[(T, T)]) -> Result<T> {
    // each entry is (base, exponent)
    let direct = factors
        .iter()
        .fold(T::one(), |acc, &(b, e)| acc * b.powf(e));
    if direct.is_finite() && direct > T::zero() {
        return Ok(direct);
    }
    let log: T = factors
        .iter()
        .fold(T::zero(), |acc, &(b, e)| acc + e * b.ln());
    let v = log.exp();
    if v.is_finite() && v > T::zero() {
        Ok(v)
    } else {
        Err(domain(format!(
            "bound constant is not representable (log value {log})"
        )))
    }
}

/// Constant `C` of the SE bound `C sqrt(n) exp(-sqrt(pi d mu n))`.
pub fn constant_se<T: Real>(class: &FunctionClass<T>) -> Result<T> {
    let (k, a, b, d) = (class.k, class.alpha, class.beta, class.d);
    let (mu, nu) = (class.mu(), class.nu());
    let one = T::one();
    let two = T::lit(2.0);
    let s = (T::PI() * d * mu).sqrt();
    let damp = -(-(two * s)).exp_m1();
    let half_sum = (a + b) / two;
    // C = lead * (inner + 1), inner = num / (s damp cos^p)
    let (lead, inner) = match class.case {
        CaseTag::SeCase1 => (
            positive_product(&[(two, nu + one), (k, one), (s, -one)])?,
            positive_product(&[(two, one), (s * damp, -one), (d.cos(), -nu)])?,
        ),
        CaseTag::SeCase2 => (
            two * k / s,
            positive_product(&[(two, one), (s * damp, -one), (d.cos(), -half_sum)])?,
        ),
        CaseTag::SeCase3 => (
            two * k / s,
            positive_product(&[
                (two, one + half_sum),
                (s * damp, -one),
                ((d / two).cos(), -(a + b)),
            ])?,
        ),
        other => return Err(domain(format!("{other:?} is not an SE case"))),
    };
    finite_product(lead, inner + one)
}

/// Constant `C` of the DE bound.
pub fn constant_de<T: Real>(class: &FunctionClass<T>) -> Result<T> {
    let (k, a, b, d) = (class.k, class.alpha, class.beta, class.d);
    let (mu, nu) = (class.mu(), class.nu());
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let pi = T::PI();
    let e = T::E();
    let inner_cos = (T::FRAC_PI_2() * d.sin()).cos();
    match class.case {
        CaseTag::DeCase1 | CaseTag::DeCase2 => {
            let p = if class.case == CaseTag::DeCase1 {
                nu
            } else {
                (a + b) / two
            };
            let damp = -(-(pi * mu * e / two)).exp_m1();
            let first =
                positive_product(&[(four / (pi * damp), one), (inner_cos, -p), (d.cos(), -one)])?;
            let second = positive_product(&[(mu, one), ((pi / four).exp(), nu)])?;
            let lead = if class.case == CaseTag::DeCase1 {
                positive_product(&[(two, nu + one), (k, one), (pi * d * mu, -one)])?
            } else {
                two * k / (pi * d * mu)
            };
            finite_product(lead, first + second)
        }
        CaseTag::DeCase3 => {
            let damp = -(-(pi * mu * e)).exp_m1();
            let first = positive_product(&[
                (four / (pi * damp), one),
                (inner_cos, -(two * mu)),
                (d.cos(), -(mu + one)),
            ])?;
            let second =
                positive_product(&[(mu, one), (two, one - mu), (((pi + two) / two).exp(), mu)])?;
            let lead = positive_product(&[(k, one), (pi, mu - one), (d * mu, -one)])?;
            finite_product(lead, first + second)
        }
        other => Err(domain(format!("{other:?} is not a DE case"))),
    }
}

fn finite_product<T: Real>(a: T, b: T) -> Result<T> {
    let v = a * b;
    if v.is_finite() {
        return Ok(v);
    }
    let l = a.ln() + b.ln();
    let v = l.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("bound constant overflows (log value {l})")))
    }
}

/// Decay envelope of the function class at complex `z`.
///
/// * cases 1: `|1+z^2|^(-gamma/2)` with `gamma = alpha` for `Re z < 0`, else `beta`
/// * cases 2: `|z|^alpha |1+z^2|^(-(alpha+beta)/2)`
/// * SE case 3: `|z/(1+z)|^alpha exp(-beta Re z)`
/// * DE case 3: `|z|^alpha exp(-alpha Re z)`
pub fn envelope<T: Real>(case: CaseTag, z: Complex<T>, alpha: T, beta: T) -> Result<T> {
    if !(z.re.is_finite() && z.im.is_finite() && alpha.is_finite() && beta.is_finite()) {
        return Err(domain("envelope arguments must be finite"));
    }
    let one = Complex::new(T::one(), T::zero());
    let two = T::lit(2.0);
    let pole = |w: Complex<T>, at: &str| -> Result<T> {
        let m = w.norm();
        if m == T::zero() {
            Err(domain(format!("envelope has a pole at z = {at}")))
        } else {
            Ok(m)
        }
    };
    match case {
        CaseTag::SeCase1 | CaseTag::DeCase1 => {
            let gamma = if z.re < T::zero() { alpha } else { beta };
            Ok(pole(one + z * z, "+-i")?.powf(-gamma / two))
        }
        CaseTag::SeCase2 | CaseTag::DeCase2 => {
            let q = pole(one + z * z, "+-i")?;
            Ok(z.norm().powf(alpha) * q.powf(-(alpha + beta) / two))
        }
        CaseTag::SeCase3 => {
            let q = pole(one + z, "-1")?;
            Ok((z.norm() / q).powf(alpha) * (-beta * z.re).exp())
        }
        CaseTag::DeCase3 => Ok(z.norm().powf(alpha) * (-alpha * z.re).exp()),
    }
}

/// Class parameters after rescaling `t -> (alpha/beta) u` so that a case-3
/// envelope `|z|^alpha exp(-beta Re z)` becomes `|w|^mu exp(-mu Re w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Case3Rescale<T> {
    pub k: T,
    pub mu: T,
    /// `t = scale * u`
    pub scale: T,
}

pub fn rescale_case3<T: Real>(k_tilde: T, alpha: T, beta: T) -> Result<Case3Rescale<T>> {
    if !(k_tilde > T::zero() && alpha > T::zero() && beta > T::zero()) {
        return Err(domain("rescaling needs K, alpha, beta > 0"));
    }
    let scale = alpha / beta;
    Ok(Case3Rescale {
        k: k_tilde * scale.powf(alpha),
        mu: alpha,
        scale,
    })
}
