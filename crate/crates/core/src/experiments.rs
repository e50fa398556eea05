//! The four worked example functions, their evaluation grids, and n-sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::approximator::Approximant;
use crate::error::{domain, Result};
use crate::real::Real;
use crate::theory::{
    rescale_case3, select_params_de3_old, CaseTag, ErrorBound, FunctionClass, SincParams,
};
use crate::transforms::{Interval, TransformKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleId {
    F1,
    F2,
    F3,
    F4,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [ExampleId::F1, ExampleId::F2, ExampleId::F3, ExampleId::F4];
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleId::F1 => "f1",
            ExampleId::F2 => "f2",
            ExampleId::F3 => "f3",
            ExampleId::F4 => "f4",
        })
    }
}

impl FromStr for ExampleId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(ExampleId::F1),
            "f2" => Ok(ExampleId::F2),
            "f3" => Ok(ExampleId::F3),
            "f4" => Ok(ExampleId::F4),
            other => Err(format!(
                "unknown example {other:?}; expected f1, f2, f3 or f4"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Se,
    De,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Se => "se",
            Variant::De => "de",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "se" => Ok(Variant::Se),
            "de" => Ok(Variant::De),
            other => Err(format!("unknown variant {other:?}; expected se or de")),
        }
    }
}

pub fn f1<T: Real>(t: T) -> T {
    let th = t.asinh().tanh();
    (T::one() + th * th).sqrt() / (T::one() + t * t)
}

pub fn f2<T: Real>(t: T) -> T {
    let th = t.ln().tanh();
    t.sqrt() * (T::one() + th * th).sqrt() / (T::one() + t * t)
}

pub fn f3<T: Real>(t: T) -> T {
    t.powf(T::FRAC_PI_4()) * (-t).exp()
}

pub fn f4<T: Real>(t: T) -> T {
    let radicand = (T::lit(3.0) * t.asinh()).cos() + T::PI().cosh();
    radicand.sqrt() / (T::one() + t * t)
}

/// Parameters of the earlier semi-infinite DE map, used only for comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OldDe<T> {
    pub mu: T,
    pub d: T,
}

/// An example function with its certified class parameters.
#[derive(Clone, Copy, Debug)]
pub struct BenchmarkExample<T> {
    pub id: ExampleId,
    pub f: fn(T) -> T,
    pub se_class: Option<FunctionClass<T>>,
    /// Class whose bound applies to the DE branch; `None` when no explicit
    /// bound is available.
    pub de_class: Option<FunctionClass<T>>,
    pub de_kind: TransformKind,
    /// Strip half-width used to place DE nodes; equals `de_class.d()` when
    /// the class is present.
    pub de_d: T,
    /// DE branch approximates `g(u) = f(scale * u)`.
    pub rescale: Option<T>,
    pub old_de: Option<OldDe<T>>,
}

impl<T: Real> BenchmarkExample<T> {
    pub fn interval(&self) -> Interval {
        self.de_kind.interval()
    }

    pub fn grid(&self) -> Vec<T> {
        match self.interval() {
            Interval::WholeLine => whole_line_grid(),
            Interval::HalfLine => half_line_grid(),
        }
    }

    /// Exponents and strip used to select DE parameters.
    fn de_selection_class(&self) -> Result<FunctionClass<T>> {
        match self.de_class {
            Some(c) => Ok(c),
            // same exponents as SE, only the strip changes
            None => {
                let se = self
                    .se_class
                    .ok_or_else(|| domain("example has no class"))?;
                FunctionClass::new(CaseTag::DeCase1, se.k(), se.alpha(), se.beta(), self.de_d)
            }
        }
    }
}

pub fn example<T: Real>(id: ExampleId) -> BenchmarkExample<T> {
    let l = T::lit;
    let pi = T::PI();
    let class = |case, k, a, b, d| FunctionClass::new(case, k, a, b, d).expect("example class");
    match id {
        ExampleId::F1 => BenchmarkExample {
            id,
            f: f1::<T>,
            se_class: Some(class(
                CaseTag::SeCase1,
                l(1.5),
                l(2.0),
                l(2.0),
                T::FRAC_PI_4(),
            )),
            de_class: Some(class(CaseTag::DeCase1, l(1.5), l(2.0), l(2.0), pi / l(6.0))),
            de_kind: TransformKind::De1,
            de_d: pi / l(6.0),
            rescale: None,
            old_de: None,
        },
        ExampleId::F2 => BenchmarkExample {
            id,
            f: f2::<T>,
            se_class: Some(class(
                CaseTag::SeCase2,
                l(1.5),
                l(0.5),
                l(1.5),
                T::FRAC_PI_4(),
            )),
            de_class: Some(class(CaseTag::DeCase2, l(1.5), l(0.5), l(1.5), pi / l(6.0))),
            de_kind: TransformKind::De2,
            de_d: pi / l(6.0),
            rescale: None,
            old_de: None,
        },
        #[allow(clippy::approx_constant)]
        ExampleId::F3 => {
            // strip half-width 3.14/2, just inside pi/2
            let quarter = T::FRAC_PI_4();
            let k_se = (T::one() + T::FRAC_PI_2() * T::FRAC_PI_2()).powf(pi / l(8.0));
            // |f3(z)| = |z^(pi/4) e^(-z)|
            let r = rescale_case3(T::one(), quarter, T::one()).expect("rescale");
            BenchmarkExample {
                id,
                f: f3::<T>,
                se_class: Some(class(
                    CaseTag::SeCase3,
                    k_se,
                    quarter,
                    l(0.75),
                    l(3.14) / l(2.0),
                )),
                de_class: Some(class(CaseTag::DeCase3, r.k, r.mu, r.mu, l(1.5))),
                de_kind: TransformKind::De3DDagger,
                de_d: l(1.5),
                rescale: Some(r.scale),
                old_de: Some(OldDe {
                    mu: quarter,
                    d: l(1.40),
                }),
            }
        }
        ExampleId::F4 => {
            let d_se = T::FRAC_PI_3();
            BenchmarkExample {
                id,
                f: f4::<T>,
                se_class: Some(class(
                    CaseTag::SeCase1,
                    l(2.0) * pi.cosh(),
                    l(2.0),
                    l(2.0),
                    d_se,
                )),
                de_class: None,
                de_kind: TransformKind::De1,
                de_d: (d_se / pi).asin(),
                rescale: None,
                old_de: None,
            }
        }
    }
}

/// The 201 points `2^e`, `e = -50, -49.5, ..., 50`, ascending.
pub fn half_line_grid<T: Real>() -> Vec<T> {
    (-100..=100)
        .map(|i| T::lit(i as f64 / 2.0).exp2())
        .collect()
}

/// `0` and `+-2^e` for the same exponents: 403 points, ascending.
pub fn whole_line_grid<T: Real>() -> Vec<T> {
    let half = half_line_grid::<T>();
    half.iter()
        .rev()
        .map(|&t| -t)
        .chain(std::iter::once(T::zero()))
        .chain(half.iter().copied())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord<T> {
    pub transform: TransformKind,
    pub n: usize,
    pub h: T,
    pub m: usize,
    pub n_upper: usize,
    pub max_error: T,
    pub bound: Option<T>,
}

/// Smallest even `n >= max(threshold, 2)` up to 100, step 2.
pub fn default_n_values<T: Real>(id: ExampleId, variant: Variant) -> Vec<usize> {
    let start = match variant {
        Variant::Se => 2,
        Variant::De => {
            let ex = example::<T>(id);
            let threshold = match ex.de_selection_class() {
                Ok(c) if c.case() == CaseTag::DeCase3 => c.mu() * T::E() / (T::lit(2.0) * c.d()),
                Ok(c) => c.nu() * T::E() / (T::lit(4.0) * c.d()),
                Err(_) => T::one(),
            };
            let mut s = threshold.ceil().to_usize().unwrap_or(2).max(2);
            if let Some(old) = ex.old_de {
                let t = old.mu * T::E() / (T::lit(4.0) * old.d);
                s = s.max(t.ceil().to_usize().unwrap_or(2));
            }
            s + s % 2
        }
    };
    (start..=100).step_by(2).collect()
}

struct Branch<T> {
    kind: TransformKind,
    class: Option<FunctionClass<T>>,
    bound: Option<ErrorBound<T>>,
    select: Box<dyn Fn(usize) -> Result<SincParams<T>> + Send + Sync>,
    scale: Option<T>,
}

fn branches<T: Real>(ex: &BenchmarkExample<T>, variant: Variant) -> Result<Vec<Branch<T>>> {
    match variant {
        Variant::Se => {
            let c = ex
                .se_class
                .ok_or_else(|| domain(format!("{} has no SE class", ex.id)))?;
            Ok(vec![Branch {
                kind: c.case().transform(),
                class: Some(c),
                bound: Some(c.error_bound()?),
                select: Box::new(move |n| c.select_params(n)),
                scale: None,
            }])
        }
        Variant::De => {
            let sel = ex.de_selection_class()?;
            let mut out = vec![Branch {
                kind: ex.de_kind,
                class: ex.de_class,
                bound: ex.de_class.map(|c| c.error_bound()).transpose()?,
                select: Box::new(move |n| sel.select_params(n)),
                scale: ex.rescale,
            }];
            if let Some(OldDe { mu, d }) = ex.old_de {
                out.push(Branch {
                    kind: TransformKind::De3Old,
                    class: None,
                    bound: None,
                    select: Box::new(move |n| select_params_de3_old(mu, d, n)),
                    scale: None,
                });
            }
            Ok(out)
        }
    }
}

fn run_one<T: Real>(
    f: fn(T) -> T,
    branch: &Branch<T>,
    grid: &[T],
    n: usize,
) -> Result<SweepRecord<T>> {
    let params = (branch.select)(n)?;
    let max_error = match branch.scale {
        Some(s) => {
            let g = move |u: T| f(s * u);
            let u_grid: Vec<T> = grid.iter().map(|&t| t / s).collect();
            Approximant::build(g, branch.kind, params)?.max_error_on_grid(g, &u_grid)?
        }
        None => Approximant::build(f, branch.kind, params)?.max_error_on_grid(f, grid)?,
    };
    let bound = branch.bound.map(|b| b.value(n)).transpose()?;
    Ok(SweepRecord {
        transform: branch.kind,
        n,
        h: params.h,
        m: params.m,
        n_upper: params.n_upper,
        max_error,
        bound,
    })
}

/// Runs `variant` of example `id` for each `n`. Records come out grouped by
/// transform (the bounded branch first), each group in the order of `n_values`.
pub fn sweep<T: Real>(
    id: ExampleId,
    variant: Variant,
    n_values: &[usize],
) -> Result<Vec<SweepRecord<T>>> {
    let ex = example::<T>(id);
    if let Some(&bad) = n_values.iter().find(|&&n| n == 0) {
        return Err(domain(format!("n values must be positive, got {bad}")));
    }
    let grid = ex.grid();
    let mut out = Vec::new();
    for branch in branches(&ex, variant)? {
        debug_assert!(branch
            .class
            .is_none_or(|c| c.case().transform() == branch.kind));
        let records = n_values
            .par_iter()
            .map(|&n| run_one(ex.f, &branch, &grid, n))
            .collect::<Result<Vec<_>>>()?;
        out.extend(records);
    }
    Ok(out)
}
