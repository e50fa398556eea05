//! SE/DE-Sinc approximants: sample `f` at transformed nodes, evaluate the
//! cardinal sum at `phi^{-1}(t)`.

use rayon::prelude::*;

use crate::error::{domain, Result, SincError};
use crate::real::Real;
use crate::sinc_core::CardinalSum;
use crate::theory::SincParams;
use crate::transforms::{forward, inverse, TransformKind};

#[derive(Clone, Debug)]
pub struct Approximant<T> {
    kind: TransformKind,
    params: SincParams<T>,
    sum: CardinalSum<T>,
}

fn node<T: Real>(kind: TransformKind, k: i64, h: T) -> Result<T> {
    forward(kind, T::from_index(k) * h)
}

fn sample<T: Real>(f: &impl Fn(T) -> T, kind: TransformKind, k: i64, h: T) -> Result<T> {
    let t = node(kind, k, h)?;
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SincError::NonFiniteNode {
            k,
            t: t.to_f64_lossy(),
        })
    }
}

fn check_params<T: Real>(params: &SincParams<T>) -> Result<()> {
    if !(params.h.is_finite() && params.h > T::zero()) {
        return Err(domain(format!(
            "mesh size must be positive and finite, got {}",
            params.h
        )));
    }
    Ok(())
}

impl<T: Real> Approximant<T> {
    /// Samples `f` at `phi(kh)` for `k = -M..=N`, in order of increasing `k`.
    pub fn build(f: impl Fn(T) -> T, kind: TransformKind, params: SincParams<T>) -> Result<Self> {
        check_params(&params)?;
        let values = (params.lo()..=params.hi())
            .map(|k| sample(&f, kind, k, params.h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(kind, params, values)
    }

    /// Same as [`build`](Self::build) but samples the nodes on the rayon pool.
    /// `f` must be free of side effects whose order matters.
    pub fn build_parallel(
        f: impl Fn(T) -> T + Sync,
        kind: TransformKind,
        params: SincParams<T>,
    ) -> Result<Self> {
        check_params(&params)?;
        let values = (params.lo()..=params.hi())
            .into_par_iter()
            .map(|k| sample(&f, kind, k, params.h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(kind, params, values)
    }

    fn from_values(kind: TransformKind, params: SincParams<T>, values: Vec<T>) -> Result<Self> {
        let sum = CardinalSum::new(params.h, params.lo(), params.hi(), values)?;
        Ok(Self { kind, params, sum })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn params(&self) -> &SincParams<T> {
        &self.params
    }

    /// `f(phi(kh))` for `k = -M..=N`.
    pub fn node_values(&self) -> &[T] {
        self.sum.values()
    }

    /// The point `phi(kh)`.
    pub fn node(&self, k: i64) -> Result<T> {
        if k < self.params.lo() || k > self.params.hi() {
            return Err(domain(format!(
                "node index {k} outside {}..={}",
                self.params.lo(),
                self.params.hi()
            )));
        }
        node(self.kind, k, self.params.h)
    }

    pub fn evaluate(&self, t: T) -> Result<T> {
        let x = inverse(self.kind, t)?;
        self.sum.evaluate(x)
    }

    /// `max |f(t) - approximant(t)|` over `grid`.
    pub fn max_error_on_grid(&self, f: impl Fn(T) -> T, grid: &[T]) -> Result<T> {
        if grid.is_empty() {
            return Err(domain("evaluation grid is empty"));
        }
        let mut worst = T::zero();
        for &t in grid {
            let exact = f(t);
            if !exact.is_finite() {
                return Err(domain(format!("target function is not finite at t = {t}")));
            }
            let err = (exact - self.evaluate(t)?).abs();
            if err.is_nan() {
                return Err(domain(format!("approximation error is NaN at t = {t}")));
            }
            worst = worst.max(err);
        }
        Ok(worst)
    }
}

pub fn build_approximant<T: Real>(
    f: impl Fn(T) -> T,
    kind: TransformKind,
    params: SincParams<T>,
) -> Result<Approximant<T>> {
    Approximant::build(f, kind, params)
}

pub fn evaluate<T: Real>(a: &Approximant<T>, t: T) -> Result<T> {
    a.evaluate(t)
}

pub fn max_error_on_grid<T: Real>(a: &Approximant<T>, f: impl Fn(T) -> T, grid: &[T]) -> Result<T> {
    a.max_error_on_grid(f, grid)
}
