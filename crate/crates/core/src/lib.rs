//! SE-Sinc and DE-Sinc approximation on the real line and the half line,
//! with computable a-priori error bounds.
//!
//! Everything is generic over a [`Real`] scalar. Aliases for `f64` are
//! provided below; with the `quad` feature the same types are available in
//! IEEE binary128 ([`Quad`]), which measures approximation errors well below
//! the double-precision rounding floor.
//!
//! ```
//! use sinc_bound::{experiments::{example, ExampleId}, Approximant};
//!
//! let ex = example::<f64>(ExampleId::F1);
//! let class = ex.se_class.unwrap();
//! let params = class.select_params(20).unwrap();
//! let a = Approximant::build(ex.f, class.case().transform(), params).unwrap();
//! let err = a.max_error_on_grid(ex.f, &ex.grid()).unwrap();
//! assert!(err <= class.error_bound().unwrap().value(20).unwrap());
//! ```

pub mod approximator;
pub mod error;
pub mod experiments;
pub mod real;
pub mod sinc_core;
pub mod theory;
pub mod transforms;
pub mod verify;

pub use approximator::Approximant;
pub use error::{Result, SincError};
pub use real::Real;
pub use sinc_core::{cardinal_sum, sinc_basis, CardinalSum};
pub use theory::{
    bound_value, constant_de, constant_se, envelope, rescale_case3, select_params_de,
    select_params_de3, select_params_de3_old, select_params_se, Case3Rescale, CaseTag, ErrorBound,
    FunctionClass, RateTag, SincParams,
};
pub use transforms::{forward, inverse, Interval, TransformKind};

#[cfg(feature = "quad")]
pub use f128::f128 as Quad;

pub type Approximant64 = Approximant<f64>;
pub type CardinalSum64 = CardinalSum<f64>;
pub type FunctionClass64 = FunctionClass<f64>;
pub type ErrorBound64 = ErrorBound<f64>;
pub type SincParams64 = SincParams<f64>;
pub type SweepRecord64 = experiments::SweepRecord<f64>;

#[cfg(feature = "quad")]
pub type ApproximantQuad = Approximant<Quad>;
#[cfg(feature = "quad")]
pub type SweepRecordQuad = experiments::SweepRecord<Quad>;
