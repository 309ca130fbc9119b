//! Bound formulas, the smoothing functions behind them, and certification of
//! their numerical constants.

pub mod constants;
mod derive;
mod formulas;
mod smoothing;

pub use derive::{
    certify_constants, derive_main_constants, remark_estimates, Certification, DerivedConstants,
    Relation, RemarkEstimates,
};
pub use formulas::{
    cyclotomic_relative_bound, isogeny_bound, main_bound, main_bound_from_logs, simplified_bound,
    zm_bound, BoundInput, SimplifiedBound,
};
pub use smoothing::{limit_term, s_functions, SmoothingParams, SmoothingValues};
