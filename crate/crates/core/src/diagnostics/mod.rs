//! Iteration traces, rate estimates, height functions and the Parlett bound.

pub mod height;
pub mod rates;
pub mod trace;

pub use height::{calibrate_delta_h, height, HeightCalibration, HeightSpec};
pub use rates::{
    exception_count, exception_count_of, ls_slope, parlett_check, rate_exponents,
    rate_exponents_in, rate_exponents_of, uniform_deflation_bound, RateBand, RateEstimate,
};
pub use trace::{iterate, IterateOptions, IterationTrace, StepRecord, Terminal, RATIO_FLOOR};
