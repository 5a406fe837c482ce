//! Scenario drivers behind the `tridiag-shift` command line: single steps,
//! trajectory scans, the `n = 3` phase portrait, calibration and the property
//! suites. Every driver returns data; [`cli`] handles files and exit codes.

pub mod calibrate;
pub mod cli;
pub mod config;
pub mod fiber;
pub mod format;
pub mod hexagon;
pub mod rate_scan;
pub mod step;
pub mod verify;
pub mod witness;

pub use calibrate::{cmd_calibrate, CalibrationReport};
pub use config::ExperimentConfig;
pub use fiber::{cubic_fit, fiber_exponent, fiber_response, ratio3_spread, CubicFit, FiberPoint};
pub use hexagon::{cmd_hexagon, Hexagon, HexagonSummary};
pub use rate_scan::{cmd_rate_scan, quadratic_episode, QuadraticEpisode, RateScan};
pub use step::{cmd_step, ShiftSource, StepReport};
pub use verify::{cmd_verify, run_suite, VerifyOptions, VerifyReport};
pub use witness::{rotated_witness_base, witness_candidates, witness_start};
