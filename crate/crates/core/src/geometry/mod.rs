//! Spectrum classification, deflation components, the canonical projection,
//! tubular coordinates and neighbourhood calibration.

pub mod calibrate;
pub mod projection;
pub mod spectrum;

pub use calibrate::{calibrate_neighborhoods, sample_base, sample_tube, NeighborhoodParams, TubeSample};
pub use projection::{
    deflation_component, double_deflation_gap, project, tubular_coords, tubular_inverse,
    TubularPoint,
};
pub use spectrum::{classify_spectrum, ApClass, SpectrumInfo};
