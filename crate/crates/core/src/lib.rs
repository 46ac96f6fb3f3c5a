//! Spreading of a Fisher-KPP population in a half-plane ("field") bordered
//! by a line of fast diffusion ("road").
//!
//! The crate computes the asymptotic spreading speed along the road from the
//! dispersion relation of exponential solutions ([`dispersion`]), simulates
//! the coupled road-field Cauchy problem with a monotone explicit scheme
//! ([`simulator`]), and measures fronts and long-time behaviour of those
//! simulations ([`analysis`]).
//!
//! ```
//! use roadfield::{critical_speed, ModelParams, Regime};
//!
//! let slow_road = ModelParams::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
//! assert_eq!(critical_speed(&slow_road, 1e-8).unwrap().c_star, 2.0);
//!
//! let fast_road = ModelParams::new(10.0, 1.0, 1.0, 1.0, 1.0).unwrap();
//! let result = critical_speed(&fast_road, 1e-8).unwrap();
//! assert_eq!(result.regime, Regime::SuperThreshold);
//! assert!(result.c_star > 3.0);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod dispersion;
pub mod error;
pub mod io;
mod optimize;
pub mod params;
pub mod presets;
pub mod simulator;

pub use analysis::{
    fit_speed, front_position, front_series, is_ordered, steady_error, Channel, FrontSeries, SpeedEstimate,
};
pub use config::{ParamConfig, ReactionSpec};
pub use dispersion::{
    amplitude_ratio, circle_radius, critical_speed, curve_gap, curve_intersections, field_alpha, limit_bounds,
    limit_speed, road_alpha, road_beta_min, spreading_speed, strip_critical_speed, strip_road_alpha,
    upper_branch_threshold, Branch, CurvePoint, ExponentialAnsatz, GammaPlusClassification, Regime, Sign, SpeedResult,
};
pub use error::{AnalysisError, DispersionError, ParamError, SimError};
pub use optimize::Peak;
pub use params::{
    c_kpp, check_kpp, normalize_nu, symmetrize_full_plane, KppCheck, KppRule, ModelParams, ReactionFunction,
};
pub use presets::{Experiment, Preset, PresetError, Sizing};
pub use simulator::{
    cfl_dt, init_state, run, run_from, step, total_mass, FieldState, Grid, InitialDatum, RunRecord, Stepper,
};
