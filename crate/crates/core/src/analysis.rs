//! Front tracking, speed fits, and the state diagnostics used to check the
//! comparison principle and convergence to the positive steady state.

use crate::error::AnalysisError;
use crate::params::ModelParams;
use crate::simulator::{FieldState, Grid, RunRecord};

/// Minimum number of samples accepted by [`fit_speed`].
pub const MIN_FIT_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Road density `u`.
    Road,
    /// Field density on the road, `v(., 0)`.
    FieldTrace,
}

impl Channel {
    /// Mid-height of the channel's limit state: `nu / (2 mu)` on the road,
    /// `1/2` for the field.
    pub fn default_threshold(&self, params: &ModelParams) -> f64 {
        match self {
            Channel::Road => 0.5 * params.road_equilibrium(),
            Channel::FieldTrace => 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontSeries {
    /// `(t, x_front)` sorted by time.
    pub samples: Vec<(f64, f64)>,
    pub threshold: f64,
    pub channel: Channel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedEstimate {
    pub speed: f64,
    pub intercept: f64,
    pub fit_window: (f64, f64),
    pub residual_rms: f64,
}

/// Rightmost level crossing of `profile` (scanning inward from `x_max`),
/// linearly interpolated between the two bracketing nodes.
pub fn front_position(profile: &[f64], grid: &Grid, threshold: f64) -> Result<f64, AnalysisError> {
    if profile.len() != grid.nx {
        return Err(AnalysisError::LengthMismatch {
            expected: grid.nx,
            got: profile.len(),
        });
    }
    for i in (0..profile.len() - 1).rev() {
        let (a, b) = (profile[i], profile[i + 1]);
        if (a >= threshold) != (b >= threshold) {
            let frac = (threshold - a) / (b - a);
            return Ok(grid.x_min + (i as f64 + frac) * grid.dx);
        }
    }
    Err(AnalysisError::NoCrossing(threshold))
}

/// Front positions of every recorded profile of `channel`. Snapshots with no
/// crossing (before the front forms, or after it leaves the domain) are
/// skipped.
pub fn front_series(record: &RunRecord, grid: &Grid, channel: Channel, threshold: f64) -> FrontSeries {
    let profiles = match channel {
        Channel::Road => &record.road_profiles,
        Channel::FieldTrace => &record.field_traces,
    };
    let samples = profiles
        .iter()
        .filter_map(|(t, p)| front_position(p, grid, threshold).ok().map(|x| (*t, x)))
        .collect();
    FrontSeries {
        samples,
        threshold,
        channel,
    }
}

/// Least-squares line through the samples with
/// `t >= (1 - window_fraction) * t_end`, `t_end` the last sample time.
pub fn fit_speed(series: &FrontSeries, window_fraction: f64) -> Result<SpeedEstimate, AnalysisError> {
    let t_end = series.samples.last().map(|s| s.0).unwrap_or(0.0);
    let t_start = (1.0 - window_fraction.clamp(0.0, 1.0)) * t_end;
    let window: Vec<(f64, f64)> = series.samples.iter().copied().filter(|s| s.0 >= t_start).collect();
    if window.len() < MIN_FIT_SAMPLES {
        return Err(AnalysisError::TooFewSamples {
            needed: MIN_FIT_SAMPLES,
            got: window.len(),
        });
    }
    let n = window.len() as f64;
    let t_mean = window.iter().map(|s| s.0).sum::<f64>() / n;
    let x_mean = window.iter().map(|s| s.1).sum::<f64>() / n;
    let (mut stt, mut stx) = (0.0, 0.0);
    for &(t, x) in &window {
        stt += (t - t_mean) * (t - t_mean);
        stx += (t - t_mean) * (x - x_mean);
    }
    let speed = stx / stt;
    let intercept = x_mean - speed * t_mean;
    let sse: f64 = window
        .iter()
        .map(|&(t, x)| {
            let r = x - (intercept + speed * t);
            r * r
        })
        .sum();
    Ok(SpeedEstimate {
        speed,
        intercept,
        fit_window: (window[0].0, window[window.len() - 1].0),
        residual_rms: (sse / n).sqrt(),
    })
}

/// `a <= b` componentwise in both the road and the field.
pub fn is_ordered(a: &FieldState, b: &FieldState) -> Result<bool, AnalysisError> {
    if a.u.len() != b.u.len() || a.v.len() != b.v.len() || a.ny() != b.ny() {
        return Err(AnalysisError::GridMismatch);
    }
    Ok(a.u.iter().zip(&b.u).all(|(x, y)| x <= y) && a.v.iter().zip(&b.v).all(|(x, y)| x <= y))
}

/// Sup distances to the steady state `(nu/mu, 1)`: road over
/// `|x| <= halfwidth`, field over `|x| <= halfwidth, 0 <= y <= halfwidth`.
pub fn steady_error(state: &FieldState, grid: &Grid, params: &ModelParams, halfwidth: f64) -> (f64, f64) {
    let target_u = params.road_equilibrium();
    let mut eu: f64 = 0.0;
    let mut ev: f64 = 0.0;
    for i in 0..grid.nx {
        if grid.x(i).abs() > halfwidth {
            continue;
        }
        eu = eu.max((state.u[i] - target_u).abs());
        for j in 0..grid.ny {
            if grid.y(j) > halfwidth {
                break;
            }
            ev = ev.max((state.v_at(i, j) - 1.0).abs());
        }
    }
    (eu, ev)
}
