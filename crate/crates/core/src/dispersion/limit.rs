//! Large road diffusivity limit of `c* / sqrt(D)`.
//!
//! Rescaling `c = sqrt(D) c~`, `alpha = a~ / sqrt(D)` and letting `D -> inf`
//! leaves the road curve with unit diffusivity and replaces the circle by
//! the parabola `a = (f'(0) + d b^2) / c`.

use crate::error::DispersionError;
use crate::optimize::{bisect_increasing, scan_max};
use crate::params::ModelParams;

use super::{require_normalized, require_tol, road_plus_raw, GapMax, BETA_TOL, SCAN_POINTS};

/// Proven window `[sqrt(4 mu^2 + f'(0)^2) - 2 mu, f'(0)]` for
/// `lim c*^2 / D`.
pub fn limit_bounds(params: &ModelParams) -> (f64, f64) {
    let mu = params.road_to_field();
    let rate = params.growth_rate();
    ((4.0 * mu * mu + rate * rate).sqrt() - 2.0 * mu, rate)
}

/// `G_inf(c)`: largest gap between the unit-diffusivity road curve and the
/// limiting parabola.
pub fn limit_gap(c: f64, params: &ModelParams) -> GapMax {
    let field_d = params.field_diffusivity();
    let mu = params.road_to_field();
    let rate = params.growth_rate();
    let lo = -c * c / (field_d * (c * c + 4.0 * mu));
    // beyond this decay rate the parabola clears the road curve's supremum
    let sup = 0.5 * (c + (c * c + 4.0 * mu).sqrt());
    let hi = ((c * sup - rate).max(0.0) / field_d).sqrt();
    let gap = |beta: f64| road_plus_raw(c, beta, 1.0, mu, field_d) - (rate + field_d * beta * beta) / c;
    let peak = scan_max(gap, lo, hi.max(lo), SCAN_POINTS, BETA_TOL);
    GapMax {
        gap: peak.value,
        beta: peak.x,
    }
}

/// `lim_{D -> inf} c*(D) / sqrt(D)`: the speed at which the limiting
/// parabola touches the rescaled road curve.
pub fn limit_speed(params: &ModelParams, tol: f64) -> Result<f64, DispersionError> {
    require_normalized(params)?;
    require_tol(tol)?;
    let gap = |c: f64| limit_gap(c, params).gap;
    let (mut lo, mut hi) = (1.0, 1.0);
    for _ in 0..200 {
        if gap(lo) < 0.0 {
            break;
        }
        lo *= 0.5;
    }
    for _ in 0..200 {
        if gap(hi) >= 0.0 {
            break;
        }
        hi *= 2.0;
    }
    if !(gap(lo) < 0.0 && gap(hi) >= 0.0) {
        return Err(DispersionError::BracketFailure {
            what: "limit speed",
            limit: hi,
        });
    }
    let (lo, hi) = bisect_increasing(gap, lo, hi, tol);
    Ok(0.5 * (lo + hi))
}
