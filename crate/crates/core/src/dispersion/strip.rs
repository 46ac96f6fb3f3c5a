//! Exponential solutions when the field is cut to the strip `0 < y < L`
//! with zero density on `y = L`.
//!
//! The field profile becomes `g1 e^{-b y} + g2 e^{b y}` and the road
//! equation gains the factor `(1 + e^{-2bL}) / (1 - e^{-2bL} + (1 + e^{-2bL}) d b)`
//! in place of `1 / (1 + d b)`. The strip road curve lies above the
//! half-plane one and converges to it as `L` grows.

use crate::error::DispersionError;
use crate::optimize::{bisect_increasing, scan_max};
use crate::params::{c_kpp, ModelParams};

use super::{
    circle_radius, critical_speed, field_minus_raw, require_normalized, require_tol, road_plus_from_disc, Branch,
    CurvePoint, GapMax, Regime, SpeedResult, BETA_TOL, SCAN_POINTS,
};

/// `(1 + e) b / (1 - e + (1 + e) d b)` with `e = e^{-2bL}`, continued to
/// `1 / (L + d)` at `b = 0`.
fn strip_ratio(beta: f64, width: f64, field_d: f64) -> f64 {
    let x = 2.0 * beta * width;
    let e = (-x).exp();
    if x > 1e-3 {
        let one_minus = -(-x).exp_m1();
        (1.0 + e) * beta / (one_minus + (1.0 + e) * field_d * beta)
    } else if beta > 0.0 {
        // (1 - e) / b computed without cancellation
        let q = -(-x).exp_m1() / beta;
        (1.0 + e) / (q + (1.0 + e) * field_d)
    } else {
        1.0 / (width + field_d)
    }
}

fn strip_plus_raw(c: f64, beta: f64, width: f64, params: &ModelParams) -> f64 {
    let road_d = params.road_diffusivity();
    let field_d = params.field_diffusivity();
    let mu = params.road_to_field();
    let disc = c * c + 4.0 * mu * field_d * road_d * strip_ratio(beta, width, field_d);
    road_plus_from_disc(c, disc, road_d)
}

/// Upper root `alpha_D^{+,L}(c, beta)` of the strip road equation; defined
/// for `beta > 0`.
pub fn strip_road_alpha(c: f64, beta: f64, width: f64, params: &ModelParams) -> Result<f64, DispersionError> {
    if !(beta > 0.0) {
        return Err(DispersionError::Domain {
            what: "strip road exponent",
            at: beta,
            reason: "decay rate must be positive",
        });
    }
    if !(width > 0.0) {
        return Err(DispersionError::Domain {
            what: "strip road exponent",
            at: width,
            reason: "strip width must be positive",
        });
    }
    if params.road_diffusivity() <= 0.0 {
        return Err(DispersionError::Domain {
            what: "strip road exponent",
            at: params.road_diffusivity(),
            reason: "road diffusivity must be positive",
        });
    }
    Ok(strip_plus_raw(c, beta, width, params))
}

/// `G_L(c)`: largest gap between the strip road curve and the lower field
/// half-circle over `0 < beta <= beta_KPP(c)`.
pub fn strip_curve_gap(c: f64, width: f64, params: &ModelParams) -> Result<GapMax, DispersionError> {
    let radius = circle_radius(c, params)?;
    let gap = |beta: f64| strip_plus_raw(c, beta, width, params) - field_minus_raw(c, beta, params);
    let peak = scan_max(gap, 0.0, radius, SCAN_POINTS, BETA_TOL);
    Ok(GapMax {
        gap: peak.value,
        beta: peak.x,
    })
}

/// Critical speed `c*^L` of the strip problem, which lies in
/// `(c_KPP, c*)` once `L` is large enough.
pub fn strip_critical_speed(params: &ModelParams, width: f64, tol: f64) -> Result<SpeedResult, DispersionError> {
    require_normalized(params)?;
    require_tol(tol)?;
    if params.road_diffusivity() <= 2.0 * params.field_diffusivity() {
        return Err(DispersionError::SubThresholdStrip);
    }
    if !(width > 0.0) {
        return Err(DispersionError::Domain {
            what: "strip critical speed",
            at: width,
            reason: "strip width must be positive",
        });
    }
    let full = critical_speed(params, tol)?;
    let ckpp = c_kpp(params);
    let gap = |c: f64| strip_curve_gap(c, width, params).map(|g| g.gap);
    // a narrow strip lifts the road curve so far that it already meets the
    // circle at c_KPP: no tangency inside (c_KPP, c*)
    if gap(ckpp)? >= 0.0 {
        return Err(DispersionError::NoTangency {
            width,
            c_star: full.c_star,
        });
    }
    let mut hi = full.bracket.1;
    while gap(hi)? < 0.0 {
        hi += full.c_star - ckpp;
    }
    let (lo, hi) = bisect_increasing(|c| gap(c).unwrap_or(f64::NAN), ckpp, hi, tol);
    let c_star = 0.5 * (lo + hi);
    let at = strip_curve_gap(c_star, width, params)?;
    Ok(SpeedResult {
        c_star,
        regime: Regime::SuperThreshold,
        bracket: (lo, hi),
        tol,
        tangency: Some(CurvePoint {
            beta: at.beta,
            alpha: strip_plus_raw(c_star, at.beta, width, params),
            branch: Branch::RoadStripPlus,
        }),
    })
}
