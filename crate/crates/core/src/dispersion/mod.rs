//! Exponential solutions of the linearized road-field system and the
//! spreading speed they determine.
//!
//! A travelling exponential `(u, v) = (e^{a(x+ct)}, g e^{a(x+ct) - b y})`
//! solves the linearization at zero iff
//!
//! ```text
//! -D a^2 + c a = g - mu
//! -d a^2 + c a = f'(0) + d b^2
//!  d b g       = mu - g
//! ```
//!
//! In the `(b, a)` plane the first equation (with `g = mu / (1 + d b)`) is
//! the road curve, the second the field circle of centre `(0, c / 2d)`. The
//! spreading speed is the smallest `c` at which the two meet. All solvers in
//! this module expect parameters normalized to unit field-to-road rate (see
//! [`crate::params::normalize_nu`]); [`spreading_speed`] does that for you.

mod limit;
mod strip;
mod threshold;

pub use limit::{limit_bounds, limit_gap, limit_speed};
pub use strip::{strip_critical_speed, strip_curve_gap, strip_road_alpha};
pub use threshold::{upper_branch_threshold, GammaPlusClassification};

use crate::error::DispersionError;
use crate::optimize::{bisect_increasing, scan_max};
use crate::params::{c_kpp, normalize_nu, ModelParams};

/// Default bisection tolerance on speeds.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Grid points of the dense scan preceding golden-section refinement.
pub const SCAN_POINTS: usize = 2048;
/// Golden-section tolerance in the decay rate.
pub const BETA_TOL: f64 = 1e-12;

/// Slack, relative to `c^2`, under which a negative discriminant is treated
/// as rounding noise at a curve end point.
const ROUNDING: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    RoadPlus,
    RoadMinus,
    FieldPlus,
    FieldMinus,
    RoadStripPlus,
    LimitPlus,
}

/// A point `(beta, alpha)` on one of the dispersion curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub beta: f64,
    pub alpha: f64,
    pub branch: Branch,
}

/// Exponent triple of a travelling exponential solution at speed `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialAnsatz {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c: f64,
}

impl ExponentialAnsatz {
    /// Residuals of the road, field and boundary equations, in that order.
    pub fn residuals(&self, params: &ModelParams) -> [f64; 3] {
        let (a, b, g, c) = (self.alpha, self.beta, self.gamma, self.c);
        let road_d = params.road_diffusivity();
        let field_d = params.field_diffusivity();
        let mu = params.road_to_field();
        [
            -road_d * a * a + c * a - (g - mu),
            -field_d * a * a + c * a - (params.growth_rate() + field_d * b * b),
            field_d * b * g - (mu - g),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `D <= 2d`: the road does not speed up the invasion.
    SubThreshold,
    /// `D > 2d`: spreading is strictly faster than the field alone.
    SuperThreshold,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SubThreshold => "SubThreshold",
            Regime::SuperThreshold => "SuperThreshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedResult {
    pub c_star: f64,
    pub regime: Regime,
    /// Final bisection bracket; degenerate `(c_kpp, c_kpp)` below threshold.
    pub bracket: (f64, f64),
    pub tol: f64,
    /// Point where the road curve touches the lower field half-circle.
    pub tangency: Option<CurvePoint>,
}

/// Maximum of the curve gap over the admissible decay rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapMax {
    pub gap: f64,
    pub beta: f64,
}

pub(crate) fn require_normalized(params: &ModelParams) -> Result<(), DispersionError> {
    if params.is_normalized() {
        Ok(())
    } else {
        Err(DispersionError::NotNormalized(params.field_to_road()))
    }
}

pub(crate) fn require_tol(tol: f64) -> Result<(), DispersionError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(DispersionError::BadTolerance(tol))
    }
}

fn clamp_rounding(disc: f64, scale: f64) -> Option<f64> {
    if disc >= 0.0 {
        Some(disc)
    } else if disc >= -ROUNDING * scale {
        Some(0.0)
    } else {
        None
    }
}

/// Left end `beta_D(c) = -c^2 / (d (c^2 + 4 mu D))` of the road curve.
pub fn road_beta_min(c: f64, params: &ModelParams) -> f64 {
    beta_min_raw(
        c,
        params.road_diffusivity(),
        params.road_to_field(),
        params.field_diffusivity(),
    )
}

fn beta_min_raw(c: f64, road_d: f64, mu: f64, field_d: f64) -> f64 {
    -c * c / (field_d * (c * c + 4.0 * mu * road_d))
}

/// Discriminant `c^2 + 4 mu d D b / (1 + d b)` of the road equation, written
/// as `d (c^2 + 4 mu D) (b - beta_D) / (1 + d b)` so that it vanishes
/// exactly at the left end of the curve.
fn road_discriminant(c: f64, beta: f64, road_d: f64, mu: f64, field_d: f64) -> f64 {
    if beta >= 0.0 {
        c * c + 4.0 * mu * field_d * road_d * (beta / (1.0 + field_d * beta))
    } else {
        let left = beta_min_raw(c, road_d, mu, field_d);
        field_d * (c * c + 4.0 * mu * road_d) * (beta - left) / (1.0 + field_d * beta)
    }
}

/// Upper road root for a given discriminant; shared with the strip curve so
/// that both agree bit for bit when the strip correction underflows.
pub(crate) fn road_plus_from_disc(c: f64, disc: f64, road_d: f64) -> f64 {
    (c + disc.sqrt()) / (2.0 * road_d)
}

/// Upper road root at a decay rate already known to be admissible
/// (negative discriminants from rounding are clamped).
pub(crate) fn road_plus_raw(c: f64, beta: f64, road_d: f64, mu: f64, field_d: f64) -> f64 {
    let disc = road_discriminant(c, beta, road_d, mu, field_d).max(0.0);
    road_plus_from_disc(c, disc, road_d)
}

/// Boundary amplitude `gamma = mu / (1 + d beta)`.
pub fn amplitude_ratio(beta: f64, params: &ModelParams) -> Result<f64, DispersionError> {
    let denom = 1.0 + params.field_diffusivity() * beta;
    if denom <= 0.0 {
        return Err(DispersionError::Domain {
            what: "amplitude ratio",
            at: beta,
            reason: "decay rate must exceed -1/d",
        });
    }
    Ok(params.road_to_field() / denom)
}

/// Roots `alpha_D^{+/-}(c, beta)` of the road equation.
pub fn road_alpha(c: f64, beta: f64, params: &ModelParams, sign: Sign) -> Result<f64, DispersionError> {
    let road_d = params.road_diffusivity();
    let field_d = params.field_diffusivity();
    let mu = params.road_to_field();
    if road_d <= 0.0 {
        return Err(DispersionError::Domain {
            what: "road exponent",
            at: road_d,
            reason: "road diffusivity must be positive",
        });
    }
    if 1.0 + field_d * beta <= 0.0 {
        return Err(DispersionError::Domain {
            what: "road exponent",
            at: beta,
            reason: "decay rate must exceed -1/d",
        });
    }
    let disc =
        clamp_rounding(road_discriminant(c, beta, road_d, mu, field_d), c * c).ok_or(DispersionError::Domain {
            what: "road exponent",
            at: beta,
            reason: "decay rate left of the road curve",
        })?;
    let root = disc.sqrt();
    Ok(match sign {
        Sign::Plus => road_plus_from_disc(c, disc, road_d),
        // c - root loses nothing while root <= c/2; otherwise use the
        // product of roots (g - mu) / D
        Sign::Minus if 2.0 * root <= c => (c - root) / (2.0 * road_d),
        Sign::Minus => -2.0 * mu * field_d * beta / ((1.0 + field_d * beta) * (c + root)),
    })
}

/// Radius `beta_KPP(c) = sqrt(c^2 - c_KPP^2) / (2d)` of the field circle.
pub fn circle_radius(c: f64, params: &ModelParams) -> Result<f64, DispersionError> {
    let excess = c * c - c_kpp_sq(params);
    let excess = clamp_rounding(excess, c * c).ok_or(DispersionError::Domain {
        what: "circle radius",
        at: c,
        reason: "speed below c_KPP",
    })?;
    Ok(excess.sqrt() / (2.0 * params.field_diffusivity()))
}

fn c_kpp_sq(params: &ModelParams) -> f64 {
    4.0 * params.field_diffusivity() * params.growth_rate()
}

fn field_discriminant(c: f64, beta: f64, params: &ModelParams) -> f64 {
    let field_d = params.field_diffusivity();
    c * c - c_kpp_sq(params) - 4.0 * field_d * field_d * beta * beta
}

/// Roots `alpha_d^{+/-}(c, beta)` of the field equation (upper and lower
/// half of the circle).
pub fn field_alpha(c: f64, beta: f64, params: &ModelParams, sign: Sign) -> Result<f64, DispersionError> {
    let disc = clamp_rounding(field_discriminant(c, beta, params), c * c).ok_or(DispersionError::Domain {
        what: "field exponent",
        at: beta,
        reason: "decay rate outside the field circle",
    })?;
    Ok(field_alpha_from_disc(c, beta, disc, params, sign))
}

fn field_alpha_from_disc(c: f64, beta: f64, disc: f64, params: &ModelParams, sign: Sign) -> f64 {
    let field_d = params.field_diffusivity();
    let root = disc.sqrt();
    match sign {
        Sign::Plus => (c + root) / (2.0 * field_d),
        Sign::Minus if 2.0 * root <= c => (c - root) / (2.0 * field_d),
        Sign::Minus => 2.0 * (params.growth_rate() + field_d * beta * beta) / (c + root),
    }
}

/// Lower half-circle, clamped: callers guarantee `|beta| <= beta_KPP(c)` up
/// to rounding.
pub(crate) fn field_minus_raw(c: f64, beta: f64, params: &ModelParams) -> f64 {
    let disc = field_discriminant(c, beta, params).max(0.0);
    field_alpha_from_disc(c, beta, disc, params, Sign::Minus)
}

/// `G(c)`: largest vertical gap `alpha_D^+ - alpha_d^-` over the decay
/// rates where both curves exist. `G(c) >= 0` iff the upper road branch
/// reaches the lower half-circle; `G` is increasing in `c`.
pub fn curve_gap(c: f64, params: &ModelParams) -> Result<GapMax, DispersionError> {
    let road_d = params.road_diffusivity();
    if road_d <= 0.0 {
        return Err(DispersionError::Domain {
            what: "curve gap",
            at: road_d,
            reason: "road diffusivity must be positive",
        });
    }
    let radius = circle_radius(c, params)?;
    let lo = road_beta_min(c, params).max(-radius);
    let (mu, field_d) = (params.road_to_field(), params.field_diffusivity());
    let gap = |beta: f64| road_plus_raw(c, beta, road_d, mu, field_d) - field_minus_raw(c, beta, params);
    let peak = scan_max(gap, lo, radius, SCAN_POINTS, BETA_TOL);
    Ok(GapMax {
        gap: peak.value,
        beta: peak.x,
    })
}

/// Asymptotic spreading speed `c*` for normalized parameters.
///
/// Below the threshold `D <= 2d` this is exactly `c_KPP`. Above it, the
/// speed at which the road curve becomes tangent to the field circle is
/// located by bisection on [`curve_gap`], with the upper end of the bracket
/// found by doubling the excess over `c_KPP`.
pub fn critical_speed(params: &ModelParams, tol: f64) -> Result<SpeedResult, DispersionError> {
    require_normalized(params)?;
    require_tol(tol)?;
    let ckpp = c_kpp(params);
    if params.road_diffusivity() <= 2.0 * params.field_diffusivity() {
        return Ok(SpeedResult {
            c_star: ckpp,
            regime: Regime::SubThreshold,
            bracket: (ckpp, ckpp),
            tol,
            tangency: None,
        });
    }
    let gap = |c: f64| curve_gap(c, params).map(|g| g.gap);

    let limit = 2f64.powi(60) * ckpp;
    let mut lo = ckpp;
    let mut step = 1.0;
    let mut hi = ckpp + step;
    while gap(hi)? <= 0.0 {
        lo = hi;
        step *= 2.0;
        hi = ckpp + step;
        if hi > limit {
            return Err(DispersionError::BracketFailure {
                what: "critical speed",
                limit,
            });
        }
    }
    let (lo, hi) = bisect_increasing(|c| gap(c).unwrap_or(f64::NAN), lo, hi, tol);
    let c_star = 0.5 * (lo + hi);
    let at = curve_gap(c_star, params)?;
    let tangency = CurvePoint {
        beta: at.beta,
        alpha: field_minus_raw(c_star, at.beta, params),
        branch: Branch::FieldMinus,
    };
    Ok(SpeedResult {
        c_star,
        regime: Regime::SuperThreshold,
        bracket: (lo, hi),
        tol,
        tangency: Some(tangency),
    })
}

/// Spreading speed for arbitrary field-to-road rate: normalizes, solves,
/// and maps speeds back to the original time scale.
pub fn spreading_speed(params: &ModelParams, tol: f64) -> Result<SpeedResult, DispersionError> {
    let nu = params.field_to_road();
    let mut result = critical_speed(&normalize_nu(params), tol / nu)?;
    if result.regime == Regime::SubThreshold {
        // exact in original units, without a round trip through nu
        let ckpp = c_kpp(params);
        result.c_star = ckpp;
        result.bracket = (ckpp, ckpp);
    } else {
        result.c_star *= nu;
        result.bracket = (result.bracket.0 * nu, result.bracket.1 * nu);
    }
    // exponents are per length and unchanged by the time rescaling
    result.tol = tol;
    Ok(result)
}

/// Signed position of `(beta, alpha)` relative to the road curve: positive
/// strictly between its branches, negative outside, `-inf` where the
/// boundary amplitude would be negative.
fn road_side(c: f64, beta: f64, alpha: f64, params: &ModelParams) -> f64 {
    let field_d = params.field_diffusivity();
    let denom = 1.0 + field_d * beta;
    if denom <= 0.0 {
        return f64::NEG_INFINITY;
    }
    -params.road_diffusivity() * alpha * alpha + c * alpha + params.road_to_field() * field_d * beta / denom
}

/// Crossings of the road curve with the full field circle at speed `c`,
/// found from sign changes of the road equation along the circle
/// (`n_samples` angles) refined by bisection.
pub fn curve_intersections(c: f64, params: &ModelParams, n_samples: usize) -> Result<Vec<CurvePoint>, DispersionError> {
    let radius = circle_radius(c, params)?;
    let centre = c / (2.0 * params.field_diffusivity());
    let point = |theta: f64| (radius * theta.sin(), centre - radius * theta.cos());
    let side = |theta: f64| {
        let (b, a) = point(theta);
        road_side(c, b, a, params)
    };
    let n = n_samples.max(8);
    let step = std::f64::consts::TAU / n as f64;
    let mut found = Vec::new();
    let mut prev_theta = 0.0;
    let mut prev = side(0.0);
    for k in 1..=n {
        let theta = k as f64 * step;
        let cur = side(theta);
        if (prev < 0.0) != (cur < 0.0) {
            let (mut lo, mut hi) = (prev_theta, theta);
            let lo_negative = prev < 0.0;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if (side(mid) < 0.0) == lo_negative {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let (beta, alpha) = point(0.5 * (lo + hi));
            let branch = if alpha <= centre {
                Branch::FieldMinus
            } else {
                Branch::FieldPlus
            };
            found.push(CurvePoint { beta, alpha, branch });
        }
        prev = cur;
        prev_theta = theta;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn p(road_d: f64) -> ModelParams {
        ModelParams::new(road_d, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn road_beta_min_examples() {
        assert_eq!(road_beta_min(2.0, &p(1.0)), -0.5);
        assert_eq!(road_beta_min(2.0, &p(4.0)), -0.2);
        assert!((road_beta_min(1e6, &p(1.0)) + 1.0).abs() <= 1e-6);
    }

    #[test]
    fn circle_radius_examples() {
        let q = p(1.0);
        assert_eq!(circle_radius(2.0, &q).unwrap(), 0.0);
        assert_eq!(circle_radius(2.5, &q).unwrap(), 0.75);
        assert_abs_diff_eq!(circle_radius(8f64.sqrt(), &q).unwrap(), 1.0, epsilon = 1e-15);
        assert!(circle_radius(1.9, &q).is_err());
    }

    #[test]
    fn road_alpha_examples() {
        let q = p(1.0);
        assert_eq!(road_alpha(2.0, 0.0, &q, Sign::Plus).unwrap(), 2.0);
        assert_eq!(road_alpha(2.0, 0.0, &q, Sign::Minus).unwrap(), 0.0);
        assert_eq!(road_alpha(2.0, -0.5, &q, Sign::Plus).unwrap(), 1.0);
        assert_eq!(road_alpha(2.0, -0.5, &q, Sign::Minus).unwrap(), 1.0);
        assert!(road_alpha(2.0, -0.6, &q, Sign::Plus).is_err());
        assert!(road_alpha(2.0, -1.5, &q, Sign::Plus).is_err());
        assert!(road_alpha(2.0, 0.0, &p(0.0), Sign::Plus).is_err());
    }

    #[test]
    fn field_alpha_examples() {
        let q = p(1.0);
        assert_eq!(field_alpha(2.0, 0.0, &q, Sign::Plus).unwrap(), 1.0);
        assert_eq!(field_alpha(2.0, 0.0, &q, Sign::Minus).unwrap(), 1.0);
        assert_eq!(field_alpha(2.5, 0.0, &q, Sign::Minus).unwrap(), 0.5);
        assert!(field_alpha(2.5, 0.8, &q, Sign::Minus).is_err());
    }

    #[test]
    fn amplitude_ratio_examples() {
        assert_eq!(amplitude_ratio(0.0, &p(1.0)).unwrap(), 1.0);
        assert_eq!(amplitude_ratio(1.0, &p(1.0)).unwrap(), 0.5);
        let q = ModelParams::new(1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(amplitude_ratio(-0.5, &q).unwrap(), 4.0);
        assert!(amplitude_ratio(-1.0, &q).is_err());
    }

    #[test]
    fn sub_threshold_is_exact() {
        for d in [0.0, 0.5, 1.0, 2.0] {
            let r = critical_speed(&p(d), DEFAULT_TOL).unwrap();
            assert_eq!(r.c_star, 2.0);
            assert_eq!(r.regime, Regime::SubThreshold);
        }
    }

    #[test]
    fn super_threshold_brackets_and_tangency() {
        let q = p(4.0);
        let r = critical_speed(&q, DEFAULT_TOL).unwrap();
        assert_eq!(r.regime, Regime::SuperThreshold);
        assert!(r.bracket.1 - r.bracket.0 <= DEFAULT_TOL);
        assert!(r.c_star > 2.0);
        let t = r.tangency.unwrap();
        assert_eq!(t.branch, Branch::FieldMinus);
        let road = road_alpha(r.c_star, t.beta, &q, Sign::Plus).unwrap();
        assert!((road - t.alpha).abs() < 1e-6);
        assert!(curve_gap(r.c_star - 10.0 * DEFAULT_TOL, &q).unwrap().gap < 0.0);
        assert!(curve_gap(r.c_star + 10.0 * DEFAULT_TOL, &q).unwrap().gap > 0.0);
    }

    #[test]
    fn critical_speed_rejects_unnormalized() {
        let q = ModelParams::new(4.0, 1.0, 1.0, 2.0, 1.0).unwrap();
        assert!(matches!(
            critical_speed(&q, 1e-8),
            Err(DispersionError::NotNormalized(_))
        ));
        assert!(matches!(
            critical_speed(&p(4.0), 0.0),
            Err(DispersionError::BadTolerance(_))
        ));
    }

    #[test]
    fn gap_at_threshold_is_nonnegative() {
        // D = 2d: the circle centre lies on the road curve
        let q = p(2.0);
        for c in [2.0 + 1e-9, 2.01, 2.5, 4.0, 10.0] {
            assert!(curve_gap(c, &q).unwrap().gap >= 0.0, "c = {c}");
        }
    }

    #[test]
    fn crossing_count_above_critical_speed() {
        let q = p(4.0);
        let c_star = critical_speed(&q, DEFAULT_TOL).unwrap().c_star;
        assert!(curve_intersections(c_star - 0.01, &q, 4096).unwrap().is_empty());
        for c in [c_star + 0.01, c_star + 0.5, 3.0, 6.0, 20.0] {
            let pts = curve_intersections(c, &q, 4096).unwrap();
            assert_eq!(pts.len(), 2, "c = {c}: {pts:?}");
        }
    }

    #[test]
    fn spreading_speed_scales_with_nu() {
        // time rescaling: speed of the original system = nu * normalized speed
        let orig = ModelParams::new(8.0, 2.0, 2.0, 2.0, 2.0).unwrap();
        let normalized = ModelParams::new(4.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let a = spreading_speed(&orig, 1e-10).unwrap().c_star;
        let b = critical_speed(&normalized, 1e-10).unwrap().c_star;
        assert!((a - 2.0 * b).abs() <= 1e-9);
    }

    proptest! {
        #[test]
        fn exponents_solve_their_equations(
            road_d in 0.1f64..50.0, field_d in 0.1f64..5.0, mu in 0.1f64..5.0,
            rate in 0.1f64..5.0, excess in 0.0f64..5.0, frac in 0.0f64..1.0,
        ) {
            let q = ModelParams::new(road_d, field_d, mu, 1.0, rate).unwrap();
            let c = c_kpp(&q) + excess;
            let radius = circle_radius(c, &q).unwrap();
            let beta_f = -radius + 2.0 * radius * frac;
            for sign in [Sign::Plus, Sign::Minus] {
                let a = field_alpha(c, beta_f, &q, sign).unwrap();
                let ans = ExponentialAnsatz { alpha: a, beta: beta_f, gamma: 0.0, c };
                let scale = 1.0 + c * a + rate + field_d * beta_f * beta_f;
                prop_assert!(ans.residuals(&q)[1].abs() <= 1e-10 * scale);
            }
            let left = road_beta_min(c, &q);
            let beta_r = left + (3.0 - left) * frac;
            let gamma = amplitude_ratio(beta_r, &q).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let a = road_alpha(c, beta_r, &q, sign).unwrap();
                let ans = ExponentialAnsatz { alpha: a, beta: beta_r, gamma, c };
                let r = ans.residuals(&q);
                let scale = 1.0 + road_d * a * a + c * a.abs() + gamma + mu;
                prop_assert!(r[0].abs() <= 1e-10 * scale);
                prop_assert!(r[2].abs() <= 1e-10 * (gamma + mu));
            }
        }

        #[test]
        fn leftmost_point_is_exact(road_d in 0.1f64..100.0, c in 0.1f64..50.0, mu in 0.1f64..5.0) {
            let q = ModelParams::new(road_d, 1.0, mu, 1.0, 1.0).unwrap();
            let b = road_beta_min(c, &q);
            let half = c / (2.0 * road_d);
            prop_assert_eq!(road_alpha(c, b, &q, Sign::Plus).unwrap(), half);
            prop_assert_eq!(road_alpha(c, b, &q, Sign::Minus).unwrap(), half);
        }

        #[test]
        fn circle_identities(field_d in 0.1f64..5.0, rate in 0.1f64..5.0, excess in 0.0f64..5.0, frac in 0.0f64..1.0) {
            let q = ModelParams::new(1.0, field_d, 1.0, 1.0, rate).unwrap();
            let c = c_kpp(&q) + excess;
            let radius = circle_radius(c, &q).unwrap();
            let beta = radius * (2.0 * frac - 1.0);
            let plus = field_alpha(c, beta, &q, Sign::Plus).unwrap();
            let minus = field_alpha(c, beta, &q, Sign::Minus).unwrap();
            prop_assert!((plus + minus - c / field_d).abs() <= 1e-12 * (c / field_d));
            let product = (rate + field_d * beta * beta) / field_d;
            prop_assert!((plus * minus - product).abs() <= 1e-12 * product);
        }
    }
}
