//! Whether the upper road branch also meets the upper half of the field
//! circle.
//!
//! With `t = sqrt(c^2 - c_KPP^2)`, the upper branches cross at speed `c`
//! iff `D - 2d <= 4 mu d^2 t / ((t^2 + c_KPP^2)(t + 2))`. The right side
//! rises from zero, peaks once below `t = c_KPP`, and decays, so crossings
//! happen iff `D <= 2d + delta` with `delta` its maximum, and then for
//! `t` between the two roots of the equality.

use crate::error::DispersionError;
use crate::optimize::golden_max;
use crate::params::{c_kpp, ModelParams};

use super::{require_normalized, ROUNDING};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPlusClassification {
    /// Excess diffusivity over `2d` up to which the upper branches meet.
    pub delta: f64,
    pub intersects: bool,
    pub c_tilde_1: Option<f64>,
    pub c_tilde_2: Option<f64>,
}

fn profile(t: f64, ckpp_sq: f64) -> f64 {
    t / ((t * t + ckpp_sq) * (t + 2.0))
}

/// Computes `delta` and, when `2d < D <= 2d + delta`, the speed window
/// `[c~1, c~2]` on which the upper road branch meets the upper half-circle.
pub fn upper_branch_threshold(params: &ModelParams) -> Result<GammaPlusClassification, DispersionError> {
    require_normalized(params)?;
    let field_d = params.field_diffusivity();
    let mu = params.road_to_field();
    let ckpp = c_kpp(params);
    let ckpp_sq = ckpp * ckpp;
    let scale = 4.0 * mu * field_d * field_d;

    let peak = golden_max(|t| profile(t, ckpp_sq), 0.0, ckpp, 1e-13 * ckpp.max(1.0));
    let delta = scale * peak.value;
    debug_assert!(delta < mu * field_d / params.growth_rate());

    let excess = params.road_diffusivity() - 2.0 * field_d;
    // D - 2d carries the rounding of D itself
    let slack = ROUNDING * params.road_diffusivity();
    if excess <= 0.0 || excess > delta + slack {
        return Ok(GammaPlusClassification {
            delta,
            intersects: false,
            c_tilde_1: None,
            c_tilde_2: None,
        });
    }

    let balance = |t: f64| scale * profile(t, ckpp_sq) - excess;
    let (t1, t2) = if balance(peak.x) <= 0.0 {
        // D = 2d + delta up to rounding: double root
        (peak.x, peak.x)
    } else {
        let mut far = 2.0 * peak.x.max(1.0);
        while balance(far) >= 0.0 {
            far *= 2.0;
        }
        (bisect_sign(&balance, 0.0, peak.x), bisect_sign(&balance, far, peak.x))
    };
    let speed = |t: f64| (t * t + ckpp_sq).sqrt();
    Ok(GammaPlusClassification {
        delta,
        intersects: true,
        c_tilde_1: Some(speed(t1)),
        c_tilde_2: Some(speed(t2)),
    })
}

/// Root of `g` between `neg` (where `g < 0`) and `pos` (where `g >= 0`),
/// refined until the midpoint stops moving.
fn bisect_sign<G: Fn(f64) -> f64>(g: &G, mut neg: f64, mut pos: f64) -> f64 {
    loop {
        let mid = 0.5 * (neg + pos);
        if mid == neg || mid == pos {
            return mid;
        }
        if g(mid) < 0.0 {
            neg = mid;
        } else {
            pos = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{critical_speed, field_alpha, road_alpha, Sign, DEFAULT_TOL};

    fn with_road(road_d: f64) -> ModelParams {
        ModelParams::new(road_d, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    /// Brute-force maximum of the profile on a fine grid.
    fn delta_by_grid(ckpp_sq: f64, scale: f64) -> f64 {
        (1..=400_000)
            .map(|k| profile(k as f64 * 1e-5, ckpp_sq))
            .fold(0.0, f64::max)
            * scale
    }

    #[test]
    fn delta_matches_grid_oracle_and_bound() {
        let c = upper_branch_threshold(&with_road(1.0)).unwrap();
        let oracle = delta_by_grid(4.0, 4.0);
        assert!((c.delta - oracle).abs() < 1e-9, "{} vs {}", c.delta, oracle);
        assert!(c.delta > 0.0 && c.delta < 1.0);
        assert!(!c.intersects);
    }

    #[test]
    fn window_collapses_at_upper_edge() {
        let delta = upper_branch_threshold(&with_road(1.0)).unwrap().delta;
        let c = upper_branch_threshold(&with_road(2.0 + delta)).unwrap();
        assert!(c.intersects);
        assert!((c.c_tilde_2.unwrap() - c.c_tilde_1.unwrap()).abs() < 1e-4);
        let beyond = upper_branch_threshold(&with_road(2.0 + delta + 1e-6)).unwrap();
        assert!(!beyond.intersects);
    }

    #[test]
    fn window_edges_are_branch_crossings() {
        let q = with_road(2.1);
        let c = upper_branch_threshold(&q).unwrap();
        let c_star = critical_speed(&q, DEFAULT_TOL).unwrap().c_star;
        for edge in [c.c_tilde_1.unwrap(), c.c_tilde_2.unwrap()] {
            assert!(edge > c_star);
            // at the window edges the upper branches meet at the circle's
            // rightmost point
            let radius = super::super::circle_radius(edge, &q).unwrap();
            let road = road_alpha(edge, radius, &q, Sign::Plus).unwrap();
            let field = field_alpha(edge, radius, &q, Sign::Plus).unwrap();
            assert!((road - field).abs() < 1e-8 * field, "{road} vs {field}");
        }
    }
}
