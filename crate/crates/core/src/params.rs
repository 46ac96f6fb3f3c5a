//! Model constants, the KPP reaction term, and the parameter transforms
//! (time rescaling to unit field-to-road rate, two-sided symmetrization).
//!
//! Naming: `road_diffusivity` is `D`, `field_diffusivity` is `d`,
//! `road_to_field` is `mu` (rate at which the road population enters the
//! field), `field_to_road` is `nu`, and the reaction's `growth_rate` is
//! `f'(0)`.

use std::fmt;
use std::sync::Arc;

use crate::error::ParamError;

/// Reaction term `f` of the field equation, stored as an evaluator plus the
/// linear growth rate `f'(0)`.
///
/// All built-in shapes extend naturally outside `[0, 1]`: the logistic
/// `f'(0) s (1 - s)` is negative for `s > 1` and for `s < 0`.
#[derive(Clone)]
pub struct ReactionFunction {
    kind: ReactionKind,
    growth_rate: f64,
}

#[derive(Clone)]
enum ReactionKind {
    Logistic,
    /// `f'(0) s (1 - s) (1 + c1 s + c2 s^2 + ...)`.
    Polynomial(Vec<f64>),
    Off,
    Custom {
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        scale: f64,
    },
}

impl ReactionFunction {
    /// `f(s) = rate * s * (1 - s)`.
    pub fn logistic(rate: f64) -> Self {
        Self {
            kind: ReactionKind::Logistic,
            growth_rate: rate,
        }
    }

    /// `f(s) = rate * s * (1 - s) * (1 + c1 s + c2 s^2 + ...)` with the
    /// coefficients `[c1, c2, ...]`. The growth rate at zero stays `rate`.
    pub fn polynomial(rate: f64, coefficients: Vec<f64>) -> Self {
        Self {
            kind: ReactionKind::Polynomial(coefficients),
            growth_rate: rate,
        }
    }

    /// Reaction switched off (`f == 0`). Not a KPP function; used for
    /// conservation experiments. `nominal_rate` is kept as the linearization
    /// constant reported by [`ReactionFunction::growth_rate`].
    pub fn off(nominal_rate: f64) -> Self {
        Self {
            kind: ReactionKind::Off,
            growth_rate: nominal_rate,
        }
    }

    /// Arbitrary user reaction with declared `f'(0)`.
    pub fn custom<F>(eval: F, growth_rate: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: ReactionKind::Custom {
                eval: Arc::new(eval),
                scale: 1.0,
            },
            growth_rate,
        }
    }

    #[inline]
    pub fn eval(&self, s: f64) -> f64 {
        match &self.kind {
            ReactionKind::Logistic => (self.growth_rate * s) * (1.0 - s),
            ReactionKind::Polynomial(c) => {
                let mut factor = 0.0;
                for &coef in c.iter().rev() {
                    factor = (factor + coef) * s;
                }
                (self.growth_rate * s) * (1.0 - s) * (1.0 + factor)
            }
            ReactionKind::Off => 0.0,
            ReactionKind::Custom { eval, scale } => scale * eval(s),
        }
    }

    pub fn growth_rate(&self) -> f64 {
        self.growth_rate
    }

    pub fn is_off(&self) -> bool {
        matches!(self.kind, ReactionKind::Off)
    }

    pub fn is_logistic(&self) -> bool {
        matches!(self.kind, ReactionKind::Logistic)
    }

    /// `s -> factor * f(s)`.
    pub fn scaled(&self, factor: f64) -> Self {
        let kind = match &self.kind {
            ReactionKind::Custom { eval, scale } => ReactionKind::Custom {
                eval: Arc::clone(eval),
                scale: scale * factor,
            },
            other => other.clone(),
        };
        Self {
            kind,
            growth_rate: self.growth_rate * factor,
        }
    }
}

impl fmt::Debug for ReactionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            ReactionKind::Logistic => "logistic".to_string(),
            ReactionKind::Polynomial(c) => format!("polynomial{c:?}"),
            ReactionKind::Off => "off".to_string(),
            ReactionKind::Custom { scale, .. } => format!("custom(scale={scale})"),
        };
        f.debug_struct("ReactionFunction")
            .field("kind", &kind)
            .field("growth_rate", &self.growth_rate)
            .finish()
    }
}

/// Physical constants of the road-field system.
#[derive(Clone, Debug)]
pub struct ModelParams {
    road_diffusivity: f64,
    field_diffusivity: f64,
    road_to_field: f64,
    field_to_road: f64,
    reaction: ReactionFunction,
}

fn check(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<(), ParamError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::OutOfRange { name, value, reason })
    }
}

impl ModelParams {
    /// Parameters with the logistic reaction `f(s) = growth_rate s (1 - s)`.
    pub fn new(
        road_diffusivity: f64,
        field_diffusivity: f64,
        road_to_field: f64,
        field_to_road: f64,
        growth_rate: f64,
    ) -> Result<Self, ParamError> {
        Self::with_reaction(
            road_diffusivity,
            field_diffusivity,
            road_to_field,
            field_to_road,
            ReactionFunction::logistic(growth_rate),
        )
    }

    pub fn with_reaction(
        road_diffusivity: f64,
        field_diffusivity: f64,
        road_to_field: f64,
        field_to_road: f64,
        reaction: ReactionFunction,
    ) -> Result<Self, ParamError> {
        check("D", road_diffusivity, road_diffusivity >= 0.0, "must be >= 0")?;
        check("d", field_diffusivity, field_diffusivity > 0.0, "must be > 0")?;
        check("mu", road_to_field, road_to_field > 0.0, "must be > 0")?;
        check("nu", field_to_road, field_to_road > 0.0, "must be > 0")?;
        let rate = reaction.growth_rate();
        check("fp0", rate, rate > 0.0, "must be > 0")?;
        Ok(Self {
            road_diffusivity,
            field_diffusivity,
            road_to_field,
            field_to_road,
            reaction,
        })
    }

    /// Canonical benchmark: all constants one, logistic reaction.
    pub fn unit() -> Self {
        Self::new(1.0, 1.0, 1.0, 1.0, 1.0).expect("unit parameters are valid")
    }

    pub fn road_diffusivity(&self) -> f64 {
        self.road_diffusivity
    }

    pub fn field_diffusivity(&self) -> f64 {
        self.field_diffusivity
    }

    pub fn road_to_field(&self) -> f64 {
        self.road_to_field
    }

    pub fn field_to_road(&self) -> f64 {
        self.field_to_road
    }

    pub fn growth_rate(&self) -> f64 {
        self.reaction.growth_rate()
    }

    pub fn reaction(&self) -> &ReactionFunction {
        &self.reaction
    }

    /// Road density of the positive steady state, `nu / mu`.
    pub fn road_equilibrium(&self) -> f64 {
        self.field_to_road / self.road_to_field
    }

    pub fn set_road_diffusivity(&self, value: f64) -> Result<Self, ParamError> {
        check("D", value, value >= 0.0, "must be >= 0")?;
        Ok(Self {
            road_diffusivity: value,
            ..self.clone()
        })
    }

    pub fn set_road_to_field(&self, value: f64) -> Result<Self, ParamError> {
        check("mu", value, value > 0.0, "must be > 0")?;
        Ok(Self {
            road_to_field: value,
            ..self.clone()
        })
    }

    pub fn set_reaction(&self, reaction: ReactionFunction) -> Result<Self, ParamError> {
        Self::with_reaction(
            self.road_diffusivity,
            self.field_diffusivity,
            self.road_to_field,
            self.field_to_road,
            reaction,
        )
    }

    pub fn is_normalized(&self) -> bool {
        self.field_to_road == 1.0
    }
}

/// Classical Fisher-KPP speed `2 sqrt(d f'(0))` of the field alone.
pub fn c_kpp(params: &ModelParams) -> f64 {
    2.0 * (params.field_diffusivity * params.growth_rate()).sqrt()
}

/// Rescales time by `1/nu` so that the field-to-road rate becomes one.
///
/// Every other rate and diffusivity (and `f`) is divided by `nu`; speeds of
/// the rescaled system are the original speeds divided by `nu`.
pub fn normalize_nu(params: &ModelParams) -> ModelParams {
    let nu = params.field_to_road;
    if nu == 1.0 {
        return params.clone();
    }
    ModelParams {
        road_diffusivity: params.road_diffusivity / nu,
        field_diffusivity: params.field_diffusivity / nu,
        road_to_field: params.road_to_field / nu,
        field_to_road: 1.0,
        reaction: params.reaction.scaled(1.0 / nu),
    }
}

/// Half-plane constants equivalent to the two-sided problem that is
/// symmetric about the road: `nu -> 2 nu`, `mu -> mu / 2`.
pub fn symmetrize_full_plane(params: &ModelParams) -> ModelParams {
    ModelParams {
        road_to_field: params.road_to_field / 2.0,
        field_to_road: params.field_to_road * 2.0,
        ..params.clone()
    }
}

/// Which KPP requirement a sample broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KppRule {
    /// `f(0) = 0` or `f(1) = 0` failed.
    Endpoint,
    /// `f(s) > 0` on `(0, 1)` failed.
    Positive,
    /// `f(s) <= f'(0) s` on `(0, 1)` failed.
    LinearBound,
    /// `f(s) < 0` for `s > 1` failed.
    NegativeAbove,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KppCheck {
    Pass,
    Violation { s: f64, value: f64, rule: KppRule },
}

impl KppCheck {
    pub fn is_kpp(&self) -> bool {
        matches!(self, KppCheck::Pass)
    }
}

/// Samples `f` on `n_samples` interior points of `(0, 1)` and `n_samples`
/// points of `(1, 2]`, reporting the first violated KPP condition.
pub fn check_kpp(f: &ReactionFunction, n_samples: usize) -> KppCheck {
    let n = n_samples.max(2);
    let rate = f.growth_rate();
    for s in [0.0, 1.0] {
        let value = f.eval(s);
        if value != 0.0 {
            return KppCheck::Violation {
                s,
                value,
                rule: KppRule::Endpoint,
            };
        }
    }
    for k in 1..=n {
        let s = k as f64 / (n + 1) as f64;
        let value = f.eval(s);
        if !(value > 0.0) {
            return KppCheck::Violation {
                s,
                value,
                rule: KppRule::Positive,
            };
        }
        if value > rate * s {
            return KppCheck::Violation {
                s,
                value,
                rule: KppRule::LinearBound,
            };
        }
    }
    for k in 1..=n {
        let s = 1.0 + k as f64 / n as f64;
        let value = f.eval(s);
        if !(value < 0.0) {
            return KppCheck::Violation {
                s,
                value,
                rule: KppRule::NegativeAbove,
            };
        }
    }
    KppCheck::Pass
}
