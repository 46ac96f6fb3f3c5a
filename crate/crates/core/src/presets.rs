//! Ready-made simulation set-ups shared by the command line and the test
//! suites.

use std::fmt;
use std::str::FromStr;

use crate::dispersion::{spreading_speed, DEFAULT_TOL};
use crate::error::{DispersionError, SimError};
use crate::params::{ModelParams, ReactionFunction};
use crate::simulator::{Grid, InitialDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Reaction switched off; total population must stay put.
    Conservation,
    /// Front run with road diffusivity 1 (no enhancement for `d = 1`).
    Kpp,
    /// Front run with road diffusivity 10.
    Enhanced,
    /// Long run on a small box, for convergence to the steady state.
    Steady,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Conservation, Preset::Kpp, Preset::Enhanced, Preset::Steady];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Conservation => "conservation",
            Preset::Kpp => "kpp",
            Preset::Enhanced => "enhanced",
            Preset::Steady => "steady",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (expected conservation, kpp, enhanced or steady)"))
    }
}

/// Optional replacements for a preset's resolution and duration.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Sizing {
    /// Used for both `dx` and `dy`.
    pub spacing: Option<f64>,
    pub t_end: Option<f64>,
    pub safety: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub preset: Preset,
    pub params: ModelParams,
    pub grid: Grid,
    pub datum: InitialDatum,
    pub t_end: f64,
    pub snapshot_every: f64,
    /// Dispersion prediction for the spreading speed (in original units).
    pub predicted_speed: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum PresetError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
}

/// Height of the speed-run domain; the road front only feels the field
/// within a few diffusion lengths of the road.
const FRONT_RUN_HEIGHT: f64 = 30.0;
const FRONT_RUN_MIN_HALFWIDTH: f64 = 300.0;

impl Experiment {
    /// Builds `preset` from `base`. Front presets override the road
    /// diffusivity; everything else comes from `base`.
    pub fn new(preset: Preset, base: &ModelParams, sizing: Sizing) -> Result<Self, PresetError> {
        let safety = sizing.safety.unwrap_or(0.4);
        let bump = |params: &ModelParams| InitialDatum::CompactBump {
            center: 0.0,
            width: 2.0,
            amplitude_u: params.road_equilibrium(),
            amplitude_v: 1.0,
        };
        let (params, x_half, y_max, spacing, t_end, snapshot_every, datum) = match preset {
            Preset::Conservation => {
                let rate = base.growth_rate();
                let params = base
                    .set_reaction(ReactionFunction::off(rate))
                    .expect("off reaction is KPP");
                let datum = bump(&params);
                (
                    params,
                    40.0,
                    20.0,
                    sizing.spacing.unwrap_or(0.1),
                    sizing.t_end.unwrap_or(5.0),
                    0.05,
                    datum,
                )
            }
            Preset::Kpp | Preset::Enhanced => {
                let road_d = if preset == Preset::Kpp { 1.0 } else { 10.0 };
                let params = base.set_road_diffusivity(road_d).expect("positive diffusivity");
                let t_end = sizing.t_end.unwrap_or(100.0);
                let c = spreading_speed(&params, DEFAULT_TOL)?.c_star;
                // front must stay clear of the lateral boundary
                let needed = ((1.1 * c * t_end + 20.0) / 10.0).ceil() * 10.0;
                let datum = bump(&params);
                (
                    params,
                    needed.max(FRONT_RUN_MIN_HALFWIDTH),
                    FRONT_RUN_HEIGHT,
                    sizing.spacing.unwrap_or(0.25),
                    t_end,
                    0.5,
                    datum,
                )
            }
            Preset::Steady => {
                let datum = bump(base);
                (
                    base.clone(),
                    30.0,
                    30.0,
                    sizing.spacing.unwrap_or(0.25),
                    sizing.t_end.unwrap_or(60.0),
                    1.0,
                    datum,
                )
            }
        };
        let grid = Grid::with_spacing(-x_half, x_half, y_max, spacing, spacing, 1.0)?.with_cfl(&params, safety)?;
        let predicted_speed = match preset {
            Preset::Conservation => None,
            _ => Some(spreading_speed(&params, DEFAULT_TOL)?.c_star),
        };
        Ok(Self {
            preset,
            params,
            grid,
            datum,
            t_end,
            snapshot_every,
            predicted_speed,
        })
    }
}
