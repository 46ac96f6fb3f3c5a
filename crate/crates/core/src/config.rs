//! Flat `key=value` parameter files.
//!
//! Recognized keys: `D`, `d`, `mu`, `nu`, `fp0`, `reaction`. Blank lines and
//! lines starting with `#` are ignored. `reaction` is one of `logistic`,
//! `off`, or `custom:<c1>,<c2>,...`, the latter meaning
//! `f(s) = fp0 s (1 - s) (1 + c1 s + c2 s^2 + ...)`.

use crate::error::ParamError;
use crate::params::{ModelParams, ReactionFunction};

pub const KEYS: [&str; 6] = ["D", "d", "mu", "nu", "fp0", "reaction"];

#[derive(Debug, Clone, PartialEq)]
pub enum ReactionSpec {
    Logistic,
    Off,
    Custom(Vec<f64>),
}

impl ReactionSpec {
    pub fn parse(text: &str) -> Result<Self, ParamError> {
        let text = text.trim();
        match text {
            "logistic" => return Ok(Self::Logistic),
            "off" => return Ok(Self::Off),
            _ => {}
        }
        let Some(rest) = text.strip_prefix("custom") else {
            return Err(ParamError::UnknownReaction(text.to_string()));
        };
        let rest = rest.trim_start_matches(':');
        if rest.trim().is_empty() {
            return Ok(Self::Custom(Vec::new()));
        }
        rest.split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Self::Custom)
            .map_err(|_| ParamError::UnknownReaction(text.to_string()))
    }
}

/// Raw parameter values before validation. Starts from the unit benchmark
/// (`D = d = mu = nu = fp0 = 1`, logistic reaction).
#[derive(Debug, Clone, PartialEq)]
pub struct ParamConfig {
    pub road_diffusivity: f64,
    pub field_diffusivity: f64,
    pub road_to_field: f64,
    pub field_to_road: f64,
    pub growth_rate: f64,
    pub reaction: ReactionSpec,
}

impl Default for ParamConfig {
    fn default() -> Self {
        Self {
            road_diffusivity: 1.0,
            field_diffusivity: 1.0,
            road_to_field: 1.0,
            field_to_road: 1.0,
            growth_rate: 1.0,
            reaction: ReactionSpec::Logistic,
        }
    }
}

impl ParamConfig {
    pub fn parse(text: &str) -> Result<Self, ParamError> {
        let mut config = Self::default();
        config.apply_text(text)?;
        Ok(config)
    }

    /// Applies every `key=value` line of `text` on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ParamError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.apply_line(idx + 1, line)?;
        }
        Ok(())
    }

    /// Applies a single `key=value` pair (used for `--set` overrides; these
    /// report line 0).
    pub fn apply_override(&mut self, pair: &str) -> Result<(), ParamError> {
        self.apply_line(0, pair.trim())
    }

    fn apply_line(&mut self, line: usize, text: &str) -> Result<(), ParamError> {
        let Some((key, value)) = text.split_once('=') else {
            return Err(ParamError::Malformed {
                line,
                text: text.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let number = || {
            value.parse::<f64>().map_err(|_| ParamError::BadValue {
                line,
                key: key.to_string(),
                value: value.to_string(),
            })
        };
        match key {
            "D" => self.road_diffusivity = number()?,
            "d" => self.field_diffusivity = number()?,
            "mu" => self.road_to_field = number()?,
            "nu" => self.field_to_road = number()?,
            "fp0" => self.growth_rate = number()?,
            "reaction" => self.reaction = ReactionSpec::parse(value)?,
            _ => {
                return Err(ParamError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<ModelParams, ParamError> {
        let reaction = match &self.reaction {
            ReactionSpec::Logistic => ReactionFunction::logistic(self.growth_rate),
            ReactionSpec::Off => ReactionFunction::off(self.growth_rate),
            ReactionSpec::Custom(c) => ReactionFunction::polynomial(self.growth_rate, c.clone()),
        };
        ModelParams::with_reaction(
            self.road_diffusivity,
            self.field_diffusivity,
            self.road_to_field,
            self.field_to_road,
            reaction,
        )
    }
}
