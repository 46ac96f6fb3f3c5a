//! Explicit finite-difference integration of the road-field system
//!
//! ```text
//! u_t - D u_xx      = nu v(x, 0, t) - mu u       on the road y = 0
//! v_t - d (v_xx + v_yy) = f(v)                    in the field y > 0
//! -d v_y(x, 0, t)   = mu u - nu v(x, 0, t)        exchange condition
//! ```
//!
//! on `[x_min, x_max] x [0, y_max]`. The exchange condition is imposed with a
//! ghost row `v(i, -1) = v(i, 1) + (2 dy / d)(mu u_i - nu v(i, 0))`, the
//! truncation edges are homogeneous Neumann (mirror ghosts). Forward Euler
//! under [`cfl_dt`] keeps the update monotone, so nonnegativity and the
//! comparison principle hold step by step, and the trapezoidal total mass is
//! conserved exactly when `f = 0`.
//!
//! The field is stored row-major by `x`: `v[i * ny + j]` is the value at
//! `(x_i, y_j)`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::SimError;
use crate::params::ModelParams;

/// Uniform grid of the truncated half-plane plus the time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub dt: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, y_max: f64, nx: usize, ny: usize, dt: f64) -> Result<Self, SimError> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(SimError::BadGrid("need x_min < x_max"));
        }
        if !(y_max > 0.0) || !y_max.is_finite() {
            return Err(SimError::BadGrid("need y_max > 0"));
        }
        if nx < 3 || ny < 3 {
            return Err(SimError::BadGrid("need at least 3 nodes per direction"));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(SimError::BadGrid("need dt > 0"));
        }
        Ok(Self {
            x_min,
            x_max,
            y_max,
            nx,
            ny,
            dx: (x_max - x_min) / (nx - 1) as f64,
            dy: y_max / (ny - 1) as f64,
            dt,
        })
    }

    /// Grid with (approximately) the requested spacings; the node counts are
    /// rounded so the spacings divide the extents exactly.
    pub fn with_spacing(x_min: f64, x_max: f64, y_max: f64, dx: f64, dy: f64, dt: f64) -> Result<Self, SimError> {
        if !(dx > 0.0 && dy > 0.0) {
            return Err(SimError::BadGrid("spacings must be positive"));
        }
        let nx = ((x_max - x_min) / dx).round() as usize + 1;
        let ny = (y_max / dy).round() as usize + 1;
        Self::new(x_min, x_max, y_max, nx, ny, dt)
    }

    /// Same nodes, time step set to `safety * cfl_dt`.
    pub fn with_cfl(self, params: &ModelParams, safety: f64) -> Result<Self, SimError> {
        let dt = cfl_dt(&self, params, safety)?;
        Ok(Self { dt, ..self })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.dy
    }

    pub fn same_nodes(&self, other: &Grid) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && self.x_min == other.x_min
            && self.x_max == other.x_max
            && self.y_max == other.y_max
    }
}

/// Largest stable, monotone forward-Euler step scaled by `safety`:
/// `safety * min(dx^2 / 2D, 1 / (2d (1/dx^2 + 1/dy^2)), 1 / (mu + nu + f'(0)))`.
/// The road term is dropped when `D = 0`.
pub fn cfl_dt(grid: &Grid, params: &ModelParams, safety: f64) -> Result<f64, SimError> {
    if !(safety > 0.0 && safety <= 1.0) {
        return Err(SimError::BadSafety(safety));
    }
    let (dx2, dy2) = (grid.dx * grid.dx, grid.dy * grid.dy);
    let mut limit = 1.0 / (2.0 * params.field_diffusivity() * (1.0 / dx2 + 1.0 / dy2));
    let road_d = params.road_diffusivity();
    if road_d > 0.0 {
        limit = limit.min(dx2 / (2.0 * road_d));
    }
    limit = limit.min(1.0 / (params.road_to_field() + params.field_to_road() + params.growth_rate()));
    Ok(safety * limit)
}

/// Largest step keeping every self-coefficient of the update nonnegative.
/// The exchange row loses `2 nu dt / dy`, which [`cfl_dt`] does not see;
/// at safety factors below about 1/2 this never binds on sensible grids.
fn monotone_dt(grid: &Grid, params: &ModelParams) -> f64 {
    let (dx2, dy2) = (grid.dx * grid.dx, grid.dy * grid.dy);
    let field_d = params.field_diffusivity();
    let field = 1.0 / (2.0 * field_d / dx2 + 2.0 * field_d / dy2 + 2.0 * params.field_to_road() / grid.dy);
    let road = 1.0 / (2.0 * params.road_diffusivity() / dx2 + params.road_to_field());
    field.min(road)
}

/// Road density `u` and field density `v` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    ny: usize,
}

impl FieldState {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            t: 0.0,
            u: vec![0.0; grid.nx],
            v: vec![0.0; grid.nx * grid.ny],
            ny: grid.ny,
        }
    }

    pub fn constant(grid: &Grid, u: f64, v: f64) -> Self {
        Self {
            t: 0.0,
            u: vec![u; grid.nx],
            v: vec![v; grid.nx * grid.ny],
            ny: grid.ny,
        }
    }

    /// Wraps raw arrays; `v` is row-major by `x` (`v[i * ny + j]`).
    pub fn from_arrays(grid: &Grid, t: f64, u: Vec<f64>, v: Vec<f64>) -> Result<Self, SimError> {
        if u.len() != grid.nx || v.len() != grid.nx * grid.ny {
            return Err(SimError::BadGrid("array sizes do not match the grid"));
        }
        Ok(Self { t, u, v, ny: grid.ny })
    }

    pub fn nx(&self) -> usize {
        self.u.len()
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn v_at(&self, i: usize, j: usize) -> f64 {
        self.v[i * self.ny + j]
    }

    /// Field density on the road, `v(., 0)`.
    pub fn trace(&self) -> Vec<f64> {
        self.v.iter().step_by(self.ny).copied().collect()
    }

    pub fn sup_u(&self) -> f64 {
        self.u.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn sup_v(&self) -> f64 {
        self.v.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.u.iter().chain(&self.v).all(|&x| x >= 0.0)
    }
}

type RoadFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type FieldFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Compactly supported, nonnegative initial data.
///
/// Bumps use the profile `amplitude * max(0, 1 - (r / width)^2)^2`. The
/// field bump of [`InitialDatum::CompactBump`] is centred at
/// `(center, width / 2)` so that it overlaps the road.
#[derive(Clone)]
pub enum InitialDatum {
    CompactBump {
        center: f64,
        width: f64,
        amplitude_u: f64,
        amplitude_v: f64,
    },
    RoadOnlyBump {
        center: f64,
        width: f64,
        amplitude: f64,
    },
    Custom {
        road: RoadFn,
        field: FieldFn,
    },
}

impl fmt::Debug for InitialDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CompactBump {
                center,
                width,
                amplitude_u,
                amplitude_v,
            } => f
                .debug_struct("CompactBump")
                .field("center", center)
                .field("width", width)
                .field("amplitude_u", amplitude_u)
                .field("amplitude_v", amplitude_v)
                .finish(),
            Self::RoadOnlyBump {
                center,
                width,
                amplitude,
            } => f
                .debug_struct("RoadOnlyBump")
                .field("center", center)
                .field("width", width)
                .field("amplitude", amplitude)
                .finish(),
            Self::Custom { .. } => f.write_str("Custom"),
        }
    }
}

impl InitialDatum {
    /// Field bump of unit height at the origin, nothing on the road.
    pub fn field_bump(width: f64) -> Self {
        Self::CompactBump {
            center: 0.0,
            width,
            amplitude_u: 0.0,
            amplitude_v: 1.0,
        }
    }

    pub fn custom<R, F>(road: R, field: F) -> Self
    where
        R: Fn(f64) -> f64 + Send + Sync + 'static,
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::Custom {
            road: Arc::new(road),
            field: Arc::new(field),
        }
    }

    fn road_value(&self, x: f64) -> f64 {
        match self {
            Self::CompactBump {
                center,
                width,
                amplitude_u,
                ..
            } => amplitude_u * bump((x - center) / width),
            Self::RoadOnlyBump {
                center,
                width,
                amplitude,
            } => amplitude * bump((x - center) / width),
            Self::Custom { road, .. } => road(x),
        }
    }

    fn field_value(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::CompactBump {
                center,
                width,
                amplitude_v,
                ..
            } => {
                let (dx, dy) = (x - center, y - 0.5 * width);
                amplitude_v * bump((dx * dx + dy * dy).sqrt() / width)
            }
            Self::RoadOnlyBump { .. } => 0.0,
            Self::Custom { field, .. } => field(x, y),
        }
    }
}

/// Running maximum of magnitudes; a NaN sticks.
#[inline]
fn track(peak: f64, value: f64) -> f64 {
    if value.abs() > peak || value.is_nan() {
        value.abs()
    } else {
        peak
    }
}

#[inline]
fn bump(r: f64) -> f64 {
    let s = 1.0 - r * r;
    if s > 0.0 {
        s * s
    } else {
        0.0
    }
}

/// Samples `datum` at the grid nodes (time zero).
pub fn init_state(grid: &Grid, datum: &InitialDatum) -> Result<FieldState, SimError> {
    let mut state = FieldState::zeros(grid);
    for i in 0..grid.nx {
        let x = grid.x(i);
        state.u[i] = datum.road_value(x);
        for j in 0..grid.ny {
            state.v[i * grid.ny + j] = datum.field_value(x, grid.y(j));
        }
    }
    if state.u.iter().chain(&state.v).any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(SimError::NegativeDatum);
    }
    if state.u.iter().chain(&state.v).all(|&x| x == 0.0) {
        return Err(SimError::EmptyDatum);
    }
    Ok(state)
}

/// Trapezoidal total population `int u dx + int int v dx dy`.
pub fn total_mass(state: &FieldState, grid: &Grid) -> f64 {
    let weight = |k: usize, n: usize| if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
    let road: f64 = state.u.iter().enumerate().map(|(i, &u)| weight(i, grid.nx) * u).sum();
    let field: f64 = state
        .v
        .chunks(grid.ny)
        .enumerate()
        .map(|(i, row)| {
            weight(i, grid.nx)
                * row
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| weight(j, grid.ny) * v)
                    .sum::<f64>()
        })
        .sum();
    road * grid.dx + field * grid.dx * grid.dy
}

/// Divergence threshold `10 max(1, nu/mu) max(1, sup v0, (mu/nu) sup u0)`:
/// ten times the invariant box that bounds solutions from this datum.
fn blow_up_bound(params: &ModelParams, initial: &FieldState) -> f64 {
    let ratio = params.road_equilibrium();
    10.0 * ratio.max(1.0) * initial.sup_v().max(initial.sup_u() / ratio).max(1.0)
}

/// Forward-Euler stepper bound to one parameter set and grid.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: ModelParams,
    grid: Grid,
    bound: f64,
}

impl Stepper {
    /// Checks the time step against [`cfl_dt`] and fixes the blow-up
    /// threshold from `initial`.
    pub fn new(params: &ModelParams, grid: &Grid, initial: &FieldState) -> Result<Self, SimError> {
        let limit = cfl_dt(grid, params, 1.0)?.min(monotone_dt(grid, params));
        if grid.dt > limit {
            return Err(SimError::CflViolation { dt: grid.dt, limit });
        }
        if initial.nx() != grid.nx || initial.ny() != grid.ny || initial.v.len() != grid.nx * grid.ny {
            return Err(SimError::BadGrid("state does not match the grid"));
        }
        Ok(Self {
            params: params.clone(),
            grid: *grid,
            bound: blow_up_bound(params, initial),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn step(&self, state: &FieldState) -> Result<FieldState, SimError> {
        let mut out = state.clone();
        self.step_into(state, &mut out)?;
        Ok(out)
    }

    /// Writes the state one time step later into `out` (double buffer; `out`
    /// must have the grid's shape).
    pub fn step_into(&self, state: &FieldState, out: &mut FieldState) -> Result<(), SimError> {
        let reaction = self.params.reaction();
        let peak = if reaction.is_logistic() {
            let rate = reaction.growth_rate();
            self.update(state, out, move |s| (rate * s) * (1.0 - s))
        } else if reaction.is_off() {
            self.update(state, out, |_| 0.0)
        } else {
            self.update(state, out, |s| reaction.eval(s))
        };
        out.t = state.t + self.grid.dt;
        if !(peak <= self.bound) {
            return Err(SimError::BlowUp {
                step: (out.t / self.grid.dt).round() as usize,
                t: out.t,
                value: peak,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Returns the largest magnitude in the new state (NaN-propagating).
    fn update<F>(&self, state: &FieldState, out: &mut FieldState, f: F) -> f64
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let g = &self.grid;
        let (nx, ny, dt) = (g.nx, g.ny, g.dt);
        let field_d = self.params.field_diffusivity();
        let mu = self.params.road_to_field();
        let nu = self.params.field_to_road();
        let lx = field_d * dt / (g.dx * g.dx);
        let ly = field_d * dt / (g.dy * g.dy);
        let lr = self.params.road_diffusivity() * dt / (g.dx * g.dx);
        let flux = 2.0 * dt / g.dy;
        // every update is a nonnegative combination of old values (plus the
        // reaction), so rounding cannot reverse the order of two states
        let centre = 1.0 - 2.0 * lx - 2.0 * ly;
        let centre_edge = centre - flux * nu;
        let road_centre = 1.0 - 2.0 * lr - dt * mu;
        let (in_flux, out_flux) = (flux * mu, dt * nu);
        let v = &state.v;
        let u = &state.u;

        let field_peak = out
            .v
            .par_chunks_mut(ny)
            .enumerate()
            .map(|(i, row)| {
                let west = if i == 0 { 1 } else { i - 1 };
                let east = if i == nx - 1 { nx - 2 } else { i + 1 };
                let w = &v[west * ny..(west + 1) * ny];
                let c = &v[i * ny..(i + 1) * ny];
                let e = &v[east * ny..(east + 1) * ny];
                let mut peak: f64 = 0.0;

                // exchange row: ghost value folded into the y stencil
                let c0 = c[0];
                let n0 = centre_edge * c0 + lx * (w[0] + e[0]) + 2.0 * ly * c[1] + in_flux * u[i] + dt * f(c0);
                row[0] = n0;
                peak = track(peak, n0);

                for j in 1..ny - 1 {
                    let cj = c[j];
                    let n = centre * cj + lx * (w[j] + e[j]) + ly * (c[j - 1] + c[j + 1]) + dt * f(cj);
                    row[j] = n;
                    peak = track(peak, n);
                }

                let top = ny - 1;
                let ct = c[top];
                let nt = centre * ct + lx * (w[top] + e[top]) + 2.0 * ly * c[top - 1] + dt * f(ct);
                row[top] = nt;
                track(peak, nt)
            })
            .reduce(
                || 0.0,
                |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) },
            );

        let mut road_peak: f64 = 0.0;
        for i in 0..nx {
            let west = if i == 0 { u[1] } else { u[i - 1] };
            let east = if i == nx - 1 { u[nx - 2] } else { u[i + 1] };
            let n = road_centre * u[i] + lr * (west + east) + out_flux * v[i * ny];
            out.u[i] = n;
            road_peak = track(road_peak, n);
        }
        if field_peak.is_nan() || road_peak.is_nan() {
            f64::NAN
        } else {
            field_peak.max(road_peak)
        }
    }
}

/// One forward-Euler step, with the blow-up threshold taken from `state`.
pub fn step(state: &FieldState, params: &ModelParams, grid: &Grid) -> Result<FieldState, SimError> {
    Stepper::new(params, grid, state)?.step(state)
}

/// Time series and sparse snapshots of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub times: Vec<f64>,
    pub mass: Vec<f64>,
    /// `(t, u)` road profiles.
    pub road_profiles: Vec<(f64, Vec<f64>)>,
    /// `(t, v(., 0))` field traces on the road.
    pub field_traces: Vec<(f64, Vec<f64>)>,
    pub final_state: FieldState,
}

/// Integrates from `datum` up to the first multiple of `dt` at or past
/// `t_end`, recording mass and profiles every `snapshot_every` time units
/// (rounded to whole steps) and at the final time.
pub fn run(
    params: &ModelParams,
    grid: &Grid,
    datum: &InitialDatum,
    t_end: f64,
    snapshot_every: f64,
) -> Result<RunRecord, SimError> {
    let initial = init_state(grid, datum)?;
    run_from(params, grid, initial, t_end, snapshot_every)
}

/// As [`run`], starting from an explicit state.
pub fn run_from(
    params: &ModelParams,
    grid: &Grid,
    initial: FieldState,
    t_end: f64,
    snapshot_every: f64,
) -> Result<RunRecord, SimError> {
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(SimError::BadEndTime(t_end));
    }
    let stepper = Stepper::new(params, grid, &initial)?;
    let dt = grid.dt;
    let t0 = initial.t;
    let n_steps = (t_end / dt - 1e-9).ceil().max(0.0) as usize;
    let stride = ((snapshot_every / dt).round() as usize).max(1);

    let mut record = RunRecord {
        times: Vec::new(),
        mass: Vec::new(),
        road_profiles: Vec::new(),
        field_traces: Vec::new(),
        final_state: initial.clone(),
    };
    let snapshot = |record: &mut RunRecord, state: &FieldState| {
        record.times.push(state.t);
        record.mass.push(total_mass(state, grid));
        record.road_profiles.push((state.t, state.u.clone()));
        record.field_traces.push((state.t, state.trace()));
    };

    let mut current = initial;
    let mut next = current.clone();
    snapshot(&mut record, &current);
    for k in 1..=n_steps {
        stepper.step_into(&current, &mut next).map_err(|e| match e {
            SimError::BlowUp { t, value, bound, .. } => SimError::BlowUp {
                step: k,
                t,
                value,
                bound,
            },
            other => other,
        })?;
        next.t = t0 + k as f64 * dt;
        std::mem::swap(&mut current, &mut next);
        if k % stride == 0 || k == n_steps {
            snapshot(&mut record, &current);
        }
    }
    record.final_state = current;
    Ok(record)
}
