//! Property suites behind `roadfield validate`.
use roadfield::io::fmt17;
use roadfield::{
    cfl_dt, check_kpp, init_state, is_ordered, run, run_from, steady_error, Experiment, FieldState, Grid, KppCheck,
    ModelParams, Preset, ReactionFunction, Sizing, Stepper,
};

use crate::{Common, SizingArgs};

const DEFAULT_SAFETY: f64 = 0.4;

pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub detail: String,
}

pub struct Report {
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| !s.passed).map(|s| s.name).collect()
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("suite,status,measured,detail\n");
        for s in &self.suites {
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                s.name,
                if s.passed { "pass" } else { "FAIL" },
                fmt17(s.measured),
                s.detail.replace('"', "'")
            ));
        }
        out
    }
}

fn failed(name: &'static str, err: impl std::fmt::Display) -> SuiteResult {
    SuiteResult {
        name,
        passed: false,
        measured: f64::NAN,
        detail: err.to_string(),
    }
}

fn small_grid(params: &ModelParams, half: f64, height: f64, spacing: f64) -> Result<Grid, roadfield::SimError> {
    Grid::with_spacing(-half, half, height, spacing, spacing, 1.0)?.with_cfl(params, DEFAULT_SAFETY)
}

fn kpp_suite(params: &ModelParams) -> SuiteResult {
    match check_kpp(params.reaction(), 10_001) {
        KppCheck::Pass => SuiteResult {
            name: "kpp",
            passed: true,
            measured: params.growth_rate(),
            detail: "reaction satisfies the KPP conditions on [0, 1]".into(),
        },
        KppCheck::Violation { s, value, rule } => SuiteResult {
            name: "kpp",
            passed: false,
            measured: s,
            detail: format!("rule {rule:?} violated at s = {s} (value {value})"),
        },
    }
}

fn cfl_suite(params: &ModelParams, safety: f64) -> SuiteResult {
    let name = "cfl";
    let result = (|| -> Result<f64, roadfield::SimError> {
        let grid = Grid::with_spacing(-10.0, 10.0, 10.0, 0.25, 0.25, 1.0)?;
        let dt = cfl_dt(&grid, params, safety)?;
        let grid = Grid { dt, ..grid };
        Stepper::new(params, &grid, &FieldState::zeros(&grid))?;
        Ok(dt)
    })();
    match result {
        Ok(dt) => SuiteResult {
            name,
            passed: true,
            measured: dt,
            detail: format!("safety {safety} gives a stable, monotone step"),
        },
        Err(err) => failed(name, format!("safety {safety}: {err}")),
    }
}

fn equilibrium_suite(params: &ModelParams) -> SuiteResult {
    let name = "equilibrium";
    let result = (|| -> Result<f64, roadfield::SimError> {
        let grid = small_grid(params, 5.0, 5.0, 0.25)?;
        let mut worst: f64 = 0.0;
        let steady = FieldState::constant(&grid, params.road_equilibrium(), 1.0);
        let next = Stepper::new(params, &grid, &steady)?.step(&steady)?;
        for (a, b) in next.u.iter().zip(&steady.u).chain(next.v.iter().zip(&steady.v)) {
            worst = worst.max((a - b).abs());
        }
        let zero = FieldState::zeros(&grid);
        let next = Stepper::new(params, &grid, &zero)?.step(&zero)?;
        worst = worst.max(next.sup_u()).max(next.sup_v());
        Ok(worst)
    })();
    match result {
        Ok(worst) => SuiteResult {
            name,
            passed: worst <= 1e-12 * params.road_equilibrium().max(1.0),
            measured: worst,
            detail: "largest change of (0, 0) and (nu/mu, 1) over one step".into(),
        },
        Err(err) => failed(name, err),
    }
}

fn ordering_suite(params: &ModelParams) -> SuiteResult {
    let name = "ordering";
    let result = (|| -> Result<usize, roadfield::SimError> {
        let grid = small_grid(params, 5.0, 5.0, 0.25)?;
        let mut violations = 0;
        // deterministic ordered pairs: a = s * bump-ish pattern, b = a + shift
        for k in 0..10 {
            let phase = k as f64 * 0.7;
            let wave = |x: f64, y: f64| 0.5 + 0.45 * (1.3 * x + 0.9 * y + phase).sin();
            let u: Vec<f64> = (0..grid.nx).map(|i| wave(grid.x(i), -1.0)).collect();
            let v: Vec<f64> = (0..grid.nx * grid.ny)
                .map(|n| wave(grid.x(n / grid.ny), grid.y(n % grid.ny)))
                .collect();
            let lift = |s: &f64| s + 0.05 * (k as f64 + 1.0);
            let mut a = FieldState::from_arrays(&grid, 0.0, u.clone(), v.clone())?;
            let mut b =
                FieldState::from_arrays(&grid, 0.0, u.iter().map(lift).collect(), v.iter().map(lift).collect())?;
            let stepper = Stepper::new(params, &grid, &b)?;
            for _ in 0..200 {
                a = stepper.step(&a)?;
                b = stepper.step(&b)?;
                if !is_ordered(&a, &b).unwrap_or(false) {
                    violations += 1;
                    break;
                }
            }
        }
        Ok(violations)
    })();
    match result {
        Ok(v) => SuiteResult {
            name,
            passed: v == 0,
            measured: v as f64,
            detail: "ordered pairs violating the order within 200 steps (of 10)".into(),
        },
        Err(err) => failed(name, err),
    }
}

fn conservation_suite(params: &ModelParams) -> SuiteResult {
    let name = "conservation";
    let result = (|| -> anyhow::Result<f64> {
        let params = params.set_reaction(ReactionFunction::off(params.growth_rate()))?;
        let grid = small_grid(&params, 20.0, 10.0, 0.2)?;
        let datum = roadfield::InitialDatum::field_bump(2.0);
        let t_end = 1000.0 * grid.dt;
        let record = run(&params, &grid, &datum, t_end, t_end)?;
        let m0 = record.mass[0];
        Ok(record.mass.iter().map(|m| (m - m0).abs() / m0).fold(0.0, f64::max))
    })();
    match result {
        Ok(drift) => SuiteResult {
            name,
            passed: drift <= 1e-6,
            measured: drift,
            detail: "relative mass change over 1000 steps without reaction".into(),
        },
        Err(err) => failed(name, err),
    }
}

fn steady_suite(params: &ModelParams, sizing: SizingArgs) -> SuiteResult {
    let name = "steady";
    let result = (|| -> anyhow::Result<(f64, f64)> {
        let sizing = Sizing {
            spacing: sizing.dx,
            t_end: sizing.t_end,
            safety: Some(DEFAULT_SAFETY),
        };
        let e = Experiment::new(Preset::Steady, params, sizing)?;
        let initial = init_state(&e.grid, &e.datum)?;
        let record = run_from(&e.params, &e.grid, initial, e.t_end, e.t_end)?;
        Ok(steady_error(&record.final_state, &e.grid, &e.params, 5.0))
    })();
    match result {
        Ok((eu, ev)) => SuiteResult {
            name,
            passed: eu <= 1e-2 && ev <= 1e-2,
            measured: eu.max(ev),
            detail: format!("distance to (nu/mu, 1) on |x| <= 5: road {eu:.3e}, field {ev:.3e}"),
        },
        Err(err) => failed(name, err),
    }
}

pub fn run_all(common: &Common, sizing: SizingArgs) -> anyhow::Result<Report> {
    let params = common.params()?;
    let safety = sizing.safety.unwrap_or(DEFAULT_SAFETY);
    let suites = vec![
        kpp_suite(&params),
        cfl_suite(&params, safety),
        equilibrium_suite(&params),
        ordering_suite(&params),
        conservation_suite(&params),
        steady_suite(&params, sizing),
    ];
    let report = Report { suites };
    for s in &report.suites {
        println!(
            "{:<12} {:<4} {:>24}  {}",
            s.name,
            if s.passed { "pass" } else { "FAIL" },
            fmt17(s.measured),
            s.detail
        );
    }
    common.write_outputs(&[("validate.csv", report.to_csv())])?;
    Ok(report)
}
