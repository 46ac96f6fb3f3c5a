use anyhow::{bail, Context};
use rayon::prelude::*;
use roadfield::dispersion::{limit_bounds, DEFAULT_TOL};
use roadfield::io::{self, fmt17};
use roadfield::{
    c_kpp, fit_speed, front_series, normalize_nu, run, spreading_speed, strip_critical_speed, Channel, Experiment,
    ModelParams, Preset, Sizing,
};

use crate::Common;

const SPEED_HEADER: &str = "D,d,mu,fp0,c_kpp,c_star,regime";

fn speed_row(params: &ModelParams) -> anyhow::Result<String> {
    let result = spreading_speed(params, DEFAULT_TOL)
        .with_context(|| format!("computing c* for D = {}", params.road_diffusivity()))?;
    Ok(format!(
        "{},{},{},{},{},{},{}",
        fmt17(params.road_diffusivity()),
        fmt17(params.field_diffusivity()),
        fmt17(params.road_to_field()),
        fmt17(params.growth_rate()),
        fmt17(c_kpp(params)),
        fmt17(result.c_star),
        result.regime.as_str()
    ))
}

fn emit(common: &Common, name: &str, content: String) -> anyhow::Result<()> {
    common.write_outputs(&[(name, content.clone())])?;
    print!("{content}");
    Ok(())
}

pub fn speed(common: &Common) -> anyhow::Result<()> {
    let params = common.params()?;
    let content = format!("{SPEED_HEADER}\n{}\n", speed_row(&params)?);
    emit(common, "speed.csv", content)
}

pub fn sweep(common: &Common, d_list: &[f64]) -> anyhow::Result<()> {
    if d_list.is_empty() {
        bail!("--D-list is empty");
    }
    if d_list
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        bail!("--D-list must be strictly increasing");
    }
    let base = common.params()?;
    // rows come back in input order whatever order they finish in
    let rows = d_list
        .par_iter()
        .map(|&road_d| {
            let params = base.set_road_diffusivity(road_d)?;
            let c = spreading_speed(&params, DEFAULT_TOL)?.c_star;
            Ok(format!("{},{}", speed_row(&params)?, fmt17(c / road_d.sqrt())))
        })
        .collect::<anyhow::Result<Vec<String>>>()?;
    let mut content = format!("{SPEED_HEADER},c_star_over_sqrtD\n");
    for row in rows {
        content.push_str(&row);
        content.push('\n');
    }
    emit(common, "sweep.csv", content)
}

pub fn strip(common: &Common, width: f64) -> anyhow::Result<()> {
    let params = common.params()?;
    let nu = params.field_to_road();
    // the strip problem is posed in normalized variables; lengths are unchanged
    let strip = strip_critical_speed(&normalize_nu(&params), width, DEFAULT_TOL / nu)
        .with_context(|| format!("strip of width {width}"))?;
    let full = spreading_speed(&params, DEFAULT_TOL)?;
    let content = format!(
        "D,d,mu,fp0,L,c_kpp,c_star_L,c_star\n{},{},{},{},{},{},{},{}\n",
        fmt17(params.road_diffusivity()),
        fmt17(params.field_diffusivity()),
        fmt17(params.road_to_field()),
        fmt17(params.growth_rate()),
        fmt17(width),
        fmt17(c_kpp(&params)),
        fmt17(strip.c_star * nu),
        fmt17(full.c_star)
    );
    emit(common, "strip.csv", content)
}

pub fn limit(common: &Common) -> anyhow::Result<()> {
    let params = common.params()?;
    let normalized = normalize_nu(&params);
    let nu = params.field_to_road();
    // c*/sqrt(D) in original time units picks up a factor sqrt(nu)
    let c = roadfield::limit_speed(&normalized, 1e-12)? * nu.sqrt();
    let (lo, hi) = limit_bounds(&normalized);
    let content = format!(
        "d,mu,fp0,limit_c_over_sqrtD,limit_squared,lower_bound,upper_bound\n{},{},{},{},{},{},{}\n",
        fmt17(params.field_diffusivity()),
        fmt17(params.road_to_field()),
        fmt17(params.growth_rate()),
        fmt17(c),
        fmt17(c * c),
        fmt17(lo * nu),
        fmt17(hi * nu)
    );
    emit(common, "limit.csv", content)
}

pub fn simulate(common: &Common, preset: Preset, sizing: Sizing) -> anyhow::Result<()> {
    let base = common.params()?;
    let e = Experiment::new(preset, &base, sizing)?;
    if let Some(c) = e.predicted_speed {
        println!("predicted spreading speed c* = {}", fmt17(c));
    }
    println!(
        "preset {preset}: x in [{}, {}], y in [0, {}], dx = {}, dy = {}, dt = {}, t_end = {}",
        e.grid.x_min, e.grid.x_max, e.grid.y_max, e.grid.dx, e.grid.dy, e.grid.dt, e.t_end
    );
    let record = run(&e.params, &e.grid, &e.datum, e.t_end, e.snapshot_every).context("simulation failed")?;

    let mut files = Vec::new();
    let mut buf = Vec::new();
    io::write_mass(&mut buf, &record)?;
    files.push(("mass.csv", String::from_utf8(buf)?));
    let mut buf = Vec::new();
    io::write_road_profiles(&mut buf, &e.grid, &record)?;
    files.push(("road.csv", String::from_utf8(buf)?));
    let mut buf = Vec::new();
    io::write_field_traces(&mut buf, &e.grid, &record)?;
    files.push(("trace.csv", String::from_utf8(buf)?));

    let m0 = record.mass[0];
    let drift = record.mass.iter().map(|m| (m - m0).abs() / m0).fold(0.0, f64::max);
    println!("max relative mass change: {drift:.3e}");

    let series = front_series(
        &record,
        &e.grid,
        Channel::Road,
        Channel::Road.default_threshold(&e.params),
    );
    let mut buf = Vec::new();
    io::write_fronts(&mut buf, &series)?;
    files.push(("fronts.csv", String::from_utf8(buf)?));
    if preset != Preset::Conservation {
        match fit_speed(&series, 0.5) {
            Ok(estimate) => {
                let mut buf = Vec::new();
                io::write_speed_summary(&mut buf, &estimate)?;
                files.push(("speed_summary.csv", String::from_utf8(buf)?));
                println!("measured road front speed = {}", fmt17(estimate.speed));
            }
            // the steady preset's front leaves the box early; nothing to fit
            Err(err) => println!("no speed fit: {err}"),
        }
    }
    common.write_outputs(&files)
}
