//! CSV output. Numbers are written with 17 significant digits so that
//! files round-trip bit for bit.

use std::io::{self, Write};

use crate::analysis::{FrontSeries, SpeedEstimate};
use crate::simulator::{Grid, RunRecord};

/// `x` with 17 significant digits (scientific notation).
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_mass<W: Write>(mut w: W, record: &RunRecord) -> io::Result<()> {
    writeln!(w, "t,mass")?;
    for (t, m) in record.times.iter().zip(&record.mass) {
        writeln!(w, "{},{}", fmt17(*t), fmt17(*m))?;
    }
    Ok(())
}

fn write_profiles<W: Write>(mut w: W, header: &str, grid: &Grid, profiles: &[(f64, Vec<f64>)]) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for (t, profile) in profiles {
        let t = fmt17(*t);
        for (i, value) in profile.iter().enumerate() {
            writeln!(w, "{t},{},{}", fmt17(grid.x(i)), fmt17(*value))?;
        }
    }
    Ok(())
}

/// Road profiles as `t,x,u`.
pub fn write_road_profiles<W: Write>(w: W, grid: &Grid, record: &RunRecord) -> io::Result<()> {
    write_profiles(w, "t,x,u", grid, &record.road_profiles)
}

/// Field traces on the road as `t,x,v0`.
pub fn write_field_traces<W: Write>(w: W, grid: &Grid, record: &RunRecord) -> io::Result<()> {
    write_profiles(w, "t,x,v0", grid, &record.field_traces)
}

pub fn write_fronts<W: Write>(mut w: W, series: &FrontSeries) -> io::Result<()> {
    writeln!(w, "t,x_front")?;
    for (t, x) in &series.samples {
        writeln!(w, "{},{}", fmt17(*t), fmt17(*x))?;
    }
    Ok(())
}

pub fn write_speed_summary<W: Write>(mut w: W, estimate: &SpeedEstimate) -> io::Result<()> {
    writeln!(w, "speed,intercept,residual_rms,t_lo,t_hi")?;
    writeln!(
        w,
        "{},{},{},{},{}",
        fmt17(estimate.speed),
        fmt17(estimate.intercept),
        fmt17(estimate.residual_rms),
        fmt17(estimate.fit_window.0),
        fmt17(estimate.fit_window.1)
    )
}
