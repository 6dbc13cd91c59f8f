//! Data files behind the published figures.

use std::fs;
use std::path::{Path, PathBuf};

use sirev::bessel::*;
use sirev::interval::linspace;
use sirev::profile::{bessel_profile, log_profile};
use sirev::{Interval, Result, RevolutionKind, RevolutionSurface};

use crate::csv_row;

pub const IDS: [&str; 6] = ["1a", "1b", "2a", "2b", "3a", "3b"];

const CURVE_SAMPLES: usize = 200;
const MESH_SIZE: (usize, usize) = (31, 21);

/// Writes the files of figure `id` into `dir` and returns their paths.
pub fn write_figure(id: &str, dir: &Path, cfg: SeriesConfig) -> std::io::Result<Vec<PathBuf>> {
    let files = render(id, cfg).map_err(std::io::Error::other)?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

pub fn render(id: &str, cfg: SeriesConfig) -> Result<Vec<(String, String)>> {
    Ok(match id {
        "1a" => vec![("fig1a.csv".into(), fig_1a(&cfg)?)],
        "1b" => {
            let (i0, k0) = fig_1b(&cfg)?;
            vec![("fig1b_i0.csv".into(), i0), ("fig1b_k0.csv".into(), k0)]
        }
        "2a" => vec![(
            "fig2a.csv".into(),
            meridian(1.0, 4.0, |u| bessel_j0(u, &cfg))?,
        )],
        "2b" => {
            let p = bessel_profile(1.0, 1.0, 0.0, cfg)?;
            vec![("fig2b.obj".into(), mesh(p, (1.0, 4.0), (-1.0, 1.0))?)]
        }
        "3a" => vec![("fig3a.csv".into(), meridian(0.5, 5.0, |u| Ok(u.ln()))?)],
        "3b" => {
            let p = log_profile(-2.0, 0.0)?;
            vec![("fig3b.obj".into(), mesh(p, (0.5, 5.0), (-0.5, 1.0))?)]
        }
        _ => {
            return Err(sirev::Error::Parse(format!(
                "unknown figure `{id}` (expected one of {})",
                IDS.join(", ")
            )))
        }
    })
}

fn fig_1a(cfg: &SeriesConfig) -> Result<String> {
    let mut out = String::from("# Y0 diverges at x = 0, so sampling starts at x = 0.05\nx,J0,Y0\n");
    for x in linspace(0.05, 10.0, CURVE_SAMPLES) {
        out += &csv_row(&[x, bessel_j0(x, cfg)?, bessel_y0(x, cfg)?]);
    }
    Ok(out)
}

fn fig_1b(cfg: &SeriesConfig) -> Result<(String, String)> {
    let mut i0 = String::from("x,I0\n");
    for x in linspace(-3.0, 3.0, CURVE_SAMPLES + 1) {
        i0 += &csv_row(&[x, bessel_i0(x, cfg)?]);
    }
    let mut k0 = String::from("# K0 is defined only for x > 0; samples cover (0, 3]\nx,K0\n");
    for k in 1..=CURVE_SAMPLES {
        let x = 3.0 * k as f64 / CURVE_SAMPLES as f64;
        k0 += &csv_row(&[x, bessel_k0(x, cfg)?]);
    }
    Ok((i0, k0))
}

/// The meridian `(0, u, f(u))` at `v = 0`.
fn meridian(a: f64, b: f64, f: impl Fn(f64) -> Result<f64>) -> Result<String> {
    let mut out = String::from("x1,x2,x3\n");
    for u in linspace(a, b, CURVE_SAMPLES) {
        out += &csv_row(&[0.0, u, f(u)?]);
    }
    Ok(out)
}

fn mesh(profile: sirev::ProfileCurve, u: (f64, f64), v: (f64, f64)) -> Result<String> {
    let s = RevolutionSurface::new(
        profile,
        RevolutionKind::TimelikeMeridian,
        Interval::new(u.0, u.1)?,
        Interval::new(v.0, v.1)?,
    )?;
    Ok(s.mesh(MESH_SIZE.0, MESH_SIZE.1)?.to_obj())
}
