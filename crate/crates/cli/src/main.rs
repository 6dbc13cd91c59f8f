use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sirev::bessel::*;
use sirev::classify::{self, Grid, DEFAULT_GRID_SIZE, DEFAULT_TOL};
use sirev::interval::{linspace, parse_bounds};
use sirev::{Error, Interval, RevolutionKind, RevolutionSurface};

mod figures;
mod profile_arg;

#[derive(Parser)]
#[command(
    name = "sirev",
    version,
    about = "Surfaces of revolution in semi-isotropic space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a Bessel function as `x,value` CSV.
    Bessel {
        #[arg(long, value_enum)]
        kind: BesselArg,
        /// Order for `--kind jp` (2p must not be an integer).
        #[arg(long)]
        p: Option<f64>,
        /// Sample range `a:b`.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 1e-15)]
        series_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometry and classification of one surface of revolution.
    Surface {
        /// Profile as `family:key=val,...`, e.g. `bessel:lambda=1,c1=1,c2=0`
        /// or `expr:f=ln(u)`.
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        #[arg(long, value_enum, default_value_t = KindArg::Timelike)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true, default_value = "0.5:5")]
        u: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1")]
        v: String,
        #[arg(long, value_enum)]
        action: Action,
        /// Samples per parameter direction.
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1e-15)]
        series_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind a figure.
    Figure {
        #[arg(value_parser = figures::IDS)]
        id: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1e-15)]
        series_tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BesselArg {
    J0,
    Y0,
    I0,
    K0,
    Jp,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Timelike,
    Spacelike,
}

#[derive(Clone, Copy, ValueEnum)]
enum Action {
    Curvature,
    Laplacian1,
    Laplacian2,
    Classify1,
    Classify2,
    Mesh,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_)) => 2,
            Failure::Lib(Error::Domain(_) | Error::NotAdmissible { .. }) => 3,
            Failure::Lib(Error::ParabolicPoint { .. }) => 4,
            Failure::Lib(Error::NonConvergence { .. }) => 5,
            Failure::Io(_) => 1,
        }
    }
}

/// One CSV line; floats use the shortest representation that round-trips.
pub(crate) fn csv_row(values: &[f64]) -> String {
    let mut line = values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

fn emit(out: Option<&PathBuf>, body: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn series(tol: f64) -> Result<SeriesConfig, Error> {
    SeriesConfig::new(tol, SeriesConfig::default().max_terms())
}

fn run_bessel(
    kind: BesselArg,
    p: Option<f64>,
    range: &str,
    n: usize,
    cfg: SeriesConfig,
) -> Result<String, Error> {
    let (a, b) = parse_bounds(range)?;
    if n == 0 || (n > 1 && a >= b) || (n == 1 && a > b) {
        return Err(Error::Domain(format!(
            "need a <= b and n >= 1, got {range} with n = {n}"
        )));
    }
    let order = match (kind, p) {
        (BesselArg::Jp, Some(p)) => p,
        (BesselArg::Jp, None) => return Err(Error::Parse("--kind jp needs --p".into())),
        _ => 0.0,
    };
    let oscillating = matches!(kind, BesselArg::J0 | BesselArg::Y0 | BesselArg::Jp);
    if oscillating && a.abs().max(b.abs()) > J_PRECISION_LIMIT {
        eprintln!("warning: |x| > {J_PRECISION_LIMIT} is outside the accuracy range of the series");
    }
    let mut out = String::from("x,value\n");
    for x in linspace(a, b, n) {
        let y = match kind {
            BesselArg::J0 => bessel_j0(x, &cfg)?,
            BesselArg::Y0 => bessel_y0(x, &cfg)?,
            BesselArg::I0 => bessel_i0(x, &cfg)?,
            BesselArg::K0 => bessel_k0(x, &cfg)?,
            BesselArg::Jp => bessel_j(order, x, &cfg)?.value,
        };
        out += &csv_row(&[x, y]);
    }
    Ok(out)
}

struct SurfaceJob<'a> {
    profile: &'a str,
    kind: KindArg,
    u: &'a str,
    v: &'a str,
    action: Action,
    grid: usize,
    tol: f64,
    cfg: SeriesConfig,
}

fn run_surface(job: SurfaceJob) -> Result<String, Error> {
    let u_range: Interval = job.u.parse()?;
    let v_range: Interval = job.v.parse()?;
    let mut profile = profile_arg::parse_profile(job.profile, job.cfg)?;
    if !profile.domain().contains_interval(&u_range) {
        profile = profile.with_domain(u_range)?;
    }
    let kind = match job.kind {
        KindArg::Timelike => RevolutionKind::TimelikeMeridian,
        KindArg::Spacelike => RevolutionKind::SpacelikeMeridian,
    };
    let s = RevolutionSurface::new(profile, kind, u_range, v_range)?;
    let n = job.grid;
    let mut out = String::new();
    match job.action {
        Action::Curvature => {
            out += "u,K,H\n";
            for u in u_range.linspace(n) {
                let (k, h) = s.curvatures(u)?;
                out += &csv_row(&[u, k, h]);
            }
        }
        Action::Laplacian1 | Action::Laplacian2 => {
            out += "u,v,d1,d2,d3\n";
            for u in u_range.linspace(n) {
                for v in v_range.linspace(n) {
                    let d = match job.action {
                        Action::Laplacian1 => s.coord_laplacians_first(u, v)?,
                        _ => s.coord_laplacians_second(u, v)?,
                    };
                    out += &csv_row(&[u, v, d[0], d[1], d[2]]);
                }
            }
        }
        Action::Classify1 | Action::Classify2 => {
            let grid = Grid::uniform(u_range, v_range, n, n)?;
            let report = match job.action {
                Action::Classify1 => classify::check_eigen_first(&s, &grid, job.tol)?,
                _ => classify::check_eigen_second(&s, &grid, job.tol)?,
            };
            out += &format!("profile: {}\nkind: {}\n", s.profile().describe(), s.kind());
            out += &report.to_block();
        }
        Action::Mesh => out += &s.mesh(n, n)?.to_obj(),
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bessel {
            kind,
            p,
            range,
            n,
            series_tol,
            out,
        } => {
            let body = run_bessel(kind, p, &range, n, series(series_tol)?)?;
            emit(out.as_ref(), &body)?;
        }
        Command::Surface {
            profile,
            kind,
            u,
            v,
            action,
            grid,
            tol,
            series_tol,
            out,
        } => {
            let body = run_surface(SurfaceJob {
                profile: &profile,
                kind,
                u: &u,
                v: &v,
                action,
                grid,
                tol,
                cfg: series(series_tol)?,
            })?;
            emit(out.as_ref(), &body)?;
        }
        Command::Figure {
            id,
            out_dir,
            series_tol,
        } => {
            for path in figures::write_figure(&id, &out_dir, series(series_tol)?)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
