//! Numerical checks of the eigen-relations `Δ r_i = λ_i r_i` for the two
//! Laplacians, constant-curvature checks, and certified solutions of the
//! radial Bessel-type equation `f'' + f'/u + λ f = 0`.

use std::fmt;

use crate::bessel::SeriesConfig;
use crate::error::{domain, Result};
use crate::interval::Interval;
use crate::profile::{bessel_profile, ProfileCurve, ProfileFamily};
use crate::surface::{RevolutionKind, RevolutionSurface};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_GRID_SIZE: usize = 21;
const MIN_GRID_SIZE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    FirstForm,
    SecondForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `λ1 = λ2 = 0`, `λ3 != 0` for the first-form Laplacian.
    NullTwoType,
    /// `λ1 = λ2`, `λ3 = 0` for the second-form Laplacian.
    SIMinimal,
    NoEigenRelation,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sample points in the parameter rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl Grid {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        for (name, xs) in [("u", &u), ("v", &v)] {
            if xs.len() < MIN_GRID_SIZE {
                return domain(format!(
                    "grid needs at least {MIN_GRID_SIZE} {name} samples, got {}",
                    xs.len()
                ));
            }
            if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[0] >= w[1]) {
                return domain(format!(
                    "{name} samples must be finite and strictly increasing"
                ));
            }
        }
        Ok(Grid { u, v })
    }

    /// Cell-centred `nu x nv` samples. If a `v` sample lands on `v = 0` the
    /// whole `v` row is shifted by a quarter step so that `r1` does not vanish
    /// on a sample line.
    pub fn uniform(u_range: Interval, v_range: Interval, nu: usize, nv: usize) -> Result<Self> {
        if nu == 0 || nv == 0 {
            return domain("grid sizes must be positive");
        }
        let u = u_range.midpoints(nu);
        let mut v = v_range.midpoints(nv);
        if v.contains(&0.0) {
            let shift = 0.25 * v_range.width() / nv as f64;
            v.iter_mut().for_each(|x| *x += shift);
        }
        Grid::new(u, v)
    }

    /// The default 21 x 21 grid over the surface's ranges.
    pub fn for_surface(s: &RevolutionSurface) -> Result<Self> {
        Grid::uniform(
            s.u_range(),
            s.v_range(),
            DEFAULT_GRID_SIZE,
            DEFAULT_GRID_SIZE,
        )
    }

    pub fn u_samples(&self) -> &[f64] {
        &self.u
    }

    pub fn v_samples(&self) -> &[f64] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.u.len() * self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn check_within(&self, s: &RevolutionSurface) -> Result<()> {
        let (ur, vr) = (s.u_range(), s.v_range());
        if !self.u.iter().all(|&u| ur.contains(u)) || !self.v.iter().all(|&v| vr.contains(v)) {
            return domain(format!("grid leaves the surface ranges {ur} x {vr}"));
        }
        Ok(())
    }

    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.u
            .iter()
            .flat_map(move |&u| self.v.iter().map(move |&v| (u, v)))
    }
}

/// Pairwise summation; fixed association order makes results reproducible.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Least-squares `λ` with `lap ≈ λ r`, its sup residual, and that residual
/// relative to `sup |r|`.
fn fit_eigenvalue(lap: &[f64], r: &[f64]) -> (f64, f64, f64) {
    let num: Vec<f64> = lap.iter().zip(r).map(|(a, b)| a * b).collect();
    let den: Vec<f64> = r.iter().map(|b| b * b).collect();
    let den = pairwise_sum(&den);
    let lambda = if den > 0.0 {
        pairwise_sum(&num) / den
    } else {
        0.0
    };
    let sup = lap
        .iter()
        .zip(r)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max);
    let scale = r.iter().map(|b| b.abs()).fold(0.0, f64::max);
    let rel = if scale > 0.0 { sup / scale } else { sup };
    (lambda, sup, rel)
}

/// Outcome of fitting `Δ r_i = λ_i r_i` over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub operator: Operator,
    pub lambda: [f64; 3],
    pub residual_sup: [f64; 3],
    /// `residual_sup[i] / sup |r_i|` over the grid.
    pub residual_rel: [f64; 3],
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl EigenReport {
    /// Flat `key: value` block.
    pub fn to_block(&self) -> String {
        let mut out = format!("operator: {}\n", self.operator);
        for i in 0..3 {
            out.push_str(&format!("lambda{}: {}\n", i + 1, self.lambda[i]));
        }
        for i in 0..3 {
            out.push_str(&format!("residual{}: {}\n", i + 1, self.residual_sup[i]));
        }
        for i in 0..3 {
            out.push_str(&format!(
                "relative_residual{}: {}\n",
                i + 1,
                self.residual_rel[i]
            ));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str(&format!("notes: {}\n", self.notes.join("; ")));
        out
    }
}

struct Samples {
    lap: [Vec<f64>; 3],
    pos: [Vec<f64>; 3],
}

fn sample(
    s: &RevolutionSurface,
    g: &Grid,
    lap: impl Fn(f64, f64) -> Result<[f64; 3]>,
) -> Result<Samples> {
    g.check_within(s)?;
    let mut out = Samples {
        lap: Default::default(),
        pos: Default::default(),
    };
    for (u, v) in g.points() {
        let l = lap(u, v)?;
        let p = s.point_at(u, v)?.to_array();
        for i in 0..3 {
            out.lap[i].push(l[i]);
            out.pos[i].push(p[i]);
        }
    }
    Ok(out)
}

fn fit_all(smp: &Samples) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let mut lambda = [0.0; 3];
    let mut sup = [0.0; 3];
    let mut rel = [0.0; 3];
    for i in 0..3 {
        (lambda[i], sup[i], rel[i]) = fit_eigenvalue(&smp.lap[i], &smp.pos[i]);
    }
    (lambda, sup, rel)
}

fn sup_mean_curvature(s: &RevolutionSurface, g: &Grid) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for &u in g.u_samples() {
        sup = sup.max(s.curvatures(u)?.1.abs());
    }
    Ok(sup)
}

/// Fits `Δ r_i = λ_i r_i` for the first-form Laplacian.
pub fn check_eigen_first(s: &RevolutionSurface, g: &Grid, tol: f64) -> Result<EigenReport> {
    let smp = sample(s, g, |u, v| s.coord_laplacians_first(u, v))?;
    let (lambda, residual_sup, residual_rel) = fit_all(&smp);
    let holds = residual_sup.iter().all(|&r| r <= tol);
    let mut notes = Vec::new();
    let verdict = if holds && lambda[0].abs() <= tol && lambda[1].abs() <= tol {
        if lambda[2].abs() > tol {
            notes.push("λ1 = λ2 = 0 and λ3 != 0: null 2-type".into());
            Verdict::NullTwoType
        } else {
            notes.push("Δr = 0: the surface is (s-i)-minimal, not a proper eigen-surface".into());
            Verdict::NoEigenRelation
        }
    } else {
        if !holds {
            notes.push(format!(
                "no constant eigenvalue fits: residuals ({:.3e}, {:.3e}, {:.3e}) exceed tol {tol:e}",
                residual_sup[0], residual_sup[1], residual_sup[2]
            ));
        }
        Verdict::NoEigenRelation
    };
    Ok(EigenReport {
        operator: Operator::FirstForm,
        lambda,
        residual_sup,
        residual_rel,
        verdict,
        notes,
    })
}

/// Which branch of the case split on `(λ, μ) = (λ1 = λ2, λ3)` applies.
fn case_label(lambda: f64, mu: f64, tol: f64) -> &'static str {
    match (lambda.abs() <= tol, mu.abs() <= tol) {
        (true, true) => "λ = μ = 0",
        (true, false) => "λ = 0, μ != 0",
        (false, true) => "λ != 0, μ = 0",
        (false, false) => "λ != 0, μ != 0",
    }
}

/// Fits `Δ^II r_i = λ_i r_i`. Fails with a parabolic-point error if
/// `f' f''` vanishes on the grid.
pub fn check_eigen_second(s: &RevolutionSurface, g: &Grid, tol: f64) -> Result<EigenReport> {
    let smp = sample(s, g, |u, v| s.coord_laplacians_second(u, v))?;
    let (lambda, residual_sup, residual_rel) = fit_all(&smp);
    let holds = residual_sup.iter().all(|&r| r <= tol);
    let mut notes = Vec::new();

    let pair_matches = (lambda[0] - lambda[1]).abs() <= tol;
    if !pair_matches {
        notes.push(format!(
            "λ1 = {} and λ2 = {} differ beyond tol",
            lambda[0], lambda[1]
        ));
    }
    let radial = 0.5 * (lambda[0] + lambda[1]);
    let case = case_label(radial, lambda[2], tol);
    notes.push(if holds {
        format!("{case}: relation holds")
    } else {
        format!("{case}: relation fails")
    });

    if s.profile().family() == ProfileFamily::LogType {
        notes.push(
            "log profile uses f = (-2/λ) ln u + c; the variant (2/λ) ln u + c would give the opposite eigenvalue sign"
                .into(),
        );
    }
    let mut convex = false;
    for &u in g.u_samples() {
        let d = s.profile().eval_all(u)?;
        convex |= d[1] * d[2] > 0.0;
    }
    if convex {
        notes
            .push("f' f'' > 0 on part of the grid: closed forms carry the sign of LN - M^2".into());
    }

    let verdict = if holds && pair_matches && lambda[2].abs() <= tol && radial.abs() > tol {
        notes.push(format!("sup |H| on grid = {:e}", sup_mean_curvature(s, g)?));
        Verdict::SIMinimal
    } else {
        Verdict::NoEigenRelation
    };
    Ok(EigenReport {
        operator: Operator::SecondForm,
        lambda,
        residual_sup,
        residual_rel,
        verdict,
        notes,
    })
}

/// Residual of the coefficient system behind `Δ^II r_i = λ_i r_i` for
/// given `(λ, μ)`:
/// `max_u max(|s(B - 1/f') - λ u|, |s(B f' + 1) - μ f|)`, where `s` is the
/// sign carried by the closed forms (`sgn(LN - M^2)` on the timelike meridian).
pub fn second_form_system_residual(
    s: &RevolutionSurface,
    g: &Grid,
    lambda: f64,
    mu: f64,
) -> Result<f64> {
    g.check_within(s)?;
    let v = g.v_samples()[0];
    // the component proportional to cosh v carries the radial coefficient
    let cosh_index = match s.kind() {
        RevolutionKind::TimelikeMeridian => 1,
        RevolutionKind::SpacelikeMeridian => 0,
    };
    let mut worst: f64 = 0.0;
    for &u in g.u_samples() {
        let lap = s.coord_laplacians_second(u, v)?;
        let radial = lap[cosh_index] / v.cosh();
        let f = s.profile().eval(u, 0)?;
        worst = worst
            .max((radial - lambda * u).abs())
            .max((lap[2] - mu * f).abs());
    }
    Ok(worst)
}

/// Summary of how far a curvature is from constant over the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constancy {
    /// Mean over the samples.
    pub estimate: f64,
    pub sup_deviation: f64,
    pub is_constant: bool,
}

fn constancy(values: &[f64], tol: f64) -> Constancy {
    let estimate = pairwise_sum(values) / values.len() as f64;
    let sup_deviation = values
        .iter()
        .map(|x| (x - estimate).abs())
        .fold(0.0, f64::max);
    Constancy {
        estimate,
        sup_deviation,
        is_constant: sup_deviation <= tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureReport {
    pub k: Constancy,
    pub h: Constancy,
    /// `H` is constant and zero within tolerance.
    pub si_minimal: bool,
}

pub fn verify_constant_curvature(
    s: &RevolutionSurface,
    g: &Grid,
    tol: f64,
) -> Result<CurvatureReport> {
    g.check_within(s)?;
    let (mut ks, mut hs) = (Vec::new(), Vec::new());
    for &u in g.u_samples() {
        let (k, h) = s.curvatures(u)?;
        ks.push(k);
        hs.push(h);
    }
    let k = constancy(&ks, tol);
    let h = constancy(&hs, tol);
    Ok(CurvatureReport {
        k,
        h,
        si_minimal: h.is_constant && h.estimate.abs() <= tol,
    })
}

/// Sup-norm residual of `f'' + f'/u + λ f` over sampled points.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeCertificate {
    pub sup_residual: f64,
    pub worst_u: f64,
    /// `(u, residual)` at every sample.
    pub samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct CertifiedProfile {
    pub profile: ProfileCurve,
    pub certificate: OdeCertificate,
}

/// Number of sample points in an [`OdeCertificate`].
pub const CERTIFICATE_SAMPLES: usize = 200;

/// Solves `f'' + f'/u + λ3 f = 0` by the Bessel family and certifies the
/// residual on `[max(0.1, lo), hi]` of `domain` (default profile domain when
/// `None`).
pub fn solve_ode_4_6(
    lambda3: f64,
    c1: f64,
    c2: f64,
    cfg: SeriesConfig,
    domain: Option<Interval>,
) -> Result<CertifiedProfile> {
    let mut profile = bessel_profile(lambda3, c1, c2, cfg)?;
    if let Some(d) = domain {
        profile = profile.with_domain(d)?;
    }
    let dom = profile.domain();
    let span = Interval::new(dom.lo().max(0.1), dom.hi())?;
    let mut samples = Vec::with_capacity(CERTIFICATE_SAMPLES);
    let (mut sup_residual, mut worst_u) = (0.0, span.lo());
    for u in span.linspace(CERTIFICATE_SAMPLES) {
        let [f, d1, d2, _] = profile.eval_all(u)?;
        let r = d2 + d1 / u + lambda3 * f;
        if r.abs() > sup_residual {
            sup_residual = r.abs();
            worst_u = u;
        }
        samples.push((u, r));
    }
    Ok(CertifiedProfile {
        profile,
        certificate: OdeCertificate {
            sup_residual,
            worst_u,
            samples,
        },
    })
}
