//! Surfaces of revolution about the isotropic axis, their fundamental forms
//! and curvatures, and the Laplace operators of the first and second forms.
//!
//! Two parameterizations are supported:
//!
//! * timelike meridian: `r(u, v) = (u sinh v, u cosh v, f(u))`
//! * spacelike meridian: `r(u, v) = (u cosh v, u sinh v, f(u))`
//!
//! Both are timelike surfaces with `EG - F^2 = -u^2`.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::interval::Interval;
use crate::profile::ProfileCurve;
use crate::si::{det3, scalar_product, Vec3SI};

/// Which meridian is rotated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RevolutionKind {
    /// `(0, u, f(u))` rotated to `(u sinh v, u cosh v, f(u))`.
    TimelikeMeridian,
    /// `(u, 0, f(u))` rotated to `(u cosh v, u sinh v, f(u))`.
    SpacelikeMeridian,
}

impl RevolutionKind {
    /// `+1` for the timelike meridian, `-1` for the spacelike one. The
    /// spacelike meridian flips the signs of `E`, `G`, `L` and `N`, which
    /// negates both Laplacians of the coordinate functions.
    fn orientation(self) -> f64 {
        match self {
            RevolutionKind::TimelikeMeridian => 1.0,
            RevolutionKind::SpacelikeMeridian => -1.0,
        }
    }
}

impl fmt::Display for RevolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RevolutionKind::TimelikeMeridian => "timelike",
            RevolutionKind::SpacelikeMeridian => "spacelike",
        })
    }
}

/// A profile curve rotated by boosts over a `(u, v)` rectangle.
#[derive(Debug, Clone)]
pub struct RevolutionSurface {
    profile: ProfileCurve,
    kind: RevolutionKind,
    u_range: Interval,
    v_range: Interval,
}

/// First and second fundamental form coefficients at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    /// `EG - F^2`
    pub det_first: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `LN - M^2`
    pub det_second: f64,
    /// Sign of `det_first`.
    pub epsilon: f64,
}

impl FundamentalForms {
    fn assemble(e: f64, f: f64, g: f64, l: f64, m: f64, n: f64) -> Result<Self> {
        let det_first = e * g - f * f;
        if det_first == 0.0 {
            return domain("degenerate first fundamental form (EG - F^2 = 0)");
        }
        Ok(FundamentalForms {
            e,
            f,
            g,
            det_first,
            l,
            m,
            n,
            det_second: l * n - m * m,
            epsilon: det_first.signum(),
        })
    }

    /// `K = -eps (LN - M^2) / W`
    pub fn semi_relative_curvature(&self) -> f64 {
        -self.epsilon * self.det_second / self.det_first
    }

    /// `H = -eps (EN - 2FM + GL) / (2W)`
    pub fn mean_curvature(&self) -> f64 {
        -self.epsilon * (self.e * self.n - 2.0 * self.f * self.m + self.g * self.l)
            / (2.0 * self.det_first)
    }
}

/// Position and partial derivatives of the parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub r: Vec3SI,
    pub r_u: Vec3SI,
    pub r_v: Vec3SI,
    pub r_uu: Vec3SI,
    pub r_uv: Vec3SI,
    pub r_vv: Vec3SI,
}

/// A scalar function on the parameter rectangle of a surface.
pub trait ScalarField {
    fn value(&self, u: f64, v: f64) -> Result<f64>;

    /// `(psi_u, psi_v)` when known in closed form. Fields returning `None`
    /// are differentiated by central differences.
    fn gradient(&self, _u: f64, _v: f64) -> Result<Option<(f64, f64)>> {
        Ok(None)
    }
}

/// Adapter turning a closure into a [`ScalarField`] without analytic gradient.
pub struct FnField<F>(pub F);

impl<F: Fn(f64, f64) -> f64> ScalarField for FnField<F> {
    fn value(&self, u: f64, v: f64) -> Result<f64> {
        Ok((self.0)(u, v))
    }
}

/// Coordinate function `r_i` (`index` in `0..3`) of a surface, with exact gradient.
pub struct CoordinateField<'a> {
    pub surface: &'a RevolutionSurface,
    pub index: usize,
}

impl ScalarField for CoordinateField<'_> {
    fn value(&self, u: f64, v: f64) -> Result<f64> {
        Ok(self.surface.position_unchecked(u, v)?.to_array()[self.index])
    }

    fn gradient(&self, u: f64, v: f64) -> Result<Option<(f64, f64)>> {
        let fr = self.surface.frame_unchecked(u, v)?;
        Ok(Some((
            fr.r_u.to_array()[self.index],
            fr.r_v.to_array()[self.index],
        )))
    }
}

/// Relative step used by the finite-difference Laplacians.
pub const FD_STEP: f64 = 1e-5;

/// Scale-aware `LN - M^2 = 0` test.
fn is_parabolic(u: f64, d1: f64, d2: f64, w: f64) -> bool {
    w.abs() < 1e-12 * u * d1.abs().max(1.0) * d2.abs().max(1.0)
}

impl RevolutionSurface {
    /// The `u` range must lie inside the profile domain; `v` is free.
    pub fn new(
        profile: ProfileCurve,
        kind: RevolutionKind,
        u_range: Interval,
        v_range: Interval,
    ) -> Result<Self> {
        if u_range.lo() <= 0.0 {
            return domain(format!("u range {u_range} must lie in u > 0"));
        }
        if !profile.domain().contains_interval(&u_range) {
            return domain(format!(
                "u range {u_range} not inside profile domain {}",
                profile.domain()
            ));
        }
        Ok(RevolutionSurface {
            profile,
            kind,
            u_range,
            v_range,
        })
    }

    pub fn profile(&self) -> &ProfileCurve {
        &self.profile
    }

    pub fn kind(&self) -> RevolutionKind {
        self.kind
    }

    pub fn u_range(&self) -> Interval {
        self.u_range
    }

    pub fn v_range(&self) -> Interval {
        self.v_range
    }

    fn check_point(&self, u: f64, v: f64) -> Result<()> {
        if !self.u_range.contains(u) || !self.v_range.contains(v) {
            return domain(format!(
                "(u, v) = ({u}, {v}) outside {} x {}",
                self.u_range, self.v_range
            ));
        }
        Ok(())
    }

    fn rotation(&self, u: f64, v: f64) -> (f64, f64) {
        let (s, c) = (v.sinh(), v.cosh());
        match self.kind {
            RevolutionKind::TimelikeMeridian => (u * s, u * c),
            RevolutionKind::SpacelikeMeridian => (u * c, u * s),
        }
    }

    fn position_unchecked(&self, u: f64, v: f64) -> Result<Vec3SI> {
        let (x1, x2) = self.rotation(u, v);
        Vec3SI::new(x1, x2, self.profile.eval(u, 0)?)
    }

    fn frame_unchecked(&self, u: f64, v: f64) -> Result<Frame> {
        let [f0, f1, f2, _] = self.profile.eval_all(u)?;
        let (s, c) = (v.sinh(), v.cosh());
        let (a, b) = match self.kind {
            RevolutionKind::TimelikeMeridian => (s, c),
            RevolutionKind::SpacelikeMeridian => (c, s),
        };
        // unit rotation (a, b); its v-derivative is (b, a)
        Ok(Frame {
            r: Vec3SI::new(u * a, u * b, f0)?,
            r_u: Vec3SI::new(a, b, f1)?,
            r_v: Vec3SI::new(u * b, u * a, 0.0)?,
            r_uu: Vec3SI::new(0.0, 0.0, f2)?,
            r_uv: Vec3SI::new(b, a, 0.0)?,
            r_vv: Vec3SI::new(u * a, u * b, 0.0)?,
        })
    }

    /// Parameterization evaluated at `(u, v)`.
    pub fn point_at(&self, u: f64, v: f64) -> Result<Vec3SI> {
        self.check_point(u, v)?;
        self.position_unchecked(u, v)
    }

    /// Position and partials at `(u, v)` from the profile's exact derivatives.
    pub fn frame(&self, u: f64, v: f64) -> Result<Frame> {
        self.check_point(u, v)?;
        self.frame_unchecked(u, v)
    }

    fn forms_unchecked(&self, u: f64) -> Result<FundamentalForms> {
        let [_, f1, f2, _] = self.profile.eval_all(u)?;
        match self.kind {
            RevolutionKind::TimelikeMeridian => {
                FundamentalForms::assemble(-1.0, 0.0, u * u, -f2, 0.0, u * f1)
            }
            RevolutionKind::SpacelikeMeridian => {
                FundamentalForms::assemble(1.0, 0.0, -u * u, f2, 0.0, -u * f1)
            }
        }
    }

    /// Closed-form fundamental forms at `(u, v)`; they do not depend on `v`.
    pub fn fundamental_forms(&self, u: f64, v: f64) -> Result<FundamentalForms> {
        self.check_point(u, v)?;
        self.forms_unchecked(u)
    }

    /// Fundamental forms from the defining scalar products and determinants,
    /// `E = <r_u, r_u>`, `L = det(r_uu, r_u, r_v) / sqrt|W|`, etc.
    pub fn fundamental_forms_from_frame(frame: &Frame) -> Result<FundamentalForms> {
        let e = scalar_product(frame.r_u, frame.r_u);
        let f = scalar_product(frame.r_u, frame.r_v);
        let g = scalar_product(frame.r_v, frame.r_v);
        let root = (e * g - f * f).abs().sqrt();
        let l = det3(frame.r_uu, frame.r_u, frame.r_v) / root;
        let m = det3(frame.r_uv, frame.r_u, frame.r_v) / root;
        let n = det3(frame.r_vv, frame.r_u, frame.r_v) / root;
        FundamentalForms::assemble(e, f, g, l, m, n)
    }

    /// `(K, H) = (f' f'' / u, (f'/u + f'') / 2)`.
    pub fn curvatures(&self, u: f64) -> Result<(f64, f64)> {
        if !self.u_range.contains(u) {
            return domain(format!("u = {u} outside {}", self.u_range));
        }
        let [_, f1, f2, _] = self.profile.eval_all(u)?;
        Ok((f1 * f2 / u, 0.5 * (f1 / u + f2)))
    }

    fn fd_step(u: f64) -> f64 {
        FD_STEP * u.abs().max(1.0)
    }

    fn check_stencil(&self, u: f64, h: f64) -> Result<()> {
        let dom = self.profile.domain();
        if u - h <= 0.0 || !dom.contains(u - h) || !dom.contains(u + h) {
            return domain(format!(
                "finite-difference stencil [{}, {}] leaves the profile domain {dom}",
                u - h,
                u + h
            ));
        }
        Ok(())
    }

    fn field_gradient(field: &dyn ScalarField, u: f64, v: f64, h: f64) -> Result<(f64, f64)> {
        if let Some(g) = field.gradient(u, v)? {
            return Ok(g);
        }
        let du = (field.value(u + h, v)? - field.value(u - h, v)?) / (2.0 * h);
        let dv = (field.value(u, v + h)? - field.value(u, v - h)?) / (2.0 * h);
        Ok((du, dv))
    }

    /// Divergence form shared by both Laplacians:
    /// `-(1/sqrt|D|) { d_u((A psi_u - B psi_v)/sqrt|D|) - d_v((B psi_u - C psi_v)/sqrt|D|) }`
    /// where `coeffs(u) = (A, B, C, D)`.
    fn divergence(
        &self,
        field: &dyn ScalarField,
        u: f64,
        v: f64,
        coeffs: &dyn Fn(f64) -> Result<(f64, f64, f64, f64)>,
    ) -> Result<f64> {
        self.check_point(u, v)?;
        let h = Self::fd_step(u);
        self.check_stencil(u, 2.0 * h)?;
        let flux = |uu: f64, vv: f64| -> Result<(f64, f64)> {
            let (a, b, c, d) = coeffs(uu)?;
            let (pu, pv) = Self::field_gradient(field, uu, vv, h)?;
            let root = d.abs().sqrt();
            Ok(((a * pu - b * pv) / root, (b * pu - c * pv) / root))
        };
        let d_u = (flux(u + h, v)?.0 - flux(u - h, v)?.0) / (2.0 * h);
        let d_v = (flux(u, v + h)?.1 - flux(u, v - h)?.1) / (2.0 * h);
        let (_, _, _, d) = coeffs(u)?;
        Ok(-(d_u - d_v) / d.abs().sqrt())
    }

    /// Laplacian of the first fundamental form applied to `field`, by
    /// central differences of the flux terms.
    pub fn laplacian_first(&self, field: &dyn ScalarField, u: f64, v: f64) -> Result<f64> {
        self.divergence(field, u, v, &|uu| {
            let ff = self.forms_unchecked(uu)?;
            Ok((ff.g, ff.f, ff.e, ff.det_first))
        })
    }

    /// Laplacian of the second fundamental form applied to `field`.
    /// Fails at parabolic points anywhere in the stencil.
    pub fn laplacian_second(&self, field: &dyn ScalarField, u: f64, v: f64) -> Result<f64> {
        self.divergence(field, u, v, &|uu| {
            let ff = self.forms_unchecked(uu)?;
            let [_, f1, f2, _] = self.profile.eval_all(uu)?;
            if is_parabolic(uu, f1, f2, ff.det_second) {
                return Err(Error::ParabolicPoint {
                    u: uu,
                    w: ff.det_second,
                });
            }
            Ok((ff.n, ff.m, ff.l, ff.det_second))
        })
    }

    /// `(Δr1, Δr2, Δr3)` in closed form: `(0, 0, -f'' - f'/u)` for the
    /// timelike meridian, with the last entry negated for the spacelike one.
    pub fn coord_laplacians_first(&self, u: f64, v: f64) -> Result<[f64; 3]> {
        self.check_point(u, v)?;
        let [_, f1, f2, _] = self.profile.eval_all(u)?;
        Ok([0.0, 0.0, self.kind.orientation() * (-f2 - f1 / u)])
    }

    /// `B(u) = (1/(2f'')) ((f' + u f'')/(u f') - f'''/f'')`.
    pub fn b_function(&self, u: f64) -> Result<f64> {
        if !self.u_range.contains(u) {
            return domain(format!("u = {u} outside {}", self.u_range));
        }
        let [_, f1, f2, f3] = self.profile.eval_all(u)?;
        b_from_derivs(u, f1, f2, f3)
    }

    /// `(Δ^II r1, Δ^II r2, Δ^II r3)` in closed form.
    ///
    /// For the timelike meridian this is
    /// `s ((B - 1/f') sinh v, (B - 1/f') cosh v, B f' + 1)` with
    /// `s = sgn(LN - M^2)`; the spacelike meridian swaps `sinh`/`cosh` and
    /// negates. `s` is `+1` whenever `f' f'' < 0`, e.g. for `f = ln u`.
    pub fn coord_laplacians_second(&self, u: f64, v: f64) -> Result<[f64; 3]> {
        self.check_point(u, v)?;
        let [_, f1, f2, f3] = self.profile.eval_all(u)?;
        let w = -u * f1 * f2;
        if is_parabolic(u, f1, f2, w) {
            return Err(Error::ParabolicPoint { u, w });
        }
        let b = b_from_derivs(u, f1, f2, f3)?;
        let s = w.signum() * self.kind.orientation();
        let radial = s * (b - 1.0 / f1);
        let (sh, ch) = (v.sinh(), v.cosh());
        Ok(match self.kind {
            RevolutionKind::TimelikeMeridian => [radial * sh, radial * ch, s * (b * f1 + 1.0)],
            RevolutionKind::SpacelikeMeridian => [radial * ch, radial * sh, s * (b * f1 + 1.0)],
        })
    }

    /// Triangle mesh of an `nu x nv` parameter grid spanning the ranges.
    pub fn mesh(&self, nu: usize, nv: usize) -> Result<TriangleMesh> {
        if nu < 2 || nv < 2 {
            return domain(format!("mesh needs at least 2x2 samples, got {nu}x{nv}"));
        }
        let us = self.u_range.linspace(nu);
        let vs = self.v_range.linspace(nv);
        let mut vertices = Vec::with_capacity(nu * nv);
        for &u in &us {
            for &v in &vs {
                vertices.push(self.point_at(u, v)?);
            }
        }
        let mut triangles = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
        for i in 0..nu - 1 {
            for j in 0..nv - 1 {
                let a = i * nv + j;
                let b = a + nv;
                triangles.push([a, b, b + 1]);
                triangles.push([a, b + 1, a + 1]);
            }
        }
        Ok(TriangleMesh {
            vertices,
            triangles,
        })
    }
}

fn b_from_derivs(u: f64, f1: f64, f2: f64, f3: f64) -> Result<f64> {
    if f2 == 0.0 {
        return Err(Error::ParabolicPoint { u, w: 0.0 });
    }
    if f1 == 0.0 {
        return Err(Error::NotAdmissible { u });
    }
    Ok(((f1 + u * f2) / (f1 * u) - f3 / f2) / (2.0 * f2))
}

/// Vertex grid in row-major `(u, v)` order with two triangles per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3SI>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Wavefront OBJ text: `v x y z` lines, then 1-based `f i j k` lines.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for p in &self.vertices {
            out.push_str(&format!("v {} {} {}\n", p.x1(), p.x2(), p.x3()));
        }
        for t in &self.triangles {
            out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
        out
    }
}
