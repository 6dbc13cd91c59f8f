//! Vector algebra of the semi-isotropic 3-space.
//!
//! Points and vectors carry affine coordinates `(x1, x2, x3)`. The plane
//! `x1 x2` carries the Lorentzian metric `dx1^2 - dx2^2`; the `x3` axis is the
//! isotropic direction and is invisible to the metric except when both
//! arguments of the scalar product are isotropic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{domain, Result};

/// A point or vector of the semi-isotropic 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3SI {
    x1: f64,
    x2: f64,
    x3: f64,
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Null,
    /// Nonzero vector along the `x3` axis.
    Isotropic,
    Zero,
}

impl Vec3SI {
    pub const ZERO: Vec3SI = Vec3SI {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    /// Builds a vector, rejecting non-finite components.
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if !(x1.is_finite() && x2.is_finite() && x3.is_finite()) {
            return domain(format!("non-finite vector component in ({x1}, {x2}, {x3})"));
        }
        Ok(Vec3SI { x1, x2, x3 })
    }

    /// Internal constructor for values known to be finite.
    pub(crate) const fn raw(x1: f64, x2: f64, x3: f64) -> Self {
        Vec3SI { x1, x2, x3 }
    }

    #[inline]
    pub fn x1(&self) -> f64 {
        self.x1
    }

    #[inline]
    pub fn x2(&self) -> f64 {
        self.x2
    }

    #[inline]
    pub fn x3(&self) -> f64 {
        self.x3
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// Canonical projection onto the Lorentzian plane, `(x1, x2, 0)`.
    pub fn projection(self) -> Self {
        Vec3SI::raw(self.x1, self.x2, 0.0)
    }

    /// True when the projection onto the `x1 x2` plane vanishes.
    pub fn has_zero_projection(&self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0
    }

    /// `x1^2 - x2^2`, the Lorentzian quadratic form of the projection.
    #[inline]
    pub fn lorentz_square(&self) -> f64 {
        self.x1 * self.x1 - self.x2 * self.x2
    }

    pub fn semi_norm(&self) -> f64 {
        semi_norm(*self)
    }

    pub fn dot(&self, other: &Vec3SI) -> f64 {
        scalar_product(*self, *other)
    }

    pub fn cross(&self, other: &Vec3SI) -> Vec3SI {
        vector_product(*self, *other)
    }

    pub fn causal_class(&self) -> CausalClass {
        causal_class(*self)
    }

    pub fn scale(self, s: f64) -> Vec3SI {
        Vec3SI::raw(s * self.x1, s * self.x2, s * self.x3)
    }
}

impl fmt::Display for Vec3SI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

impl Add for Vec3SI {
    type Output = Vec3SI;
    fn add(self, rhs: Vec3SI) -> Vec3SI {
        Vec3SI::raw(self.x1 + rhs.x1, self.x2 + rhs.x2, self.x3 + rhs.x3)
    }
}

impl Sub for Vec3SI {
    type Output = Vec3SI;
    fn sub(self, rhs: Vec3SI) -> Vec3SI {
        Vec3SI::raw(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3)
    }
}

impl Neg for Vec3SI {
    type Output = Vec3SI;
    fn neg(self) -> Vec3SI {
        Vec3SI::raw(-self.x1, -self.x2, -self.x3)
    }
}

/// `sqrt(|x1^2 - x2^2|)`.
pub fn semi_norm(v: Vec3SI) -> f64 {
    v.lorentz_square().abs().sqrt()
}

/// Semi-isotropic scalar product.
///
/// When both arguments are isotropic (zero projection) the product falls
/// back to `u3 v3`; otherwise it is the Lorentzian product of the projections.
/// Branch membership is an exact test on the components.
pub fn scalar_product(u: Vec3SI, v: Vec3SI) -> f64 {
    if u.has_zero_projection() && v.has_zero_projection() {
        u.x3 * v.x3
    } else {
        u.x1 * v.x1 - u.x2 * v.x2
    }
}

/// Formal determinant with first row `(1,0,0), (0,-1,0), (0,0,0)`.
///
/// The third component is always zero, and `<u x v, w> = det(u, v, w~)`.
pub fn vector_product(u: Vec3SI, v: Vec3SI) -> Vec3SI {
    Vec3SI::raw(u.x2 * v.x3 - u.x3 * v.x2, u.x1 * v.x3 - u.x3 * v.x1, 0.0)
}

/// Euclidean determinant of the matrix with rows `a, b, c`.
pub fn det3(a: Vec3SI, b: Vec3SI, c: Vec3SI) -> f64 {
    a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
        + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1)
}

pub fn causal_class(v: Vec3SI) -> CausalClass {
    if v.has_zero_projection() {
        return if v.x3 == 0.0 {
            CausalClass::Zero
        } else {
            CausalClass::Isotropic
        };
    }
    let q = v.lorentz_square();
    if q > 0.0 {
        CausalClass::Spacelike
    } else if q < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Null
    }
}

/// Default tolerance of [`is_null_eps`] for `v`: `1e-12 * max(x1^2, x2^2, 1)`.
pub fn default_null_tol(v: Vec3SI) -> f64 {
    1e-12 * (v.x1 * v.x1).max(v.x2 * v.x2).max(1.0)
}

/// Tolerant null test for numerically produced vectors.
///
/// Isotropic and zero vectors are never null.
pub fn is_null_eps(v: Vec3SI, tol: f64) -> bool {
    !v.has_zero_projection() && v.lorentz_square().abs() <= tol
}

/// Hyperbolic angle `phi >= 0` between two timelike vectors, defined by
/// `<u, v> = -|u| |v| cosh(phi)`.
pub fn si_angle(u: Vec3SI, v: Vec3SI) -> Result<f64> {
    for (name, w) in [("u", u), ("v", v)] {
        let class = causal_class(w);
        if class != CausalClass::Timelike {
            return domain(format!(
                "angle requires timelike vectors, {name} is {class:?}"
            ));
        }
    }
    let arg = -scalar_product(u, v) / (semi_norm(u) * semi_norm(v));
    if arg.is_nan() || arg < 1.0 {
        // Rounding can push identical directions a few ulps below 1.
        if (1.0 - arg).abs() <= 8.0 * f64::EPSILON {
            return Ok(0.0);
        }
        return domain(format!(
            "arcosh argument {arg} < 1 (vectors in opposite time cones)"
        ));
    }
    Ok(arg.acosh())
}

/// A semi-isotropic congruence transformation.
///
/// Acts as
/// `x' = a1 + x cosh a2 + y sinh a2`,
/// `y' = a3 + x sinh a2 + y cosh a2`,
/// `z' = a4 + a5 x + a6 y + z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion {
    params: [f64; 6],
}

impl Motion {
    pub const IDENTITY: Motion = Motion { params: [0.0; 6] };

    pub fn new(params: [f64; 6]) -> Result<Self> {
        if params.iter().any(|a| !a.is_finite()) {
            return domain(format!("non-finite motion parameter in {params:?}"));
        }
        Ok(Motion { params })
    }

    /// Pure Lorentz boost of rapidity `a2` about the isotropic axis.
    pub fn boost(rapidity: f64) -> Result<Self> {
        Motion::new([0.0, rapidity, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn params(&self) -> [f64; 6] {
        self.params
    }

    pub fn apply(&self, p: Vec3SI) -> Vec3SI {
        apply_motion(self, p)
    }

    /// Applies only the linear part, which is how motions act on vectors
    /// (differences of points).
    pub fn apply_linear(&self, d: Vec3SI) -> Vec3SI {
        let [_, a2, _, _, a5, a6] = self.params;
        let (s, c) = (a2.sinh(), a2.cosh());
        Vec3SI::raw(
            d.x1 * c + d.x2 * s,
            d.x1 * s + d.x2 * c,
            a5 * d.x1 + a6 * d.x2 + d.x3,
        )
    }

    /// The motion undoing `self`: boost by `-a2`, then back-substituted
    /// translation and shear.
    pub fn inverse(&self) -> Motion {
        let [a1, a2, a3, a4, a5, a6] = self.params;
        let (s, c) = (a2.sinh(), a2.cosh());
        let b1 = -a1 * c + a3 * s;
        let b3 = a1 * s - a3 * c;
        let b5 = -(a5 * c - a6 * s);
        let b6 = a5 * s - a6 * c;
        let b4 = -a4 - a5 * b1 - a6 * b3;
        Motion {
            params: [b1, -a2, b3, b4, b5, b6],
        }
    }
}

pub fn apply_motion(m: &Motion, p: Vec3SI) -> Vec3SI {
    let [a1, a2, a3, a4, a5, a6] = m.params;
    let (s, c) = (a2.sinh(), a2.cosh());
    Vec3SI::raw(
        a1 + p.x1 * c + p.x2 * s,
        a3 + p.x1 * s + p.x2 * c,
        a4 + a5 * p.x1 + a6 * p.x2 + p.x3,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x1: f64, x2: f64, x3: f64) -> Vec3SI {
        Vec3SI::new(x1, x2, x3).unwrap()
    }

    #[test]
    fn semi_norm_examples() {
        assert_eq!(semi_norm(v(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(semi_norm(v(3.0, 3.0, 7.0)), 0.0);
        assert!((semi_norm(v(1.0, 2.0, 5.0)) - 1.7320508075688772).abs() < 1e-15);
    }

    #[test]
    fn scalar_product_branches() {
        assert_eq!(scalar_product(v(0.0, 0.0, 2.0), v(0.0, 0.0, 3.0)), 6.0);
        assert_eq!(scalar_product(v(1.0, 2.0, 0.0), v(3.0, 4.0, 0.0)), -5.0);
        assert_eq!(scalar_product(v(0.0, 0.0, 1.0), v(1.0, 0.0, 0.0)), 0.0);
        // exact branch test: a tiny projection leaves the isotropic branch
        assert_eq!(scalar_product(v(1e-300, 0.0, 2.0), v(0.0, 0.0, 3.0)), 0.0);
    }

    #[test]
    fn vector_product_examples() {
        let e1 = v(1.0, 0.0, 0.0);
        let e2 = v(0.0, 1.0, 0.0);
        let e3 = v(0.0, 0.0, 1.0);
        let p = vector_product(e1, e3);
        assert_eq!(p, v(0.0, 1.0, 0.0));
        assert_eq!(scalar_product(p, e2), -1.0);
        assert_eq!(det3(e1, e3, e2.projection()), -1.0);
        assert_eq!(vector_product(e1, e2), Vec3SI::ZERO);
        let w = v(2.0, 5.0, 1.0);
        assert_eq!(vector_product(w, w), Vec3SI::ZERO);
    }

    #[test]
    fn causal_classes() {
        assert_eq!(causal_class(Vec3SI::ZERO), CausalClass::Zero);
        assert_eq!(causal_class(v(0.0, 0.0, 4.0)), CausalClass::Isotropic);
        assert_eq!(causal_class(v(1.0, 1.0, 3.0)), CausalClass::Null);
        assert_eq!(causal_class(v(2.0, 1.0, 0.0)), CausalClass::Spacelike);
        assert_eq!(causal_class(v(1.0, -2.0, 0.0)), CausalClass::Timelike);
    }

    #[test]
    fn tolerant_null() {
        let almost = v(1.0, 1.0 + 1e-14, 0.0);
        assert_eq!(causal_class(almost), CausalClass::Timelike);
        assert!(is_null_eps(almost, default_null_tol(almost)));
        assert!(!is_null_eps(v(0.0, 0.0, 1.0), 1.0));
        assert!(!is_null_eps(v(1.0, 0.5, 0.0), 1e-12));
    }

    #[test]
    fn angle_examples() {
        let t = v(0.0, 1.0, 0.0);
        assert_eq!(si_angle(t, t).unwrap(), 0.0);
        let w = v(1f64.sinh(), 1f64.cosh(), 0.0);
        assert!((si_angle(t, w).unwrap() - 1.0).abs() < 1e-12);
        assert!(si_angle(t, v(1.0, 0.0, 0.0)).is_err());
        // past- vs future-pointing timelike vectors
        assert!(si_angle(t, v(0.0, -1.0, 0.0)).is_err());
    }

    #[test]
    fn motion_examples() {
        let p = v(1.0, 2.0, 3.0);
        assert_eq!(apply_motion(&Motion::IDENTITY, p), p);

        let (u, rap, f) = (1.5, 0.7, -0.25);
        let q = apply_motion(&Motion::boost(rap).unwrap(), v(0.0, u, f));
        assert!((q.x1() - u * rap.sinh()).abs() < 1e-15);
        assert!((q.x2() - u * rap.cosh()).abs() < 1e-15);
        assert_eq!(q.x3(), f);

        let m = Motion::new([1.0, 0.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(apply_motion(&m, Vec3SI::ZERO), v(1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Vec3SI::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(Motion::new([0.0, f64::INFINITY, 0.0, 0.0, 0.0, 0.0]).is_err());
    }
}
