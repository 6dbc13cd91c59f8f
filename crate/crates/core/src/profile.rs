//! Profile curves `u -> f(u)` that generate surfaces of revolution.
//!
//! Every profile evaluates `f` together with its first three derivatives in
//! closed form (or by term-wise differentiated series for the Bessel family),
//! since the second-form Laplacian needs `f'''`.

use std::fmt;
use std::sync::Arc;

use crate::bessel::{modified_zero_combination, standard_zero_combination, SeriesConfig};
use crate::error::{domain, Error, Result};
use crate::expr::Expr;
use crate::interval::Interval;

/// Lower and upper end of the domain used when none is given.
pub const DEFAULT_DOMAIN: (f64, f64) = (0.1, 10.0);

/// Which closed-form family a profile belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileFamily {
    /// Constant semi-relative curvature.
    ConstantK,
    /// Constant mean curvature.
    ConstantH,
    /// Solutions of `f'' + f'/u + lambda f = 0`.
    BesselType,
    /// `f = (-2/lambda) ln u + c`, the second-form eigen-surfaces.
    LogType,
    /// `f = 2/mu + c u^(mu/lambda)`.
    PowerType,
    Custom,
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProfileFamily::ConstantK => "ConstantK",
            ProfileFamily::ConstantH => "ConstantH",
            ProfileFamily::BesselType => "BesselType",
            ProfileFamily::LogType => "LogType",
            ProfileFamily::PowerType => "PowerType",
            ProfileFamily::Custom => "Custom",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
enum Shape {
    ConstantK {
        k0: f64,
        c1: f64,
        c2: f64,
    },
    ConstantH {
        h0: f64,
        c1: f64,
        c2: f64,
    },
    Bessel {
        lambda3: f64,
        c1: f64,
        c2: f64,
        cfg: SeriesConfig,
    },
    Log {
        lambda: f64,
        c: f64,
    },
    Power {
        lambda: f64,
        mu: f64,
        c: f64,
    },
    Linear {
        a: f64,
        b: f64,
    },
    Expr {
        expr: Arc<Expr>,
        cfg: SeriesConfig,
    },
}

/// A planar generating curve `u -> f(u)` on a domain inside `u > 0`.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    shape: Shape,
    domain: Interval,
}

impl ProfileCurve {
    fn with_default_domain(shape: Shape) -> Result<Self> {
        let domain = Interval::new(DEFAULT_DOMAIN.0, DEFAULT_DOMAIN.1)?;
        ProfileCurve { shape, domain }.with_domain(domain)
    }

    /// Restricts the profile to `domain`, clipped to the family's natural domain.
    pub fn with_domain(mut self, domain: Interval) -> Result<Self> {
        if domain.lo() < 0.0 {
            return domain_err(format!("profile domain must lie in u >= 0, got {domain}"));
        }
        let natural = self.natural_lower_bound();
        if natural >= domain.hi() {
            return domain_err(format!(
                "empty domain: the profile needs u > {natural}, requested {domain}"
            ));
        }
        self.domain = Interval::new(domain.lo().max(natural), domain.hi())?;
        Ok(self)
    }

    /// Infimum of the family's own domain (all families need `u > 0`).
    fn natural_lower_bound(&self) -> f64 {
        match self.shape {
            Shape::ConstantK { k0, c1, .. } if c1 < 0.0 => (-c1 / k0).sqrt(),
            _ => 0.0,
        }
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn family(&self) -> ProfileFamily {
        match self.shape {
            Shape::ConstantK { .. } => ProfileFamily::ConstantK,
            Shape::ConstantH { .. } => ProfileFamily::ConstantH,
            Shape::Bessel { .. } => ProfileFamily::BesselType,
            Shape::Log { .. } => ProfileFamily::LogType,
            Shape::Power { .. } => ProfileFamily::PowerType,
            Shape::Linear { .. } | Shape::Expr { .. } => ProfileFamily::Custom,
        }
    }

    /// Family parameters as `(name, value)` pairs.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self.shape {
            Shape::ConstantK { k0, c1, c2 } => vec![("K0", k0), ("c1", c1), ("c2", c2)],
            Shape::ConstantH { h0, c1, c2 } => vec![("H0", h0), ("c1", c1), ("c2", c2)],
            Shape::Bessel {
                lambda3, c1, c2, ..
            } => {
                vec![("lambda3", lambda3), ("c1", c1), ("c2", c2)]
            }
            Shape::Log { lambda, c } => vec![("lambda", lambda), ("c", c)],
            Shape::Power { lambda, mu, c } => vec![("lambda", lambda), ("mu", mu), ("c", c)],
            Shape::Linear { a, b } => vec![("a", a), ("b", b)],
            Shape::Expr { .. } => Vec::new(),
        }
    }

    /// Human-readable formula of `f`.
    pub fn describe(&self) -> String {
        match &self.shape {
            Shape::ConstantK { k0, c1, c2 } => format!(
                "(u/2)psi + c1/(2 sqrt K0) ln|2 sqrt K0 (sqrt K0 u + psi)| + c2, psi = sqrt(c1 + K0 u^2), K0={k0}, c1={c1}, c2={c2}"
            ),
            Shape::ConstantH { h0, c1, c2 } => format!("({h0}/2) u^2 + {c1} ln u + {c2}"),
            Shape::Bessel { lambda3, c1, c2, .. } if *lambda3 > 0.0 => {
                format!("{c1} J0(sqrt({lambda3}) u) + {c2} Y0(sqrt({lambda3}) u)")
            }
            Shape::Bessel { lambda3, c1, c2, .. } => {
                format!("{c1} I0(sqrt({}) u) + {c2} K0(sqrt({}) u)", -lambda3, -lambda3)
            }
            Shape::Log { lambda, c } => format!("(-2/{lambda}) ln u + {c}"),
            Shape::Power { lambda, mu, c } => format!("2/{mu} + {c} u^({mu}/{lambda})"),
            Shape::Linear { a, b } => format!("{a} u + {b}"),
            Shape::Expr { expr, .. } => expr.to_string(),
        }
    }

    /// `[f, f', f'', f''']` at `u`.
    pub fn eval_all(&self, u: f64) -> Result<[f64; 4]> {
        if !(u > 0.0 && self.domain.contains(u)) {
            return domain_err(format!(
                "u = {u} outside profile domain {} (u > 0)",
                self.domain
            ));
        }
        let d = self.eval_unchecked(u)?;
        if d.iter().any(|a| !a.is_finite()) {
            return domain_err(format!("profile is not finite at u = {u}"));
        }
        Ok(d)
    }

    pub fn eval(&self, u: f64, order: usize) -> Result<f64> {
        eval_profile(self, u, order)
    }

    fn eval_unchecked(&self, u: f64) -> Result<[f64; 4]> {
        Ok(match &self.shape {
            &Shape::ConstantK { k0, c1, c2 } => {
                let rad = c1 + k0 * u * u;
                if rad <= 0.0 {
                    return domain_err(format!("c1 + K0 u^2 = {rad} <= 0 at u = {u}"));
                }
                let psi = rad.sqrt();
                let sk = k0.sqrt();
                let log_arg = (2.0 * sk * (sk * u + psi)).abs();
                [
                    0.5 * u * psi + c1 / (2.0 * sk) * log_arg.ln() + c2,
                    psi,
                    k0 * u / psi,
                    k0 * c1 / (psi * psi * psi),
                ]
            }
            &Shape::ConstantH { h0, c1, c2 } => constant_h_eval(h0, c1, c2, u),
            &Shape::Log { lambda, c } => constant_h_eval(0.0, -2.0 / lambda, c, u),
            &Shape::Bessel {
                lambda3,
                c1,
                c2,
                ref cfg,
            } => {
                let s = lambda3.abs().sqrt();
                let g = if lambda3 > 0.0 {
                    standard_zero_combination(c1, c2, s * u, cfg)?
                } else {
                    modified_zero_combination(c1, c2, s * u, cfg)?
                };
                [g[0], s * g[1], s * s * g[2], s * s * s * g[3]]
            }
            &Shape::Power { lambda, mu, c } => {
                let k = mu / lambda;
                let p = |e: f64| u.powf(e);
                [
                    2.0 / mu + c * p(k),
                    c * k * p(k - 1.0),
                    c * k * (k - 1.0) * p(k - 2.0),
                    c * k * (k - 1.0) * (k - 2.0) * p(k - 3.0),
                ]
            }
            &Shape::Linear { a, b } => [a * u + b, a, 0.0, 0.0],
            Shape::Expr { expr, cfg } => expr.eval_jet(u, cfg)?.derivs(),
        })
    }
}

fn constant_h_eval(h0: f64, c1: f64, c2: f64, u: f64) -> [f64; 4] {
    let inv = 1.0 / u;
    [
        0.5 * h0 * u * u + c1 * u.ln() + c2,
        h0 * u + c1 * inv,
        h0 - c1 * inv * inv,
        2.0 * c1 * inv * inv * inv,
    ]
}

fn domain_err<T>(msg: String) -> Result<T> {
    domain(msg)
}

fn require_finite(params: &[(&str, f64)]) -> Result<()> {
    for (name, v) in params {
        if !v.is_finite() {
            return domain_err(format!("parameter {name} must be finite, got {v}"));
        }
    }
    Ok(())
}

/// Profile of constant semi-relative curvature `K0 > 0`:
/// `f' = sqrt(c1 + K0 u^2)`, with additive constant `c2`.
pub fn constant_k_profile(k0: f64, c1: f64, c2: f64) -> Result<ProfileCurve> {
    require_finite(&[("K0", k0), ("c1", c1), ("c2", c2)])?;
    if k0 <= 0.0 {
        return domain_err(format!("constant-K profile needs K0 > 0, got {k0}"));
    }
    ProfileCurve::with_default_domain(Shape::ConstantK { k0, c1, c2 })
}

/// `f = (H0/2) u^2 + c1 ln u + c2`, of constant mean curvature `H0`.
pub fn constant_h_profile(h0: f64, c1: f64, c2: f64) -> Result<ProfileCurve> {
    require_finite(&[("H0", h0), ("c1", c1), ("c2", c2)])?;
    ProfileCurve::with_default_domain(Shape::ConstantH { h0, c1, c2 })
}

/// `c1 J0(sqrt(l) u) + c2 Y0(sqrt(l) u)` for `l > 0`, or
/// `c1 I0(sqrt(-l) u) + c2 K0(sqrt(-l) u)` for `l < 0`.
pub fn bessel_profile(lambda3: f64, c1: f64, c2: f64, cfg: SeriesConfig) -> Result<ProfileCurve> {
    require_finite(&[("lambda3", lambda3), ("c1", c1), ("c2", c2)])?;
    if lambda3 == 0.0 {
        return domain_err("Bessel profile needs lambda3 != 0".into());
    }
    ProfileCurve::with_default_domain(Shape::Bessel {
        lambda3,
        c1,
        c2,
        cfg,
    })
}

/// `f = (-2/lambda) ln u + c`.
pub fn log_profile(lambda: f64, c: f64) -> Result<ProfileCurve> {
    require_finite(&[("lambda", lambda), ("c", c)])?;
    if lambda == 0.0 {
        return domain_err("log profile needs lambda != 0".into());
    }
    ProfileCurve::with_default_domain(Shape::Log { lambda, c })
}

/// `f = 2/mu + c u^(mu/lambda)`, requiring `mu/lambda` outside `{0, 1}`.
pub fn power_profile(lambda: f64, mu: f64, c: f64) -> Result<ProfileCurve> {
    require_finite(&[("lambda", lambda), ("mu", mu), ("c", c)])?;
    if lambda == 0.0 || mu == 0.0 || c == 0.0 {
        return domain_err(format!(
            "power profile needs lambda, mu, c all nonzero, got ({lambda}, {mu}, {c})"
        ));
    }
    let k = mu / lambda;
    if k == 0.0 || k == 1.0 {
        return domain_err(format!("power profile with exponent {k} is linear"));
    }
    ProfileCurve::with_default_domain(Shape::Power { lambda, mu, c })
}

/// `f = a u + b`.
pub fn linear_profile(a: f64, b: f64) -> Result<ProfileCurve> {
    require_finite(&[("a", a), ("b", b)])?;
    ProfileCurve::with_default_domain(Shape::Linear { a, b })
}

/// Profile given by an arithmetic expression in `u`; see [`crate::expr`].
pub fn expr_profile(src: &str, cfg: SeriesConfig) -> Result<ProfileCurve> {
    let expr = Expr::parse(src)?;
    ProfileCurve::with_default_domain(Shape::Expr {
        expr: Arc::new(expr),
        cfg,
    })
}

/// `f^(order)(u)` for `order` in `0..=3`.
pub fn eval_profile(p: &ProfileCurve, u: f64, order: usize) -> Result<f64> {
    if order > 3 {
        return Err(Error::Domain(format!(
            "derivative order {order} not in 0..=3"
        )));
    }
    Ok(p.eval_all(u)?[order])
}
