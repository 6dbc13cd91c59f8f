//! Gamma, Pochhammer and harmonic numbers, and the order-zero Bessel family
//! (`J0`, `Y0`, `I0`, `K0`) plus `J_{±p}` for non-half-integer `p`, all built
//! from truncated Frobenius series.
//!
//! Every Bessel routine also has a `*_derivs` form returning the value and
//! the first three derivatives from term-wise differentiated series, which is
//! what the profile curves and the residual checks consume.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{domain, Error, Result};

/// Euler-Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Above this `|x|` the plain power series for `J_p` loses digits to cancellation.
pub const J_PRECISION_LIMIT: f64 = 30.0;

/// Truncation policy for the series.
///
/// Summation stops once `|term| <= rel_tol * |partial sum|` holds on two
/// consecutive terms; reaching `max_terms` first is an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return domain(format!("series rel_tol must lie in (0, 1), got {rel_tol}"));
        }
        if max_terms == 0 {
            return domain("series max_terms must be at least 1");
        }
        Ok(SeriesConfig { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-15,
            max_terms: 200,
        }
    }
}

/// Which of the two Bessel equations, with its order `p >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselKind {
    /// `x^2 y'' + x y' + (x^2 - p^2) y = 0`
    Standard { order: f64 },
    /// `x^2 y'' + x y' - (x^2 + p^2) y = 0`
    Modified { order: f64 },
}

impl BesselKind {
    pub fn standard(order: f64) -> Result<Self> {
        check_order(order)?;
        Ok(BesselKind::Standard { order })
    }

    pub fn modified(order: f64) -> Result<Self> {
        check_order(order)?;
        Ok(BesselKind::Modified { order })
    }

    /// Left-hand side of the equation for given `y, y', y''` at `x`.
    pub fn equation(&self, x: f64, y: f64, dy: f64, d2y: f64) -> f64 {
        let principal = x * x * d2y + x * dy;
        match *self {
            BesselKind::Standard { order } => principal + (x * x - order * order) * y,
            BesselKind::Modified { order } => principal - (x * x + order * order) * y,
        }
    }
}

fn check_order(order: f64) -> Result<()> {
    if !(order.is_finite() && order >= 0.0) {
        return domain(format!("Bessel order must be finite and >= 0, got {order}"));
    }
    Ok(())
}

/// A series value together with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: f64,
    pub terms: usize,
    /// Set when `|x|` exceeds [`J_PRECISION_LIMIT`].
    pub precision_warning: bool,
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function, via the Lanczos approximation (`g = 7`) for `x >= 1/2`
/// and the reflection formula below that.
///
/// Zero and the negative integers are poles and return a domain error.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("gamma of non-finite argument {x}"));
    }
    if x <= 0.0 && x == x.floor() {
        return domain(format!("gamma has a pole at {x}"));
    }
    if x == x.floor() && x <= 171.0 {
        // exact on the integers it can represent
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Rising factorial `k (k+1) ... (k+n-1)`; `(k)_0 = 1`.
pub fn pochhammer(k: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (k + i as f64))
}

/// Harmonic number `1 + 1/2 + ... + 1/n`; zero for `n = 0`.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).map(|m| 1.0 / m as f64).sum()
}

/// Falling factorial `m (m-1) ... (m-k+1)` as a float.
fn falling(m: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i as f64))
}

/// Sums `K` series in lockstep. `term(n)` yields the n-th term of each.
///
/// Convergence checks begin at `n = first_check` so that derivative series
/// whose leading terms vanish structurally are not cut off early.
fn sum_lockstep<const K: usize>(
    cfg: &SeriesConfig,
    first_check: usize,
    mut term: impl FnMut(usize) -> [f64; K],
) -> Result<([f64; K], usize)> {
    let mut sums = [0.0; K];
    let mut streak = [0u8; K];
    for n in 0..cfg.max_terms {
        let t = term(n);
        for i in 0..K {
            sums[i] += t[i];
            if n >= first_check && t[i].abs() <= cfg.rel_tol * sums[i].abs() {
                streak[i] = streak[i].saturating_add(1);
            } else {
                streak[i] = 0;
            }
        }
        if n >= first_check && streak.iter().all(|&s| s >= 2) {
            return Ok((sums, n + 1));
        }
    }
    Err(Error::NonConvergence {
        max_terms: cfg.max_terms,
    })
}

/// Value and first three derivatives of
/// `sum_n sign^n w(n) (x^2/4)^n / (n!)^2` at `x != 0`.
fn even_series(
    x: f64,
    sign: f64,
    mut weight: impl FnMut(usize) -> f64,
    cfg: &SeriesConfig,
) -> Result<[f64; 4]> {
    let q = sign * x * x / 4.0;
    let mut base = 1.0;
    let (x1, x2, x3) = (x, x * x, x * x * x);
    let (sums, _) = sum_lockstep(cfg, 2, |n| {
        if n > 0 {
            let nf = n as f64;
            base *= q / (nf * nf);
        }
        let t = weight(n) * base;
        let m = 2.0 * n as f64;
        [
            t,
            t * m / x1,
            t * falling(m, 2) / x2,
            t * falling(m, 3) / x3,
        ]
    })?;
    Ok(sums)
}

/// Running harmonic number; relies on being called with n = 0, 1, 2, ...
fn harmonic_weight() -> impl FnMut(usize) -> f64 {
    let mut h = 0.0;
    move |n| {
        if n > 0 {
            h += 1.0 / n as f64;
        }
        h
    }
}

/// Derivatives of `ln(x/2) + gamma` up to order 3.
fn log_term_derivs(x: f64) -> [f64; 4] {
    [
        (x / 2.0).ln() + EULER_GAMMA,
        1.0 / x,
        -1.0 / (x * x),
        2.0 / (x * x * x),
    ]
}

/// Leibniz rule for the product of two functions given derivatives 0..=3.
fn product_derivs(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0],
        a[1] * b[0] + a[0] * b[1],
        a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
        a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
    ]
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("non-finite argument {x}"))
    }
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    check_finite(x)?;
    if x > 0.0 {
        Ok(())
    } else {
        domain(format!("{name} requires x>0, got {x}"))
    }
}

/// `J0` and its first three derivatives.
pub fn bessel_j0_derivs(x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    check_finite(x)?;
    if x == 0.0 {
        return Ok([1.0, 0.0, -0.5, 0.0]);
    }
    even_series(x, -1.0, |_| 1.0, cfg)
}

/// Bessel function of the first kind of order zero.
pub fn bessel_j0(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_finite(x)?;
    let (s, _) = j0_value(x, cfg)?;
    Ok(s)
}

fn j0_value(x: f64, cfg: &SeriesConfig) -> Result<(f64, usize)> {
    let q = -x * x / 4.0;
    let mut t = 1.0;
    let ([s], n) = sum_lockstep(cfg, 1, |n| {
        if n > 0 {
            let nf = n as f64;
            t *= q / (nf * nf);
        }
        [t]
    })?;
    Ok((s, n))
}

/// `I0` and its first three derivatives.
pub fn bessel_i0_derivs(x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    check_finite(x)?;
    if x == 0.0 {
        return Ok([1.0, 0.0, 0.5, 0.0]);
    }
    even_series(x, 1.0, |_| 1.0, cfg)
}

/// Modified Bessel function of the first kind of order zero.
pub fn bessel_i0(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_finite(x)?;
    let q = x * x / 4.0;
    let mut t = 1.0;
    let ([s], _) = sum_lockstep(cfg, 1, |n| {
        if n > 0 {
            let nf = n as f64;
            t *= q / (nf * nf);
        }
        [t]
    })?;
    Ok(s)
}

/// `Y0` (Weber's function) and its first three derivatives, `x > 0`.
pub fn bessel_y0_derivs(x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    check_positive("y0", x)?;
    let j0 = bessel_j0_derivs(x, cfg)?;
    let s = even_series(x, -1.0, harmonic_weight(), cfg)?;
    let lj = product_derivs(log_term_derivs(x), j0);
    Ok(std::array::from_fn(|k| FRAC_2_PI * (lj[k] - s[k])))
}

/// Bessel function of the second kind of order zero, `x > 0`.
pub fn bessel_y0(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    Ok(bessel_y0_derivs(x, cfg)?[0])
}

/// `K0` and its first three derivatives, `x > 0`.
pub fn bessel_k0_derivs(x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    check_positive("k0", x)?;
    let i0 = bessel_i0_derivs(x, cfg)?;
    let s = even_series(x, 1.0, harmonic_weight(), cfg)?;
    let li = product_derivs(log_term_derivs(x), i0);
    Ok(std::array::from_fn(|k| s[k] - li[k]))
}

/// Modified Bessel function of the second kind of order zero, `x > 0`.
pub fn bessel_k0(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    Ok(bessel_k0_derivs(x, cfg)?[0])
}

fn check_j_order(p: f64) -> Result<()> {
    if !p.is_finite() {
        return domain(format!("non-finite order {p}"));
    }
    if (2.0 * p).fract() == 0.0 {
        return domain(format!(
            "J_p series pair requires 2p non-integer, got p = {p}"
        ));
    }
    Ok(())
}

/// Bessel function of the first kind of order `p` (either sign) by its
/// Frobenius series. Only defined here for `2p` non-integer.
///
/// At `x = 0` the value is `0` for `p > 0` and an infinity for `p < 0`.
pub fn bessel_j(p: f64, x: f64, cfg: &SeriesConfig) -> Result<SeriesEval> {
    check_j_order(p)?;
    check_finite(x)?;
    if x < 0.0 {
        return domain(format!("J_p with non-integer order needs x >= 0, got {x}"));
    }
    let g = gamma(1.0 + p)?;
    if x == 0.0 {
        let value = if p > 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(g)
        };
        return Ok(SeriesEval {
            value,
            terms: 1,
            precision_warning: false,
        });
    }
    let q = -x * x / 4.0;
    let mut t = 1.0;
    let ([s], terms) = sum_lockstep(cfg, 1, |n| {
        if n > 0 {
            let nf = n as f64;
            t *= q / ((p + nf) * nf);
        }
        [t]
    })?;
    Ok(SeriesEval {
        value: (x / 2.0).powf(p) / g * s,
        terms,
        precision_warning: x.abs() > J_PRECISION_LIMIT,
    })
}

/// `J_p` and its first three derivatives, `x > 0`.
pub fn bessel_j_derivs(p: f64, x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    check_j_order(p)?;
    check_positive("J_p derivatives", x)?;
    let prefactor = (x / 2.0).powf(p) / gamma(1.0 + p)?;
    let q = -x * x / 4.0;
    let mut t = prefactor;
    let (x1, x2, x3) = (x, x * x, x * x * x);
    let (sums, _) = sum_lockstep(cfg, 2, |n| {
        if n > 0 {
            let nf = n as f64;
            t *= q / ((p + nf) * nf);
        }
        let m = 2.0 * n as f64 + p;
        [
            t,
            t * m / x1,
            t * falling(m, 2) / x2,
            t * falling(m, 3) / x3,
        ]
    })?;
    Ok(sums)
}

/// `c1 J_p(x) + c2 J_{-p}(x)`, the general solution for `2p` non-integer.
pub fn general_solution_j(p: f64, c1: f64, c2: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let a = if c1 != 0.0 {
        c1 * bessel_j(p, x, cfg)?.value
    } else {
        0.0
    };
    let b = if c2 != 0.0 {
        c2 * bessel_j(-p, x, cfg)?.value
    } else {
        0.0
    };
    Ok(a + b)
}

/// Derivatives 0..=3 of `c1 J0(x) + c2 Y0(x)`. `Y0` is skipped when `c2 = 0`.
pub fn standard_zero_combination(c1: f64, c2: f64, x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    combine(c1, c2, x, cfg, bessel_j0_derivs, bessel_y0_derivs)
}

/// Derivatives 0..=3 of `c1 I0(x) + c2 K0(x)`. `K0` is skipped when `c2 = 0`.
pub fn modified_zero_combination(c1: f64, c2: f64, x: f64, cfg: &SeriesConfig) -> Result<[f64; 4]> {
    combine(c1, c2, x, cfg, bessel_i0_derivs, bessel_k0_derivs)
}

type DerivFn = fn(f64, &SeriesConfig) -> Result<[f64; 4]>;

fn combine(
    c1: f64,
    c2: f64,
    x: f64,
    cfg: &SeriesConfig,
    first: DerivFn,
    second: DerivFn,
) -> Result<[f64; 4]> {
    let a = if c1 != 0.0 { first(x, cfg)? } else { [0.0; 4] };
    let b = if c2 != 0.0 { second(x, cfg)? } else { [0.0; 4] };
    Ok(std::array::from_fn(|k| c1 * a[k] + c2 * b[k]))
}

/// Residual of the Bessel equation for an arbitrary function, with `y'` and
/// `y''` from fourth-order central differences of step `h`.
///
/// The stencil reaches `x ± 2h`. In double precision the roundoff in `y''`
/// grows like `eps |y| / h^2`, so steps near `1e-3` give the smallest residuals
/// for well-scaled `y`.
pub fn ode_residual(kind: BesselKind, y: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let (ym2, ym1, y0, yp1, yp2) = (y(x - 2.0 * h), y(x - h), y(x), y(x + h), y(x + 2.0 * h));
    let dy = (ym2 - yp2 + 8.0 * (yp1 - ym1)) / (12.0 * h);
    let d2y = (-yp2 + 16.0 * yp1 - 30.0 * y0 + 16.0 * ym1 - ym2) / (12.0 * h * h);
    kind.equation(x, y0, dy, d2y)
}

/// Residual of the Bessel equation from exact derivatives `[y, y', y'', ..]`.
pub fn ode_residual_exact(kind: BesselKind, derivs: &[f64], x: f64) -> f64 {
    kind.equation(x, derivs[0], derivs[1], derivs[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(SeriesConfig::new(0.0, 10).is_err());
        assert!(SeriesConfig::new(1.0, 10).is_err());
        assert!(SeriesConfig::new(1e-10, 0).is_err());
        assert!(SeriesConfig::new(1e-10, 1).is_ok());
    }

    #[test]
    fn gamma_factorials_and_poles() {
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!(gamma(0.0).is_err());
        assert!(gamma(-3.0).is_err());
        // reflection branch: Gamma(-1/2) = -2 sqrt(pi)
        let expect = -2.0 * PI.sqrt();
        assert!((gamma(-0.5).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn pochhammer_and_harmonic() {
        assert_eq!(pochhammer(7.3, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(1.5, 3), 13.125);
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn order_zero_at_origin() {
        assert_eq!(bessel_j0(0.0, &cfg()).unwrap(), 1.0);
        assert_eq!(bessel_i0(0.0, &cfg()).unwrap(), 1.0);
        assert!(bessel_y0(0.0, &cfg()).is_err());
        assert!(bessel_k0(-1.0, &cfg()).is_err());
    }

    #[test]
    fn logarithmic_solutions_blow_up_at_origin() {
        assert!(bessel_y0(1e-8, &cfg()).unwrap() < -10.0);
        assert!(bessel_k0(1e-8, &cfg()).unwrap() > 10.0);
    }

    #[test]
    fn j_p_edge_cases() {
        assert_eq!(bessel_j(0.25, 0.0, &cfg()).unwrap().value, 0.0);
        assert_eq!(bessel_j(-0.25, 0.0, &cfg()).unwrap().value, f64::INFINITY);
        assert!(bessel_j(-0.25, 1e-12, &cfg()).unwrap().value > 1e2);
        assert!(bessel_j(0.5, 1.0, &cfg()).is_err());
        assert!(bessel_j(1.0, 1.0, &cfg()).is_err());
        assert!(bessel_j(0.25, -1.0, &cfg()).is_err());
        assert!(bessel_j(0.25, 31.0, &cfg()).unwrap().precision_warning);
        assert!(!bessel_j(0.25, 3.0, &cfg()).unwrap().precision_warning);
    }

    #[test]
    fn j_p_series_residual() {
        let d = bessel_j_derivs(0.25, 1.0, &cfg()).unwrap();
        let kind = BesselKind::standard(0.25).unwrap();
        assert!(ode_residual_exact(kind, &d, 1.0).abs() < 1e-8);
        let value = bessel_j(0.25, 1.0, &cfg()).unwrap().value;
        assert!((value - d[0]).abs() < 1e-15);
    }

    #[test]
    fn non_convergence_is_reported() {
        let tight = SeriesConfig::new(1e-15, 3).unwrap();
        assert_eq!(
            bessel_j0(5.0, &tight),
            Err(Error::NonConvergence { max_terms: 3 })
        );
    }

    #[test]
    fn residual_of_constant() {
        let kind = BesselKind::standard(0.0).unwrap();
        let r = ode_residual(kind, |_| 1.0, 2.0, 1e-5);
        assert!((r - 4.0).abs() < 1e-12);
    }

    #[test]
    #[ignore = "second differences at h = 1e-5 hit a roundoff floor near 1e-5"]
    fn residual_of_j0_at_tiny_step() {
        let kind = BesselKind::standard(0.0).unwrap();
        let r = ode_residual(kind, |x| bessel_j0(x, &cfg()).unwrap(), 3.0, 1e-5);
        assert!(r.abs() < 1e-7);
    }

    #[test]
    fn residuals_of_series_by_differences() {
        let std0 = BesselKind::standard(0.0).unwrap();
        let r = ode_residual(std0, |x| bessel_j0(x, &cfg()).unwrap(), 3.0, 1e-3);
        assert!(r.abs() < 1e-7);
        let mod0 = BesselKind::modified(0.0).unwrap();
        let r = ode_residual(mod0, |x| bessel_i0(x, &cfg()).unwrap(), 2.0, 1e-3);
        assert!(r.abs() < 1e-7);
    }

    #[test]
    fn wronskian_by_differences() {
        let x = 1.0;
        let h = 1e-6;
        let d = |f: &dyn Fn(f64) -> f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let j = |t: f64| bessel_j0(t, &cfg()).unwrap();
        let y = |t: f64| bessel_y0(t, &cfg()).unwrap();
        let w = j(x) * d(&y) - d(&j) * y(x);
        assert!((w - 2.0 / std::f64::consts::PI).abs() < 1e-8);
        let i = |t: f64| bessel_i0(t, &cfg()).unwrap();
        let k = |t: f64| bessel_k0(t, &cfg()).unwrap();
        assert!((i(x) * d(&k) - d(&i) * k(x) + 1.0).abs() < 1e-8);
    }

    #[test]
    fn combinations_skip_singular_member() {
        let a = standard_zero_combination(2.0, 0.0, 1.5, &cfg()).unwrap();
        let j = bessel_j0_derivs(1.5, &cfg()).unwrap();
        for k in 0..4 {
            assert_eq!(a[k], 2.0 * j[k]);
        }
        assert!(modified_zero_combination(1.0, 1.0, 0.0, &cfg()).is_err());
    }
}
