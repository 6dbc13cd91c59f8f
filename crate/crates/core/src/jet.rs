//! Forward-mode automatic differentiation truncated at third order.
//!
//! A [`Jet`] carries `[f, f', f'', f''']` of some function of one variable at
//! a fixed point. Arithmetic follows the Leibniz rule and elementary functions
//! are lifted with Faà di Bruno's formula.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    pub fn constant(c: f64) -> Jet {
        Jet([c, 0.0, 0.0, 0.0])
    }

    /// The independent variable evaluated at `x`.
    pub fn variable(x: f64) -> Jet {
        Jet([x, 1.0, 0.0, 0.0])
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0[0]
    }

    pub fn derivs(&self) -> [f64; 4] {
        self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0[1] == 0.0 && self.0[2] == 0.0 && self.0[3] == 0.0
    }

    /// Composes an outer function, given its derivatives `[g, g', g'', g''']`
    /// at `self.value()`, with `self`.
    pub fn compose(self, g: [f64; 4]) -> Jet {
        let [_, h1, h2, h3] = self.0;
        Jet([
            g[0],
            g[1] * h1,
            g[2] * h1 * h1 + g[1] * h2,
            g[3] * h1 * h1 * h1 + 3.0 * g[2] * h1 * h2 + g[1] * h3,
        ])
    }

    pub fn ln(self) -> Jet {
        let x = self.value();
        self.compose([x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)])
    }

    pub fn exp(self) -> Jet {
        let e = self.value().exp();
        self.compose([e; 4])
    }

    pub fn sinh(self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose([c, s, c, s])
    }

    pub fn recip(self) -> Jet {
        let x = self.value();
        let r = 1.0 / x;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    /// `self^k` for a constant exponent.
    pub fn powf(self, k: f64) -> Jet {
        let x = self.value();
        if k == 0.0 {
            return Jet::constant(1.0);
        }
        let p = |e: f64| {
            if k.fract() == 0.0 && e.abs() < i32::MAX as f64 {
                x.powi(e as i32)
            } else {
                x.powf(e)
            }
        };
        self.compose([
            p(k),
            k * p(k - 1.0),
            k * (k - 1.0) * p(k - 2.0),
            k * (k - 1.0) * (k - 2.0) * p(k - 3.0),
        ])
    }

    /// General power `self^other`; constant exponents use the power rule so
    /// that negative bases with integer exponents stay defined.
    pub fn pow(self, other: Jet) -> Jet {
        if other.is_constant() {
            self.powf(other.value())
        } else {
            (other * self.ln()).exp()
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|a| -a))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let (a, b) = (self.0, rhs.0);
        Jet([
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
        ])
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}
