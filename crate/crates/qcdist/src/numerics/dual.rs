//! Forward-mode dual numbers and the scalar abstraction they share with `f64`.
//!
//! Every quantile, scheme, and density code path in this crate is generic over
//! [`Scalar`], so evaluating a pipeline with [`DualScalar`] inputs carries one
//! directional derivative through the whole computation. This is how parameter
//! gradients of grid points and probability functions are obtained: seed the
//! parameter of interest with derivative 1, every other input with derivative
//! 0, and read the derivative off the result.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real-like scalar: implemented by `f64` (plain evaluation) and
/// [`DualScalar`] (evaluation plus one forward-mode derivative).
///
/// Comparisons and branch decisions always go through [`Scalar::value`], so a
/// dual evaluation follows exactly the same control flow as the plain one.
pub trait Scalar:
    Copy
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + PartialEq
    + Send
    + Sync
    + 'static
{
    /// Lift a plain number; its derivative is zero.
    fn constant(c: f64) -> Self;

    /// The primal (value) part.
    fn value(self) -> f64;

    fn exp(self) -> Self;

    fn ln(self) -> Self;

    fn sqrt(self) -> Self;

    fn abs(self) -> Self {
        if self.value() < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Numerically stable logistic function, usable for |t| up to ~700.
    fn sigmoid(self) -> Self {
        let one = Self::constant(1.0);
        if self.value() >= 0.0 {
            one / (one + (-self).exp())
        } else {
            let e = self.exp();
            e / (one + e)
        }
    }
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }

    fn value(self) -> f64 {
        self
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }
}

/// A value together with its derivative with respect to one designated
/// parameter. Arithmetic follows the chain rule exactly; the derivative of
/// anything built with [`DualScalar::constant`] is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualScalar {
    pub value: f64,
    pub derivative: f64,
}

impl DualScalar {
    pub fn new(value: f64, derivative: f64) -> Self {
        DualScalar { value, derivative }
    }

    /// A constant: derivative 0.
    pub fn constant(value: f64) -> Self {
        DualScalar {
            value,
            derivative: 0.0,
        }
    }

    /// The differentiation variable itself: derivative 1.
    pub fn variable(value: f64) -> Self {
        DualScalar {
            value,
            derivative: 1.0,
        }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;

    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.value + rhs.value, self.derivative + rhs.derivative)
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;

    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.value - rhs.value, self.derivative - rhs.derivative)
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;

    fn mul(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(
            self.value * rhs.value,
            self.derivative * rhs.value + self.value * rhs.derivative,
        )
    }
}

impl Div for DualScalar {
    type Output = DualScalar;

    fn div(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(
            self.value / rhs.value,
            (self.derivative * rhs.value - self.value * rhs.derivative) / (rhs.value * rhs.value),
        )
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;

    fn neg(self) -> DualScalar {
        DualScalar::new(-self.value, -self.derivative)
    }
}

impl Scalar for DualScalar {
    fn constant(c: f64) -> Self {
        DualScalar::constant(c)
    }

    fn value(self) -> f64 {
        self.value
    }

    fn exp(self) -> Self {
        let e = self.value.exp();
        DualScalar::new(e, self.derivative * e)
    }

    fn ln(self) -> Self {
        DualScalar::new(self.value.ln(), self.derivative / self.value)
    }

    fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        DualScalar::new(r, self.derivative / (2.0 * r))
    }
}

/// Log-sum-exp of `terms`, max-subtracted for stability. Works for any
/// [`Scalar`], propagating derivatives when the terms are dual.
pub fn log_sum_exp<S: Scalar>(terms: &[S]) -> S {
    debug_assert!(!terms.is_empty());
    let mut m = terms[0];
    for t in &terms[1..] {
        if t.value() > m.value() {
            m = *t;
        }
    }
    if m.value() == f64::NEG_INFINITY {
        return m;
    }
    let mut sum = S::constant(0.0);
    for t in terms {
        sum = sum + (*t - m).exp();
    }
    m + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_matches_fd<F, G>(f: F, fd: G, x: f64, tag: &str)
    where
        F: Fn(DualScalar) -> DualScalar,
        G: Fn(f64) -> f64,
    {
        let h = 1e-6;
        let d = f(DualScalar::variable(x)).derivative;
        let approx = (fd(x + h) - fd(x - h)) / (2.0 * h);
        let scale = approx.abs().max(1e-3);
        assert!(
            (d - approx).abs() / scale < 1e-6,
            "{tag} derivative at {x}: dual {d} vs finite difference {approx}"
        );
    }

    #[test]
    fn chain_rule_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-3.0..3.0);
            assert_matches_fd(|v| v.exp(), |v| v.exp(), x, "exp");
            assert_matches_fd(|v| v.sigmoid(), |v| 1.0 / (1.0 + (-v).exp()), x, "sigmoid");
            assert_matches_fd(|v| v * v, |v| v * v, x, "square");

            let y: f64 = rng.gen_range(0.1..4.0);
            assert_matches_fd(|v| v.ln(), |v| v.ln(), y, "ln");
            let c = DualScalar::constant(y);
            assert_matches_fd(|v| v * c, |v| v * y, x, "product with constant");
        }
    }

    #[test]
    fn product_rule_in_both_arguments() {
        // d/dt of t*g(t) where both factors carry derivatives.
        let t = DualScalar::variable(1.7);
        let prod = t * (t.exp());
        let expect = 1.7f64.exp() * (1.0 + 1.7);
        assert!((prod.derivative - expect).abs() < 1e-12);
    }

    #[test]
    fn quotient_rule() {
        let t = DualScalar::variable(0.8);
        let q = t.exp() / t;
        // d/dt e^t/t = e^t (t-1)/t^2
        let expect = 0.8f64.exp() * (0.8 - 1.0) / (0.8 * 0.8);
        assert!((q.derivative - expect).abs() < 1e-12);
    }

    #[test]
    fn constants_have_zero_derivative() {
        let c = DualScalar::constant(3.5);
        let t = DualScalar::variable(2.0);
        let out = (c * c + c).exp() * c - t * DualScalar::constant(0.0);
        let _ = out;
        assert_eq!((c * c).derivative, 0.0);
        assert_eq!(c.exp().derivative, 0.0);
        assert_eq!(c.ln().derivative, 0.0);
    }

    #[test]
    fn abs_derivative_is_sign() {
        assert_eq!(DualScalar::variable(2.0).abs().derivative, 1.0);
        assert_eq!(DualScalar::variable(-2.0).abs().derivative, -1.0);
    }

    #[test]
    fn log_sum_exp_is_stable_and_exact() {
        // Two large terms that would overflow a naive exp-sum.
        let terms = [DualScalar::constant(800.0), DualScalar::constant(801.0)];
        let lse = log_sum_exp(&terms);
        let expect = 801.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((lse.value - expect).abs() < 1e-12);

        // Derivative is the softmax-weighted average of term derivatives.
        let a = DualScalar::new(0.0, 1.0);
        let b = DualScalar::new(1.0, 0.0);
        let lse = log_sum_exp(&[a, b]);
        let w = 1.0 / (1.0 + 1.0f64.exp());
        assert!((lse.derivative - w).abs() < 1e-12);
    }

    #[test]
    fn scalar_impl_for_f64_is_plain_arithmetic() {
        let x: f64 = Scalar::constant(2.0);
        assert_eq!(x.value(), 2.0);
        assert_eq!(Scalar::exp(x), 2.0f64.exp());
        assert!((Scalar::sigmoid(0.0f64) - 0.5).abs() < 1e-15);
        // The stable branch must agree with the naive formula on both sides.
        for t in [-30.0, -1.0, 0.3, 25.0] {
            let naive = 1.0 / (1.0 + (-t as f64).exp());
            assert!((Scalar::sigmoid(t) - naive).abs() < 1e-15);
        }
    }
}
