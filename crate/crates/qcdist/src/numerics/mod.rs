//! Scalar numerics shared by every other module: dual numbers for forward-mode
//! differentiation, normal-family special functions, and Gauss-Hermite rules.

pub mod dual;
pub mod hermite;
pub mod special;

pub use dual::{log_sum_exp, DualScalar, Scalar};
pub use hermite::{hermite_rule, HermiteRule, MAX_HERMITE_ORDER};
pub use special::{
    ln_factorial, ln_gamma, lognormal_quantile, std_normal_cdf, std_normal_pdf,
    std_normal_quantile,
};
