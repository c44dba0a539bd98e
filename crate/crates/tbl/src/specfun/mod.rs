//! Gamma, zeta and Dirichlet L-functions.

pub mod bernoulli;
pub mod gamma;
pub mod lfun;
pub mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, generalized_bernoulli};
pub use gamma::{digamma, factorial, gamma, gamma_real, ln_gamma_real, EULER_GAMMA};
pub use lfun::{
    dirichlet_l, dirichlet_l_with, functional_equation_residual, functional_equation_rhs, l_derivative,
    l_derivative_real, l_derivative_with_step, l_real, l_value, LEvaluation, LMethod,
};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with_head, riemann_zeta, zeta_real};
