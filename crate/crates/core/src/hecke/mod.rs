//! The generic Iwahori-Hecke algebra over `Z[r, r^-1]` (`ρ = r^2`), the bar
//! involution, Kazhdan-Lusztig polynomials and the `C`-basis.

pub mod cache;
mod element;
mod kl;

pub use element::{
    kappa, mul_t_gen_left, mul_t_gen_right, mul_t_right, rho, t_inverse_gen, t_multiply,
    HeckeElement, KappaCache,
};
pub use kl::{
    c_basis, h_constants, kl_column, kl_polynomial, mu_coefficient, solve_kl_by_bar, to_c_basis,
    KLTable, DEFAULT_INTERVAL_BOUND,
};

#[cfg(test)]
mod tests;
