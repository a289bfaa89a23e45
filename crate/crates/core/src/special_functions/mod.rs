//! Bessel functions of the first kind and their zeros.

mod bessel;
mod zeros;

pub use bessel::{
    bessel_j, bessel_j_leading_asymptotic, bessel_j_pair, bessel_j_prime, bessel_j_scaled, bessel_j_scaled_extended,
    bessel_ratio, h_aux_order, h_tilde_order, Order, MAX_ARGUMENT, MAX_ORDER,
};
pub use zeros::{bessel_zero, mcmahon_guess, zero_table, ZeroTable, MAX_ZERO_INDEX};

pub(crate) use zeros::zero_or_origin;
