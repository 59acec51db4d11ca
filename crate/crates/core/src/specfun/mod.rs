//! Special functions: Gamma, Bessel J and K, homogeneous one-sided powers.

mod bessel;
mod gamma;
mod power;

pub use bessel::{bessel_j, bessel_j_complex, bessel_k, bessel_k_complex, normalized_bessel};
pub(crate) use bessel::jtilde;
pub use gamma::{gamma, gamma_real, ln_gamma_real, recip_gamma};
pub use power::{plus_power, ComplexOrder, PlusVariant};
