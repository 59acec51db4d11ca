//! Dunkl–Schrödinger and Dunkl–Klein–Gordon propagators, Hermite families,
//! orthonormal Strichartz quotients and the kernel bound behind them.

mod evolution;
mod hls;
mod identities;
mod strichartz;

pub use evolution::{
    family_fields, generalized_hermite_family, klein_gordon_propagate, propagate, schrodinger_propagate, Model,
    MAX_HERMITE_FAMILY,
};
pub use hls::{hls_kernel, hls_kernel_check, HlsReport};
pub use identities::{extension_identity, model_surface, surface_data, IdentityReport};
pub use strichartz::{
    corollary_exponents, diagonal_exponents, family_sweep, klein_gordon_range, mixed_admissible,
    schrodinger_scaling_test, strichartz_quotient_klein_gordon, strichartz_quotient_schrodinger, time_rule,
    CorollaryExponents, DiagonalExponents, ExponentPolicy, InitialFamily, KleinGordonExponents, QuotientReport,
    ScalingSeries, DEFAULT_FAMILY_SIZES, DEFAULT_WINDOW,
};
