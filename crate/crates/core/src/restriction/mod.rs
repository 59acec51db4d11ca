//! Restriction and extension on quadratic surfaces, the operator T_S, Schatten
//! norms, the duality principle at matrix scale and exponent tables.

mod exponents;
mod operators;
mod surface;

pub use exponents::{
    beta, dual, exact_n_kappa, exact_rational, exact_y_dimension, exponent_table, lambda0, ExponentRange,
    ExponentTable,
};
pub use operators::{
    duality_check, extension_matrix, extension_operator, restriction_operator, schatten_from_singular, schatten_norm,
    singular_values, surface_inner_product, synthesize_on_grid, transform_at_points, ts_matrix, ts_matrix_with_budget,
    DualityConfig, DualityReport, DEFAULT_MATRIX_BUDGET,
};
pub use surface::{sample_surface, Chart, QuadraticSurface, SurfaceKind, SurfaceSampling, DEFAULT_TRUNCATION};
