//! Propagators and orthonormal Strichartz quotients for Hermite families.

use dunkl_lab::geometry::DunklGeometry;
use dunkl_lab::propagators::{
    diagonal_exponents, family_sweep, schrodinger_scaling_test, Model, DEFAULT_WINDOW,
};

fn main() -> dunkl_lab::Result<()> {
    let g = DunklGeometry::new(0, vec![0.5])?;
    let e = diagonal_exponents(&g)?;
    println!("D = {}, p' = {}, density exponent {}, beta = {}", e.y_dimension, e.p_prime, e.density_exponent, e.beta);
    for model in [Model::Schrodinger, Model::KleinGordon] {
        for r in family_sweep(model, &g, &[1, 2, 4], DEFAULT_WINDOW)? {
            println!(
                "{:12} m={:2} L^{}_t L^{}_y  Q = {:.6}  tail {:.2e}",
                model.name(),
                r.m,
                r.p,
                r.q,
                r.quotient,
                r.tail_estimate
            );
        }
    }
    let d = *e.density_exponent.numer() as f64 / *e.density_exponent.denom() as f64;
    for s in schrodinger_scaling_test(&g, &[d, 1.2 * d], &[0.5, 1.0, 2.0], DEFAULT_WINDOW)? {
        println!("exponent {:.2}: quotients {:?}, drift {:.2e}", s.exponent, s.quotients, s.drift);
    }
    Ok(())
}
