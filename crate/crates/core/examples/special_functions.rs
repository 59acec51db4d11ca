//! Bessel, Macdonald and gamma values, and the distribution x_+^λ.

use dunkl_lab::specfun::{bessel_j, bessel_k, gamma, gamma_real, normalized_bessel, plus_power, ComplexOrder, PlusVariant};
use num_complex::Complex64;

fn main() -> dunkl_lab::Result<()> {
    for (nu, x) in [(0.0, 1.0), (0.5, 2.5), (2.3, 40.0), (-0.25, 0.1)] {
        println!(
            "nu={nu:5} x={x:5}  J={:+.15e}  j~={:+.15e}  K={:.15e}",
            bessel_j(nu, x)?,
            normalized_bessel(nu, x)?,
            bessel_k(nu, x)?
        );
    }
    println!("Gamma(1/2)^2 = {:.16} (pi = {:.16})", gamma_real(0.5)?.powi(2), std::f64::consts::PI);
    println!("Gamma(0.3 + 2i) = {}", gamma(Complex64::new(0.3, 2.0))?);
    let lambda = ComplexOrder::new(-0.5, 0.2)?;
    println!("(2)_+^(-0.5+0.2i) = {}", plus_power(2.0, lambda, PlusVariant::Plus)?);
    Ok(())
}
