use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// c_k = B_{2k} / (2k (2k-1)) for the Stirling tail.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const SHIFT_RADIUS: f64 = 18.0;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Stirling series for ln Γ, valid once |z| ≥ SHIFT_RADIUS and Re z > 0.
fn stirling_ln_gamma(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        tail += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + tail
}

/// Shifts `z` upward until the Stirling series is accurate; returns the
/// shifted argument and the product z (z+1) ... of the skipped factors.
fn shift_up(z: Complex64) -> (Complex64, Complex64) {
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        prod *= w;
        w += 1.0;
    }
    (w, prod)
}

/// Γ(z) for Re z ≥ 1/2.
fn gamma_right(z: Complex64) -> Complex64 {
    let (w, prod) = shift_up(z);
    stirling_ln_gamma(w).exp() / prod
}

/// Complex Gamma function.
///
/// Returns [`Error::Pole`] at the non-positive integers.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma at {}", z.re)));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        Ok(PI / (s * gamma_right(1.0 - z)))
    } else {
        Ok(gamma_right(z))
    }
}

/// Real Gamma function.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// 1/Γ(z), an entire function (zero at the non-positive integers).
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (z * PI).sin() * gamma_right(1.0 - z) / PI
    } else {
        gamma_right(z).inv()
    }
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    let (w, prod) = shift_up(Complex64::new(x, 0.0));
    Ok(stirling_ln_gamma(w).re - prod.re.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gauss product n! n^z / (z (z+1) ... (z+n)), Richardson-accelerated in n.
    fn product_oracle(z: Complex64, n: usize) -> Complex64 {
        let ln_prod = |n: usize| -> Complex64 {
            let mut acc = z * (n as f64).ln();
            for k in 1..=n {
                acc += (k as f64).ln() - (z + k as f64).ln();
            }
            acc - z.ln()
        };
        let g1 = ln_prod(n).exp();
        let g2 = ln_prod(2 * n).exp();
        let g4 = ln_prod(4 * n).exp();
        // error expands in powers of 1/n
        (8.0 * g4 - 6.0 * g2 + g1) / 3.0
    }

    #[test]
    fn gamma_of_one_plus_i_matches_product_form() {
        let z = Complex64::new(1.0, 1.0);
        let g = gamma(z).unwrap();
        let want = Complex64::new(0.498_015_668_118_356, -0.154_949_828_301_810_7);
        assert!((g - want).norm() < 1e-14);
        let oracle = product_oracle(z, 10_000);
        assert!((g - oracle).norm() / oracle.norm() < 1e-10);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-13);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(gamma_real(0.0), Err(Error::Pole(_))));
        assert!(matches!(gamma_real(-3.0), Err(Error::Pole(_))));
        assert_eq!(recip_gamma(Complex64::new(-2.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn strip_matches_product_form() {
        for &(re, im) in &[(0.3, 7.0), (-4.5, 2.0), (12.25, -15.0), (-9.7, 19.0), (19.0, 0.5)] {
            let z = Complex64::new(re, im);
            let g = gamma(z).unwrap();
            // the product form converges for any z off the poles; shift right
            // with the recurrence so the oracle works on a comfortable argument
            let mut w = z;
            let mut fac = Complex64::new(1.0, 0.0);
            while w.re < 1.0 {
                fac *= w;
                w += 1.0;
            }
            let oracle = product_oracle(w, 200_000) / fac;
            let rel = (g - oracle).norm() / oracle.norm();
            assert!(rel < 1e-9, "z={z} rel={rel}");
        }
    }

    #[test]
    fn reflection_identity() {
        for &(re, im) in &[(0.25, 3.0), (-2.3, -4.0), (0.7, 19.5)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12);
        }
    }

    #[test]
    fn recurrence_holds_on_strip() {
        for k in 0..40 {
            let z = Complex64::new(-9.75 + 0.7 * k as f64, -20.0 + k as f64);
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12, "z={z}");
        }
    }
}
