//! Closed-form Fourier-Dunkl transforms of the generalized functions attached
//! to the paraboloid, sphere and hyperboloid, plus the Gaussian and Fresnel
//! building blocks.
//!
//! All transforms use the normalization 1 / (c_kappa (2 pi)^{n/2}) of the
//! Fourier-Dunkl transform, except the Gaussian and Fresnel integrals over R^d
//! which are returned unnormalized.

pub mod oracle;
mod suite;

pub use suite::{comparison_suite, threshold_suite, ComparisonRow, ThresholdRow, GROWTH_TOLERANCE, THRESHOLD_OFFSET};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::DunklGeometry;
use crate::specfun::{
    bessel_j, bessel_j_complex, bessel_k, bessel_k_complex, gamma, normalized_bessel, plus_power,
    recip_gamma, ComplexOrder, PlusVariant,
};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn cexp_i(phase: Complex64) -> Complex64 {
    (I * phase).exp()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|t| t * t).sum()
}

fn check_point(geom: &DunklGeometry, xi: &[f64], zeta: &[f64]) -> Result<()> {
    if xi.len() != geom.n() || zeta.len() != geom.d() {
        return Err(invalid(format!(
            "expected xi in R^{} and zeta in R^{}, got lengths {} and {}",
            geom.n(),
            geom.d(),
            xi.len(),
            zeta.len()
        )));
    }
    Ok(())
}

/// J_nu(u) / u^nu, an entire function of u (series in u^2).
pub fn bessel_j_ratio(nu: Complex64, u: f64) -> Result<Complex64> {
    if u < 0.0 || !u.is_finite() {
        return Err(Error::Domain(format!("bessel_j_ratio needs u >= 0, got {u}")));
    }
    if u == 0.0 {
        return Ok(recip_gamma(nu + 1.0) * Complex64::new(2.0, 0.0).powc(-nu));
    }
    if nu.im == 0.0 {
        return if nu.re > -1.0 {
            Ok(normalized_bessel(nu.re, u)?.into())
        } else {
            Ok((bessel_j(nu.re, u)? / u.powf(nu.re)).into())
        };
    }
    if u < 8.0 {
        // Σ (-u^2/4)^k / (k! Γ(nu+k+1)) / 2^nu; nu is not real, so no factor vanishes
        let q = -0.25 * u * u;
        let mut term = recip_gamma(nu + 1.0);
        let mut sum = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (nu + k));
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() && k > 0.5 * u {
                break;
            }
        }
        return Ok(sum * Complex64::new(2.0, 0.0).powc(-nu));
    }
    Ok(bessel_j_complex(nu, u)? / Complex64::new(u, 0.0).powc(nu))
}


/// K_nu(u) / u^nu for u > 0.
pub fn bessel_k_ratio(nu: Complex64, u: f64) -> Result<Complex64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("K ratio needs u > 0, got {u}")));
    }
    let k = if nu.im == 0.0 { bessel_k(nu.re, u)?.into() } else { bessel_k_complex(nu, u)? };
    Ok(k / Complex64::new(u, 0.0).powc(nu))
}

/// ∫ e^{-a|y|^2} E(-i zeta, y) h^2(y) dy for Re a > 0.
pub fn gaussian_dunkl_symbol(geom: &DunklGeometry, a: Complex64, zeta: &[f64]) -> Result<Complex64> {
    if !(a.re > 0.0) {
        return Err(Error::Domain(format!("Gaussian integral needs Re a > 0, got {a}")));
    }
    if zeta.len() != geom.d() {
        return Err(invalid("zeta must have length d"));
    }
    let mu = 0.5 * geom.y_dimension();
    let modulus = geom.c_kappa() * 2f64.powf(-mu) * a.norm().powf(-mu);
    Ok(modulus * cexp_i((-mu * a.arg()).into()) * (-norm2(zeta) / (4.0 * a)).exp())
}

/// (1/sqrt(2 pi)) ∫ e^{i t x^2} e^{i x y} dx = |2t|^{-1/2} e^{i pi sgn(t)/4} e^{-i y^2/(4t)}.
pub fn fresnel_1d(t: f64, y: f64) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("Fresnel integral needs t != 0, got {t}")));
    }
    let phase = 0.25 * PI * t.signum() - y * y / (4.0 * t);
    Ok(Complex64::from_polar((2.0 * t.abs()).powf(-0.5), phase))
}

/// ∫ e^{-i t |y|^2} E(-i zeta, y) h^2(y) dy as a distribution in y.
pub fn fresnel_dunkl(geom: &DunklGeometry, t: f64, zeta: &[f64]) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("Fresnel integral needs t != 0, got {t}")));
    }
    if zeta.len() != geom.d() {
        return Err(invalid("zeta must have length d"));
    }
    let mu = 0.5 * geom.y_dimension();
    let modulus = geom.c_kappa() * 2f64.powf(-mu) * t.abs().powf(-mu);
    let phase = -0.5 * mu * PI * t.signum() + norm2(zeta) / (4.0 * t);
    Ok(Complex64::from_polar(modulus, phase))
}

/// Transform of (x_n - |x'|^2 + |y|^2)_+^z divided by Γ(z+1); entire in z.
pub fn paraboloid_symbol_over_gamma(
    geom: &DunklGeometry,
    z: ComplexOrder,
    xi: &[f64],
    zeta: &[f64],
) -> Result<Complex64> {
    check_point(geom, xi, zeta)?;
    let n = geom.n();
    if n == 0 {
        return Err(invalid("the paraboloid needs n >= 1"));
    }
    let xn = xi[n - 1];
    if xn == 0.0 || !xn.is_finite() {
        return Err(Error::Domain("paraboloid symbol is singular at xi_n = 0".into()));
    }
    let zc = z.value();
    let big_n = geom.n_kappa();
    let dy = geom.y_dimension();
    let p_prime = norm2(&xi[..n - 1]) - norm2(zeta);
    let sgn = xn.signum();
    let pref = I * cexp_i(0.5 * PI * zc) / (PI.sqrt() * 2f64.powf(0.5 * big_n));
    let phase = 0.25 * PI * (dy - n as f64 + 1.0) * sgn + p_prime / (4.0 * xn);
    let power = plus_power(-xn, ComplexOrder::try_from(-zc - 1.0)?, PlusVariant::PlusI0)?;
    Ok(pref * Complex64::from_polar(xn.abs().powf(-0.5 * (big_n - 1.0)), phase) * power)
}

/// Transform of (x_n - |x'|^2 + |y|^2)_+^z.
pub fn paraboloid_symbol(geom: &DunklGeometry, z: ComplexOrder, xi: &[f64], zeta: &[f64]) -> Result<Complex64> {
    Ok(gamma(z.value() + 1.0)? * paraboloid_symbol_over_gamma(geom, z, xi, zeta)?)
}

/// Positive-definite quadratic form c^2 + Σ alpha_j x_j^2 + beta |y|^2.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveQuadratic {
    pub c: f64,
    pub alpha: Vec<f64>,
    pub beta: f64,
}

impl PositiveQuadratic {
    pub fn standard(n: usize) -> Self {
        Self { c: 1.0, alpha: vec![1.0; n], beta: 1.0 }
    }
}

/// Transform of (c^2 + Σ alpha_j x_j^2 + beta |y|^2)^z.
pub fn positive_definite_symbol(
    geom: &DunklGeometry,
    z: ComplexOrder,
    form: &PositiveQuadratic,
    xi: &[f64],
    zeta: &[f64],
) -> Result<Complex64> {
    check_point(geom, xi, zeta)?;
    if form.alpha.len() != geom.n() {
        return Err(invalid("alpha must have length n"));
    }
    if !(form.c > 0.0) || !(form.beta > 0.0) || form.alpha.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::Domain("quadratic form must be positive definite with c > 0".into()));
    }
    let q: f64 = xi.iter().zip(&form.alpha).map(|(x, a)| x * x / a).sum::<f64>() + norm2(zeta) / form.beta;
    if q == 0.0 {
        return Err(Error::Domain("symbol is singular at the origin".into()));
    }
    let zc = z.value();
    let lambda = 0.5 * geom.n_kappa() + zc;
    let det_sqrt = (form.alpha.iter().product::<f64>() * form.beta.powf(geom.y_dimension())).sqrt();
    let u = form.c * q.sqrt();
    // (c / sqrt Q)^lambda K_lambda(u) = c^{2 lambda} K_lambda(u) / u^lambda
    let c_pow = Complex64::new(form.c, 0.0).powc(2.0 * lambda);
    Ok(Complex64::new(2.0, 0.0).powc(zc + 1.0) * recip_gamma(-zc) / det_sqrt * c_pow * bessel_k_ratio(lambda, u)?)
}

/// Transform of (1 - |x|^2 - |y|^2)_+^z divided by Γ(1+z).
pub fn sphere_symbol_over_gamma(geom: &DunklGeometry, z: ComplexOrder, xi: &[f64], zeta: &[f64]) -> Result<Complex64> {
    check_point(geom, xi, zeta)?;
    let zc = z.value();
    let s = (norm2(xi) + norm2(zeta)).sqrt();
    Ok(Complex64::new(2.0, 0.0).powc(zc) * bessel_j_ratio(0.5 * geom.n_kappa() + zc, s)?)
}

/// Transform of (1 - |x|^2 - |y|^2)_+^z.
pub fn sphere_symbol(geom: &DunklGeometry, z: ComplexOrder, xi: &[f64], zeta: &[f64]) -> Result<Complex64> {
    Ok(gamma(z.value() + 1.0)? * sphere_symbol_over_gamma(geom, z, xi, zeta)?)
}

/// Whether the hyperboloid transform is multiplied by the pole-cancelling factor h(z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalizer {
    Enabled,
    Disabled,
}

fn is_even_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12 && (x.round() as i64) % 2 == 0
}

/// sin(pi w) / w, continuous at w = 0.
fn sin_pi_over(w: Complex64) -> Complex64 {
    if w.norm() < 1e-8 {
        Complex64::new(PI, 0.0) * (1.0 - (PI * w).powi(2) / 6.0)
    } else {
        (PI * w).sin() / w
    }
}

/// The factor h(z) that cancels the poles of 1/sin((N/2 + z) pi).
pub fn hyperboloid_normalizer(geom: &DunklGeometry, z: Complex64) -> Complex64 {
    let big_n = geom.n_kappa();
    let lambda = 0.5 * big_n + z;
    if (big_n - 2.0).abs() < 1e-12 {
        sin_pi_over(z + 1.0)
    } else if is_even_integer(big_n) {
        // sin(lambda pi) = ± sin((z+1) pi) since lambda - (z+1) is an integer
        let sign = if ((0.5 * big_n - 1.0).round() as i64) % 2 == 0 { 1.0 } else { -1.0 };
        lambda * sign * sin_pi_over(z + 1.0)
    } else {
        lambda * (PI * lambda).sin()
    }
}

/// h(z) / sin((N/2 + z) pi), evaluated without the removable 0/0.
fn normalizer_over_sin(geom: &DunklGeometry, z: Complex64) -> Complex64 {
    let big_n = geom.n_kappa();
    let lambda = 0.5 * big_n + z;
    if (big_n - 2.0).abs() < 1e-12 {
        (z + 1.0).inv()
    } else if is_even_integer(big_n) {
        lambda / (z + 1.0)
    } else {
        lambda
    }
}

/// Which branch of the hyperboloid transform a point falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperboloidBranch {
    /// |zeta| > |xi|: the Macdonald-function branch.
    Macdonald,
    /// |zeta| < |xi|: the two-J branch.
    Bessel,
}

pub fn hyperboloid_branch(xi: &[f64], zeta: &[f64]) -> Result<HyperboloidBranch> {
    let q = norm2(zeta) - norm2(xi);
    if q > 0.0 {
        Ok(HyperboloidBranch::Macdonald)
    } else if q < 0.0 {
        Ok(HyperboloidBranch::Bessel)
    } else {
        Err(Error::Domain("hyperboloid symbol evaluated on the light cone |xi| = |zeta|".into()))
    }
}

/// Transform of (1 - |x|^2 + |y|^2)_+^z divided by Γ(1+z), optionally times h(z).
pub fn hyperboloid_symbol_over_gamma(
    geom: &DunklGeometry,
    z: ComplexOrder,
    xi: &[f64],
    zeta: &[f64],
    normalizer: Normalizer,
) -> Result<Complex64> {
    check_point(geom, xi, zeta)?;
    let zc = z.value();
    let lambda = 0.5 * geom.n_kappa() + zc;
    let theta = (zc + 0.5 * geom.n() as f64) * PI;
    let q = norm2(zeta) - norm2(xi);
    let pref = Complex64::new(2.0, 0.0).powc(zc + 1.0) / PI;
    let bracket = match hyperboloid_branch(xi, zeta)? {
        HyperboloidBranch::Macdonald => {
            let k = -theta.sin() * bessel_k_ratio(lambda, q.sqrt())?;
            match normalizer {
                Normalizer::Enabled => k * hyperboloid_normalizer(geom, zc),
                Normalizer::Disabled => k,
            }
        }
        HyperboloidBranch::Bessel => {
            let u = (-q).sqrt();
            // J_{-lambda}(u)/u^lambda = (J_{-lambda}(u)/u^{-lambda}) u^{-2 lambda}
            let j_minus = bessel_j_ratio(-lambda, u)? * Complex64::new(u, 0.0).powc(-2.0 * lambda);
            let j_plus = bessel_j_ratio(lambda, u)?;
            let combo = (0.5 * PI * geom.y_dimension()).sin() * j_minus + theta.sin() * j_plus;
            let factor = match normalizer {
                Normalizer::Enabled => normalizer_over_sin(geom, zc),
                Normalizer::Disabled => {
                    let s = (PI * lambda).sin();
                    if s.norm() < 1e-14 {
                        return Err(Error::Pole(format!(
                            "sin((N/2 + z) pi) vanishes at z = {zc}; enable the normalizer"
                        )));
                    }
                    s.inv()
                }
            };
            0.5 * PI * factor * combo
        }
    };
    Ok(pref * bracket)
}

/// Transform of (1 - |x|^2 + |y|^2)_+^z, optionally times h(z).
pub fn hyperboloid_symbol(
    geom: &DunklGeometry,
    z: ComplexOrder,
    xi: &[f64],
    zeta: &[f64],
    normalizer: Normalizer,
) -> Result<Complex64> {
    Ok(gamma(z.value() + 1.0)? * hyperboloid_symbol_over_gamma(geom, z, xi, zeta, normalizer)?)
}

/// Assembles the transform of (c^2 + P)_+^z from those of (c^2 + P ± i0)^z.
pub fn two_sided_combination(z: Complex64, plus_i0: Complex64, minus_i0: Complex64) -> Result<Complex64> {
    let s = (PI * z).sin();
    if s.norm() < 1e-14 {
        return Err(Error::Pole(format!("combination undefined at integer z = {z}")));
    }
    Ok(I / (2.0 * s) * (cexp_i(-PI * z) * plus_i0 - cexp_i(PI * z) * minus_i0))
}

/// Side of the i0 prescription.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum I0Side {
    Plus,
    Minus,
}

/// K_lambda(c (x ± i0)^{1/2}) / (x ± i0)^{lambda/2}, split into the x > 0
/// Macdonald part and the x < 0 two-J part.
pub fn macdonald_i0(lambda: Complex64, c: f64, x: f64, side: I0Side) -> Result<Complex64> {
    if x > 0.0 {
        let u = c * x.sqrt();
        // K(u) / x^{lambda/2} = c^lambda K(u)/u^lambda
        return Ok(Complex64::new(c, 0.0).powc(lambda) * bessel_k_ratio(lambda, u)?);
    }
    if x == 0.0 {
        return Err(Error::Domain("i0 power evaluated at 0".into()));
    }
    let s = (PI * lambda).sin();
    if s.norm() < 1e-14 {
        return Err(Error::Pole(format!("integer order {lambda} in the i0 expansion")));
    }
    let r = (-x).sqrt();
    let u = c * r;
    let rl = Complex64::new(r, 0.0).powc(lambda);
    let ul = Complex64::new(u, 0.0).powc(lambda);
    // J_{-lambda}(u)/r^lambda and J_lambda(u)/r^lambda
    let j_minus = bessel_j_ratio(-lambda, u)? / ul / rl;
    let j_plus = bessel_j_ratio(lambda, u)? * ul / rl;
    let sign = if side == I0Side::Plus { -1.0 } else { 1.0 };
    Ok(PI / (2.0 * s) * (cexp_i(sign * PI * lambda) * j_minus - j_plus))
}

/// Transform of (1 + P ± i0)^z for P = Σ alpha_j x_j^2 + beta |y|^2 with all
/// alpha_j = a_sign, beta = b_sign (each ±1), from the positive-definite
/// formula continued in the form: the +i0 side evaluates Q - i0 and divides by
/// the continued sqrt(D) = e^{i pi m/2}, m the number of negative directions.
pub fn quadratic_i0_symbol(
    geom: &DunklGeometry,
    z: ComplexOrder,
    a_sign: f64,
    b_sign: f64,
    xi: &[f64],
    zeta: &[f64],
    side: I0Side,
) -> Result<Complex64> {
    check_point(geom, xi, zeta)?;
    let zc = z.value();
    let lambda = 0.5 * geom.n_kappa() + zc;
    let q = a_sign * norm2(xi) + b_sign * norm2(zeta);
    let negative = (if a_sign < 0.0 { geom.n() as f64 } else { 0.0 })
        + (if b_sign < 0.0 { geom.y_dimension() } else { 0.0 });
    let (phase, q_side) = match side {
        I0Side::Plus => (0.5 * PI * negative, I0Side::Minus),
        I0Side::Minus => (-0.5 * PI * negative, I0Side::Plus),
    };
    let k = macdonald_i0(lambda, 1.0, q, q_side)?;
    Ok(Complex64::new(2.0, 0.0).powc(zc + 1.0) * recip_gamma(-zc) * cexp_i((-phase).into()) * k)
}
