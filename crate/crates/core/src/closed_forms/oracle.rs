//! Direct quadrature of the defining integrals, independent of the closed forms.
//!
//! Oscillatory integrals are damped by e^{-eps |.|^2}, evaluated at
//! eps in {0.02, 0.01, 0.005}, and extrapolated to eps = 0 with second-order
//! Richardson weights. Absolutely convergent integrals are summed directly.
//! The two-variable oracles cover n = d = 1 with any kappa.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::{c_kappa_axis, kernel_1d_imag, DunklGeometry};
use crate::quadrature::{
    composite_legendre, gauss_gegenbauer, gauss_jacobi, half_line_weighted, richardson3, symmetric_weighted, Rule,
};

use super::PositiveQuadratic;

/// Damping parameters used by every regularized oracle.
pub const DAMPING: [f64; 3] = [0.02, 0.01, 0.005];

const PANEL_NODES: usize = 16;
/// e^{-37} is below double-precision resolution relative to 1.
const DAMPING_CUTOFF: f64 = 37.0;

fn extrapolate(values: [Complex64; 3]) -> Complex64 {
    Complex64::new(
        richardson3(values[0].re, values[1].re, values[2].re),
        richardson3(values[0].im, values[1].im, values[2].im),
    )
}

fn damped<F: Fn(f64) -> Result<Complex64>>(f: F) -> Result<Complex64> {
    Ok(extrapolate([f(DAMPING[0])?, f(DAMPING[1])?, f(DAMPING[2])?]))
}

/// Panel width resolving a phase that turns at most `rate` radians per unit length.
fn panel_for_rate(rate: f64) -> f64 {
    (2.0 / rate.max(1e-3)).min(0.5)
}

fn two_variable(geom: &DunklGeometry) -> Result<f64> {
    if geom.n() != 1 || geom.d() != 1 {
        return Err(invalid("quadrature oracle implemented for n = d = 1"));
    }
    Ok(geom.kappa()[0])
}

fn real_z(z: f64, lo: f64, hi: f64, what: &str) -> Result<()> {
    if z > lo && z < hi {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} oracle needs {lo} < z < {hi}, got {z}")))
    }
}

/// ∫ e^{-a v^2} e_kappa(-i zeta v) |v|^{2 kappa} dv for Re a > 0.
fn gaussian_axis(kappa: f64, a: Complex64, zeta: f64) -> Complex64 {
    let len = (DAMPING_CUTOFF / a.re).sqrt();
    let rule = symmetric_weighted(len, kappa, panel_for_rate(2.0 * a.im.abs() * len + zeta.abs()), PANEL_NODES);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&v, &w)| w * (-a * v * v).exp() * kernel_1d_imag(kappa, -zeta * v))
        .sum()
}

/// (1/sqrt(2 pi)) ∫ e^{i t x^2} e^{i x y} dx.
pub fn fresnel_1d(t: f64, y: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Domain("Fresnel oracle needs t != 0".into()));
    }
    // e^{i x y} = e_0(-i (-y) x)
    damped(|eps| Ok(gaussian_axis(0.0, Complex64::new(eps, -t), -y) / (2.0 * PI).sqrt()))
}

/// ∫ e^{-a|y|^2} E(-i zeta, y) h^2(y) dy, as a product of one-dimensional quadratures.
pub fn gaussian_dunkl(geom: &DunklGeometry, a: Complex64, zeta: &[f64]) -> Result<Complex64> {
    if !(a.re > 0.0) || zeta.len() != geom.d() {
        return Err(invalid("Gaussian oracle needs Re a > 0 and zeta in R^d"));
    }
    Ok(geom.kappa().iter().zip(zeta).map(|(&k, &z)| gaussian_axis(k, a, z)).product())
}

/// ∫ e^{-i t |y|^2} E(-i zeta, y) h^2(y) dy with damping e^{-eps |y|^2}.
pub fn fresnel_dunkl(geom: &DunklGeometry, t: f64, zeta: &[f64]) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Domain("Fresnel oracle needs t != 0".into()));
    }
    damped(|eps| gaussian_dunkl(geom, Complex64::new(eps, t), zeta))
}

/// Transform of (x - |x'|^2 + |y|^2)_+^z for n = d = 1 (so the form is x + y^2).
///
/// With u = x + y^2 the double integral factors into ∫_0^∞ u^z e^{-iu xi} du
/// times ∫ e^{i xi y^2} E(-i zeta, y) h^2 dy; both are damped by e^{-eps u^2},
/// e^{-eps y^2}.
pub fn paraboloid(geom: &DunklGeometry, z: f64, xi: f64, zeta: f64) -> Result<Complex64> {
    let kappa = two_variable(geom)?;
    real_z(z, -1.0, 0.0, "paraboloid")?;
    if xi == 0.0 {
        return Err(Error::Domain("paraboloid oracle needs xi != 0".into()));
    }
    let norm = 1.0 / (c_kappa_axis(kappa) * (2.0 * PI).sqrt());
    damped(|eps| {
        let len = (DAMPING_CUTOFF / eps).sqrt();
        let rule = half_line_weighted(len, z, panel_for_rate(xi.abs()), PANEL_NODES);
        let radial: Complex64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| w * (-eps * u * u).exp() * Complex64::from_polar(1.0, -u * xi))
            .sum();
        let transverse = gaussian_axis(kappa, Complex64::new(eps, -xi), zeta);
        Ok(norm * radial * transverse)
    })
}

/// ∫_{-1}^{1} (1 - s^2)^z cos(omega s) ds.
fn gegenbauer_cos(rule: &Rule, omega: f64, damping: f64) -> f64 {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&s, &w)| w * (omega * s).cos() * (-damping * s * s).exp())
        .sum()
}

/// Transform of (1 - x^2 - y^2)_+^z for n = d = 1, z > -1 (compact support,
/// absolutely convergent). Jacobi rule in y, Gegenbauer rule in x.
pub fn sphere(geom: &DunklGeometry, z: f64, xi: f64, zeta: f64) -> Result<Complex64> {
    let kappa = two_variable(geom)?;
    real_z(z, -1.0, f64::INFINITY, "sphere")?;
    let nodes = 80 + (xi.abs() + zeta.abs()).ceil() as usize;
    let inner = gauss_gegenbauer(nodes, z);
    let (alpha, beta) = (z + 0.5, 2.0 * kappa);
    let outer = gauss_jacobi(nodes, alpha, beta);
    let scale = 2f64.powf(-alpha - beta - 1.0);
    let total: Complex64 = outer
        .nodes
        .iter()
        .zip(&outer.weights)
        .map(|(&s, &w)| {
            let y = 0.5 * (1.0 + s);
            let b2 = 1.0 - y * y;
            // (1 - y^2)^{z + 1/2} = (1 - y)^alpha (1 + y)^alpha; the first factor is in the rule
            let smooth = (1.0 + y).powf(alpha);
            let x_part = gegenbauer_cos(&inner, b2.sqrt() * xi, 0.0);
            let kernel = kernel_1d_imag(kappa, -zeta * y) + kernel_1d_imag(kappa, zeta * y);
            w * scale * smooth * x_part * kernel
        })
        .sum();
    Ok(total / (c_kappa_axis(kappa) * (2.0 * PI).sqrt()))
}

/// Transform of (1 - x^2 + y^2)_+^z for n = d = 1, -1 < z < 0, at points off
/// the light cone. The x-integral over |x| < sqrt(1 + y^2) uses a Gegenbauer
/// rule; the y-integral is damped.
pub fn hyperboloid(geom: &DunklGeometry, z: f64, xi: f64, zeta: f64) -> Result<Complex64> {
    let kappa = two_variable(geom)?;
    real_z(z, -1.0, 0.0, "hyperboloid")?;
    if (xi.abs() - zeta.abs()).abs() < 0.5 {
        return Err(Error::Domain("hyperboloid oracle needs points away from |xi| = |zeta|".into()));
    }
    let norm = 1.0 / (c_kappa_axis(kappa) * (2.0 * PI).sqrt());
    damped(|eps| {
        let len = (DAMPING_CUTOFF / eps).sqrt();
        let nodes = 40 + (0.75 * len * xi.abs()).ceil() as usize;
        let inner = gauss_gegenbauer(nodes, z);
        let outer = symmetric_weighted(len, kappa, panel_for_rate(xi.abs() + zeta.abs()), PANEL_NODES);
        let sum: Complex64 = outer
            .nodes
            .iter()
            .zip(&outer.weights)
            .map(|(&y, &w)| {
                let a2 = 1.0 + y * y;
                let a = a2.sqrt();
                let x_part = a.powf(2.0 * z + 1.0) * gegenbauer_cos(&inner, a * xi, eps * a2);
                w * (-eps * y * y).exp() * x_part * kernel_1d_imag(kappa, -zeta * y)
            })
            .sum();
        Ok(norm * sum)
    })
}

/// Transform of (c^2 + alpha x^2 + beta y^2)^z for n = d = 1 and z < -N/2,
/// where the integral converges absolutely; summed over a truncated quadrant
/// using the evenness of the integrand.
pub fn positive_definite(
    geom: &DunklGeometry,
    z: f64,
    form: &PositiveQuadratic,
    xi: f64,
    zeta: f64,
) -> Result<Complex64> {
    let kappa = two_variable(geom)?;
    real_z(z, f64::NEG_INFINITY, -0.5 * geom.n_kappa(), "positive-definite")?;
    if form.alpha.len() != 1 {
        return Err(invalid("alpha must have length 1"));
    }
    let (c2, alpha, beta) = (form.c * form.c, form.alpha[0], form.beta);
    let len = 60.0 * form.c.max(1.0) / alpha.min(beta).sqrt();
    let xs = composite_legendre(0.0, len, (len / panel_for_rate(xi.abs())).ceil() as usize, PANEL_NODES);
    let ys = half_line_weighted(len, 2.0 * kappa, panel_for_rate(zeta.abs()), PANEL_NODES);
    let x_factor: Vec<f64> = xs.nodes.iter().zip(&xs.weights).map(|(&x, &w)| 2.0 * w * (x * xi).cos()).collect();
    let total: f64 = ys
        .nodes
        .iter()
        .zip(&ys.weights)
        .map(|(&y, &w)| {
            // even part of the kernel: E(-i zeta, y) + E(-i zeta, -y)
            let even = 2.0 * kernel_1d_imag(kappa, zeta * y).re;
            let base = c2 + beta * y * y;
            let row: f64 = xs.nodes.iter().zip(&x_factor).map(|(&x, &f)| f * (base + alpha * x * x).powf(z)).sum();
            w * even * row
        })
        .sum();
    Ok(Complex64::new(total / (c_kappa_axis(kappa) * (2.0 * PI).sqrt()), 0.0))
}
