//! Reflection-group data for Z2^d acting on the y-variables, the weight
//! h^2, the normalizing constants and the Dunkl kernel.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::specfun::{gamma_real, jtilde};

/// Split Euclidean space R^n x R^d with multiplicities kappa_j ≥ 0 on the y-axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DunklGeometry {
    n: usize,
    kappa: Vec<f64>,
}

impl DunklGeometry {
    pub fn new(n: usize, kappa: Vec<f64>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(invalid("d must be at least 1"));
        }
        if let Some(k) = kappa.iter().find(|k| !k.is_finite() || **k < 0.0) {
            return Err(invalid(format!("multiplicity {k} is not a finite nonnegative number")));
        }
        Ok(Self { n, kappa })
    }

    /// Same multiplicity on every y-axis.
    pub fn uniform(n: usize, d: usize, kappa: f64) -> Result<Self> {
        Self::new(n, vec![kappa; d])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Total dimension n + d of the underlying space.
    pub fn dim(&self) -> usize {
        self.n + self.d()
    }

    /// Sum of the multiplicities.
    pub fn gamma_kappa(&self) -> f64 {
        self.kappa.iter().sum()
    }

    /// Homogeneous dimension of the weighted y-space, d + 2 gamma.
    pub fn y_dimension(&self) -> f64 {
        self.d() as f64 + 2.0 * self.gamma_kappa()
    }

    /// Homogeneous dimension of the whole space, n + d + 2 gamma.
    pub fn n_kappa(&self) -> f64 {
        self.n as f64 + self.y_dimension()
    }

    /// ∫ e^{-|y|^2/2} h^2(y) dy, as a product over the axes.
    pub fn c_kappa(&self) -> f64 {
        self.kappa.iter().map(|&k| c_kappa_axis(k)).product()
    }

    /// Weighted area of the unit sphere in R^d: ∫_{S^{d-1}} h^2 dσ.
    pub fn sigma_sphere(&self) -> f64 {
        let num: f64 = self.kappa.iter().map(|&k| gamma_real(k + 0.5).unwrap()).product();
        2.0 * num / gamma_real(self.y_dimension() / 2.0).unwrap()
    }

    /// Constant in the radial reduction of the Fourier–Dunkl transform of a
    /// radial function (f(|v|) ↦ ∫ f(r) r^{N-1} j(r s) dr up to this factor).
    /// Assembled from its parts; it equals 1 for every geometry.
    pub fn radial_constant(&self) -> f64 {
        let mu = self.y_dimension() / 2.0;
        let y_part = self.sigma_sphere() * gamma_real(mu).unwrap();
        if self.n == 0 {
            return y_part * 2f64.powf(mu - 1.0) / self.c_kappa();
        }
        let nf = self.n as f64;
        let sigma_x = 2.0 * PI.powf(nf / 2.0) / gamma_real(nf / 2.0).unwrap();
        sigma_x * y_part * gamma_real(nf / 2.0).unwrap() * 2f64.powf(self.n_kappa() / 2.0 - 2.0)
            / (self.c_kappa() * (2.0 * PI).powf(nf / 2.0))
    }

    /// h^2(y) = prod |y_j|^{2 kappa_j}.
    pub fn weight_h2(&self, y: &[f64]) -> Result<f64> {
        if y.len() != self.d() {
            return Err(invalid(format!("expected {} y-coordinates, got {}", self.d(), y.len())));
        }
        Ok(self.kappa.iter().zip(y).map(|(&k, &v)| axis_weight(k, v)).product())
    }

    /// Dunkl kernel E(a, b) for complex a and real b, the product of the
    /// one-dimensional kernels.
    pub fn kernel(&self, a: &[Complex64], b: &[f64]) -> Result<Complex64> {
        if a.len() != self.d() || b.len() != self.d() {
            return Err(invalid("kernel arguments must have length d"));
        }
        Ok(self
            .kappa
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&k, (&ai, &bi))| kernel_1d(k, ai * bi))
            .product())
    }

    /// E(i s zeta, y) with s = ±1, the kernel of the transform (s = -1) and
    /// its inverse (s = +1).
    pub fn kernel_imag(&self, sign: f64, zeta: &[f64], y: &[f64]) -> Result<Complex64> {
        if zeta.len() != self.d() || y.len() != self.d() {
            return Err(invalid("kernel arguments must have length d"));
        }
        Ok(self
            .kappa
            .iter()
            .zip(zeta.iter().zip(y))
            .map(|(&k, (&z, &v))| kernel_1d_imag(k, sign * z * v))
            .product())
    }
}

/// |v|^{2 kappa}, with 0^0 = 1.
#[inline]
pub fn axis_weight(kappa: f64, v: f64) -> f64 {
    if kappa == 0.0 {
        1.0
    } else if kappa == 0.5 {
        v.abs()
    } else if kappa == 1.0 {
        v * v
    } else {
        v.abs().powf(2.0 * kappa)
    }
}

/// ∫_R e^{-v^2/2} |v|^{2 kappa} dv = 2^{kappa+1/2} Γ(kappa + 1/2).
pub fn c_kappa_axis(kappa: f64) -> f64 {
    2f64.powf(kappa + 0.5) * gamma_real(kappa + 0.5).unwrap()
}

/// One-dimensional kernel e_kappa(w) at purely imaginary w = i t.
#[inline]
pub fn kernel_1d_imag(kappa: f64, t: f64) -> Complex64 {
    if kappa == 0.0 {
        let (s, c) = t.sin_cos();
        return Complex64::new(c, s);
    }
    let even = jtilde(kappa - 0.5, t);
    let odd = t / (2.0 * kappa + 1.0) * jtilde(kappa + 0.5, t);
    Complex64::new(even, odd)
}

/// One-dimensional Dunkl kernel e_kappa(w) = E_kappa(w, 1) for complex w.
///
/// Imaginary arguments go through the Bessel routines. Other arguments use
/// the modified-Bessel series, which has positive terms on the real axis;
/// for complex w off both axes it is meant for moderate |w|.
pub fn kernel_1d(kappa: f64, w: Complex64) -> Complex64 {
    if kappa == 0.0 {
        return w.exp();
    }
    if w.re == 0.0 {
        return kernel_1d_imag(kappa, w.im);
    }
    let q = 0.25 * w * w;
    let series = |a: f64| -> Complex64 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (k + a));
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() || term.norm() == 0.0 {
                return sum;
            }
        }
    };
    series(kappa - 0.5) + w / (2.0 * kappa + 1.0) * series(kappa + 0.5)
}
