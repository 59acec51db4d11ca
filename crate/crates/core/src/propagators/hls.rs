//! Pointwise bound |Ǧ_{-λ0+is}(t, y)| <= C e^{π|s|/2} |t|^{λ0-1-D/2} for the
//! inverse transform of the paraboloid family at n = 1.

use serde::Serialize;

use crate::closed_forms::paraboloid_symbol_over_gamma;
use crate::error::{invalid, Result};
use crate::geometry::DunklGeometry;
use crate::specfun::ComplexOrder;

#[derive(Debug, Clone, Serialize)]
pub struct HlsReport {
    pub lambda0: f64,
    /// λ0 - 1 - D/2
    pub expected_slope: f64,
    /// max over consecutive |t| pairs, both signs, all s, of |fitted slope - expected|
    pub max_slope_error: f64,
    /// max over the grid of (|Ǧ_{-λ0+is}| / |Ǧ_{-λ0}|) / e^{π|s|/2}
    pub max_growth_ratio: f64,
    /// max relative spread of |Ǧ| across the sampled y
    pub y_defect: f64,
    /// smallest C with |Ǧ| <= C e^{π|s|/2} |t|^{slope} on the grid
    pub constant: f64,
}

/// Ǧ at time t and point y; the y-geometry is lifted to (t, y) with n = 1.
pub fn hls_kernel(geom: &DunklGeometry, lambda0: f64, s: f64, t: f64, y: &[f64]) -> Result<num_complex::Complex64> {
    let lifted = DunklGeometry::new(1, geom.kappa().to_vec())?;
    let z = ComplexOrder::new(-lambda0, s)?;
    let minus_y: Vec<f64> = y.iter().map(|v| -v).collect();
    paraboloid_symbol_over_gamma(&lifted, z, &[-t], &minus_y)
}

pub fn hls_kernel_check(
    geom: &DunklGeometry,
    lambda0: f64,
    s_values: &[f64],
    t_values: &[f64],
    y_values: &[Vec<f64>],
) -> Result<HlsReport> {
    if !(lambda0 > 1.0) {
        return Err(invalid(format!("lambda0 must exceed 1, got {lambda0}")));
    }
    if t_values.iter().any(|&t| !(t > 0.0)) || y_values.is_empty() {
        return Err(invalid("t values must be positive and at least one y is needed"));
    }
    let slope = lambda0 - 1.0 - 0.5 * geom.y_dimension();
    let origin = vec![0.0; geom.d()];
    let mut report = HlsReport {
        lambda0,
        expected_slope: slope,
        max_slope_error: 0.0,
        max_growth_ratio: 0.0,
        y_defect: 0.0,
        constant: 0.0,
    };
    for sign in [1.0, -1.0] {
        for &s in s_values {
            let growth = (0.5 * std::f64::consts::PI * s.abs()).exp();
            let mut prev: Option<(f64, f64)> = None;
            for &tt in t_values {
                let t = sign * tt;
                let g = hls_kernel(geom, lambda0, s, t, &origin)?.norm();
                let g0 = hls_kernel(geom, lambda0, 0.0, t, &origin)?.norm();
                report.max_growth_ratio = report.max_growth_ratio.max(g / g0 / growth);
                report.constant = report.constant.max(g / (growth * tt.powf(slope)));
                for y in y_values {
                    let gy = hls_kernel(geom, lambda0, s, t, y)?.norm();
                    report.y_defect = report.y_defect.max((gy - g).abs() / g);
                }
                if let Some((lt, lg)) = prev {
                    let fitted = (g.ln() - lg) / (tt.ln() - lt);
                    report.max_slope_error = report.max_slope_error.max((fitted - slope).abs());
                }
                prev = Some((tt.ln(), g.ln()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn slope_growth_and_y_independence() {
        for kappa in [0.0, 0.5, 1.0] {
            let geom = DunklGeometry::new(0, vec![kappa]).unwrap();
            let dd = geom.y_dimension();
            let s: Vec<f64> = (0..13).map(|k| -3.0 + 0.5 * k as f64).collect();
            let t = log_grid(0.01, 100.0, 9);
            let y = vec![vec![0.3], vec![-1.7], vec![4.0]];
            for lambda0 in [0.5 * (dd + 1.0) + 0.1, 0.5 * (dd + 2.0)] {
                let rep = hls_kernel_check(&geom, lambda0, &s, &t, &y).unwrap();
                assert!(rep.max_slope_error < 1e-6, "{rep:?}");
                assert!(rep.max_growth_ratio <= 1.0 + 1e-10, "{rep:?}");
                assert!(rep.y_defect < 1e-12, "{rep:?}");
                assert!(rep.constant.is_finite() && rep.constant > 0.0);
            }
        }
    }

    #[test]
    fn growth_is_attained_on_one_side() {
        // for t < 0 the s-dependence is exactly e^{π s/2}
        let geom = DunklGeometry::new(0, vec![0.5]).unwrap();
        let a = hls_kernel(&geom, 1.8, 2.0, -0.7, &[0.0]).unwrap().norm();
        let b = hls_kernel(&geom, 1.8, 0.0, -0.7, &[0.0]).unwrap().norm();
        assert!((a / b / std::f64::consts::PI.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_lambda() {
        let geom = DunklGeometry::new(0, vec![0.0]).unwrap();
        assert!(hls_kernel_check(&geom, 1.0, &[0.0], &[1.0], &[vec![0.0]]).is_err());
    }
}
