//! Extension operators on the paraboloid and the upper hyperboloid sheet
//! reproduce the propagators at n = 1.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::evolution::{propagate, require_space_grid, Model};
use crate::error::{invalid, Result};
use crate::geometry::DunklGeometry;
use crate::grid::{Axis, SampledField, TensorGrid};
use crate::restriction::{
    extension_operator, sample_surface, transform_at_points, QuadraticSurface, SurfaceKind, SurfaceSampling,
};
use crate::transforms::TransformPlan;

/// Surface for the model over (t, y) space: ω = -|ζ|^2 or the hyperboloid ω^2 - |ζ|^2 = 1.
pub fn model_surface(model: Model, y_geom: &DunklGeometry) -> Result<QuadraticSurface> {
    let lifted = DunklGeometry::new(1, y_geom.kappa().to_vec())?;
    let kind = match model {
        Model::Schrodinger => SurfaceKind::Paraboloid,
        Model::KleinGordon => SurfaceKind::Hyperboloid,
    };
    QuadraticSurface::new(kind, lifted)
}

/// Surface data f with E_S f = (2π)^{-1/2} U(t)φ: F φ(ζ) on the paraboloid,
/// 2·1_{ω>0} sqrt(1+|ζ|^2) Fφ(ζ) on the hyperboloid.
pub fn surface_data(model: Model, sampling: &SurfaceSampling, phi: &SampledField) -> Result<Vec<Complex64>> {
    require_space_grid(phi.grid())?;
    let zetas: Vec<Vec<f64>> = sampling.points().iter().map(|p| p[1..].to_vec()).collect();
    let spectrum = transform_at_points(phi, &zetas)?;
    Ok(match model {
        Model::Schrodinger => spectrum,
        Model::KleinGordon => sampling
            .points()
            .iter()
            .zip(spectrum)
            .map(|(p, f)| {
                if p[0] > 0.0 {
                    let z2: f64 = p[1..].iter().map(|v| v * v).sum();
                    f * (2.0 * (1.0 + z2).sqrt())
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub model: Model,
    pub kappa: Vec<f64>,
    pub times: Vec<f64>,
    /// max |E_S f - (2π)^{-1/2} U(t)φ| over the (t, y) grid
    pub max_abs_error: f64,
    /// same, divided by max |(2π)^{-1/2} U(t)φ|
    pub max_rel_error: f64,
}

/// Compares the extension of the surface data with the spectral propagator on
/// φ's grid at the given times.
pub fn extension_identity(
    model: Model,
    phi: &SampledField,
    times: &[f64],
    resolution: usize,
    truncation: f64,
) -> Result<IdentityReport> {
    if times.is_empty() {
        return Err(invalid("at least one time is needed"));
    }
    let y_grid = phi.grid();
    let y_geom = y_grid.geometry();
    let surface = model_surface(model, y_geom)?;
    let sampling = sample_surface(&surface, resolution, truncation)?;
    let data = surface_data(model, &sampling, phi)?;
    let mut axes = vec![Axis::custom(times.to_vec(), vec![1.0; times.len()], 0.0)?];
    axes.extend(y_grid.axes().iter().cloned());
    let target = Arc::new(TensorGrid::new(surface.geometry().clone(), axes)?);
    let extended = extension_operator(&sampling, &data, &target)?;
    let plan = TransformPlan::new(Arc::clone(y_grid))?;
    let evolved = propagate(model, &plan, phi, times)?;
    let scale = (2.0 * std::f64::consts::PI).sqrt().recip();
    let expected: Vec<Complex64> = evolved.iter().flat_map(|u| u.values().iter().map(move |v| v * scale)).collect();
    let peak = expected.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let err = extended.values().iter().zip(&expected).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(IdentityReport {
        model,
        kappa: y_geom.kappa().to_vec(),
        times: times.to_vec(),
        max_abs_error: err,
        max_rel_error: err / peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(kappa: f64) -> SampledField {
        let g = DunklGeometry::new(0, vec![kappa]).unwrap();
        let grid = Arc::new(TensorGrid::new(g, vec![Axis::composite_order(10.0, kappa, 0.5, 16).unwrap()]).unwrap());
        grid.sample(|y| Complex64::new(1.0 + 0.5 * y[0], 0.2 * y[0]) * (-0.5 * y[0] * y[0]).exp())
    }

    #[test]
    fn paraboloid_reproduces_schrodinger() {
        for kappa in [0.0, 0.5] {
            let rep = extension_identity(Model::Schrodinger, &phi(kappa), &[-0.7, 0.0, 0.4, 1.0], 384, 9.0).unwrap();
            assert!(rep.max_abs_error < 1e-6, "{rep:?}");
        }
    }

    #[test]
    fn hyperboloid_reproduces_klein_gordon() {
        for kappa in [0.0, 0.5] {
            let rep = extension_identity(Model::KleinGordon, &phi(kappa), &[-0.7, 0.0, 0.4, 1.0], 384, 9.0).unwrap();
            assert!(rep.max_abs_error < 1e-6, "{rep:?}");
        }
    }
}
