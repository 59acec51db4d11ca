//! Spectral propagators on y-grids and generalized Hermite families.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::family::OrthonormalFamily;
use crate::grid::{SampledField, TensorGrid};
use crate::transforms::TransformPlan;

/// Largest family [`generalized_hermite_family`] will build.
pub const MAX_HERMITE_FAMILY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// e^{it Δ}: multiplier e^{-it|ζ|^2}
    Schrodinger,
    /// e^{it sqrt(1-Δ)}: multiplier e^{it sqrt(1+|ζ|^2)}
    KleinGordon,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Schrodinger => "schrodinger",
            Model::KleinGordon => "klein-gordon",
        }
    }

    /// Phase of the multiplier at time t and frequency with |ζ|^2 = zeta2.
    pub fn phase(self, t: f64, zeta2: f64) -> f64 {
        match self {
            Model::Schrodinger => -t * zeta2,
            Model::KleinGordon => t * (1.0 + zeta2).sqrt(),
        }
    }

    pub fn multiplier(self, t: f64, zeta2: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.phase(t, zeta2))
    }
}

pub(crate) fn require_space_grid(grid: &TensorGrid) -> Result<()> {
    if grid.geometry().n() != 0 {
        return Err(invalid("propagators act on grids over R^d only (n = 0)"));
    }
    Ok(())
}

/// Evolves φ on the plan's input grid; the spectrum lives on the plan's output grid.
pub fn propagate(model: Model, plan: &TransformPlan, phi: &SampledField, times: &[f64]) -> Result<Vec<SampledField>> {
    require_space_grid(plan.input_grid())?;
    let spectrum = plan.forward(phi)?;
    let freq = plan.output_grid();
    let zeta2: Vec<f64> = (0..freq.len()).map(|k| freq.point(k).iter().map(|z| z * z).sum()).collect();
    times
        .par_iter()
        .map(|&t| {
            if t == 0.0 {
                return Ok(phi.clone());
            }
            let mut s = spectrum.clone();
            for (v, &z2) in s.values_mut().iter_mut().zip(&zeta2) {
                *v *= model.multiplier(t, z2);
            }
            plan.inverse(&s)
        })
        .collect()
}

/// e^{itΔ}φ for each t, on φ's own grid.
pub fn schrodinger_propagate(phi: &SampledField, times: &[f64]) -> Result<Vec<SampledField>> {
    let plan = TransformPlan::new(Arc::clone(phi.grid()))?;
    propagate(Model::Schrodinger, &plan, phi, times)
}

/// e^{it sqrt(1-Δ)}φ for each t, on φ's own grid.
pub fn klein_gordon_propagate(phi: &SampledField, times: &[f64]) -> Result<Vec<SampledField>> {
    let plan = TransformPlan::new(Arc::clone(phi.grid()))?;
    propagate(Model::KleinGordon, &plan, phi, times)
}

/// Multi-indices of R^d ordered by total degree, lexicographically within a degree.
fn graded_indices(d: usize, count: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(count);
    let mut degree = 0u32;
    while out.len() < count {
        let mut level = Vec::new();
        let mut current = vec![0u32; d];
        fill_level(&mut current, 0, degree, &mut level);
        out.extend(level.into_iter().take(count - out.len()));
        degree += 1;
    }
    out
}

fn fill_level(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.to_vec());
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        fill_level(current, pos + 1, remaining - k, out);
    }
}

/// Gram–Schmidt (two passes) of y^α e^{-|y|^2/2} in L^2(h^2), degree-graded.
pub fn generalized_hermite_family(grid: &Arc<TensorGrid>, size: usize) -> Result<OrthonormalFamily> {
    require_space_grid(grid)?;
    if size == 0 || size > MAX_HERMITE_FAMILY {
        return Err(invalid(format!("family size must lie in 1..={MAX_HERMITE_FAMILY}, got {size}")));
    }
    let weights = grid.weights();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).zip(&weights).map(|((x, y), &w)| x * y.conj() * w).sum()
    };
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(size);
    for alpha in graded_indices(grid.geometry().d(), size) {
        let mut v: Vec<Complex64> = grid
            .sample(|y| {
                let r2: f64 = y.iter().map(|c| c * c).sum();
                let mono: f64 = y.iter().zip(&alpha).map(|(c, &a)| c.powi(a as i32)).product();
                Complex64::new(mono * (-0.5 * r2).exp(), 0.0)
            })
            .into_values();
        let start = dot(&v, &v).re.sqrt();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&v, q);
                v.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = dot(&v, &v).re.sqrt();
        if !(norm > 1e-10 * start) {
            return Err(Error::Budget(format!(
                "grid cannot resolve {size} Hermite functions: member {} has condition estimate {:.3e}",
                basis.len(),
                start / norm
            )));
        }
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    OrthonormalFamily::new(basis, weights)
}

/// Members of a family as fields on `grid`.
pub fn family_fields(grid: &Arc<TensorGrid>, family: &OrthonormalFamily) -> Result<Vec<SampledField>> {
    family.members().iter().map(|m| SampledField::new(Arc::clone(grid), m.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DunklGeometry;
    use crate::grid::Axis;

    // Klein-Gordon states keep exponential tails e^{-|y|}, hence the wide grid
    fn grid(kappa: f64) -> Arc<TensorGrid> {
        let g = DunklGeometry::new(0, vec![kappa]).unwrap();
        Arc::new(TensorGrid::new(g, vec![Axis::composite_order(24.0, kappa, 0.5, 16).unwrap()]).unwrap())
    }

    fn gaussian(grid: &Arc<TensorGrid>) -> SampledField {
        grid.sample(|y| Complex64::new((-0.5 * y[0] * y[0]).exp(), 0.0))
    }

    #[test]
    fn time_zero_is_identity() {
        let g = grid(0.5);
        let phi = gaussian(&g);
        let out = schrodinger_propagate(&phi, &[0.0]).unwrap();
        assert_eq!(out[0].values(), phi.values());
        let out = klein_gordon_propagate(&phi, &[0.0]).unwrap();
        assert_eq!(out[0].values(), phi.values());
    }

    #[test]
    fn classical_spreading_gaussian() {
        let g = grid(0.0);
        let phi = gaussian(&g);
        let times = [0.1, 0.5, 1.0];
        let out = schrodinger_propagate(&phi, &times).unwrap();
        for (u, &t) in out.iter().zip(&times) {
            let a = Complex64::new(1.0, 2.0 * t);
            for (k, v) in u.values().iter().enumerate() {
                let y = g.point(k)[0];
                let exact = a.sqrt().inv() * (-(y * y) / (2.0 * a)).exp();
                assert!((v - exact).norm() < 1e-6, "t={t} y={y}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn unitarity_and_group_law() {
        for kappa in [0.0, 0.5, 1.0] {
            let g = grid(kappa);
            let phi = g.sample(|y| Complex64::new(1.0 + y[0], 0.3 * y[0]) * (-0.5 * y[0] * y[0]).exp());
            let n0 = phi.lp_norm(2.0).unwrap();
            for model in [Model::Schrodinger, Model::KleinGordon] {
                let plan = TransformPlan::new(Arc::clone(&g)).unwrap();
                let out = propagate(model, &plan, &phi, &[0.2, 0.5]).unwrap();
                for u in &out {
                    let drift = (u.lp_norm(2.0).unwrap() - n0).abs();
                    assert!(drift <= 1e-8, "{model:?} {kappa}: {drift}");
                }
                let twice = propagate(model, &plan, &out[0], &[0.3]).unwrap();
                let err = twice[0].values().iter().zip(out[1].values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(err <= 1e-8, "{model:?} {kappa}: {err}");
            }
        }
    }

    fn classical_hermite(k: usize, y: f64) -> f64 {
        // orthonormal Hermite functions by the three-term recurrence
        let mut h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * y * y).exp();
        if k == 0 {
            return h0;
        }
        let mut h1 = 2f64.sqrt() * y * h0;
        for j in 1..k {
            let next = (2.0 / (j as f64 + 1.0)).sqrt() * y * h1 - (j as f64 / (j as f64 + 1.0)).sqrt() * h0;
            h0 = h1;
            h1 = next;
        }
        h1
    }

    #[test]
    fn hermite_family_matches_classical_functions() {
        let g = grid(0.0);
        let fam = generalized_hermite_family(&g, 12).unwrap();
        assert!(fam.gram_defect() < 1e-8);
        for (k, m) in fam.members().iter().enumerate() {
            let mid = g.len() / 2 + 3;
            let y0 = g.point(mid)[0];
            let sign = (m[mid].re * classical_hermite(k, y0)).signum();
            for (j, v) in m.iter().enumerate() {
                let y = g.point(j)[0];
                assert!((v.re - sign * classical_hermite(k, y)).abs() < 1e-6, "k={k} y={y}");
            }
        }
    }

    #[test]
    fn hermite_family_with_weight_and_evolution() {
        for kappa in [0.5, 1.0] {
            let g = grid(kappa);
            let fam = generalized_hermite_family(&g, 16).unwrap();
            assert!(fam.gram_defect() < 1e-8);
            let fields = family_fields(&g, &fam).unwrap();
            let evolved: Vec<Vec<Complex64>> = fields
                .iter()
                .map(|f| schrodinger_propagate(f, &[0.3]).unwrap().remove(0).into_values())
                .collect();
            let moved = OrthonormalFamily::new(evolved, g.weights()).unwrap();
            assert!(moved.gram_defect() < 1e-7, "kappa {kappa}: {}", moved.gram_defect());
        }
    }

    #[test]
    fn multi_dimensional_indices_are_graded() {
        let idx = graded_indices(2, 6);
        assert_eq!(idx, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert!(generalized_hermite_family(&grid(0.0), 65).is_err());
    }
}
