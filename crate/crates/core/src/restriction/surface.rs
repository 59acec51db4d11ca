//! The three quadratic surfaces and their quadrature samplings.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::geometry::DunklGeometry;
use crate::quadrature::{gauss_gegenbauer, symmetric_weighted, Rule};

/// Default truncation radius for the non-compact surfaces.
pub const DEFAULT_TRUNCATION: f64 = 6.0;

/// Gauss points per panel of the parameter rules.
const PANEL_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    /// x_n = |x'|^2 - |y|^2
    Paraboloid,
    /// |x|^2 + |y|^2 = 1
    Sphere,
    /// |x|^2 - |y|^2 = 1, two sheets
    Hyperboloid,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Paraboloid => "paraboloid",
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Hyperboloid => "hyperboloid",
        }
    }
}

/// A level set {P(xi, zeta) = r} in R^n x R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSurface {
    kind: SurfaceKind,
    geom: DunklGeometry,
}

impl QuadraticSurface {
    pub fn new(kind: SurfaceKind, geom: DunklGeometry) -> Result<Self> {
        if kind != SurfaceKind::Sphere && geom.n() == 0 {
            return Err(invalid(format!("the {} needs n >= 1", kind.name())));
        }
        Ok(Self { kind, geom })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn geometry(&self) -> &DunklGeometry {
        &self.geom
    }

    /// The defining polynomial P at a point (xi, zeta) given as one slice.
    pub fn polynomial(&self, point: &[f64]) -> f64 {
        let n = self.geom.n();
        let (xi, zeta) = point.split_at(n);
        let y2: f64 = zeta.iter().map(|v| v * v).sum();
        match self.kind {
            SurfaceKind::Paraboloid => {
                let x2: f64 = xi[..n - 1].iter().map(|v| v * v).sum();
                xi[n - 1] - x2 + y2
            }
            SurfaceKind::Sphere => xi.iter().map(|v| v * v).sum::<f64>() + y2,
            SurfaceKind::Hyperboloid => xi.iter().map(|v| v * v).sum::<f64>() - y2,
        }
    }

    pub fn level(&self) -> f64 {
        match self.kind {
            SurfaceKind::Paraboloid => 0.0,
            SurfaceKind::Sphere | SurfaceKind::Hyperboloid => 1.0,
        }
    }
}

/// How the sample points were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// x_n solved from the other coordinates; |dP/dx_n| = 1.
    Graph,
    /// Hyperspherical angles on the unit sphere, surface measure dσ.
    Polar,
    /// |x| = sqrt(1 + |y|^2) over y with x/|x| on the unit sphere of R^n;
    /// the measure divides by |∇_x P| = 2|x| (dζ / (2 sqrt(1+|ζ|^2)) per sheet for n = 1).
    TwoSheet,
}

/// Points on a surface with positive weights that include h^2(zeta).
#[derive(Debug, Clone)]
pub struct SurfaceSampling {
    surface: QuadraticSurface,
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
    chart: Chart,
    truncation: Option<f64>,
}

impl SurfaceSampling {
    pub fn surface(&self) -> &QuadraticSurface {
        &self.surface
    }

    /// Points (xi, zeta) concatenated, xi first.
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Box half-width in the graph parameters; `None` for the sphere.
    pub fn truncation(&self) -> Option<f64> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        crate::output::pairwise_sum(&self.weights)
    }

    /// max |P - r| over the sample.
    pub fn max_residual(&self) -> f64 {
        let r = self.surface.level();
        self.points.iter().map(|p| (self.surface.polynomial(p) - r).abs()).fold(0.0, f64::max)
    }

    /// Restricts a function of (xi, zeta) to the sample points.
    pub fn evaluate<T>(&self, f: impl Fn(&[f64]) -> T) -> Vec<T> {
        self.points.iter().map(|p| f(p)).collect()
    }
}

/// Rule for ∫_{-T}^{T} g(v) |v|^{2 kappa} dv with about `resolution` nodes.
fn parameter_rule(kappa: f64, truncation: f64, resolution: usize) -> Rule {
    let panels = resolution.div_ceil(2 * PANEL_ORDER).max(1);
    symmetric_weighted(truncation, kappa, truncation / panels as f64, PANEL_ORDER)
}

/// Tensor product of one-dimensional rules: (coordinates, weight) pairs.
fn tensor(rules: &[Rule]) -> Vec<(Vec<f64>, f64)> {
    let mut out = vec![(Vec::new(), 1.0)];
    for rule in rules {
        let mut next = Vec::with_capacity(out.len() * rule.len());
        for (p, w) in &out {
            for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
                let mut q = p.clone();
                q.push(x);
                next.push((q, w * wx));
            }
        }
        out = next;
    }
    out
}

/// Quadrature for the standard surface measure of the unit sphere in R^m:
/// equispaced on circles, Gauss–Gegenbauer in each polar angle above that.
fn unit_sphere_rule(m: usize, resolution: usize) -> Vec<(Vec<f64>, f64)> {
    match m {
        0 => Vec::new(),
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => {
            let h = 2.0 * PI / resolution as f64;
            (0..resolution)
                .map(|j| {
                    let (s, c) = (j as f64 * h).sin_cos();
                    (vec![c, s], h)
                })
                .collect()
        }
        _ => {
            let polar = gauss_gegenbauer(resolution, (m as f64 - 3.0) / 2.0);
            let lower = unit_sphere_rule(m - 1, resolution);
            let mut out = Vec::with_capacity(polar.len() * lower.len());
            for (&t, &wt) in polar.nodes.iter().zip(&polar.weights) {
                let s = (1.0 - t * t).sqrt();
                for (v, wv) in &lower {
                    let mut p = Vec::with_capacity(m);
                    p.push(t);
                    p.extend(v.iter().map(|c| s * c));
                    out.push((p, wt * wv));
                }
            }
            out
        }
    }
}

/// Samples a surface. `resolution` is the node count per parameter axis and
/// `truncation` the half-width of the parameter box (ignored for the sphere).
pub fn sample_surface(surface: &QuadraticSurface, resolution: usize, truncation: f64) -> Result<SurfaceSampling> {
    if resolution < 8 {
        return Err(invalid(format!("resolution must be at least 8, got {resolution}")));
    }
    if !(truncation > 0.0) || !truncation.is_finite() {
        return Err(invalid(format!("truncation must be positive, got {truncation}")));
    }
    let geom = surface.geometry();
    let n = geom.n();
    let y_rules: Vec<Rule> = geom.kappa().iter().map(|&k| parameter_rule(k, truncation, resolution)).collect();
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let (chart, trunc) = match surface.kind() {
        SurfaceKind::Paraboloid => {
            let mut rules: Vec<Rule> = (1..n).map(|_| parameter_rule(0.0, truncation, resolution)).collect();
            rules.extend(y_rules);
            for (params, w) in tensor(&rules) {
                let (xp, y) = params.split_at(n - 1);
                let xn = xp.iter().map(|v| v * v).sum::<f64>() - y.iter().map(|v| v * v).sum::<f64>();
                let mut p = xp.to_vec();
                p.push(xn);
                p.extend_from_slice(y);
                points.push(p);
                weights.push(w);
            }
            (Chart::Graph, Some(truncation))
        }
        SurfaceKind::Sphere => {
            for (p, w) in unit_sphere_rule(geom.dim(), resolution) {
                let h2 = geom.weight_h2(&p[n..])?;
                points.push(p);
                weights.push(w * h2);
            }
            (Chart::Polar, None)
        }
        SurfaceKind::Hyperboloid => {
            let directions = unit_sphere_rule(n, resolution);
            for (y, wy) in tensor(&y_rules) {
                let rho2 = 1.0 + y.iter().map(|v| v * v).sum::<f64>();
                let rho = rho2.sqrt();
                for (theta, wt) in &directions {
                    let mut p: Vec<f64> = theta.iter().map(|c| rho * c).collect();
                    p.extend_from_slice(&y);
                    points.push(p);
                    weights.push(wy * wt * rho.powi(n as i32 - 2) / 2.0);
                }
            }
            (Chart::TwoSheet, Some(truncation))
        }
    };
    Ok(SurfaceSampling { surface: surface.clone(), points, weights, chart, truncation: trunc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_real;

    fn surf(kind: SurfaceKind, n: usize, kappa: Vec<f64>) -> QuadraticSurface {
        QuadraticSurface::new(kind, DunklGeometry::new(n, kappa).unwrap()).unwrap()
    }

    #[test]
    fn paraboloid_and_hyperboloid_need_x_variables() {
        let g = DunklGeometry::new(0, vec![0.5]).unwrap();
        assert!(QuadraticSurface::new(SurfaceKind::Paraboloid, g.clone()).is_err());
        assert!(QuadraticSurface::new(SurfaceKind::Hyperboloid, g.clone()).is_err());
        assert!(QuadraticSurface::new(SurfaceKind::Sphere, g).is_ok());
    }

    #[test]
    fn residuals_vanish() {
        for (kind, n, kappa) in [
            (SurfaceKind::Paraboloid, 1, vec![0.5]),
            (SurfaceKind::Paraboloid, 2, vec![1.0]),
            (SurfaceKind::Sphere, 1, vec![0.5]),
            (SurfaceKind::Sphere, 2, vec![0.0, 1.0]),
            (SurfaceKind::Hyperboloid, 1, vec![0.5]),
            (SurfaceKind::Hyperboloid, 2, vec![0.0]),
        ] {
            let s = sample_surface(&surf(kind, n, kappa), 16, DEFAULT_TRUNCATION).unwrap();
            assert!(s.max_residual() <= 1e-12, "{kind:?} residual {}", s.max_residual());
            assert!(s.weights().iter().all(|&w| w >= 0.0));
        }
    }

    #[test]
    fn circle_has_length_two_pi() {
        let s = sample_surface(&surf(SurfaceKind::Sphere, 1, vec![0.0]), 40, 1.0).unwrap();
        assert_eq!(s.len(), 40);
        assert!((s.total_mass() - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn sphere_masses_match_weighted_area() {
        // ∫_{S^{m-1}} h^2 dσ = 2 ∏Γ(κ_j + 1/2) / Γ(N/2) with κ_j = 0 on x-axes
        for (n, kappa) in [(1, vec![0.0, 0.0]), (1, vec![1.0]), (2, vec![2.0]), (0, vec![1.0, 1.0])] {
            let g = DunklGeometry::new(n, kappa.clone()).unwrap();
            let s = sample_surface(&QuadraticSurface::new(SurfaceKind::Sphere, g.clone()).unwrap(), 24, 1.0).unwrap();
            let num: f64 = gamma_real(0.5).unwrap().powi(n as i32)
                * kappa.iter().map(|&k| gamma_real(k + 0.5).unwrap()).product::<f64>();
            let exact = 2.0 * num / gamma_real(g.n_kappa() / 2.0).unwrap();
            assert!((s.total_mass() - exact).abs() < 1e-10 * exact, "{n} {kappa:?}");
        }
    }

    #[test]
    fn paraboloid_graph_has_unit_jacobian() {
        let s = sample_surface(&surf(SurfaceKind::Paraboloid, 1, vec![0.0]), 32, 2.0).unwrap();
        assert_eq!(s.chart(), Chart::Graph);
        // plain Lebesgue measure in zeta on [-2, 2]
        assert!((s.total_mass() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn klein_gordon_chart_weights() {
        let s = sample_surface(&surf(SurfaceKind::Hyperboloid, 1, vec![0.0]), 128, 3.0).unwrap();
        assert_eq!(s.chart(), Chart::TwoSheet);
        let upper: f64 = s.points().iter().zip(s.weights()).filter(|(p, _)| p[0] > 0.0).map(|(_, w)| w).sum();
        // ∫_{-3}^{3} dζ / (2 sqrt(1 + ζ^2)) = asinh(3)
        assert!((upper - 3f64.asinh()).abs() < 1e-11);
        assert!((s.total_mass() - 2.0 * 3f64.asinh()).abs() < 2e-11);
        for (p, w) in s.points().iter().zip(s.weights()).take(5) {
            assert!(p[0].abs() > 0.0 && *w > 0.0);
        }
    }
}
