//! Closed forms against their quadrature oracles, and the boundedness
//! threshold of the sphere and paraboloid symbols.

use num_complex::Complex64;
use serde::Serialize;

use super::{
    hyperboloid_symbol, oracle, paraboloid_symbol, paraboloid_symbol_over_gamma, positive_definite_symbol,
    sphere_symbol, Normalizer, PositiveQuadratic,
};
use crate::error::Result;
use crate::geometry::DunklGeometry;
use crate::specfun::ComplexOrder;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub variant: &'static str,
    pub n: usize,
    pub d: usize,
    pub kappa: Vec<f64>,
    pub z: f64,
    pub xi: f64,
    pub zeta: f64,
    pub closed_form: Complex64,
    pub oracle: Complex64,
    pub rel_err: f64,
}

const SPHERE_POINTS: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.5), (3.0, 2.0), (0.2, 5.0), (7.0, 1.0)];
const PARABOLOID_POINTS: [(f64, f64); 5] = [(1.5, 0.3), (2.0, -1.0), (3.0, 0.7), (-2.0, 0.5), (-1.7, 2.0)];
const DEFINITE_POINTS: [(f64, f64); 5] = [(0.5, 0.5), (1.0, 0.7), (2.0, 1.0), (0.6, 2.5), (1.2, 1.2)];
const HYPERBOLOID_POINTS: [(f64, f64); 5] = [(2.0, 0.3), (0.2, 2.0), (3.0, 1.0), (0.5, 2.5), (2.5, 0.0)];

fn row(
    variant: &'static str,
    geom: &DunklGeometry,
    z: f64,
    (xi, zeta): (f64, f64),
    closed: Complex64,
    oracle: Complex64,
) -> ComparisonRow {
    ComparisonRow {
        variant,
        n: geom.n(),
        d: geom.d(),
        kappa: geom.kappa().to_vec(),
        z,
        xi,
        zeta,
        closed_form: closed,
        oracle,
        rel_err: (closed - oracle).norm() / oracle.norm(),
    }
}

/// Every (variant, z, geometry) case at five points each, n = d = 1.
pub fn comparison_suite(kappas: &[f64]) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::new();
    for &kappa in kappas {
        let g = DunklGeometry::new(1, vec![kappa])?;
        for z in [0.0, -0.5] {
            let zo = ComplexOrder::real(z)?;
            for p in SPHERE_POINTS {
                let c = sphere_symbol(&g, zo, &[p.0], &[p.1])?;
                rows.push(row("sphere", &g, z, p, c, oracle::sphere(&g, z, p.0, p.1)?));
            }
        }
        let z = -0.5;
        for p in PARABOLOID_POINTS {
            let c = paraboloid_symbol(&g, ComplexOrder::real(z)?, &[p.0], &[p.1])?;
            rows.push(row("paraboloid", &g, z, p, c, oracle::paraboloid(&g, z, p.0, p.1)?));
        }
        if g.n_kappa() <= 3.0 {
            let z = -2.5;
            let form = PositiveQuadratic::standard(1);
            for p in DEFINITE_POINTS {
                let c = positive_definite_symbol(&g, ComplexOrder::real(z)?, &form, &[p.0], &[p.1])?;
                rows.push(row("positive-definite", &g, z, p, c, oracle::positive_definite(&g, z, &form, p.0, p.1)?));
            }
        }
        let z = -0.25;
        for p in HYPERBOLOID_POINTS {
            let c = hyperboloid_symbol(&g, ComplexOrder::real(z)?, &[p.0], &[p.1], Normalizer::Disabled)?;
            rows.push(row("hyperboloid", &g, z, p, c, oracle::hyperboloid(&g, z, p.0, p.1)?));
        }
    }
    Ok(rows)
}

/// Running sup of |symbol| over growing radii at one Re z.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub variant: &'static str,
    pub kappa: Vec<f64>,
    pub n_kappa: f64,
    /// Re z - (-(N+1)/2)
    pub offset: f64,
    pub radii: Vec<f64>,
    pub sups: Vec<f64>,
    /// sup at the largest radius over sup at the smallest
    pub growth: f64,
}

pub const THRESHOLD_OFFSET: f64 = 0.05;
/// Relative growth above which a running sup counts as radius-growing.
pub const GROWTH_TOLERANCE: f64 = 1e-3;

impl ThresholdRow {
    pub fn growing(&self) -> bool {
        self.growth > 1.0 + GROWTH_TOLERANCE
    }
}

/// Sphere: sup over s ∈ [0, R] along a fixed direction for R ∈ {50, 100, 200}
/// at Re z = -(N+1)/2 ± 0.05. Paraboloid: sup over ξ_n ∈ [1/R, R] at
/// Re z = -(N+1)/2 and ± 0.05.
pub fn threshold_suite(geom: &DunklGeometry) -> Result<Vec<ThresholdRow>> {
    let critical = -0.5 * (geom.n_kappa() + 1.0);
    let mut rows = Vec::new();
    let (c, s) = (0.7f64.cos(), 0.7f64.sin());
    let radii = [50.0, 100.0, 200.0];
    for offset in [THRESHOLD_OFFSET, -THRESHOLD_OFFSET] {
        let z = ComplexOrder::real(critical + offset)?;
        let mut sup: f64 = 0.0;
        let mut sups = Vec::new();
        let mut r = 0.0;
        for &radius in &radii {
            while r <= radius {
                let xi = vec![r * c / (geom.n() as f64).sqrt(); geom.n()];
                let zeta = vec![r * s / (geom.d() as f64).sqrt(); geom.d()];
                sup = sup.max(sphere_symbol(geom, z, &xi, &zeta)?.norm());
                r += 0.02;
            }
            sups.push(sup);
        }
        rows.push(threshold_row("sphere", geom, offset, &radii, sups));
    }
    if geom.n() > 0 {
        let radii = [10.0f64, 100.0, 1000.0];
        for offset in [0.0, THRESHOLD_OFFSET, -THRESHOLD_OFFSET] {
            let z = ComplexOrder::new(critical + offset, 0.4)?;
            let mut sups = Vec::new();
            for &radius in &radii {
                let mut sup: f64 = 0.0;
                for k in 0..=400 {
                    let xn = radius.powf(-1.0 + k as f64 / 200.0);
                    for sign in [1.0, -1.0] {
                        let mut xi = vec![0.3; geom.n()];
                        xi[geom.n() - 1] = sign * xn;
                        let zeta = vec![0.5; geom.d()];
                        sup = sup.max(paraboloid_symbol_over_gamma(geom, z, &xi, &zeta)?.norm());
                    }
                }
                sups.push(sup);
            }
            rows.push(threshold_row("paraboloid", geom, offset, &radii, sups));
        }
    }
    Ok(rows)
}

fn threshold_row(variant: &'static str, geom: &DunklGeometry, offset: f64, radii: &[f64], sups: Vec<f64>) -> ThresholdRow {
    ThresholdRow {
        variant,
        kappa: geom.kappa().to_vec(),
        n_kappa: geom.n_kappa(),
        offset,
        radii: radii.to_vec(),
        growth: sups[sups.len() - 1] / sups[0],
        sups,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_signatures() {
        for (n, kappa) in [(1, vec![0.0]), (1, vec![0.5]), (2, vec![0.5])] {
            let g = DunklGeometry::new(n, kappa).unwrap();
            for row in threshold_suite(&g).unwrap() {
                let expect_growth = match row.variant {
                    "sphere" => row.offset < 0.0,
                    _ => row.offset != 0.0,
                };
                assert_eq!(row.growing(), expect_growth, "{row:?}");
                assert!(row.sups.iter().all(|s| s.is_finite()));
            }
        }
    }
}
