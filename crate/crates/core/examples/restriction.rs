//! Exponent tables, surface sampling, T_S Schatten norms and the duality check.

use dunkl_lab::geometry::DunklGeometry;
use dunkl_lab::grid::{make_grid, GridKind};
use dunkl_lab::restriction::{
    duality_check, exponent_table, sample_surface, schatten_norm, ts_matrix, DualityConfig, QuadraticSurface,
    SurfaceKind,
};
use num_complex::Complex64;

fn main() -> dunkl_lab::Result<()> {
    let g = DunklGeometry::new(1, vec![0.5])?;
    let grid = make_grid(&g, &[4.0, 4.0], &[12, 12], GridKind::GaussHermite)?;
    let w = grid.sample(|v| Complex64::new((-0.5 * (v[0] * v[0] + v[1] * v[1])).exp(), 0.0));
    for kind in [SurfaceKind::Paraboloid, SurfaceKind::Sphere, SurfaceKind::Hyperboloid] {
        let table = exponent_table(kind, &g)?;
        println!("{}: p in {}, r in {}, lambda0 = {}", kind.name(), table.p_restriction, table.r_orthonormal, table.lambda0);
        let sampling = sample_surface(&QuadraticSurface::new(kind, g.clone())?, 24, 6.0)?;
        let t = ts_matrix(&sampling, &grid, Some(&w), Some(&w))?;
        let index = 2.0 * *table.lambda0.numer() as f64 / *table.lambda0.denom() as f64;
        println!("  {} surface points, ||W T W||_S^{index} = {:.6e}", sampling.len(), schatten_norm(&t, index)?);
        let rep = duality_check(&sampling, &grid, &w, DualityConfig { alpha: 2.0, trials: 20, max_family: 8, seed: 1 })?;
        println!("  duality: C = {:.6e}, max ratio {:.4}", rep.schatten_constant, rep.max_ratio);
    }
    Ok(())
}
