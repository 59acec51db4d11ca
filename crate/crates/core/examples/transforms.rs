//! Fourier-Dunkl transform: Gaussian eigenfunction, Plancherel and inversion.

use std::sync::Arc;

use dunkl_lab::cli::suites::{gaussian_eigen_error, transform_battery};
use dunkl_lab::geometry::DunklGeometry;
use dunkl_lab::grid::{make_grid, GridKind};

fn main() -> dunkl_lab::Result<()> {
    for (n, kappa) in [(0, vec![0.5]), (1, vec![1.0]), (1, vec![0.0, 0.5])] {
        let g = DunklGeometry::new(n, kappa)?;
        let dim = g.dim();
        let grid = make_grid(&g, &vec![8.5; dim], &vec![140; dim], GridKind::GaussHermite)?;
        let rows = transform_battery(&Arc::clone(&grid))?;
        let planch = rows.iter().map(|r| r.plancherel_defect).fold(0.0, f64::max);
        let round = rows.iter().map(|r| r.roundtrip_error).fold(0.0, f64::max);
        println!(
            "n={} kappa={:?}: Plancherel {planch:.1e}, round trip {round:.1e}, Gaussian {:.1e}",
            g.n(),
            g.kappa(),
            gaussian_eigen_error(&grid, 4.0)?
        );
    }
    Ok(())
}
