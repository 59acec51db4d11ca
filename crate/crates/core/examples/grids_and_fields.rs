//! Weighted grids, sampled fields, mixed norms and binary dumps.

use dunkl_lab::geometry::DunklGeometry;
use dunkl_lab::grid::{make_grid, GridKind, MixedNormSpec, SampledField};
use num_complex::Complex64;

fn main() -> dunkl_lab::Result<()> {
    let g = DunklGeometry::new(1, vec![0.5])?;
    let grid = make_grid(&g, &[8.0, 8.0], &[96, 96], GridKind::GaussHermite)?;
    println!("{} points, shape {:?}", grid.len(), grid.shape());
    let f = grid.sample(|v| Complex64::new((-0.5 * (v[0] * v[0] + v[1] * v[1])).exp(), 0.0));
    // ∫ e^{-|v|^2} |y| dx dy = sqrt(pi)
    println!("||f||_2^2 = {:.15} (sqrt(pi) = {:.15})", f.lp_norm(2.0)?.powi(2), std::f64::consts::PI.sqrt());
    let spec = MixedNormSpec::time_space(2, 3.0, 2.0);
    println!("L^3_x L^2_y norm = {:.15}", f.mixed_norm(&spec)?);
    let path = std::env::temp_dir().join("dunkl-lab-field.bin");
    f.write_binary(&path)?;
    let back = SampledField::read_binary(&path)?;
    println!("binary round trip exact: {}", back.values() == f.values());
    Ok(())
}
