//! Geometry constants and the Dunkl kernel on Z2^d.

use dunkl_lab::geometry::DunklGeometry;

fn main() -> dunkl_lab::Result<()> {
    let g = DunklGeometry::new(1, vec![0.5, 1.0])?;
    println!("n = {}, d = {}, gamma = {}, N = {}", g.n(), g.d(), g.gamma_kappa(), g.n_kappa());
    println!("c_kappa = {:.16}, weighted sphere area = {:.16}", g.c_kappa(), g.sigma_sphere());
    let zeta = [1.3, -0.4];
    for y in [[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]] {
        let e = g.kernel_imag(1.0, &zeta, &y)?;
        println!("E(i zeta, {y:?}) = {e:.12}  |E| = {:.15}", e.norm());
    }
    Ok(())
}
