//! Closed-form symbols of the sphere, paraboloid and hyperboloid families
//! against direct quadrature, and the boundedness threshold.

use dunkl_lab::closed_forms::{comparison_suite, threshold_suite};
use dunkl_lab::geometry::DunklGeometry;

fn main() -> dunkl_lab::Result<()> {
    for r in comparison_suite(&[0.5])? {
        println!(
            "{:18} z={:5} (xi, zeta)=({:4}, {:4})  closed {:+.6e}  oracle {:+.6e}  rel {:.1e}",
            r.variant, r.z, r.xi, r.zeta, r.closed_form, r.oracle, r.rel_err
        );
    }
    let g = DunklGeometry::new(1, vec![0.5])?;
    for t in threshold_suite(&g)? {
        println!("{:10} offset {:+.2}: sups {:?} growing={}", t.variant, t.offset, t.sups, t.growing());
    }
    Ok(())
}
