//! Extension and restriction by direct kernel summation, the operator
//! T_S = E_S E_S* as a dense matrix, Schatten norms and the duality check.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::surface::SurfaceSampling;
use crate::error::{invalid, Error, Result};
use crate::family::{coefficient_norm, OrthonormalFamily};
use crate::geometry::{c_kappa_axis, kernel_1d_imag};
use crate::grid::{SampledField, TensorGrid};
use crate::output::pairwise_sum;
use crate::transforms::TransformPlan;

/// Default cap on the entries of a dense matrix.
pub const DEFAULT_MATRIX_BUDGET: usize = 4096 * 4096;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// c_kappa (2 pi)^{n/2}, the product of the per-axis constants.
fn normalization(grid: &TensorGrid) -> f64 {
    grid.axes().iter().map(|a| c_kappa_axis(a.kappa())).product()
}

/// Per-axis kernel rows e_kappa(i s p_a v) over the nodes v of each grid axis.
fn point_tables(grid: &TensorGrid, point: &[f64], sign: f64) -> Vec<Vec<Complex64>> {
    grid.axes()
        .iter()
        .zip(point)
        .map(|(ax, &p)| ax.nodes().iter().map(|&v| kernel_1d_imag(ax.kappa(), sign * p * v)).collect())
        .collect()
}

fn check_point_dim(grid: &TensorGrid, points: &[Vec<f64>]) -> Result<()> {
    let dim = grid.axes().len();
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(Error::GridMismatch(format!("point of dimension {} on a {dim}-dimensional grid", p.len()))),
        None => Ok(()),
    }
}

/// out += scale * (v_0 ⊗ v_1 ⊗ ...), row-major.
fn accumulate_outer(out: &mut [Complex64], scale: Complex64, vecs: &[Vec<Complex64>]) {
    match vecs {
        [] => out[0] += scale,
        [last] => {
            for (o, v) in out.iter_mut().zip(last) {
                *o += scale * v;
            }
        }
        [first, rest @ ..] => {
            let stride = out.len() / first.len();
            for (block, v) in out.chunks_mut(stride).zip(first) {
                accumulate_outer(block, scale * v, rest);
            }
        }
    }
}

/// Σ values[i_0, i_1, ...] v_0[i_0] v_1[i_1] ...
fn contract_outer(values: &[Complex64], vecs: &[Vec<Complex64>]) -> Complex64 {
    match vecs {
        [] => values[0],
        [last] => values.iter().zip(last).map(|(a, b)| a * b).sum(),
        [first, rest @ ..] => {
            let stride = values.len() / first.len();
            values.chunks(stride).zip(first).map(|(block, v)| v * contract_outer(block, rest)).sum()
        }
    }
}

/// Transform of a grid field evaluated at arbitrary points:
/// (1/(c_kappa (2 pi)^{n/2})) Σ f w E(-i p, (x, y)).
pub fn transform_at_points(f: &SampledField, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let grid = f.grid();
    check_point_dim(grid, points)?;
    let norm = normalization(grid);
    let fw: Vec<Complex64> = f.values().iter().zip(grid.weights()).map(|(v, w)| v * w).collect();
    Ok(points
        .par_iter()
        .map(|p| contract_outer(&fw, &point_tables(grid, p, -1.0)) / norm)
        .collect())
}

/// Synthesis from point masses: (1/(c_kappa (2 pi)^{n/2})) Σ_k c_k E(i p_k, (x, y))
/// at every grid point.
pub fn synthesize_on_grid(grid: &Arc<TensorGrid>, points: &[Vec<f64>], coefficients: &[Complex64]) -> Result<SampledField> {
    check_point_dim(grid, points)?;
    if points.len() != coefficients.len() {
        return Err(Error::GridMismatch(format!("{} coefficients for {} points", coefficients.len(), points.len())));
    }
    let norm = normalization(grid);
    let tables: Vec<Vec<Vec<Complex64>>> = points.par_iter().map(|p| point_tables(grid, p, 1.0)).collect();
    let mut out = vec![ZERO; grid.len()];
    let lead = grid.axes()[0].len();
    let stride = grid.len() / lead;
    out.par_chunks_mut(stride).enumerate().for_each(|(i0, block)| {
        for (t, &c) in tables.iter().zip(coefficients) {
            if c != ZERO {
                accumulate_outer(block, c * t[0][i0], &t[1..]);
            }
        }
    });
    for v in &mut out {
        *v /= norm;
    }
    SampledField::new(Arc::clone(grid), out)
}

/// E_S f on a target grid: Σ_k f_k E(i (xi_k, zeta_k), (x, y)) w_k, normalized.
pub fn extension_operator(sampling: &SurfaceSampling, f: &[Complex64], target: &Arc<TensorGrid>) -> Result<SampledField> {
    if f.len() != sampling.len() {
        return Err(Error::GridMismatch(format!("{} values for {} surface points", f.len(), sampling.len())));
    }
    check_geometry(sampling, target)?;
    let coeffs: Vec<Complex64> = f.iter().zip(sampling.weights()).map(|(v, &w)| v * w).collect();
    synthesize_on_grid(target, sampling.points(), &coeffs)
}

/// R_S f: the transform of f evaluated at the surface points.
pub fn restriction_operator(plan: &TransformPlan, f: &SampledField, sampling: &SurfaceSampling) -> Result<Vec<Complex64>> {
    let input = plan.input_grid();
    if **input != **f.grid() {
        return Err(Error::PlanMismatch("field is not on the plan's input grid".into()));
    }
    check_geometry(sampling, input)?;
    transform_at_points(f, sampling.points())
}

fn check_geometry(sampling: &SurfaceSampling, grid: &TensorGrid) -> Result<()> {
    if sampling.surface().geometry() != grid.geometry() {
        return Err(Error::GridMismatch("surface and grid have different geometries".into()));
    }
    Ok(())
}

/// ⟨a, b⟩ on the surface: Σ a conj(b) w.
pub fn surface_inner_product(sampling: &SurfaceSampling, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).zip(sampling.weights()).map(|((x, y), &w)| x * y.conj() * w).sum()
}

/// Matrix of E_S between the orthonormal coordinates of the weighted ℓ^2
/// spaces: A[g, k] = sqrt(w_g) E(i p_k, q_g) sqrt(w_k) / (c_kappa (2 pi)^{n/2}).
pub fn extension_matrix(sampling: &SurfaceSampling, grid: &TensorGrid, budget: usize) -> Result<DMatrix<Complex64>> {
    check_geometry(sampling, grid)?;
    let (rows, cols) = (grid.len(), sampling.len());
    if rows.saturating_mul(cols) > budget {
        return Err(Error::Budget(format!("extension matrix {rows}x{cols} exceeds {budget} entries")));
    }
    let norm = normalization(grid);
    let sw: Vec<f64> = grid.weights().iter().map(|w| w.sqrt()).collect();
    let columns: Vec<Vec<Complex64>> = sampling
        .points()
        .par_iter()
        .zip(sampling.weights())
        .map(|(p, &wk)| {
            let mut col = vec![ZERO; rows];
            accumulate_outer(&mut col, Complex64::new(wk.sqrt() / norm, 0.0), &point_tables(grid, p, 1.0));
            col.iter_mut().zip(&sw).for_each(|(c, s)| *c *= s);
            col
        })
        .collect();
    Ok(DMatrix::from_fn(rows, cols, |g, k| columns[k][g]))
}

fn diagonal_weights(w: Option<&SampledField>, grid: &TensorGrid) -> Result<Option<Vec<Complex64>>> {
    match w {
        None => Ok(None),
        Some(f) if **f.grid() == *grid => Ok(Some(f.values().to_vec())),
        Some(_) => Err(Error::GridMismatch("weight function lives on a different grid".into())),
    }
}

/// Dense matrix of g ↦ W1 E_S E_S* (W2 g) in orthonormal coordinates of the
/// weighted ℓ^2 space on `grid`. Without weights it is Hermitian and
/// positive semidefinite.
pub fn ts_matrix(
    sampling: &SurfaceSampling,
    grid: &TensorGrid,
    w1: Option<&SampledField>,
    w2: Option<&SampledField>,
) -> Result<DMatrix<Complex64>> {
    ts_matrix_with_budget(sampling, grid, w1, w2, DEFAULT_MATRIX_BUDGET)
}

pub fn ts_matrix_with_budget(
    sampling: &SurfaceSampling,
    grid: &TensorGrid,
    w1: Option<&SampledField>,
    w2: Option<&SampledField>,
    budget: usize,
) -> Result<DMatrix<Complex64>> {
    let g = grid.len();
    if g.saturating_mul(g) > budget {
        return Err(Error::Budget(format!("T_S matrix {g}x{g} exceeds {budget} entries")));
    }
    let d1 = diagonal_weights(w1, grid)?;
    let d2 = diagonal_weights(w2, grid)?;
    let a = extension_matrix(sampling, grid, budget)?;
    let mut t = &a * a.adjoint();
    if let Some(d) = d1 {
        for (r, mut row) in t.row_iter_mut().enumerate() {
            row *= d[r];
        }
    }
    if let Some(d) = d2 {
        for (c, mut col) in t.column_iter_mut().enumerate() {
            col *= d[c];
        }
    }
    Ok(t)
}

/// Singular values, largest first.
pub fn singular_values(a: &DMatrix<Complex64>) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// (Σ σ^p)^{1/p} of a sorted singular value list; p = inf gives σ_max.
pub fn schatten_from_singular(s: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(invalid(format!("Schatten index must lie in [1, inf], got {p}")));
    }
    let top = s.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() || top == 0.0 {
        return Ok(top);
    }
    let terms: Vec<f64> = s.iter().map(|x| (x / top).powf(p)).collect();
    Ok(top * pairwise_sum(&terms).powf(1.0 / p))
}

/// Schatten p-norm through the singular values of a Householder
/// bidiagonalization.
pub fn schatten_norm(a: &DMatrix<Complex64>, p: f64) -> Result<f64> {
    schatten_from_singular(&singular_values(a), p)
}

/// Settings for [`duality_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityConfig {
    pub alpha: f64,
    pub trials: usize,
    /// Largest family size; each trial draws a size in 1..=max_family.
    pub max_family: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub alpha: f64,
    pub trials: usize,
    /// ‖W T_S W̄‖ in the Schatten class of index alpha.
    pub schatten_constant: f64,
    /// max over trials of |Σ n_j ∫|W|^2 |E_S f_j|^2| / (C (Σ|n_j|^{α'})^{1/α'}).
    pub max_ratio: f64,
    /// The same ratio for the single normalized function with n = 1.
    pub single_function_ratio: f64,
    pub max_gram_defect: f64,
    pub truncation: Option<f64>,
}

/// Ratio of the paired density form to C ‖n‖_{α'} for one family, given
/// B = W A (rows: grid, columns: surface points in orthonormal coordinates).
fn family_ratio(b: &DMatrix<Complex64>, family: &OrthonormalFamily, c: f64, alpha: f64) -> f64 {
    let measure = family.measure();
    let mut lhs = ZERO;
    for (member, &nj) in family.members().iter().zip(family.coefficients()) {
        let u = nalgebra::DVector::from_iterator(member.len(), member.iter().zip(measure).map(|(v, w)| v * w.sqrt()));
        let image = b * u;
        let density: Vec<f64> = image.iter().map(|z| z.norm_sqr()).collect();
        lhs += nj * pairwise_sum(&density);
    }
    let dual = if alpha == 1.0 { f64::INFINITY } else { alpha / (alpha - 1.0) };
    let rhs = c * coefficient_norm(family.coefficients(), dual);
    if rhs == 0.0 {
        if lhs.norm() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs.norm() / rhs
    }
}

/// Duality principle at matrix scale: compares Σ n_j ∫|W|^2|E_S f_j|^2 with
/// ‖W T_S W̄‖_{S^α} (Σ|n_j|^{α'})^{1/α'} over random orthonormal families.
pub fn duality_check(sampling: &SurfaceSampling, grid: &TensorGrid, w: &SampledField, cfg: DualityConfig) -> Result<DualityReport> {
    if !(cfg.alpha >= 1.0) || !cfg.alpha.is_finite() {
        return Err(invalid(format!("alpha must be a finite number >= 1, got {}", cfg.alpha)));
    }
    if **w.grid() != *grid {
        return Err(Error::GridMismatch("weight function lives on a different grid".into()));
    }
    let mut b = extension_matrix(sampling, grid, DEFAULT_MATRIX_BUDGET)?;
    for (r, mut row) in b.row_iter_mut().enumerate() {
        row *= w.values()[r];
    }
    // ‖W A A* W̄‖_{S^α} = (Σ σ(WA)^{2α})^{1/α}
    let s = singular_values(&b);
    let c = schatten_from_singular(&s, 2.0 * cfg.alpha)?.powi(2);

    let measure = sampling.weights();
    let positive = measure.iter().filter(|&&m| m > 0.0).count();
    let max_family = cfg.max_family.clamp(1, positive.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let single = OrthonormalFamily::random(measure, 1, &mut rng)?;
    let single_function_ratio = family_ratio(&b, &single, c, cfg.alpha);
    let mut max_ratio = single_function_ratio;
    let mut max_gram_defect = single.gram_defect();
    for _ in 0..cfg.trials {
        let m = rng.random_range(1..=max_family);
        let coeffs: Vec<Complex64> =
            (0..m).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        let family = OrthonormalFamily::random(measure, m, &mut rng)?.with_coefficients(coeffs)?;
        max_gram_defect = max_gram_defect.max(family.gram_defect());
        max_ratio = max_ratio.max(family_ratio(&b, &family, c, cfg.alpha));
    }
    Ok(DualityReport {
        alpha: cfg.alpha,
        trials: cfg.trials,
        schatten_constant: c,
        max_ratio,
        single_function_ratio,
        max_gram_defect,
        truncation: sampling.truncation(),
    })
}
