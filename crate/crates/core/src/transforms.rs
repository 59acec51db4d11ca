//! Fourier-Dunkl and Dunkl transforms as dense per-axis kernel contractions.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{c_kappa_axis, kernel_1d_imag};
use crate::grid::{Axis, SampledField, TensorGrid};

/// Default cap on the entries of one per-axis kernel table.
pub const DEFAULT_TABLE_BUDGET: usize = 4096 * 4096;

/// Dense matrix, row-major.
#[derive(Debug, Clone)]
pub struct KernelTable {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl KernelTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }
}

/// Precomputed per-axis tables mapping an input grid to a frequency grid.
///
/// For axis k with kernel weight kappa_k (zero on x-axes) the raw table holds
/// e_kappa(-i xi_b v_a); the forward table folds in the input weights and
/// 1 / c_{kappa_k}, the inverse table the conjugate kernel with output weights.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    input: Arc<TensorGrid>,
    output: Arc<TensorGrid>,
    kernels: Vec<KernelTable>,
    forward: Vec<KernelTable>,
    inverse: Vec<KernelTable>,
}

impl TransformPlan {
    /// Plan whose frequency grid reuses the input nodes.
    pub fn new(grid: Arc<TensorGrid>) -> Result<Self> {
        Self::with_output(Arc::clone(&grid), grid)
    }

    pub fn with_output(input: Arc<TensorGrid>, output: Arc<TensorGrid>) -> Result<Self> {
        Self::with_budget(input, output, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_budget(input: Arc<TensorGrid>, output: Arc<TensorGrid>, max_entries: usize) -> Result<Self> {
        if input.geometry() != output.geometry() {
            return Err(Error::PlanMismatch("input and output grids have different geometries".into()));
        }
        let mut kernels = Vec::new();
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        for (a_in, a_out) in input.axes().iter().zip(output.axes()) {
            if a_in.len() * a_out.len() > max_entries {
                return Err(Error::Budget(format!(
                    "kernel table {}x{} exceeds {max_entries} entries",
                    a_out.len(),
                    a_in.len()
                )));
            }
            let (k, f, b) = axis_tables(a_in, a_out);
            kernels.push(k);
            forward.push(f);
            inverse.push(b);
        }
        Ok(Self { input, output, kernels, forward, inverse })
    }

    pub fn input_grid(&self) -> &Arc<TensorGrid> {
        &self.input
    }

    pub fn output_grid(&self) -> &Arc<TensorGrid> {
        &self.output
    }

    /// Raw kernel values e_kappa(-i xi_b v_a) for one axis (rows: frequencies).
    pub fn kernel_table(&self, axis: usize) -> &KernelTable {
        &self.kernels[axis]
    }

    /// Applies the forward tables on the selected axes. The result lives on
    /// the grid whose selected axes are frequency axes and the rest input axes.
    pub fn forward_partial(&self, f: &SampledField, axes: &[usize]) -> Result<SampledField> {
        self.check_grid(f.grid(), &self.input, "input")?;
        let mut data = f.values().to_vec();
        let mut shape = self.input.shape();
        let mut grid_axes = self.input.axes().to_vec();
        for &k in axes {
            if k >= shape.len() {
                return Err(invalid(format!("axis {k} out of range")));
            }
            data = contract_axis(&self.forward[k], &data, &shape, k);
            shape[k] = self.forward[k].rows;
            grid_axes[k] = self.output.axes()[k].clone();
        }
        let grid = if axes.len() == shape.len() {
            Arc::clone(&self.output)
        } else {
            Arc::new(TensorGrid::new(self.input.geometry().clone(), grid_axes)?)
        };
        SampledField::new(grid, data)
    }

    /// Full forward transform on every axis.
    pub fn forward(&self, f: &SampledField) -> Result<SampledField> {
        let all: Vec<usize> = (0..self.input.axes().len()).collect();
        self.forward_partial(f, &all)
    }

    /// Full inverse transform, frequency grid back to the input grid.
    pub fn inverse(&self, spectrum: &SampledField) -> Result<SampledField> {
        self.check_grid(spectrum.grid(), &self.output, "frequency")?;
        let mut data = spectrum.values().to_vec();
        let mut shape = self.output.shape();
        for k in 0..shape.len() {
            data = contract_axis(&self.inverse[k], &data, &shape, k);
            shape[k] = self.inverse[k].rows;
        }
        SampledField::new(Arc::clone(&self.input), data)
    }

    /// Forward transforms of several fields on the input grid in one pass.
    pub fn forward_batch(&self, fields: &[&[Complex64]]) -> Result<Vec<Vec<Complex64>>> {
        batch(&self.forward, &self.input, fields)
    }

    /// Inverse transforms of several spectra on the frequency grid in one pass.
    pub fn inverse_batch(&self, spectra: &[&[Complex64]]) -> Result<Vec<Vec<Complex64>>> {
        batch(&self.inverse, &self.output, spectra)
    }

    fn check_grid(&self, got: &Arc<TensorGrid>, want: &Arc<TensorGrid>, side: &str) -> Result<()> {
        if Arc::ptr_eq(got, want) || **got == **want {
            Ok(())
        } else {
            Err(Error::PlanMismatch(format!("field is not on the plan's {side} grid")))
        }
    }
}

fn batch(tables: &[KernelTable], grid: &TensorGrid, items: &[&[Complex64]]) -> Result<Vec<Vec<Complex64>>> {
    let len = grid.len();
    if let Some(bad) = items.iter().find(|v| v.len() != len) {
        return Err(Error::GridMismatch(format!("{} values for a grid of {len} points", bad.len())));
    }
    if items.is_empty() {
        return Ok(Vec::new());
    }
    let mut shape = vec![items.len()];
    shape.extend(grid.shape());
    let mut data: Vec<Complex64> = items.iter().flat_map(|v| v.iter().copied()).collect();
    for (k, table) in tables.iter().enumerate() {
        data = contract_axis(table, &data, &shape, k + 1);
        shape[k + 1] = table.rows;
    }
    let out_len: usize = shape[1..].iter().product();
    Ok(data.chunks(out_len).map(<[Complex64]>::to_vec).collect())
}

fn axis_tables(a_in: &Axis, a_out: &Axis) -> (KernelTable, KernelTable, KernelTable) {
    let kappa = a_in.kappa();
    let norm = 1.0 / c_kappa_axis(kappa);
    let (n_out, n_in) = (a_out.len(), a_in.len());
    let raw: Vec<Complex64> = a_out
        .nodes()
        .par_iter()
        .flat_map_iter(|&xi| a_in.nodes().iter().map(move |&v| kernel_1d_imag(kappa, -xi * v)))
        .collect();
    let forward: Vec<Complex64> = raw
        .chunks(n_in)
        .flat_map(|row| row.iter().zip(a_in.weights()).map(|(k, &w)| k * (w * norm)))
        .collect();
    let mut inverse = vec![Complex64::new(0.0, 0.0); n_in * n_out];
    for b in 0..n_out {
        let w = a_out.weights()[b] * norm;
        for a in 0..n_in {
            inverse[a * n_out + b] = raw[b * n_in + a].conj() * w;
        }
    }
    (
        KernelTable { rows: n_out, cols: n_in, data: raw },
        KernelTable { rows: n_out, cols: n_in, data: forward },
        KernelTable { rows: n_in, cols: n_out, data: inverse },
    )
}

/// out[p, b, q] = Σ_a table[b, a] data[p, a, q] for a tensor of the given shape.
fn contract_axis(table: &KernelTable, data: &[Complex64], shape: &[usize], axis: usize) -> Vec<Complex64> {
    let pre: usize = shape[..axis].iter().product();
    let post: usize = shape[axis + 1..].iter().product();
    let (m, k) = (table.rows, table.cols);
    debug_assert_eq!(k, shape[axis]);
    let mut out = vec![Complex64::new(0.0, 0.0); pre * m * post];
    out.par_chunks_mut(m * post).zip(data.par_chunks(k * post)).for_each(|(c, b)| {
        // SAFETY: Complex64 is repr(C) with (re, im) layout, matching [f64; 2];
        // the slices cover m*k, k*post and m*post elements with the strides given.
        unsafe {
            matrixmultiply::zgemm(
                matrixmultiply::CGemmOption::Standard,
                matrixmultiply::CGemmOption::Standard,
                m,
                k,
                post,
                [1.0, 0.0],
                table.data.as_ptr() as *const [f64; 2],
                k as isize,
                1,
                b.as_ptr() as *const [f64; 2],
                post as isize,
                1,
                [0.0, 0.0],
                c.as_mut_ptr() as *mut [f64; 2],
                post as isize,
                1,
            );
        }
    });
    out
}

/// Dunkl transform of a field on an n = 0 grid.
pub fn dunkl_transform(plan: &TransformPlan, f: &SampledField) -> Result<SampledField> {
    if plan.input.geometry().n() != 0 {
        return Err(Error::PlanMismatch("dunkl_transform needs a grid without x-axes".into()));
    }
    plan.forward(f)
}

/// Fourier transform in x tensored with the Dunkl transform in y.
pub fn fourier_dunkl_transform(plan: &TransformPlan, f: &SampledField) -> Result<SampledField> {
    if plan.input.geometry().n() == 0 {
        return Err(Error::PlanMismatch("fourier_dunkl_transform needs n >= 1; use dunkl_transform".into()));
    }
    plan.forward(f)
}

/// Inverse transform through the conjugated kernel tables.
pub fn inverse_fourier_dunkl(plan: &TransformPlan, spectrum: &SampledField) -> Result<SampledField> {
    plan.inverse(spectrum)
}

/// Inverse transform of m(xi, zeta) times the transform of f.
pub fn spectral_multiplier(
    plan: &TransformPlan,
    multiplier: impl Fn(&[f64]) -> Complex64,
    f: &SampledField,
) -> Result<SampledField> {
    let mut spec = plan.forward(f)?;
    let weights = plan.output.sample(multiplier);
    for (s, m) in spec.values_mut().iter_mut().zip(weights.values()) {
        *s *= m;
    }
    plan.inverse(&spec)
}

/// Whether [`fd_convolution`] insists that the second factor be radial in y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialCheck {
    Enforce,
    Skip,
}

/// Convolution realized spectrally: the transform of f * g equals
/// c_kappa (2 pi)^{n/2} f^ g^, the normalization under which the integral
/// form reduces to the classical convolution at kappa = 0.
pub fn fd_convolution(
    plan: &TransformPlan,
    f: &SampledField,
    g: &SampledField,
    check: RadialCheck,
) -> Result<SampledField> {
    if check == RadialCheck::Enforce {
        radial_defect(g).and_then(|defect| {
            if defect > 1e-10 {
                Err(Error::NonRadial(format!("second factor varies by {defect:.3e} on spheres in y")))
            } else {
                Ok(())
            }
        })?;
    }
    let geometry = plan.input.geometry();
    let scale = geometry.c_kappa() * (2.0 * std::f64::consts::PI).powf(geometry.n() as f64 / 2.0);
    let mut fh = plan.forward(f)?;
    let gh = plan.forward(g)?;
    for (a, b) in fh.values_mut().iter_mut().zip(gh.values()) {
        *a *= b * scale;
    }
    plan.inverse(&fh)
}

/// Largest relative spread of a field over grid points sharing x and |y|.
pub fn radial_defect(g: &SampledField) -> Result<f64> {
    let grid = g.grid();
    let n = grid.geometry().n();
    let scale = g.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut groups: HashMap<(Vec<u64>, i64), Complex64> = HashMap::new();
    let mut defect: f64 = 0.0;
    for (flat, v) in g.values().iter().enumerate() {
        let p = grid.point(flat);
        let x_key: Vec<u64> = p[..n].iter().map(|x| x.to_bits()).collect();
        let r2: f64 = p[n..].iter().map(|y| y * y).sum();
        let key = (x_key, (r2 * 1e9).round() as i64);
        let first = groups.entry(key).or_insert(*v);
        defect = defect.max((*first - v).norm() / scale);
    }
    Ok(defect)
}
