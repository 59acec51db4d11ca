//! Tensor-product quadrature grids, sampled fields, norms and field I/O.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{axis_weight, DunklGeometry};
use crate::output::{fmt17, pairwise_sum, CsvWriter};
use crate::quadrature::{gauss_gen_hermite_scaled, symmetric_weighted};

/// Largest number of grid points a single field may hold.
pub const MAX_GRID_POINTS: usize = 1 << 26;

/// How the nodes of one axis are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisKind {
    /// Equispaced nodes on [-R, R] with trapezoid weights.
    Uniform,
    /// Generalized Gauss–Hermite nodes for |y|^{2 kappa} e^{-y^2/2}, truncated to |y| ≤ R.
    GaussHermite,
    /// Composite Gauss panels on [-R, R], Gauss–Jacobi on the panels touching 0.
    Composite,
    /// Nodes and weights supplied by the caller.
    Custom,
}

/// Grid family requested from [`make_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    Uniform,
    GaussHermite,
    /// Uniform where |y|^{2 kappa} is smooth (2 kappa an even integer), Gauss–Hermite otherwise.
    Auto,
}

/// One axis: nodes and weights for ∫ f(v) |v|^{2 kappa} dv (kappa = 0 on x-axes).
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    kind: AxisKind,
    kappa: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Axis {
    pub fn uniform(extent: f64, count: usize, kappa: f64) -> Result<Self> {
        if count < 8 {
            return Err(invalid(format!("axis needs at least 8 nodes, got {count}")));
        }
        if !(extent > 0.0) || !extent.is_finite() {
            return Err(invalid(format!("extent must be positive, got {extent}")));
        }
        let h = 2.0 * extent / (count - 1) as f64;
        let nodes: Vec<f64> = (0..count).map(|j| -extent + j as f64 * h).collect();
        let weights = nodes
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let end = if j == 0 || j + 1 == count { 0.5 } else { 1.0 };
                end * h * axis_weight(kappa, v)
            })
            .collect();
        Ok(Self { kind: AxisKind::Uniform, kappa, nodes, weights })
    }

    /// Gauss–Hermite axis of the given order, keeping only nodes with |y| ≤ extent.
    pub fn gauss_hermite(order: usize, kappa: f64, extent: f64) -> Result<Self> {
        if order < 8 {
            return Err(invalid(format!("axis needs at least 8 nodes, got {order}")));
        }
        if !(extent > 0.0) {
            return Err(invalid(format!("extent must be positive, got {extent}")));
        }
        let rule = gauss_gen_hermite_scaled(order, kappa);
        let scale = 2f64.powf(kappa + 0.5);
        let (nodes, weights) = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| (std::f64::consts::SQRT_2 * u, w * scale))
            .filter(|(y, _)| y.abs() <= extent)
            .unzip();
        Ok(Self { kind: AxisKind::GaussHermite, kappa, nodes, weights })
    }

    /// Composite rule on [-extent, extent] with 8-point panels of width at most
    /// `panel`; exact for the |v|^{2 kappa} singularity at the origin.
    pub fn composite(extent: f64, kappa: f64, panel: f64) -> Result<Self> {
        Self::composite_order(extent, kappa, panel, 8)
    }

    /// [`Axis::composite`] with `order` nodes per panel.
    pub fn composite_order(extent: f64, kappa: f64, panel: f64, order: usize) -> Result<Self> {
        if !(extent > 0.0) || !extent.is_finite() || !(panel > 0.0) || order == 0 {
            return Err(invalid(format!("composite axis needs positive extent and panel, got {extent}, {panel}")));
        }
        let rule = symmetric_weighted(extent, kappa, panel.min(extent), order);
        Ok(Self { kind: AxisKind::Composite, kappa, nodes: rule.nodes, weights: rule.weights })
    }

    pub fn custom(nodes: Vec<f64>, weights: Vec<f64>, kappa: f64) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(invalid("custom axis needs matching, non-empty nodes and weights"));
        }
        Ok(Self { kind: AxisKind::Custom, kappa, nodes, weights })
    }

    pub fn kind(&self) -> AxisKind {
        self.kind
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Product grid over R^n x R^d; x-axes come first. Flat indices are row-major
/// with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorGrid {
    geometry: DunklGeometry,
    axes: Vec<Axis>,
}

impl TensorGrid {
    pub fn new(geometry: DunklGeometry, axes: Vec<Axis>) -> Result<Self> {
        if axes.len() != geometry.dim() {
            return Err(invalid(format!("expected {} axes, got {}", geometry.dim(), axes.len())));
        }
        for (i, ax) in axes.iter().enumerate() {
            let want = if i < geometry.n() { 0.0 } else { geometry.kappa()[i - geometry.n()] };
            if ax.kappa != want {
                return Err(invalid(format!("axis {i} carries kappa {} but geometry has {want}", ax.kappa)));
            }
        }
        let total = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len()));
        match total {
            Some(t) if t <= MAX_GRID_POINTS => Ok(Self { geometry, axes }),
            _ => Err(Error::Budget(format!("grid exceeds {MAX_GRID_POINTS} points"))),
        }
    }

    pub fn geometry(&self) -> &DunklGeometry {
        &self.geometry
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Axis::len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multi-index of a flat index.
    pub fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for (k, ax) in self.axes.iter().enumerate().rev() {
            out[k] = flat % ax.len();
            flat /= ax.len();
        }
    }

    /// Coordinates of the point with the given flat index.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.axes.len()];
        self.unravel(flat, &mut idx);
        idx.iter().zip(&self.axes).map(|(&i, a)| a.nodes[i]).collect()
    }

    /// Full product weights (including h^2) at every point.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![1.0];
        for ax in &self.axes {
            let mut next = Vec::with_capacity(w.len() * ax.len());
            for &a in &w {
                next.extend(ax.weights.iter().map(|&b| a * b));
            }
            w = next;
        }
        w
    }

    /// Samples a function of the coordinates (x, y) concatenated.
    pub fn sample(self: &Arc<Self>, f: impl Fn(&[f64]) -> Complex64) -> SampledField {
        let mut idx = vec![0; self.axes.len()];
        let mut coords = vec![0.0; self.axes.len()];
        let values = (0..self.len())
            .map(|flat| {
                self.unravel(flat, &mut idx);
                for (k, &i) in idx.iter().enumerate() {
                    coords[k] = self.axes[k].nodes[i];
                }
                f(&coords)
            })
            .collect();
        SampledField { grid: Arc::clone(self), values }
    }
}

/// Builds a grid with `counts[k]` nodes (or Gauss–Hermite order) and extent
/// `extents[k]` on axis k.
pub fn make_grid(
    geometry: &DunklGeometry,
    extents: &[f64],
    counts: &[usize],
    kind: GridKind,
) -> Result<Arc<TensorGrid>> {
    let dim = geometry.dim();
    if extents.len() != dim || counts.len() != dim {
        return Err(invalid(format!("need {dim} extents and counts")));
    }
    let mut axes = Vec::with_capacity(dim);
    for k in 0..dim {
        let kappa = if k < geometry.n() { 0.0 } else { geometry.kappa()[k - geometry.n()] };
        let axis_kind = match kind {
            GridKind::Uniform => AxisKind::Uniform,
            GridKind::GaussHermite => AxisKind::GaussHermite,
            GridKind::Auto => {
                let two_k = 2.0 * kappa;
                if two_k == two_k.round() && (two_k as i64) % 2 == 0 {
                    AxisKind::Uniform
                } else {
                    AxisKind::GaussHermite
                }
            }
        };
        axes.push(match axis_kind {
            AxisKind::Uniform => Axis::uniform(extents[k], counts[k], kappa)?,
            _ => Axis::gauss_hermite(counts[k], kappa, extents[k])?,
        });
    }
    Ok(Arc::new(TensorGrid::new(geometry.clone(), axes)?))
}

/// Default working grid: extent 12, 256 nodes per axis for n + d ≤ 2 and 96 for
/// n + d in 3..=4, uniform where the weight is smooth and Gauss–Hermite otherwise.
pub fn default_grid(geometry: &DunklGeometry) -> Result<Arc<TensorGrid>> {
    let dim = geometry.dim();
    let count = match dim {
        1 | 2 => 256,
        3 | 4 => 96,
        _ => return Err(invalid(format!("no default grid for dimension {dim}"))),
    };
    make_grid(geometry, &vec![12.0; dim], &vec![count; dim], GridKind::Auto)
}

/// Values of a function on a grid.
#[derive(Debug, Clone)]
pub struct SampledField {
    grid: Arc<TensorGrid>,
    values: Vec<Complex64>,
}

/// One stage of a mixed norm: an L^p norm over a set of axes.
#[derive(Debug, Clone, PartialEq)]
pub struct NormStage {
    pub axes: Vec<usize>,
    pub exponent: f64,
}

/// Iterated norm, innermost stage first; every axis must appear exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedNormSpec {
    pub stages: Vec<NormStage>,
}

impl MixedNormSpec {
    /// L^p_t L^q_y on a grid whose first axis is time.
    pub fn time_space(dim: usize, p: f64, q: f64) -> Self {
        Self {
            stages: vec![
                NormStage { axes: (1..dim).collect(), exponent: q },
                NormStage { axes: vec![0], exponent: p },
            ],
        }
    }
}

fn same_grid(a: &Arc<TensorGrid>, b: &Arc<TensorGrid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 || p == f64::INFINITY {
        Ok(())
    } else {
        Err(invalid(format!("norm exponent must lie in [1, inf], got {p}")))
    }
}

impl SampledField {
    pub fn new(grid: Arc<TensorGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Arc<TensorGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Weighted L^p norm, p in [1, inf].
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        check_exponent(p)?;
        if p.is_infinite() {
            return Ok(self.values.iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
        let w = self.grid.weights();
        let terms: Vec<f64> = self.values.iter().zip(&w).map(|(v, &wi)| wi * v.norm().powf(p)).collect();
        Ok(pairwise_sum(&terms).powf(1.0 / p))
    }

    /// ⟨f, g⟩ = ∫ f conj(g) h^2.
    pub fn inner_product(&self, other: &SampledField) -> Result<Complex64> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch("inner product of fields on different grids".into()));
        }
        let w = self.grid.weights();
        let re: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&w)
            .map(|((a, b), &wi)| wi * (a * b.conj()).re)
            .collect();
        let im: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&w)
            .map(|((a, b), &wi)| wi * (a * b.conj()).im)
            .collect();
        Ok(Complex64::new(pairwise_sum(&re), pairwise_sum(&im)))
    }

    /// Iterated mixed norm.
    pub fn mixed_norm(&self, spec: &MixedNormSpec) -> Result<f64> {
        let dim = self.grid.axes.len();
        let mut seen = vec![false; dim];
        for st in &spec.stages {
            check_exponent(st.exponent)?;
            for &a in &st.axes {
                if a >= dim || seen[a] {
                    return Err(invalid(format!("axis {a} missing or repeated in mixed norm")));
                }
                seen[a] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("mixed norm must cover every axis"));
        }
        // current array of nonnegative values over the surviving axes
        let mut alive: Vec<usize> = (0..dim).collect();
        let mut data: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        for st in &spec.stages {
            let shape: Vec<usize> = alive.iter().map(|&a| self.grid.axes[a].len()).collect();
            let keep: Vec<usize> =
                (0..alive.len()).filter(|&i| !st.axes.contains(&alive[i])).collect();
            let out_shape: Vec<usize> = keep.iter().map(|&i| shape[i]).collect();
            let out_len: usize = out_shape.iter().product();
            let mut acc = vec![Vec::new(); out_len];
            let mut idx = vec![0usize; shape.len()];
            for (flat, &v) in data.iter().enumerate() {
                let mut rem = flat;
                for k in (0..shape.len()).rev() {
                    idx[k] = rem % shape[k];
                    rem /= shape[k];
                }
                let mut w = 1.0;
                let mut o = 0;
                for (k, &i) in idx.iter().enumerate() {
                    if keep.contains(&k) {
                        o = o * shape[k] + i;
                    } else {
                        w *= self.grid.axes[alive[k]].weights[i];
                    }
                }
                acc[o].push(if st.exponent.is_infinite() { v } else { w * v.powf(st.exponent) });
            }
            data = acc
                .iter()
                .map(|terms| {
                    if st.exponent.is_infinite() {
                        terms.iter().copied().fold(0.0, f64::max)
                    } else {
                        pairwise_sum(terms).powf(1.0 / st.exponent)
                    }
                })
                .collect();
            alive = keep.iter().map(|&i| alive[i]).collect();
        }
        Ok(data[0])
    }

    /// Writes the field as a binary file: header with geometry and axes, then
    /// little-endian (re, im) pairs.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        let g = self.grid.geometry();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&VERSION.to_le_bytes());
        buf.extend_from_slice(&(g.n() as u32).to_le_bytes());
        buf.extend_from_slice(&(g.d() as u32).to_le_bytes());
        for k in g.kappa() {
            buf.extend_from_slice(&k.to_le_bytes());
        }
        for ax in self.grid.axes() {
            buf.push(match ax.kind {
                AxisKind::Uniform => 0,
                AxisKind::GaussHermite => 1,
                AxisKind::Custom => 2,
                AxisKind::Composite => 3,
            });
            buf.extend_from_slice(&ax.kappa.to_le_bytes());
            buf.extend_from_slice(&(ax.len() as u32).to_le_bytes());
            for v in ax.nodes.iter().chain(&ax.weights) {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        buf.extend_from_slice(&(self.values.len() as u64).to_le_bytes());
        for v in &self.values {
            buf.extend_from_slice(&v.re.to_le_bytes());
            buf.extend_from_slice(&v.im.to_le_bytes());
        }
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::File::create(path)?.write_all(&buf)?;
        Ok(())
    }

    pub fn read_binary(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        let mut r = ByteReader { bytes: &bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let n = r.u32()? as usize;
        let d = r.u32()? as usize;
        if d == 0 || n + d > 16 {
            return Err(Error::Format(format!("implausible dimensions n={n}, d={d}")));
        }
        let kappa = (0..d).map(|_| r.f64()).collect::<Result<Vec<_>>>()?;
        let geometry = DunklGeometry::new(n, kappa).map_err(|e| Error::Format(e.to_string()))?;
        let mut axes = Vec::new();
        for _ in 0..n + d {
            let kind = match r.take(1)?[0] {
                0 => AxisKind::Uniform,
                1 => AxisKind::GaussHermite,
                2 => AxisKind::Custom,
                3 => AxisKind::Composite,
                k => return Err(Error::Format(format!("unknown axis kind {k}"))),
            };
            let kappa = r.f64()?;
            let len = r.u32()? as usize;
            if len == 0 || len > MAX_GRID_POINTS {
                return Err(Error::Format(format!("implausible axis length {len}")));
            }
            let nodes = (0..len).map(|_| r.f64()).collect::<Result<Vec<_>>>()?;
            let weights = (0..len).map(|_| r.f64()).collect::<Result<Vec<_>>>()?;
            axes.push(Axis { kind, kappa, nodes, weights });
        }
        let grid = Arc::new(TensorGrid::new(geometry, axes).map_err(|e| Error::Format(e.to_string()))?);
        let count = r.u64()? as usize;
        if count != grid.len() {
            return Err(Error::Format(format!("payload has {count} values, grid has {}", grid.len())));
        }
        let values = (0..count)
            .map(|_| Ok(Complex64::new(r.f64()?, r.f64()?)))
            .collect::<Result<Vec<_>>>()?;
        if r.pos != bytes.len() {
            return Err(Error::Format("trailing bytes after payload".into()));
        }
        Ok(Self { grid, values })
    }

    /// CSV dump: coordinates, weight, real and imaginary parts.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let g = self.grid.geometry();
        let mut header: Vec<String> = (1..=g.n()).map(|i| format!("x{i}")).collect();
        header.extend((1..=g.d()).map(|i| format!("y{i}")));
        header.extend(["weight".to_string(), "re".to_string(), "im".to_string()]);
        let header_ref: Vec<&str> = header.iter().map(String::as_str).collect();
        let mut w = CsvWriter::create(path, &header_ref)?;
        let weights = self.grid.weights();
        for (flat, v) in self.values.iter().enumerate() {
            let mut row: Vec<String> = self.grid.point(flat).into_iter().map(fmt17).collect();
            row.push(fmt17(weights[flat]));
            row.push(fmt17(v.re));
            row.push(fmt17(v.im));
            w.row(&row)?;
        }
        w.finish()
    }
}

const MAGIC: &[u8; 4] = b"DKLF";
const VERSION: u32 = 1;

struct ByteReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.bytes.len());
        match end {
            Some(e) => {
                let s = &self.bytes[self.pos..e];
                self.pos = e;
                Ok(s)
            }
            None => Err(Error::Format("unexpected end of file".into())),
        }
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_real;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn small_count_rejected() {
        let g = DunklGeometry::new(1, vec![0.0]).unwrap();
        assert!(make_grid(&g, &[5.0, 5.0], &[7, 16], GridKind::Uniform).is_err());
    }

    #[test]
    fn gauss_hermite_exact_for_weighted_gaussian_polynomials() {
        // ∫ y^{2j} e^{-y^2/2} |y|^{2k} dy = 2^{j+k+1/2} Γ(j+k+1/2)
        for &k in &[0.0, 0.5, 1.3] {
            let g = DunklGeometry::new(0, vec![k]).unwrap();
            let grid = make_grid(&g, &[f64::INFINITY], &[40], GridKind::GaussHermite).unwrap();
            for j in 0..40 {
                let f = grid.sample(|v| c(v[0].powi(2 * j) * (-0.5 * v[0] * v[0]).exp()));
                let got = f.lp_norm(1.0).unwrap();
                let jf = j as f64;
                let want = 2f64.powf(jf + k + 0.5) * gamma_real(jf + k + 0.5).unwrap();
                assert!((got - want).abs() < 1e-10 * want, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn gaussian_norm_on_default_grid() {
        let g = DunklGeometry::new(1, vec![0.5]).unwrap();
        let grid = default_grid(&g).unwrap();
        let f = grid.sample(|v| c((-0.5 * (v[0] * v[0] + v[1] * v[1])).exp()));
        let want = ((2.0 * std::f64::consts::PI).sqrt() * g.c_kappa()).sqrt() / 2f64.powf(0.5 * g.n_kappa() / 2.0);
        // ∫ e^{-|v|^2} = c_kappa sqrt(2 pi) 2^{-N/2}
        assert!((f.lp_norm(2.0).unwrap() - want).abs() < 1e-9 * want);
    }

    #[test]
    fn mixed_norm_of_separable_function() {
        let g = DunklGeometry::new(1, vec![0.0]).unwrap();
        let grid = make_grid(&g, &[9.0, 9.0], &[181, 181], GridKind::Uniform).unwrap();
        let f = grid.sample(|v| c((-v[0] * v[0]).exp() * (-0.5 * v[1] * v[1]).exp()));
        let spec = MixedNormSpec::time_space(2, 3.0, 2.0);
        let a = f.mixed_norm(&spec).unwrap();
        // product of the one-dimensional norms
        let t = grid.axes()[0].nodes().iter().zip(grid.axes()[0].weights()).map(|(x, w)| w * (-3.0 * x * x).exp()).sum::<f64>().powf(1.0 / 3.0);
        let y = grid.axes()[1].nodes().iter().zip(grid.axes()[1].weights()).map(|(x, w)| w * (-x * x).exp()).sum::<f64>().sqrt();
        assert!((a - t * y).abs() < 1e-12);
        // equal exponents collapse to the plain norm
        let same = f.mixed_norm(&MixedNormSpec::time_space(2, 2.0, 2.0)).unwrap();
        assert!((same - f.lp_norm(2.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn inner_product_rejects_other_grid() {
        let g = DunklGeometry::new(0, vec![0.0]).unwrap();
        let a = make_grid(&g, &[5.0], &[16], GridKind::Uniform).unwrap();
        let b = make_grid(&g, &[6.0], &[16], GridKind::Uniform).unwrap();
        let fa = a.sample(|_| c(1.0));
        let fb = b.sample(|_| c(1.0));
        assert!(matches!(fa.inner_product(&fb), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn binary_round_trip_and_truncation() {
        let g = DunklGeometry::new(1, vec![0.5]).unwrap();
        let grid = make_grid(&g, &[4.0, 4.0], &[9, 12], GridKind::Auto).unwrap();
        let f = grid.sample(|v| Complex64::new(v[0], v[1].sin()));
        let dir = std::env::temp_dir().join(format!("dunkl-grid-test-{}", std::process::id()));
        let path = dir.join("f.bin");
        f.write_binary(&path).unwrap();
        let back = SampledField::read_binary(&path).unwrap();
        assert_eq!(back.values(), f.values());
        assert_eq!(**back.grid(), **f.grid());
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        assert!(matches!(SampledField::read_binary(&path), Err(Error::Format(_))));
        f.write_csv(&dir.join("f.csv")).unwrap();
        let text = std::fs::read_to_string(dir.join("f.csv")).unwrap();
        assert_eq!(text.lines().count(), 1 + grid.len());
        std::fs::remove_dir_all(&dir).ok();
    }
}
