//! Orthonormal Strichartz quotients for the Schrödinger and Klein–Gordon
//! propagators on a truncated time window.
//!
//! Schrödinger densities use two routes. Near t = 0 the spectrum is multiplied
//! by e^{-it|ζ|^2} and inverted onto a fixed evaluation grid. Away from 0 the
//! lens factorization
//!     |e^{itΔ}φ(2tζ)| = |2t|^{-D/2} |F[e^{i|y|^2/(4t)} φ](ζ)|
//! evaluates the density on the dilated grid 2t·ζ, so no grid ever has to cover
//! the full spread of the wave packet.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use super::evolution::{generalized_hermite_family, require_space_grid, Model};
use crate::error::{invalid, Error, Result};
use crate::family::coefficient_norm;
use crate::geometry::DunklGeometry;
use crate::grid::{Axis, TensorGrid};
use crate::output::pairwise_sum;
use crate::quadrature::{gauss_legendre, Rule};
use crate::restriction::{exact_y_dimension, ExponentRange};
use crate::transforms::TransformPlan;

pub const DEFAULT_WINDOW: f64 = 8.0;
pub const DEFAULT_FAMILY_SIZES: [usize; 6] = [1, 2, 4, 8, 16, 32];

const PANEL_ORDER: usize = 16;
/// Largest phase change (radians) across one 16-node panel.
const PANEL_PHASE: f64 = 12.0;
/// Geometric time panels per half window.
const TIME_PANELS: usize = 9;
const TIME_ORDER: usize = 8;

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Exponents of the diagonal orthonormal Strichartz estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalExponents {
    /// D = d + 2 gamma_kappa
    pub y_dimension: Rational64,
    /// p' = 2 + 4/D
    pub p_prime: Rational64,
    /// p'/2, used for both time and space
    pub density_exponent: Rational64,
    /// (D+2)/(D+1)
    pub beta: Rational64,
}

pub fn diagonal_exponents(geom: &DunklGeometry) -> Result<DiagonalExponents> {
    let dd = exact_y_dimension(geom)?;
    let p_prime = q(2) + q(4) / dd;
    Ok(DiagonalExponents {
        y_dimension: dd,
        p_prime,
        density_exponent: p_prime / q(2),
        beta: (dd + q(2)) / (dd + q(1)),
    })
}

/// Whether (p, q) lies on 2/p + D/q = D with 1 <= q < 1 + 2/(D-1).
pub fn mixed_admissible(geom: &DunklGeometry, p: f64, qq: f64) -> bool {
    let dd = geom.y_dimension();
    if !(p >= 1.0 && qq >= 1.0) {
        return false;
    }
    let line = 2.0 / p + dd / qq - dd;
    let below = dd <= 1.0 || qq < 1.0 + 2.0 / (dd - 1.0);
    line.abs() <= 1e-12 * dd.max(1.0) && below
}

/// Density exponents r allowed in the Klein–Gordon estimate.
pub fn klein_gordon_range(geom: &DunklGeometry) -> Result<ExponentRange> {
    let dd = exact_y_dimension(geom)?;
    if dd == q(1) {
        return Ok(ExponentRange { lo: q(3), lo_closed: true, hi: None, hi_closed: false });
    }
    Ok(ExponentRange::closed(q(1) + q(2) / dd, q(1) + q(2) / (dd - q(1))))
}

/// (q, r, s, beta) of the Klein–Gordon interpolation family between
/// (r0, r0, 1/2) and (inf, 1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollaryExponents {
    pub r0: Rational64,
    pub r: Rational64,
    /// time exponent; `None` is +inf
    pub q: Option<Rational64>,
    pub s: Rational64,
    pub beta: Rational64,
}

pub fn corollary_exponents(geom: &DunklGeometry, r0: Rational64, r: Rational64) -> Result<CorollaryExponents> {
    if !klein_gordon_range(geom)?.contains(r0) {
        return Err(Error::Hypothesis(format!("r0 = {r0} is outside the Klein-Gordon range")));
    }
    if r < q(1) || r > r0 {
        return Err(Error::Hypothesis(format!("r = {r} must lie in [1, {r0}]")));
    }
    let inv_q = (q(1) - q(1) / r) / (r0 - q(1));
    Ok(CorollaryExponents {
        r0,
        r,
        q: (inv_q != q(0)).then(|| q(1) / inv_q),
        s: r0 / (r0 - q(1)) * (Rational64::new(1, 2) - q(1) / (q(2) * r)),
        beta: q(2) * r / (r + q(1)),
    })
}

fn to_f64(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Gauss–Legendre rule on [-T, T] with panels refined geometrically towards 0.
pub fn time_rule(half_width: f64) -> Result<Rule> {
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(invalid(format!("time window must be positive, got {half_width}")));
    }
    let base = gauss_legendre(TIME_ORDER);
    let mut edges = vec![0.0];
    edges.extend((0..TIME_PANELS).rev().map(|k| half_width / f64::powi(2.0, k as i32)));
    let mut positive = Rule { nodes: Vec::new(), weights: Vec::new() };
    for w in edges.windows(2) {
        let panel = base.mapped(w[0], w[1]);
        positive.nodes.extend(panel.nodes);
        positive.weights.extend(panel.weights);
    }
    let mut nodes: Vec<f64> = positive.nodes.iter().rev().map(|t| -t).collect();
    let mut weights: Vec<f64> = positive.weights.iter().rev().copied().collect();
    nodes.extend(positive.nodes);
    weights.extend(positive.weights);
    Ok(Rule { nodes, weights })
}

fn composite_grid(geom: &DunklGeometry, extent: f64, max_rate: f64) -> Result<Arc<TensorGrid>> {
    let panel = PANEL_PHASE / max_rate;
    let axes = geom
        .kappa()
        .iter()
        .map(|&k| Axis::composite_order(extent, k, panel, PANEL_ORDER))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(TensorGrid::new(geom.clone(), axes)?))
}

/// Initial data for the harness: members on a data grid of half-width R whose
/// spectra are negligible beyond |ζ_j| = Z on each axis.
#[derive(Debug, Clone)]
pub struct InitialFamily {
    grid: Arc<TensorGrid>,
    members: Vec<Vec<Complex64>>,
    coefficients: Vec<Complex64>,
    data_extent: f64,
    freq_extent: f64,
}

impl InitialFamily {
    /// Members sampled by the caller on `data_grid(geom, data_extent, freq_extent)`.
    pub fn new(grid: Arc<TensorGrid>, members: Vec<Vec<Complex64>>, data_extent: f64, freq_extent: f64) -> Result<Self> {
        require_space_grid(&grid)?;
        if members.is_empty() {
            return Err(invalid("a family needs at least one member"));
        }
        if members.iter().any(|m| m.len() != grid.len()) {
            return Err(Error::GridMismatch("family member length differs from the grid".into()));
        }
        let coefficients = vec![Complex64::new(1.0, 0.0); members.len()];
        Ok(Self { grid, members, coefficients, data_extent, freq_extent })
    }

    /// Data grid for members supported in |y_j| <= data_extent with spectra in |ζ_j| <= freq_extent.
    pub fn data_grid(geom: &DunklGeometry, data_extent: f64, freq_extent: f64) -> Result<Arc<TensorGrid>> {
        composite_grid(geom, data_extent, 3.0 * freq_extent)
    }

    /// The first `size` generalized Hermite functions.
    pub fn hermite(geom: &DunklGeometry, size: usize) -> Result<Self> {
        let extent = (2.0 * size as f64 + geom.y_dimension()).sqrt() + 4.0;
        let grid = Self::data_grid(geom, extent, extent)?;
        let family = generalized_hermite_family(&grid, size)?;
        Self::new(grid, family.members().to_vec(), extent, extent)
    }

    /// λ^{D/2} φ(λ y) for the L^2-normalized Gaussian φ = c e^{-|y|^2/2}.
    pub fn gaussian(geom: &DunklGeometry, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("dilation must be positive, got {lambda}")));
        }
        let dd = geom.y_dimension();
        let (r, z) = (6.5 / lambda, 6.5 * lambda);
        let grid = Self::data_grid(geom, r, z)?;
        let amp = (2f64.powf(0.5 * dd) / geom.c_kappa()).sqrt() * lambda.powf(0.5 * dd);
        let member = grid
            .sample(|y| {
                let r2: f64 = y.iter().map(|v| v * v).sum();
                Complex64::new(amp * (-0.5 * lambda * lambda * r2).exp(), 0.0)
            })
            .into_values();
        Self::new(grid, vec![member], r, z)
    }

    pub fn with_coefficients(mut self, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != self.members.len() {
            return Err(invalid("one coefficient per member is required"));
        }
        self.coefficients = coefficients;
        Ok(self)
    }

    pub fn grid(&self) -> &Arc<TensorGrid> {
        &self.grid
    }

    pub fn members(&self) -> &[Vec<Complex64>] {
        &self.members
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn data_extent(&self) -> f64 {
        self.data_extent
    }

    pub fn freq_extent(&self) -> f64 {
        self.freq_extent
    }

    fn geometry(&self) -> &DunklGeometry {
        self.grid.geometry()
    }
}

/// Density ρ(t) = Σ n_j |u_j(t)|^2 on the grid used at time t.
struct Slice {
    t: f64,
    weight: f64,
    space_weights: Vec<f64>,
    rho: Vec<f64>,
}

enum Route {
    Spectral,
    Lens,
}

/// Precomputed plans for one family, model and window.
struct Evolver {
    model: Model,
    dim: f64,
    coefficients: Vec<Complex64>,
    zeta2: Vec<f64>,
    spectra: Vec<Vec<Complex64>>,
    /// eval grid <- frequency grid
    near: TransformPlan,
    switch: f64,
    /// data grid -> dilation grid, with |y|^2 on the data grid
    lens: Option<(TransformPlan, Vec<f64>, Vec<Vec<Complex64>>)>,
}

fn squared_norms(grid: &TensorGrid) -> Vec<f64> {
    (0..grid.len()).map(|k| grid.point(k).iter().map(|v| v * v).sum()).collect()
}

impl Evolver {
    fn new(model: Model, family: &InitialFamily, window: f64, sobolev: Option<f64>) -> Result<Self> {
        let geom = family.geometry();
        let (r, z) = (family.data_extent, family.freq_extent);
        let (eval_extent, switch, spectral_rate) = match model {
            Model::Schrodinger => (2.0 * r, r / (2.0 * z), 3.0 * r),
            Model::KleinGordon => (r + window, f64::INFINITY, r + 2.0 * window),
        };
        let freq = composite_grid(geom, z, spectral_rate)?;
        let forward = TransformPlan::with_output(Arc::clone(&family.grid), Arc::clone(&freq))?;
        let members: Vec<&[Complex64]> = family.members.iter().map(Vec::as_slice).collect();
        let mut spectra = forward.forward_batch(&members)?;
        let zeta2 = squared_norms(&freq);
        if let Some(s) = sobolev {
            let weights: Vec<f64> = freq.weights().iter().zip(&zeta2).map(|(w, z2)| w * (1.0 + z2).powf(s)).collect();
            orthonormalize(&mut spectra, &weights)?;
        }
        let eval = composite_grid(geom, eval_extent, 2.0 * z)?;
        let near = TransformPlan::with_output(eval, freq)?;
        let lens = if switch.is_finite() && window > switch {
            let dilated = composite_grid(geom, 2.0 * z, 2.0 * r)?;
            let plan = TransformPlan::with_output(Arc::clone(&family.grid), dilated)?;
            Some((plan, squared_norms(&family.grid), family.members.clone()))
        } else {
            None
        };
        Ok(Self {
            model,
            dim: geom.y_dimension(),
            coefficients: family.coefficients.clone(),
            zeta2,
            spectra,
            near,
            switch,
            lens,
        })
    }

    /// Σ n_j ‖u_j(0)‖_2^2 from the spectra.
    fn initial_mass(&self) -> Complex64 {
        let w = self.near.output_grid().weights();
        self.spectra
            .iter()
            .zip(&self.coefficients)
            .map(|(s, n)| n * s.iter().zip(&w).map(|(v, wi)| v.norm_sqr() * wi).sum::<f64>())
            .sum()
    }

    fn route(&self, t: f64) -> Route {
        if t.abs() > self.switch && self.lens.is_some() {
            Route::Lens
        } else {
            Route::Spectral
        }
    }

    fn slice(&self, t: f64, weight: f64) -> Result<Slice> {
        let (space_weights, fields, scale) = match self.route(t) {
            Route::Spectral => {
                let phases: Vec<Complex64> = self.zeta2.iter().map(|&z2| self.model.multiplier(t, z2)).collect();
                let evolved: Vec<Vec<Complex64>> =
                    self.spectra.iter().map(|s| s.iter().zip(&phases).map(|(a, b)| a * b).collect()).collect();
                let refs: Vec<&[Complex64]> = evolved.iter().map(Vec::as_slice).collect();
                (self.near.input_grid().weights(), self.near.inverse_batch(&refs)?, 1.0)
            }
            Route::Lens => {
                let (plan, y2, members) = self.lens.as_ref().expect("lens route has a plan");
                let chirp: Vec<Complex64> = y2.iter().map(|&v| Complex64::from_polar(1.0, v / (4.0 * t))).collect();
                let chirped: Vec<Vec<Complex64>> =
                    members.iter().map(|m| m.iter().zip(&chirp).map(|(a, b)| a * b).collect()).collect();
                let refs: Vec<&[Complex64]> = chirped.iter().map(Vec::as_slice).collect();
                let dilation = (2.0 * t.abs()).powf(self.dim);
                let w = plan.output_grid().weights().iter().map(|w| w * dilation).collect();
                (w, plan.forward_batch(&refs)?, 1.0 / dilation)
            }
        };
        let mut rho = vec![Complex64::new(0.0, 0.0); space_weights.len()];
        for (u, n) in fields.iter().zip(&self.coefficients) {
            for (r, v) in rho.iter_mut().zip(u) {
                *r += n * (v.norm_sqr() * scale);
            }
        }
        Ok(Slice { t, weight, space_weights, rho: rho.into_iter().map(|v| v.norm()).collect() })
    }

    fn slices(&self, window: f64) -> Result<Vec<Slice>> {
        let rule = time_rule(window)?;
        rule.nodes.par_iter().zip(rule.weights.par_iter()).map(|(&t, &w)| self.slice(t, w)).collect()
    }
}

/// Gram–Schmidt (two passes) of spectra in the inner product Σ w a conj(b).
fn orthonormalize(spectra: &mut [Vec<Complex64>], weights: &[f64]) -> Result<()> {
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).zip(weights).map(|((x, y), &w)| x * y.conj() * w).sum()
    };
    for j in 0..spectra.len() {
        let (done, rest) = spectra.split_at_mut(j);
        let v = &mut rest[0];
        let start = dot(v, v).re.sqrt();
        for _ in 0..2 {
            for b in done.iter() {
                let c = dot(v, b);
                v.iter_mut().zip(b).for_each(|(a, bb)| *a -= c * bb);
            }
        }
        let norm = dot(v, v).re.sqrt();
        if !(norm > 1e-10 * start) {
            return Err(Error::Budget(format!("member {j} is dependent in the Sobolev inner product")));
        }
        v.iter_mut().for_each(|a| *a /= norm);
    }
    Ok(())
}

fn space_norm(slice: &Slice, qq: f64) -> f64 {
    if qq.is_infinite() {
        return slice.rho.iter().copied().fold(0.0, f64::max);
    }
    let terms: Vec<f64> = slice.rho.iter().zip(&slice.space_weights).map(|(r, w)| w * r.powf(qq)).collect();
    pairwise_sum(&terms).powf(1.0 / qq)
}

/// Power-law fit of g(t) over the outer panel of each half window; returns the
/// integral of the fit beyond the window relative to the integral inside.
fn tail_ratio(ts: &[f64], g: &[f64], window: f64) -> f64 {
    let inside = pairwise_sum(g);
    if inside <= 0.0 {
        return 0.0;
    }
    let mut tail = 0.0;
    for side in [1.0, -1.0] {
        let pts: Vec<(f64, f64)> = ts
            .iter()
            .zip(g)
            .filter(|(t, _)| side * **t >= 0.5 * window)
            .map(|(t, v)| (t.abs().ln(), v.max(f64::MIN_POSITIVE).ln()))
            .collect();
        if pts.len() < 2 {
            continue;
        }
        let n = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        if slope >= -1.0 {
            return f64::INFINITY;
        }
        tail += intercept.exp() * window.powf(slope + 1.0) / (-slope - 1.0);
    }
    tail / inside
}

/// Whether exponents outside the theorems' ranges are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExponentPolicy {
    #[default]
    Enforce,
    Force,
}

/// One quotient ‖Σ n_j |U(t)φ_j|^2‖_{L^p_t L^q_y} / (Σ |n_j|^β)^{1/β}.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub model: Model,
    pub d: usize,
    pub kappa: Vec<f64>,
    /// time exponent
    pub p: f64,
    /// space exponent
    pub q: f64,
    /// Sobolev index of the initial orthonormalization (0 for L^2)
    pub sobolev: f64,
    pub beta: f64,
    pub m: usize,
    pub admissible: bool,
    pub numerator: f64,
    pub denominator: f64,
    pub quotient: f64,
    /// relative growth of the numerator from the fitted tails beyond the window
    pub tail_estimate: f64,
    /// the p = q norm assembled over (t, y) jointly; `None` off the diagonal
    pub joint_norm: Option<f64>,
    /// max over t of |∫ρ(t) - ∫ρ(0)| / |∫ρ(0)|
    pub mass_defect: f64,
    pub window: f64,
}

struct QuotientSpec {
    p: f64,
    q: f64,
    beta: f64,
    sobolev: Option<f64>,
    admissible: bool,
}

fn quotient(model: Model, family: &InitialFamily, spec: QuotientSpec, window: f64) -> Result<QuotientReport> {
    if !(spec.p >= 1.0 && spec.q >= 1.0) {
        return Err(invalid(format!("exponents must be >= 1, got p = {}, q = {}", spec.p, spec.q)));
    }
    let evolver = Evolver::new(model, family, window, spec.sobolev)?;
    let slices = evolver.slices(window)?;
    let m0 = evolver.initial_mass();
    let mass_defect = slices
        .iter()
        .map(|s| {
            let m: f64 = pairwise_sum(&s.rho.iter().zip(&s.space_weights).map(|(r, w)| r * w).collect::<Vec<_>>());
            (m - m0.norm()).abs() / m0.norm()
        })
        .fold(0.0, f64::max);
    let inner: Vec<f64> = slices.iter().map(|s| space_norm(s, spec.q)).collect();
    let (numerator, tail_estimate) = if spec.p.is_infinite() {
        (inner.iter().copied().fold(0.0, f64::max), 0.0)
    } else {
        let g: Vec<f64> = inner.iter().map(|v| v.powf(spec.p)).collect();
        let weighted: Vec<f64> = g.iter().zip(&slices).map(|(v, s)| v * s.weight).collect();
        let ts: Vec<f64> = slices.iter().map(|s| s.t).collect();
        let ratio = tail_ratio(&ts, &weighted, window);
        let ratio = if ratio.is_finite() { ratio } else { f64::INFINITY };
        (pairwise_sum(&weighted).powf(1.0 / spec.p), (1.0 + ratio).powf(1.0 / spec.p) - 1.0)
    };
    let joint_norm = (spec.p == spec.q && spec.p.is_finite()).then(|| {
        let terms: Vec<f64> = slices
            .iter()
            .flat_map(|s| s.rho.iter().zip(&s.space_weights).map(move |(r, w)| s.weight * w * r.powf(spec.p)))
            .collect();
        pairwise_sum(&terms).powf(1.0 / spec.p)
    });
    let denominator = coefficient_norm(family.coefficients(), spec.beta);
    let geom = family.geometry();
    Ok(QuotientReport {
        model,
        d: geom.d(),
        kappa: geom.kappa().to_vec(),
        p: spec.p,
        q: spec.q,
        sobolev: spec.sobolev.unwrap_or(0.0),
        beta: spec.beta,
        m: family.len(),
        admissible: spec.admissible,
        numerator,
        denominator,
        quotient: numerator / denominator,
        tail_estimate,
        joint_norm,
        mass_defect,
        window,
    })
}

/// Schrödinger quotient at L^p_t L^q_y with β = 2q/(q+1).
pub fn strichartz_quotient_schrodinger(
    family: &InitialFamily,
    p: f64,
    qq: f64,
    policy: ExponentPolicy,
    window: f64,
) -> Result<QuotientReport> {
    let admissible = mixed_admissible(family.geometry(), p, qq);
    if !admissible && policy == ExponentPolicy::Enforce {
        return Err(Error::Hypothesis(format!("(p, q) = ({p}, {qq}) is off the admissible scaling line")));
    }
    let spec = QuotientSpec { p, q: qq, beta: 2.0 * qq / (qq + 1.0), sobolev: None, admissible };
    quotient(Model::Schrodinger, family, spec, window)
}

/// Klein–Gordon exponent choices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KleinGordonExponents {
    /// L^r(R × R^d) with the family orthonormal in H^{1/2}
    Diagonal { r: f64 },
    /// L^q_t L^r_y with q, s fixed by r0 and r
    Corollary { r0: f64, r: f64 },
}

/// Klein–Gordon quotient; the family is re-orthonormalized in H^s spectrally.
pub fn strichartz_quotient_klein_gordon(
    family: &InitialFamily,
    exponents: KleinGordonExponents,
    policy: ExponentPolicy,
    window: f64,
) -> Result<QuotientReport> {
    let geom = family.geometry();
    let range = klein_gordon_range(geom)?;
    let spec = match exponents {
        KleinGordonExponents::Diagonal { r } => {
            let admissible = crate::restriction::exact_rational(r).map(|x| range.contains(x)).unwrap_or(false);
            if !admissible && policy == ExponentPolicy::Enforce {
                return Err(Error::Hypothesis(format!("r = {r} is outside {range}")));
            }
            QuotientSpec { p: r, q: r, beta: 2.0 * r / (r + 1.0), sobolev: Some(0.5), admissible }
        }
        KleinGordonExponents::Corollary { r0, r } => {
            let exact = crate::restriction::exact_rational(r0)
                .and_then(|a| crate::restriction::exact_rational(r).map(|b| (a, b)))
                .and_then(|(a, b)| corollary_exponents(geom, a, b));
            match exact {
                Ok(c) => QuotientSpec {
                    p: c.q.map_or(f64::INFINITY, to_f64),
                    q: to_f64(c.r),
                    beta: to_f64(c.beta),
                    sobolev: Some(to_f64(c.s)),
                    admissible: true,
                },
                Err(e) if policy == ExponentPolicy::Enforce => return Err(e),
                Err(_) => {
                    let inv_q = (1.0 - 1.0 / r) / (r0 - 1.0);
                    QuotientSpec {
                        p: 1.0 / inv_q,
                        q: r,
                        beta: 2.0 * r / (r + 1.0),
                        sobolev: Some(r0 / (r0 - 1.0) * (0.5 - 0.5 / r)),
                        admissible: false,
                    }
                }
            }
        }
    };
    quotient(Model::KleinGordon, family, spec, window)
}

/// Quotients of dilated Gaussians at one diagonal exponent.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingSeries {
    pub exponent: f64,
    pub admissible: bool,
    pub lambdas: Vec<f64>,
    pub quotients: Vec<f64>,
    /// max/min - 1 over the series
    pub drift: f64,
    pub monotone: bool,
}

/// Q(φ_λ) on the window T/λ^2 for the diagonal exponents p = q = e.
pub fn schrodinger_scaling_test(
    geom: &DunklGeometry,
    exponents: &[f64],
    lambdas: &[f64],
    window: f64,
) -> Result<Vec<ScalingSeries>> {
    let families = lambdas.iter().map(|&l| InitialFamily::gaussian(geom, l)).collect::<Result<Vec<_>>>()?;
    exponents
        .iter()
        .map(|&e| {
            let quotients = families
                .iter()
                .zip(lambdas)
                .map(|(f, l)| strichartz_quotient_schrodinger(f, e, e, ExponentPolicy::Force, window / (l * l)))
                .map(|r| r.map(|r| r.quotient))
                .collect::<Result<Vec<_>>>()?;
            let max = quotients.iter().copied().fold(f64::MIN, f64::max);
            let min = quotients.iter().copied().fold(f64::MAX, f64::min);
            let up = quotients.windows(2).all(|w| w[1] >= w[0]);
            let down = quotients.windows(2).all(|w| w[1] <= w[0]);
            Ok(ScalingSeries {
                exponent: e,
                admissible: mixed_admissible(geom, e, e),
                lambdas: lambdas.to_vec(),
                quotients,
                drift: max / min - 1.0,
                monotone: up || down,
            })
        })
        .collect()
}

/// Quotients of Hermite families of each size at the diagonal exponent of the model.
pub fn family_sweep(model: Model, geom: &DunklGeometry, sizes: &[usize], window: f64) -> Result<Vec<QuotientReport>> {
    let diag = diagonal_exponents(geom)?;
    sizes
        .iter()
        .map(|&m| {
            let family = InitialFamily::hermite(geom, m)?;
            match model {
                Model::Schrodinger => {
                    let e = to_f64(diag.density_exponent);
                    strichartz_quotient_schrodinger(&family, e, e, ExponentPolicy::Enforce, window)
                }
                Model::KleinGordon => {
                    let r = to_f64(klein_gordon_range(geom)?.lo);
                    strichartz_quotient_klein_gordon(
                        &family,
                        KleinGordonExponents::Diagonal { r },
                        ExponentPolicy::Enforce,
                        window,
                    )
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(kappa: f64) -> DunklGeometry {
        DunklGeometry::new(0, vec![kappa]).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn diagonal_wiring_at_unit_dimension() {
        let e = diagonal_exponents(&geom(0.0)).unwrap();
        assert_eq!(e.p_prime, q(6));
        assert_eq!(e.density_exponent, q(3));
        assert_eq!(e.beta, r(3, 2));
        let e = diagonal_exponents(&geom(0.5)).unwrap();
        assert_eq!((e.p_prime, e.beta), (q(4), r(4, 3)));
        assert!(mixed_admissible(&geom(0.0), 3.0, 3.0));
        assert!(mixed_admissible(&geom(0.5), 2.0, 2.0));
        assert!(!mixed_admissible(&geom(0.0), 3.6, 3.6));
        // q must stay below 1 + 2/(D - 1) = 3 at D = 2
        assert!(!mixed_admissible(&geom(0.5), 1.0, 3.0));
    }

    #[test]
    fn klein_gordon_ranges_and_corollary() {
        assert_eq!(klein_gordon_range(&geom(0.0)).unwrap().to_string(), "[3, inf)");
        assert_eq!(klein_gordon_range(&geom(0.5)).unwrap(), ExponentRange::closed(q(2), q(3)));
        let g = geom(0.5);
        let top = corollary_exponents(&g, q(3), q(3)).unwrap();
        assert_eq!((top.q, top.s, top.beta), (Some(q(3)), r(1, 2), r(3, 2)));
        let bottom = corollary_exponents(&g, q(3), q(1)).unwrap();
        assert_eq!((bottom.q, bottom.s, bottom.beta), (None, q(0), q(1)));
        let mid = corollary_exponents(&g, q(3), q(2)).unwrap();
        assert_eq!((mid.q, mid.s), (Some(q(4)), r(3, 8)));
        assert!(corollary_exponents(&g, q(4), q(2)).is_err());
    }

    #[test]
    fn time_rule_integrates_power_decay() {
        let rule = time_rule(8.0).unwrap();
        let exact = 2.0 * 8f64.atan();
        let got = rule.integrate(|t| 1.0 / (1.0 + t * t));
        assert!((got - exact).abs() < 1e-9, "{got} vs {exact}");
    }

    #[test]
    fn single_gaussian_at_the_diagonal_point() {
        let fam = InitialFamily::gaussian(&geom(0.0), 1.0).unwrap();
        let rep = strichartz_quotient_schrodinger(&fam, 3.0, 3.0, ExponentPolicy::Enforce, DEFAULT_WINDOW).unwrap();
        assert!(rep.quotient.is_finite() && rep.quotient > 0.0);
        assert!(rep.mass_defect < 1e-9, "{}", rep.mass_defect);
        let joint = rep.joint_norm.unwrap();
        assert!((joint - rep.numerator).abs() <= 1e-10 * rep.numerator);
        assert!(rep.tail_estimate >= 0.0 && rep.tail_estimate < 0.05, "{}", rep.tail_estimate);
        assert!(strichartz_quotient_schrodinger(&fam, 3.5, 3.0, ExponentPolicy::Enforce, 8.0).is_err());
    }

    /// ‖|u(t)|^2‖_{L^3_y} for the spreading Gaussian has the closed form
    /// (π/3)^{1/6} π^{-1/2} (1 + 4t^2)^{-1/3}; integrate its cube over the window.
    #[test]
    fn gaussian_numerator_matches_closed_form() {
        let fam = InitialFamily::gaussian(&geom(0.0), 1.0).unwrap();
        let rep = strichartz_quotient_schrodinger(&fam, 3.0, 3.0, ExponentPolicy::Enforce, 8.0).unwrap();
        let pi = std::f64::consts::PI;
        let inner = |t: f64| (pi / 3.0).powf(1.0 / 6.0) / pi.sqrt() / (1.0 + 4.0 * t * t).cbrt();
        let exact = time_rule(8.0).unwrap().integrate(|t| inner(t).powi(3)).cbrt();
        assert!((rep.numerator - exact).abs() < 1e-8 * exact, "{} vs {exact}", rep.numerator);
    }

    #[test]
    fn routes_agree_at_the_switch() {
        let fam = InitialFamily::hermite(&geom(0.5), 4).unwrap();
        let ev = Evolver::new(Model::Schrodinger, &fam, 8.0, None).unwrap();
        let t = ev.switch * 1.0001;
        let lens = ev.slice(t, 1.0).unwrap();
        let norm_lens = space_norm(&lens, 2.0);
        let spectral = {
            let mut e = ev;
            e.lens = None;
            e.slice(t, 1.0).unwrap()
        };
        let norm_spec = space_norm(&spectral, 2.0);
        assert!((norm_lens - norm_spec).abs() < 1e-9 * norm_spec, "{norm_lens} vs {norm_spec}");
    }

    #[test]
    fn scaling_invariance_and_drift() {
        let lambdas = [0.5, 1.0, 2.0];
        let series = schrodinger_scaling_test(&geom(0.0), &[3.0, 3.6, 2.4], &lambdas, 8.0).unwrap();
        assert!(series[0].admissible && series[0].drift < 0.02, "{:?}", series[0]);
        for s in &series[1..] {
            assert!(!s.admissible && s.drift >= 0.10 && s.monotone, "{s:?}");
        }
    }

    #[test]
    fn klein_gordon_corollary_bottom_endpoint_is_mass() {
        let fam = InitialFamily::hermite(&geom(0.5), 3).unwrap();
        let rep = strichartz_quotient_klein_gordon(
            &fam,
            KleinGordonExponents::Corollary { r0: 3.0, r: 1.0 },
            ExponentPolicy::Enforce,
            4.0,
        )
        .unwrap();
        // L^1_y of the density is Σ n_j = 3 at every t; β = 1 gives denominator 3
        assert!((rep.quotient - 1.0).abs() < 1e-9, "{}", rep.quotient);
        assert!(rep.p.is_infinite());
        let diag =
            strichartz_quotient_klein_gordon(&fam, KleinGordonExponents::Diagonal { r: 3.0 }, ExponentPolicy::Enforce, 4.0)
                .unwrap();
        assert!(diag.quotient.is_finite() && diag.mass_defect < 1e-8, "{diag:?}");
        assert!(strichartz_quotient_klein_gordon(&fam, KleinGordonExponents::Diagonal { r: 4.0 }, ExponentPolicy::Enforce, 4.0)
            .is_err());
    }

    #[test]
    fn subadditivity_over_singletons() {
        let g = geom(0.0);
        let fam = InitialFamily::hermite(&g, 3).unwrap();
        let whole = strichartz_quotient_schrodinger(&fam, 3.0, 3.0, ExponentPolicy::Enforce, 4.0).unwrap();
        let mut singles = 0.0;
        for j in 0..3 {
            let one = InitialFamily::new(
                Arc::clone(fam.grid()),
                vec![fam.members()[j].clone()],
                fam.data_extent(),
                fam.freq_extent(),
            )
            .unwrap();
            singles += strichartz_quotient_schrodinger(&one, 3.0, 3.0, ExponentPolicy::Enforce, 4.0).unwrap().numerator;
        }
        assert!(whole.numerator <= singles * (1.0 + 1e-12));
    }
}
