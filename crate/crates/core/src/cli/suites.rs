//! The six verification suites. Each writes its CSVs and returns its checks.

use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::config::{RunConfig, Suite};
use super::{Check, SuiteReport};
use crate::battery::schwartz_battery;
use crate::closed_forms::{comparison_suite, threshold_suite};
use crate::error::Result;
use crate::geometry::DunklGeometry;
use crate::grid::{make_grid, Axis, SampledField, TensorGrid};
use crate::output::{fmt17, pairwise_sum, CsvWriter};
use crate::propagators::{
    diagonal_exponents, extension_identity, family_sweep, hls_kernel_check, schrodinger_scaling_test,
    strichartz_quotient_klein_gordon, strichartz_quotient_schrodinger, ExponentPolicy, InitialFamily,
    KleinGordonExponents, Model, QuotientReport,
};
use crate::quadrature::composite_legendre;
use crate::restriction::{
    duality_check, exponent_table, restriction_operator, sample_surface, schatten_from_singular, singular_values,
    ts_matrix, DualityConfig, QuadraticSurface, SurfaceKind,
};
use crate::transforms::TransformPlan;

pub const KERNEL_SAMPLES: usize = 100_000;
pub const KERNEL_TOLERANCE: f64 = 1e-12;
pub const C_KAPPA_TOLERANCE: f64 = 1e-8;
pub const TRANSFORM_TOLERANCE: f64 = 1e-6;
pub const EIGEN_RADIUS: f64 = 4.0;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-3;
pub const DUALITY_TOLERANCE: f64 = 1e-8;
pub const SCHATTEN_TOLERANCE: f64 = 1e-10;
pub const RANDOM_MATRICES: usize = 100;
pub const IDENTITY_TOLERANCE: f64 = 1e-6;
pub const SLOPE_TOLERANCE: f64 = 1e-6;
pub const GROWTH_TOLERANCE: f64 = 1e-10;
pub const SCALING_INVARIANCE: f64 = 0.02;
pub const SCALING_DRIFT: f64 = 0.10;
pub const UNITARITY_TOLERANCE: f64 = 1e-8;

/// Distinct seed streams for the randomized parts of each suite.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub(crate) fn kappa_field(kappa: &[f64]) -> String {
    kappa.iter().map(|&k| fmt17(k)).collect::<Vec<_>>().join(";")
}

fn rational(x: num_rational::Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn point_field(xi: &[f64], zeta: &[f64]) -> String {
    xi.iter().chain(zeta).map(|&v| fmt17(v)).collect::<Vec<_>>().join(";")
}

fn write_checks(path: &Path, checks: &[Check]) -> Result<()> {
    let mut w = CsvWriter::create(path, &["check", "value", "relation", "bound", "passed"])?;
    for c in checks {
        w.row(&[c.name.clone(), fmt17(c.value), c.relation.into(), fmt17(c.bound), c.passed.to_string()])?;
    }
    w.finish()
}

// ---------------------------------------------------------------- dunkl core

/// ∫_0^∞ e^{-v^2/2} v^{2k} dv through v = s^2, composite Gauss–Legendre.
fn half_axis_moment(k: f64) -> f64 {
    let rule = composite_legendre(0.0, 3.5, 35, 20);
    rule.integrate(|s| (-0.5 * s.powi(4)).exp() * s.powf(4.0 * k) * 2.0 * s)
}

/// Relative error of c_kappa against an independent quadrature.
pub fn c_kappa_error(geom: &DunklGeometry) -> f64 {
    let quad: f64 = geom.kappa().iter().map(|&k| 2.0 * half_axis_moment(k)).product();
    (quad - geom.c_kappa()).abs() / geom.c_kappa()
}

/// Worst residuals of the kernel identities over random (ζ, y, λ, σ).
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct KernelResiduals {
    /// max |E(iζ, y)| - 1
    pub bound_excess: f64,
    /// |E(iζ, y) - E(iy, ζ)|
    pub symmetry: f64,
    /// |E(iλζ, y) - E(iζ, λy)|
    pub scaling: f64,
    /// |E(-iζ, y) - conj E(iζ, y)|
    pub conjugation: f64,
    /// |E(iσζ, σy) - E(iζ, y)| for sign flips σ
    pub reflection: f64,
    /// |h^2(λy) - λ^{2γ} h^2(y)| / (λ^{2γ} h^2(y))
    pub homogeneity: f64,
}

pub fn kernel_residuals(geom: &DunklGeometry, samples: usize, seed: u64) -> Result<KernelResiduals> {
    let mut r = rng(seed, 1);
    let d = geom.d();
    let two_gamma = 2.0 * geom.gamma_kappa();
    let mut out = KernelResiduals { bound_excess: f64::NEG_INFINITY, ..Default::default() };
    for _ in 0..samples {
        let zeta: Vec<f64> = (0..d).map(|_| r.random_range(-30.0..30.0)).collect();
        let y: Vec<f64> = (0..d).map(|_| r.random_range(-30.0..30.0)).collect();
        let lambda: f64 = r.random_range(0.05..5.0);
        let sigma: Vec<f64> = (0..d).map(|_| if r.random::<bool>() { 1.0 } else { -1.0 }).collect();
        let e = geom.kernel_imag(1.0, &zeta, &y)?;
        out.bound_excess = out.bound_excess.max(e.norm() - 1.0);
        out.symmetry = out.symmetry.max((e - geom.kernel_imag(1.0, &y, &zeta)?).norm());
        let lz: Vec<f64> = zeta.iter().map(|v| lambda * v).collect();
        let ly: Vec<f64> = y.iter().map(|v| lambda * v).collect();
        let scaled = geom.kernel_imag(1.0, &lz, &y)? - geom.kernel_imag(1.0, &zeta, &ly)?;
        out.scaling = out.scaling.max(scaled.norm());
        out.conjugation = out.conjugation.max((geom.kernel_imag(-1.0, &zeta, &y)? - e.conj()).norm());
        let sz: Vec<f64> = zeta.iter().zip(&sigma).map(|(a, b)| a * b).collect();
        let sy: Vec<f64> = y.iter().zip(&sigma).map(|(a, b)| a * b).collect();
        out.reflection = out.reflection.max((geom.kernel_imag(1.0, &sz, &sy)? - e).norm());
        let h = geom.weight_h2(&y)? * lambda.powf(two_gamma);
        if h > 0.0 {
            out.homogeneity = out.homogeneity.max((geom.weight_h2(&ly)? - h).abs() / h);
        }
    }
    Ok(out)
}

pub(crate) fn verify_core(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let geom = cfg.geometry.build()?;
    let mut checks = vec![Check::at_most("c_kappa", c_kappa_error(&geom), C_KAPPA_TOLERANCE)];
    // polar coordinates: c_kappa = σ(S^{d-1}) 2^{D/2-1} Γ(D/2)
    let dd = geom.y_dimension();
    let polar = geom.sigma_sphere() * 2f64.powf(0.5 * dd - 1.0) * crate::specfun::gamma_real(0.5 * dd)?;
    checks.push(Check::at_most("c_kappa_polar", (polar - geom.c_kappa()).abs() / geom.c_kappa(), KERNEL_TOLERANCE));
    checks.push(Check::at_most("radial_constant", (geom.radial_constant() - 1.0).abs(), KERNEL_TOLERANCE));
    let k = kernel_residuals(&geom, KERNEL_SAMPLES, cfg.seed)?;
    checks.extend([
        Check::at_most("kernel_bound_excess", k.bound_excess, KERNEL_TOLERANCE),
        Check::at_most("kernel_symmetry", k.symmetry, KERNEL_TOLERANCE),
        Check::at_most("kernel_scaling", k.scaling, KERNEL_TOLERANCE),
        Check::at_most("kernel_conjugation", k.conjugation, KERNEL_TOLERANCE),
        Check::at_most("kernel_reflection", k.reflection, KERNEL_TOLERANCE),
        Check::at_most("weight_homogeneity", k.homogeneity, KERNEL_TOLERANCE),
    ]);
    let file = "verify-core.csv";
    write_checks(&out.join(file), &checks)?;
    Ok(SuiteReport::new(Suite::VerifyCore, checks, vec![file.into()]))
}

// ---------------------------------------------------------------- transforms

#[derive(Debug, Clone, Serialize)]
pub struct TransformRow {
    pub function: &'static str,
    /// | ‖Ff‖_2 - ‖f‖_2 | / ‖f‖_2
    pub plancherel_defect: f64,
    /// max |F^{-1}F f - f| / max |f|
    pub roundtrip_error: f64,
}

pub fn transform_battery(grid: &Arc<TensorGrid>) -> Result<Vec<TransformRow>> {
    let plan = TransformPlan::new(Arc::clone(grid))?;
    schwartz_battery()
        .into_iter()
        .map(|tf| {
            let f = grid.sample(tf.eval);
            let fh = plan.forward(&f)?;
            let back = plan.inverse(&fh)?;
            let norm = f.lp_norm(2.0)?;
            let peak = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            let err = back.values().iter().zip(f.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            Ok(TransformRow {
                function: tf.name,
                plancherel_defect: (fh.lp_norm(2.0)? - norm).abs() / norm,
                roundtrip_error: err / peak,
            })
        })
        .collect()
}

/// max over grid frequencies with |ζ| ≤ radius of |F(e^{-|v|^2/2}) - e^{-|ζ|^2/2}|.
pub fn gaussian_eigen_error(grid: &Arc<TensorGrid>, radius: f64) -> Result<f64> {
    let plan = TransformPlan::new(Arc::clone(grid))?;
    let f = grid.sample(|v| Complex64::new((-0.5 * v.iter().map(|t| t * t).sum::<f64>()).exp(), 0.0));
    let fh = plan.forward(&f)?;
    let mut err: f64 = 0.0;
    for (i, v) in fh.values().iter().enumerate() {
        let r2: f64 = grid.point(i).iter().map(|t| t * t).sum();
        if r2 <= radius * radius {
            err = err.max((v - (-0.5 * r2).exp()).norm());
        }
    }
    Ok(err)
}

pub(crate) fn config_grid(cfg: &RunConfig, geom: &DunklGeometry) -> Result<Arc<TensorGrid>> {
    let dim = geom.dim();
    make_grid(geom, &vec![cfg.grid.extent; dim], &vec![cfg.grid.count; dim], cfg.grid.kind)
}

pub(crate) fn verify_transforms(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let geom = cfg.geometry.build()?;
    let grid = config_grid(cfg, &geom)?;
    let rows = transform_battery(&grid)?;
    let file = "verify-transforms.csv";
    let mut w = CsvWriter::create(
        &out.join(file),
        &["n", "d", "kappa", "grid_points", "function", "plancherel_defect", "roundtrip_error"],
    )?;
    for r in &rows {
        w.row(&[
            geom.n().to_string(),
            geom.d().to_string(),
            kappa_field(geom.kappa()),
            grid.len().to_string(),
            r.function.into(),
            fmt17(r.plancherel_defect),
            fmt17(r.roundtrip_error),
        ])?;
    }
    w.finish()?;
    let worst = |f: fn(&TransformRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let checks = vec![
        Check::at_most("plancherel_defect", worst(|r| r.plancherel_defect), TRANSFORM_TOLERANCE),
        Check::at_most("roundtrip_error", worst(|r| r.roundtrip_error), TRANSFORM_TOLERANCE),
        Check::at_most("gaussian_eigenfunction", gaussian_eigen_error(&grid, EIGEN_RADIUS)?, TRANSFORM_TOLERANCE),
    ];
    Ok(SuiteReport::new(Suite::VerifyTransforms, checks, vec![file.into()]))
}

// ---------------------------------------------------------------- closed forms

/// Whether a threshold row should show a radius-growing sup.
pub fn threshold_expectation(variant: &str, offset: f64) -> bool {
    match variant {
        "sphere" => offset < 0.0,
        _ => offset != 0.0,
    }
}

pub(crate) fn verify_closed_forms(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let rows = comparison_suite(&cfg.closed_forms.kappas)?;
    let file = "verify-closed-forms.csv";
    let mut w = CsvWriter::create(
        &out.join(file),
        &[
            "variant", "n", "d", "kappa", "z_re", "z_im", "point", "closed_form_re", "closed_form_im", "oracle_re",
            "oracle_im", "rel_err",
        ],
    )?;
    for r in &rows {
        w.row(&[
            r.variant.into(),
            r.n.to_string(),
            r.d.to_string(),
            kappa_field(&r.kappa),
            fmt17(r.z),
            fmt17(0.0),
            point_field(&[r.xi], &[r.zeta]),
            fmt17(r.closed_form.re),
            fmt17(r.closed_form.im),
            fmt17(r.oracle.re),
            fmt17(r.oracle.im),
            fmt17(r.rel_err),
        ])?;
    }
    w.finish()?;
    let mut checks = Vec::new();
    for variant in ["sphere", "paraboloid", "positive-definite", "hyperboloid"] {
        let errs: Vec<f64> = rows.iter().filter(|r| r.variant == variant).map(|r| r.rel_err).collect();
        if !errs.is_empty() {
            let worst = errs.iter().copied().fold(0.0, f64::max);
            checks.push(Check::at_most(&format!("{variant}_rel_err"), worst, CLOSED_FORM_TOLERANCE));
        }
    }

    let mut geom = cfg.geometry.build()?;
    if geom.n() == 0 {
        geom = DunklGeometry::new(1, geom.kappa().to_vec())?;
    }
    let thresholds = threshold_suite(&geom)?;
    let tfile = "closed-form-thresholds.csv";
    let mut w = CsvWriter::create(
        &out.join(tfile),
        &["variant", "n", "d", "kappa", "n_kappa", "offset", "radius", "sup", "growth", "growing", "expected_growing"],
    )?;
    for t in &thresholds {
        let expected = threshold_expectation(t.variant, t.offset);
        for (radius, sup) in t.radii.iter().zip(&t.sups) {
            w.row(&[
                t.variant.into(),
                geom.n().to_string(),
                geom.d().to_string(),
                kappa_field(&t.kappa),
                fmt17(t.n_kappa),
                fmt17(t.offset),
                fmt17(*radius),
                fmt17(*sup),
                fmt17(t.growth),
                t.growing().to_string(),
                expected.to_string(),
            ])?;
        }
        let name = format!("threshold_{}_offset_{}", t.variant, t.offset);
        checks.push(Check::holds(&name, t.growing() == expected));
    }
    w.finish()?;
    Ok(SuiteReport::new(Suite::VerifyClosedForms, checks, vec![file.into(), tfile.into()]))
}

// ---------------------------------------------------------------- restriction

fn surface_l2(weights: &[f64], values: &[Complex64]) -> f64 {
    let terms: Vec<f64> = weights.iter().zip(values).map(|(w, v)| w * v.norm_sqr()).collect();
    pairwise_sum(&terms).sqrt()
}

const SCAN_TRUNCATIONS: [f64; 3] = [4.0, 6.0, 8.0];

pub(crate) fn restriction_scan(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let geom = cfg.geometry.build()?;
    let grid = config_grid(cfg, &geom)?;
    let plan = TransformPlan::new(Arc::clone(&grid))?;
    let battery: Vec<(&str, SampledField)> = schwartz_battery().into_iter().map(|t| (t.name, grid.sample(t.eval))).collect();
    let file = "restriction-scan.csv";
    let mut w = CsvWriter::create(
        &out.join(file),
        &["surface", "n", "d", "kappa", "case", "p", "in_theorem", "truncation", "function", "ratio"],
    )?;
    let mut checks = Vec::new();
    for &kind in &cfg.restriction.surfaces {
        let Ok(table) = exponent_table(kind, &geom) else { continue };
        let surface = QuadraticSurface::new(kind, geom.clone())?;
        let mut ps = vec![table.p_restriction.lo];
        ps.extend(table.p_restriction.hi.filter(|h| *h != table.p_restriction.lo));
        let truncations: &[f64] = if kind == SurfaceKind::Sphere { &SCAN_TRUNCATIONS[..1] } else { &SCAN_TRUNCATIONS };
        let (mut worst_residual, mut all_finite) = (0.0f64, true);
        for &trunc in truncations {
            let sampling = sample_surface(&surface, cfg.restriction.resolution, trunc)?;
            worst_residual = worst_residual.max(sampling.max_residual());
            for (name, f) in &battery {
                let restricted = surface_l2(sampling.weights(), &restriction_operator(&plan, f, &sampling)?);
                for &p in &ps {
                    let pf = rational(p);
                    let ratio = restricted / f.lp_norm(pf)?;
                    all_finite &= ratio.is_finite();
                    w.row(&[
                        kind.name().into(),
                        geom.n().to_string(),
                        geom.d().to_string(),
                        kappa_field(geom.kappa()),
                        table.case.map_or(String::new(), |c| c.to_string()),
                        fmt17(pf),
                        table.p_restriction.contains(p).to_string(),
                        sampling.truncation().map_or(String::new(), fmt17),
                        (*name).into(),
                        fmt17(ratio),
                    ])?;
                }
            }
        }
        checks.push(Check::at_most(&format!("{}_surface_residual", kind.name()), worst_residual, 1e-12));
        checks.push(Check::holds(&format!("{}_ratios_finite", kind.name()), all_finite));
    }
    w.finish()?;
    Ok(SuiteReport::new(Suite::RestrictionScan, checks, vec![file.into()]))
}

// ---------------------------------------------------------------- Schatten

/// Largest relative violation of Schatten monotonicity over the indices and
/// of ‖A‖_{2λ} ≤ ‖A‖_2^{1/λ} ‖A‖_∞^{1-1/λ}.
pub fn schatten_violations(a: &DMatrix<Complex64>, lambda: f64) -> Result<(f64, f64)> {
    let s = singular_values(a);
    let indices = [1.0, 1.5, 2.0, 2.0 * lambda, 3.0, 4.0, 8.0, f64::INFINITY];
    let mut sorted = indices.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let norms = sorted.iter().map(|&p| schatten_from_singular(&s, p)).collect::<Result<Vec<_>>>()?;
    let mono = norms.windows(2).map(|w| w[1] / w[0] - 1.0).fold(f64::NEG_INFINITY, f64::max);
    let lhs = schatten_from_singular(&s, 2.0 * lambda)?;
    let rhs = schatten_from_singular(&s, 2.0)?.powf(1.0 / lambda) * s[0].powf(1.0 - 1.0 / lambda);
    Ok((mono, lhs / rhs - 1.0))
}

/// Worst violations over seeded random complex Gaussian matrices of sizes up to 12.
pub fn random_schatten_violations(count: usize, seed: u64) -> Result<(f64, f64)> {
    let mut r = rng(seed, 2);
    let (mut mono, mut holder) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..count {
        let (rows, cols) = (r.random_range(2..=12), r.random_range(2..=12));
        let a = DMatrix::from_fn(rows, cols, |_, _| Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal)));
        let lambda = r.random_range(1.0..4.0);
        let (m, h) = schatten_violations(&a, lambda)?;
        mono = mono.max(m);
        holder = holder.max(h);
    }
    Ok((mono, holder))
}

fn gaussian_weight(grid: &Arc<TensorGrid>, rate: f64, tilt: f64) -> SampledField {
    grid.sample(|v| {
        let r2: f64 = v.iter().map(|t| t * t).sum();
        Complex64::new((1.0 + tilt * v[v.len() - 1]) * (-rate * r2).exp(), 0.0)
    })
}

pub(crate) fn matrix_grid(cfg: &RunConfig, geom: &DunklGeometry) -> Result<Arc<TensorGrid>> {
    let dim = geom.dim();
    let r = &cfg.restriction;
    make_grid(geom, &vec![r.matrix_extent; dim], &vec![r.matrix_count; dim], cfg.grid.kind)
}

pub(crate) fn schatten_scan(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let geom = cfg.geometry.build()?;
    let grid = matrix_grid(cfg, &geom)?;
    let w1 = gaussian_weight(&grid, 0.5, 0.3);
    let w2 = gaussian_weight(&grid, 0.35, 0.0);
    let unit = gaussian_weight(&grid, 0.5, 0.0);
    let file = "schatten-scan.csv";
    let mut w = CsvWriter::create(
        &out.join(file),
        &["surface", "n", "d", "kappa", "lambda0", "schatten_index", "truncation", "schatten_norm", "weight_product", "ratio"],
    )?;
    let dfile = "duality.csv";
    let mut dw = CsvWriter::create(
        &out.join(dfile),
        &["surface", "n", "d", "kappa", "alpha", "trials", "schatten_constant", "max_ratio", "single_function_ratio", "max_gram_defect"],
    )?;
    let mut checks = Vec::new();
    let (mut mono, mut holder, mut duality) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &kind in &cfg.restriction.surfaces {
        let Ok(table) = exponent_table(kind, &geom) else { continue };
        let lambda = rational(table.lambda0);
        let index = 2.0 * lambda;
        let surface = QuadraticSurface::new(kind, geom.clone())?;
        let sampling = sample_surface(&surface, cfg.restriction.resolution, cfg.restriction.truncation)?;
        let t = ts_matrix(&sampling, &grid, Some(&w1), Some(&w2))?;
        let norm = schatten_from_singular(&singular_values(&t), index)?;
        let product = w1.lp_norm(index)? * w2.lp_norm(index)?;
        w.row(&[
            kind.name().into(),
            geom.n().to_string(),
            geom.d().to_string(),
            kappa_field(geom.kappa()),
            fmt17(lambda),
            fmt17(index),
            sampling.truncation().map_or(String::new(), fmt17),
            fmt17(norm),
            fmt17(product),
            fmt17(norm / product),
        ])?;
        let (m, h) = schatten_violations(&t, lambda)?;
        mono = mono.max(m);
        holder = holder.max(h);
        for &alpha in &cfg.restriction.alphas {
            let rep = duality_check(
                &sampling,
                &grid,
                &unit,
                DualityConfig { alpha, trials: cfg.restriction.trials, max_family: cfg.restriction.max_family, seed: cfg.seed },
            )?;
            duality = duality.max(rep.max_ratio);
            dw.row(&[
                kind.name().into(),
                geom.n().to_string(),
                geom.d().to_string(),
                kappa_field(geom.kappa()),
                fmt17(alpha),
                rep.trials.to_string(),
                fmt17(rep.schatten_constant),
                fmt17(rep.max_ratio),
                fmt17(rep.single_function_ratio),
                fmt17(rep.max_gram_defect),
            ])?;
        }
    }
    w.finish()?;
    dw.finish()?;
    let (rm, rh) = random_schatten_violations(RANDOM_MATRICES, cfg.seed)?;
    if duality.is_finite() {
        checks.push(Check::at_most("duality_ratio_excess", duality - 1.0, DUALITY_TOLERANCE));
        checks.push(Check::at_most("ts_schatten_monotonicity", mono, SCHATTEN_TOLERANCE));
        checks.push(Check::at_most("ts_schatten_holder", holder, SCHATTEN_TOLERANCE));
    }
    checks.push(Check::at_most("random_schatten_monotonicity", rm, SCHATTEN_TOLERANCE));
    checks.push(Check::at_most("random_schatten_holder", rh, SCHATTEN_TOLERANCE));
    Ok(SuiteReport::new(Suite::SchattenScan, checks, vec![file.into(), dfile.into()]))
}

// ---------------------------------------------------------------- Strichartz

const STRICHARTZ_HEADER: [&str; 12] = [
    "model", "d", "kappa", "p", "q", "r", "beta", "m", "quotient", "tail_estimate", "scaling_lambda", "scaling_drift",
];

fn quotient_row(rep: &QuotientReport) -> Vec<String> {
    let r = match rep.model {
        Model::KleinGordon => fmt17(rep.q),
        Model::Schrodinger => String::new(),
    };
    vec![
        rep.model.name().into(),
        rep.d.to_string(),
        kappa_field(&rep.kappa),
        fmt17(rep.p),
        fmt17(rep.q),
        r,
        fmt17(rep.beta),
        rep.m.to_string(),
        fmt17(rep.quotient),
        fmt17(rep.tail_estimate),
        String::new(),
        String::new(),
    ]
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

/// HLS exponents λ0 checked: one inside ((D+1)/2, (D+2)/2] and the right end.
pub fn hls_lambdas(geom: &DunklGeometry) -> [f64; 2] {
    let dd = geom.y_dimension();
    [0.5 * (dd + 1.0) + 0.25, 0.5 * (dd + 2.0)]
}

pub fn hls_s_values() -> Vec<f64> {
    (0..13).map(|k| -3.0 + 0.5 * k as f64).collect()
}

pub fn hls_t_values() -> Vec<f64> {
    log_grid(0.01, 100.0, 9)
}

/// Initial datum of the extension identities and the grid it lives on.
pub fn identity_datum(kappa: f64) -> Result<SampledField> {
    let g = DunklGeometry::new(0, vec![kappa])?;
    let grid = Arc::new(TensorGrid::new(g, vec![Axis::composite_order(10.0, kappa, 0.5, 16)?])?);
    Ok(grid.sample(|y| Complex64::new(1.0 + 0.5 * y[0], 0.2 * y[0]) * (-0.5 * y[0] * y[0]).exp()))
}

pub const IDENTITY_TIMES: [f64; 4] = [-0.7, 0.0, 0.4, 1.0];
pub const IDENTITY_RESOLUTION: usize = 384;
pub const IDENTITY_TRUNCATION: f64 = 9.0;

pub(crate) fn strichartz_scan(cfg: &RunConfig, out: &Path) -> Result<SuiteReport> {
    let s = &cfg.strichartz;
    let geom = cfg.geometry.y_part()?;
    let policy = if s.force { ExponentPolicy::Force } else { ExponentPolicy::Enforce };
    let file = "strichartz-scan.csv";
    let mut w = CsvWriter::create(&out.join(file), &STRICHARTZ_HEADER)?;
    let mut checks = Vec::new();
    for &model in &s.models {
        let reports = if s.exponents.is_empty() {
            family_sweep(model, &geom, &s.family_sizes, s.window)?
        } else {
            let mut reps = Vec::new();
            for &m in &s.family_sizes {
                let family = InitialFamily::hermite(&geom, m)?;
                for &e in &s.exponents {
                    reps.push(match model {
                        Model::Schrodinger => strichartz_quotient_schrodinger(&family, e, e, policy, s.window)?,
                        Model::KleinGordon => strichartz_quotient_klein_gordon(
                            &family,
                            KleinGordonExponents::Diagonal { r: e },
                            policy,
                            s.window,
                        )?,
                    });
                }
            }
            reps
        };
        for rep in &reports {
            w.row(&quotient_row(rep))?;
        }
        let name = model.name();
        let finite = reports.iter().all(|r| r.quotient.is_finite() && r.quotient > 0.0);
        checks.push(Check::holds(&format!("{name}_quotients_finite"), finite));
        let mass = reports.iter().map(|r| r.mass_defect).fold(0.0, f64::max);
        checks.push(Check::at_most(&format!("{name}_unitarity_drift"), mass, UNITARITY_TOLERANCE));
        let joint = reports
            .iter()
            .filter_map(|r| r.joint_norm.map(|j| (j - r.numerator).abs() / r.numerator))
            .fold(0.0, f64::max);
        checks.push(Check::at_most(&format!("{name}_diagonal_consistency"), joint, SCHATTEN_TOLERANCE));
    }

    if s.scaling_test {
        let e = rational(diagonal_exponents(&geom)?.density_exponent);
        let exponents = [e, 0.8 * e, 1.2 * e];
        let series = schrodinger_scaling_test(&geom, &exponents, &s.scaling_lambdas, s.window)?;
        for (k, sr) in series.iter().enumerate() {
            let beta = 2.0 * sr.exponent / (sr.exponent + 1.0);
            for (l, q) in sr.lambdas.iter().zip(&sr.quotients) {
                w.row(&[
                    Model::Schrodinger.name().into(),
                    geom.d().to_string(),
                    kappa_field(geom.kappa()),
                    fmt17(sr.exponent),
                    fmt17(sr.exponent),
                    String::new(),
                    fmt17(beta),
                    "1".into(),
                    fmt17(*q),
                    String::new(),
                    fmt17(*l),
                    fmt17(sr.drift),
                ])?;
            }
            if sr.lambdas.len() > 1 {
                checks.push(if k == 0 {
                    Check::at_most("scaling_invariance", sr.drift, SCALING_INVARIANCE)
                } else {
                    Check::at_least(&format!("scaling_drift_{}", if k == 1 { "low" } else { "high" }), sr.drift, SCALING_DRIFT)
                });
            }
        }
    }
    w.finish()?;

    let hfile = "hls-kernel.csv";
    let mut hw = CsvWriter::create(
        &out.join(hfile),
        &["d", "kappa", "lambda0", "expected_slope", "max_slope_error", "max_growth_ratio", "y_defect", "constant"],
    )?;
    let ys: Vec<Vec<f64>> = [0.3, -1.7, 4.0].iter().map(|&v| vec![v; geom.d()]).collect();
    let (mut slope, mut growth, mut ydef) = (0.0f64, 0.0f64, 0.0f64);
    for lambda0 in hls_lambdas(&geom) {
        let rep = hls_kernel_check(&geom, lambda0, &hls_s_values(), &hls_t_values(), &ys)?;
        hw.row(&[
            geom.d().to_string(),
            kappa_field(geom.kappa()),
            fmt17(rep.lambda0),
            fmt17(rep.expected_slope),
            fmt17(rep.max_slope_error),
            fmt17(rep.max_growth_ratio),
            fmt17(rep.y_defect),
            fmt17(rep.constant),
        ])?;
        slope = slope.max(rep.max_slope_error);
        growth = growth.max(rep.max_growth_ratio);
        ydef = ydef.max(rep.y_defect);
    }
    hw.finish()?;
    checks.push(Check::at_most("hls_slope", slope, SLOPE_TOLERANCE));
    checks.push(Check::at_most("hls_growth_excess", growth - 1.0, GROWTH_TOLERANCE));
    checks.push(Check::at_most("hls_y_independence", ydef, 1e-12));

    let mut files = vec![file.to_string(), hfile.to_string()];
    if geom.d() == 1 {
        let ifile = "extension-identities.csv";
        let mut iw = CsvWriter::create(&out.join(ifile), &["model", "d", "kappa", "max_abs_error", "max_rel_error"])?;
        let phi = identity_datum(geom.kappa()[0])?;
        for model in [Model::Schrodinger, Model::KleinGordon] {
            let rep = extension_identity(model, &phi, &IDENTITY_TIMES, IDENTITY_RESOLUTION, IDENTITY_TRUNCATION)?;
            iw.row(&[
                model.name().into(),
                "1".into(),
                kappa_field(&rep.kappa),
                fmt17(rep.max_abs_error),
                fmt17(rep.max_rel_error),
            ])?;
            checks.push(Check::at_most(&format!("{}_extension_identity", model.name()), rep.max_abs_error, IDENTITY_TOLERANCE));
        }
        iw.finish()?;
        files.push(ifile.into());
    }
    Ok(SuiteReport::new(Suite::StrichartzScan, checks, files))
}
