//! Gauss rules from three-term recurrences and composite panel rules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use crate::specfun::{gamma_real, ln_gamma_real};

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine image of a rule on [-1, 1] onto [lo, hi].
    pub fn mapped(&self, lo: f64, hi: f64) -> Rule {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        Rule {
            nodes: self.nodes.iter().map(|&t| mid + half * t).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }

    fn append(&mut self, other: Rule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// Orthonormal-polynomial recurrence
/// sqrt(b[k+1]) p_{k+1} = (x - a[k]) p_k - sqrt(b[k]) p_{k-1}.
/// `a` has length m and `b` length m + 1 (b[0] unused).
/// Weights are returned divided by scale(x)^2, which lets Hermite-type rules
/// report w e^{x^2} without underflow.
fn rule_from_recurrence(a: &[f64], b: &[f64], mu0: f64, scale: impl Fn(f64) -> f64) -> Rule {
    let m = a.len();
    let sb: Vec<f64> = b.iter().map(|v| v.sqrt()).collect();
    let jac = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            a[i]
        } else if i + 1 == j {
            sb[j]
        } else if j + 1 == i {
            sb[i]
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jac.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let p0 = 1.0 / mu0.sqrt();
    // Newton polish on p_m, then Christoffel weights
    let eval = |x: f64| -> (f64, f64) {
        let (mut pm1, mut p) = (0.0, p0);
        let (mut dm1, mut dp) = (0.0, 0.0);
        for k in 0..m {
            let pn = ((x - a[k]) * p - sb[k] * pm1) / sb[k + 1];
            let dn = ((x - a[k]) * dp + p - sb[k] * dm1) / sb[k + 1];
            pm1 = p;
            p = pn;
            dm1 = dp;
            dp = dn;
        }
        (p, dp)
    };
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*x);
            if dp == 0.0 || !dp.is_finite() || !p.is_finite() {
                break;
            }
            let step = p / dp;
            if step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
        }
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (mut qm1, mut q) = (0.0, scale(x) * p0);
            let mut s = q * q;
            for k in 0..m - 1 {
                let qn = ((x - a[k]) * q - sb[k] * qm1) / sb[k + 1];
                qm1 = q;
                q = qn;
                s += q * q;
            }
            1.0 / s
        })
        .collect();
    Rule { nodes, weights }
}

fn jacobi_rule_uncached(m: usize, alpha: f64, beta: f64) -> Rule {
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(m);
    let mut b = vec![0.0; m + 1];
    for k in 0..m {
        let kf = k as f64;
        let den = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        a.push(if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / den
        });
    }
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *bk = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
    }
    let ln_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma_real(alpha + 1.0).unwrap()
        + ln_gamma_real(beta + 1.0).unwrap()
        - ln_gamma_real(ab + 2.0).unwrap();
    rule_from_recurrence(&a, &b, ln_mu0.exp(), |_| 1.0)
}

type JacobiKey = (usize, u64, u64);

fn jacobi_cache() -> &'static Mutex<HashMap<JacobiKey, Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<JacobiKey, Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.
pub fn gauss_jacobi(m: usize, alpha: f64, beta: f64) -> Arc<Rule> {
    assert!(m >= 1 && alpha > -1.0 && beta > -1.0, "bad Jacobi parameters");
    let key = (m, alpha.to_bits(), beta.to_bits());
    if let Some(r) = jacobi_cache().lock().unwrap().get(&key) {
        return Arc::clone(r);
    }
    let rule = Arc::new(jacobi_rule_uncached(m, alpha, beta));
    jacobi_cache().lock().unwrap().insert(key, Arc::clone(&rule));
    rule
}

/// Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(m: usize) -> Arc<Rule> {
    gauss_jacobi(m, 0.0, 0.0)
}

/// Gauss–Gegenbauer rule on [-1, 1] for the weight (1-x^2)^lambda.
pub fn gauss_gegenbauer(m: usize, lambda: f64) -> Arc<Rule> {
    gauss_jacobi(m, lambda, lambda)
}

/// Generalized Gauss–Hermite rule for the weight |u|^{2 kappa} e^{-u^2} on the
/// line. The returned weights are w_k e^{u_k^2}, so the rule integrates
/// ∫ g(u) |u|^{2 kappa} du for g decaying like a Gaussian.
pub fn gauss_gen_hermite_scaled(m: usize, kappa: f64) -> Rule {
    assert!(m >= 1 && kappa >= 0.0);
    let a = vec![0.0; m];
    let mut b = vec![0.0; m + 1];
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *bk = if k % 2 == 1 { 0.5 * (kf + 2.0 * kappa) } else { 0.5 * kf };
    }
    let mu0 = gamma_real(kappa + 0.5).unwrap();
    rule_from_recurrence(&a, &b, mu0, |x| (-0.5 * x * x).exp())
}

/// Composite Gauss–Legendre rule: `panels` equal panels of `k` nodes on [lo, hi].
pub fn composite_legendre(lo: f64, hi: f64, panels: usize, k: usize) -> Rule {
    let base = gauss_legendre(k);
    let mut out = Rule { nodes: Vec::new(), weights: Vec::new() };
    let h = (hi - lo) / panels as f64;
    for p in 0..panels {
        let a = lo + p as f64 * h;
        out.append(base.mapped(a, a + h));
    }
    out
}

/// Rule for ∫_0^len f(y) y^{power} dy: Gauss–Jacobi on the panel touching 0,
/// Gauss–Legendre panels of width at most `panel` elsewhere.
/// The weights include the factor y^{power}.
pub fn half_line_weighted(len: f64, power: f64, panel: f64, k: usize) -> Rule {
    let mut out = Rule { nodes: Vec::new(), weights: Vec::new() };
    if len <= 0.0 {
        return out;
    }
    let first = panel.min(len);
    let jac = gauss_jacobi(k, 0.0, power);
    let half = 0.5 * first;
    let scale = half.powf(power + 1.0);
    for (&t, &w) in jac.nodes.iter().zip(&jac.weights) {
        out.nodes.push(half * (t + 1.0));
        out.weights.push(w * scale);
    }
    let rest = len - first;
    if rest > 0.0 {
        let panels = (rest / panel).ceil().max(1.0) as usize;
        let mut tail = composite_legendre(first, len, panels, k);
        for (x, w) in tail.nodes.iter().zip(tail.weights.iter_mut()) {
            *w *= x.powf(power);
        }
        out.append(tail);
    }
    out
}

/// Rule for ∫_{-len}^{len} f(y) |y|^{2 kappa} dy, mirrored about 0.
pub fn symmetric_weighted(len: f64, kappa: f64, panel: f64, k: usize) -> Rule {
    let half = half_line_weighted(len, 2.0 * kappa, panel, k);
    let mut nodes: Vec<f64> = half.nodes.iter().rev().map(|x| -x).collect();
    let mut weights: Vec<f64> = half.weights.iter().rev().copied().collect();
    nodes.extend_from_slice(&half.nodes);
    weights.extend_from_slice(&half.weights);
    Rule { nodes, weights }
}

/// Second-order Richardson extrapolation from values at eps, eps/2, eps/4
/// with error expanding in integer powers of eps.
pub fn richardson3(f_eps: f64, f_half: f64, f_quarter: f64) -> f64 {
    (8.0 * f_quarter - 6.0 * f_half + f_eps) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(10);
        for deg in 0..20 {
            let got = r.integrate(|x| x.powi(deg));
            let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((got - want).abs() < 1e-14, "deg {deg}");
        }
    }

    #[test]
    fn jacobi_moments() {
        let (al, be) = (0.5, -0.3);
        let r = gauss_jacobi(12, al, be);
        // ∫ (1-x)^al (1+x)^be (1+x)^j dx = 2^{al+be+j+1} B(al+1, be+j+1)
        for j in 0..20 {
            let jf = j as f64;
            let want = 2f64.powf(al + be + jf + 1.0)
                * (ln_gamma_real(al + 1.0).unwrap() + ln_gamma_real(be + jf + 1.0).unwrap()
                    - ln_gamma_real(al + be + jf + 2.0).unwrap())
                .exp();
            let got = r.integrate(|x| (1.0 + x).powi(j));
            assert!((got - want).abs() < 1e-13 * want, "j={j}");
        }
    }

    #[test]
    fn gen_hermite_exactness() {
        for &kappa in &[0.0, 0.5, 1.3] {
            let r = gauss_gen_hermite_scaled(30, kappa);
            for j in 0..20 {
                // ∫ u^{2j} |u|^{2k} e^{-u^2} du = Γ(j + k + 1/2)
                let got = r.integrate(|u| u.powi(2 * j as i32) * (-u * u).exp());
                let want = gamma_real(j as f64 + kappa + 0.5).unwrap();
                assert!((got - want).abs() < 1e-12 * want, "kappa={kappa} j={j}");
            }
        }
    }

    #[test]
    fn gen_hermite_outer_weights_are_accurate() {
        // the sum of scaled weights times e^{-u^2} is the total mass even when
        // the outer weights are far below machine epsilon
        let r = gauss_gen_hermite_scaled(200, 0.5);
        let mass: f64 = r.integrate(|u| (-u * u).exp());
        assert!((mass - 1.0).abs() < 1e-12);
        let outer = r.weights.last().unwrap() * (-r.nodes.last().unwrap().powi(2)).exp();
        assert!(outer > 0.0 && outer < 1e-100);
    }

    #[test]
    fn weighted_half_line() {
        let r = symmetric_weighted(3.0, 0.25, 0.5, 12);
        // ∫_{-3}^{3} |y|^{1/2} cos(y) dy
        let oracle = {
            let f = |y: f64| y.sqrt() * y.cos();
            // substitution y = s^2 makes the integrand smooth
            let g = composite_legendre(0.0, 3f64.sqrt(), 40, 20);
            2.0 * g.integrate(|s| 2.0 * s * f(s * s))
        };
        assert!((r.integrate(|y| y.cos()) - oracle).abs() < 1e-13);
        let _ = PI;
    }
}
