use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::{gamma_real, recip_gamma};
use crate::error::{Error, Result};
use crate::quadrature;

/// Below this argument the power series is used.
const SERIES_MAX: f64 = 2.0;

fn check_finite(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!("non-finite Bessel input nu={nu}, x={x}")));
    }
    Ok(())
}

fn asymptotic_threshold(nu: f64) -> f64 {
    25.0_f64.max(nu * nu + 10.0)
}

/// J_nu(x) / (x/2)^nu as a power series, for small x.
fn j_series_scaled(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = recip_gamma(Complex64::new(nu + 1.0, 0.0)).re;
    if term == 0.0 {
        // nu + 1 a non-positive integer: start at the first non-vanishing term
        let k0 = (-(nu + 1.0)).round() as usize + 1;
        let mut t = 1.0;
        for k in 1..=k0 {
            t *= q / k as f64;
        }
        term = t * recip_gamma(Complex64::new(nu + 1.0 + k0 as f64, 0.0)).re;
        let mut sum = term;
        let mut k = k0;
        loop {
            k += 1;
            term *= q / (k as f64 * (k as f64 + nu));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                return sum;
            }
        }
    }
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || term == 0.0 {
            return sum;
        }
    }
}

/// Hankel asymptotic expansion: returns (J_nu(x), Y_nu(x)) for large x.
fn hankel_jy(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        let mag = a.abs();
        if mag > prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * a;
        } else {
            p += sign * a;
        }
        if mag < 1e-17 {
            break;
        }
        prev = mag;
    }
    let w = x - 0.5 * nu * PI - FRAC_PI_4;
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = w.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// Steed's continued-fraction method for x ≥ 2 and nu ≥ 0.
/// Returns (J_nu(x), Y_nu(x)).
fn steed_jy(nu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    let nl = ((nu - x + 1.5).floor()).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_nu / J_nu
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..100_000 {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            break;
        }
    }

    // downward recurrence to order xmu
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..100_000 {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < 0.0 {
        rjmu = -rjmu;
    }
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (rj, rymu)
}

/// (J_a(x), Y_a(x)) for a ≥ 0 and x ≥ SERIES_MAX.
fn jy_nonneg(a: f64, x: f64) -> (f64, f64) {
    if x >= asymptotic_threshold(a) {
        hankel_jy(a, x)
    } else {
        steed_jy(a, x)
    }
}

/// Bessel function of the first kind J_nu(x) for real order and x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_finite(nu, x)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("bessel_j needs x >= 0, got {x}")));
    }
    let neg_int = nu < 0.0 && nu == nu.round();
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 || neg_int {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("J_{nu}(0) is unbounded")))
        };
    }
    if x < SERIES_MAX {
        return Ok(j_series_scaled(nu, x) * (0.5 * x).powf(nu));
    }
    if nu >= 0.0 {
        return Ok(jy_nonneg(nu, x).0);
    }
    if x >= asymptotic_threshold(nu) {
        return Ok(hankel_jy(nu, x).0);
    }
    let a = -nu;
    let (j, y) = jy_nonneg(a, x);
    if neg_int {
        let sign = if (a as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * j);
    }
    Ok((a * PI).cos() * j - (a * PI).sin() * y)
}

/// J_nu(x) / x^nu, continuous at x = 0 for nu > -1.
pub fn normalized_bessel(nu: f64, x: f64) -> Result<f64> {
    check_finite(nu, x)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("normalized_bessel needs x >= 0, got {x}")));
    }
    if x < SERIES_MAX {
        if x == 0.0 && nu <= -1.0 {
            return Err(Error::Domain(format!("J_{nu}(x)/x^{nu} is unbounded at 0")));
        }
        return Ok(j_series_scaled(nu, x) * 0.5_f64.powf(nu));
    }
    Ok(bessel_j(nu, x)? / x.powf(nu))
}

/// The normalized function 2^a Γ(a+1) J_a(t) / t^a, even in t, equal to 1 at 0.
/// Requires a > -1.
pub(crate) fn jtilde(a: f64, t: f64) -> f64 {
    let t = t.abs();
    if a == -0.5 {
        return t.cos();
    }
    if t < SERIES_MAX {
        let q = -0.25 * t * t;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (k + a));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                return sum;
            }
        }
    }
    if a == 0.5 {
        return t.sin() / t;
    }
    if a == 1.5 && t >= 4.0 {
        let (s, c) = t.sin_cos();
        return 3.0 * (s - t * c) / (t * t * t);
    }
    let j = jy_nonneg_any(a, t);
    let pref = 2.0_f64.powf(a) * gamma_real(a + 1.0).unwrap_or(f64::NAN);
    pref * j / t.powf(a)
}

fn jy_nonneg_any(a: f64, t: f64) -> f64 {
    if a >= 0.0 {
        jy_nonneg(a, t).0
    } else {
        bessel_j(a, t).unwrap_or(f64::NAN)
    }
}

/// Modified Bessel function K_nu(x) for real order and x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    bessel_k_complex(Complex64::new(nu, 0.0), x).map(|k| k.re)
}

/// K_nu(x) for complex order, from the integral ∫_0^∞ e^{-x cosh t} cosh(nu t) dt
/// summed with the trapezoid rule (spectrally accurate for this integrand).
pub fn bessel_k_complex(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() || !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(Error::Domain(format!("bessel_k needs finite x > 0, got {x}")));
    }
    let h = 0.05;
    let a = nu.re.abs();
    let mut sum = 0.5 * (-x).exp() * Complex64::new(1.0, 0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let expo = -x * t.cosh();
        let term = (nu * t).cosh() * expo.exp();
        sum += term;
        if expo + a * t < -45.0 + (sum.norm().max(1e-300)).ln() {
            break;
        }
        k += 1;
        if k > 200_000 {
            break;
        }
    }
    Ok(sum * h)
}

/// J_nu(x) for complex order nu and real x ≥ 0.
///
/// Uses the power series for x < 8 and Schläfli's integral otherwise.
pub fn bessel_j_complex(nu: Complex64, x: f64) -> Result<Complex64> {
    if !x.is_finite() || x < 0.0 || !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(Error::Domain(format!("bessel_j_complex needs finite x >= 0, got {x}")));
    }
    if nu.im == 0.0 {
        return bessel_j(nu.re, x).map(|v| Complex64::new(v, 0.0));
    }
    if x == 0.0 {
        return if nu.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain(format!("J_{nu}(0) is not finite")))
        };
    }
    if x < 8.0 {
        let q = -0.25 * x * x;
        let mut term = recip_gamma(nu + 1.0);
        let mut sum = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (nu + k));
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() && k > x {
                break;
            }
        }
        return Ok(sum * (nu * (0.5 * x).ln()).exp());
    }
    // (1/π) ∫_0^π cos(nu θ - x sin θ) dθ
    let m = (x + 2.0 * nu.norm()) as usize + 48;
    let rule = quadrature::gauss_legendre(m);
    let mut first = Complex64::new(0.0, 0.0);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let th = FRAC_PI_2 * (t + 1.0);
        first += w * (nu * th - x * th.sin()).cos();
    }
    first *= FRAC_PI_2 / PI;
    // (sin nu π / π) ∫_0^∞ e^{-x sinh t - nu t} dt on geometric panels
    let g = quadrature::gauss_legendre(24);
    let mut second = Complex64::new(0.0, 0.0);
    let mut lo = 0.0;
    let mut hi = 1.0 / x;
    loop {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (&t, &w) in g.nodes.iter().zip(&g.weights) {
            let s = mid + half * t;
            second += w * half * (-x * s.sinh() - nu * s).exp();
        }
        if -x * hi.sinh() + nu.re.abs() * hi < -50.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    Ok(first - (nu * PI).sin() / PI * second)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// double-double accumulator for the series oracle
    #[derive(Clone, Copy)]
    struct Dd(f64, f64);
    impl Dd {
        fn add(self, b: f64) -> Dd {
            let s = self.0 + b;
            let bb = s - self.0;
            let err = (self.0 - (s - bb)) + (b - bb);
            let lo = self.1 + err;
            let hi = s + lo;
            Dd(hi, lo - (hi - s))
        }
    }

    fn series_oracle(nu: f64, x: f64, terms: usize) -> f64 {
        // terms computed in f64 from exact-ish ratios, accumulated in double-double
        let mut t = (0.5 * x).powf(nu) / gamma_real(nu + 1.0).unwrap();
        let mut acc = Dd(0.0, 0.0).add(t);
        for k in 1..terms {
            let kf = k as f64;
            t *= -(0.25 * x * x) / (kf * (kf + nu));
            acc = acc.add(t);
        }
        acc.0 + acc.1
    }

    #[test]
    fn j1_at_one() {
        let v = bessel_j(1.0, 1.0).unwrap();
        assert!((v - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((v - series_oracle(1.0, 1.0, 40)).abs() < 1e-15);
    }

    #[test]
    fn j_half_closed_form() {
        for &x in &[0.3, 1.0, 2.5, 7.0, 19.0, 33.0, 60.0] {
            let want = (2.0 / (PI * x)).sqrt() * f64::sin(x);
            let got = bessel_j(0.5, x).unwrap();
            assert!((got - want).abs() < 1e-13 * want.abs().max(1e-3), "x={x}");
            let want_m = (2.0 / (PI * x)).sqrt() * f64::cos(x);
            let got_m = bessel_j(-0.5, x).unwrap();
            assert!((got_m - want_m).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn series_oracle_agreement_across_branches() {
        // moderate x keeps the oracle's cancellation small
        for &nu in &[0.0, 0.25, 1.0, 1.5, 2.3, 4.0, -0.45, -0.75] {
            for &x in &[0.5, 1.9, 2.1, 4.0, 7.5, 11.0] {
                let oracle = series_oracle(nu, x, 80);
                let got = bessel_j(nu, x).unwrap();
                assert!((got - oracle).abs() < 2e-13, "nu={nu} x={x} {got} {oracle}");
            }
        }
    }

    #[test]
    fn recurrence_relation() {
        for &nu in &[0.3, 1.0, 2.5] {
            for &x in &[3.0, 12.0, 24.0, 26.0, 45.0] {
                let l = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
                let r = 2.0 * nu / x * bessel_j(nu, x).unwrap();
                assert!((l - r).abs() < 1e-13, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn negative_integer_order() {
        assert!((bessel_j(-1.0, 3.0).unwrap() + bessel_j(1.0, 3.0).unwrap()).abs() < 1e-15);
        assert!((bessel_j(-2.0, 30.0).unwrap() - bessel_j(2.0, 30.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn k_half_closed_form() {
        let v = bessel_k(0.5, 1.0).unwrap();
        let want = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((v - want).abs() < 1e-14);
        for &x in &[1e-3, 0.1, 2.0, 30.0] {
            let want = (PI / (2.0 * x)).sqrt() * f64::exp(-x);
            assert!((bessel_k(0.5, x).unwrap() - want).abs() < 1e-13 * want);
            assert!((bessel_k(-0.5, x).unwrap() - want).abs() < 1e-13 * want);
        }
    }

    #[test]
    fn k_small_argument_limit() {
        // K_nu(x) ~ Γ(nu)/2 (2/x)^nu
        let x: f64 = 1e-6;
        let want = gamma_real(1.5).unwrap() / 2.0 * (2.0 / x).powf(1.5);
        assert!((bessel_k(1.5, x).unwrap() / want - 1.0).abs() < 1e-6);
    }

    #[test]
    fn complex_order_agrees_with_real_path() {
        for &x in &[0.7, 5.0, 9.0, 20.0, 80.0] {
            for &nu in &[0.25, 1.5, -0.45] {
                let c = bessel_j_complex(Complex64::new(nu, 1e-300), x).unwrap();
                let r = bessel_j(nu, x).unwrap();
                assert!((c.re - r).abs() < 1e-12, "x={x} nu={nu} {c} {r}");
            }
        }
        // J_{nu+1} + J_{nu-1} = 2 nu J_nu / x for complex order
        let nu = Complex64::new(0.75, 0.6);
        for &x in &[3.0, 12.0, 40.0] {
            let l = bessel_j_complex(nu - 1.0, x).unwrap() + bessel_j_complex(nu + 1.0, x).unwrap();
            let r = 2.0 * nu / x * bessel_j_complex(nu, x).unwrap();
            assert!((l - r).norm() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn jtilde_matches_definition() {
        for &a in &[-0.5, 0.0, 0.5, 1.0, 1.5, 2.25] {
            for &t in &[0.0, 0.4, 1.99, 2.0, 5.0, 17.0, 40.0] {
                let want = if t == 0.0 {
                    1.0
                } else {
                    2f64.powf(a) * gamma_real(a + 1.0).unwrap() * bessel_j(a, t).unwrap()
                        / f64::powf(t, a)
                };
                assert!((jtilde(a, t) - want).abs() < 1e-13, "a={a} t={t}");
            }
        }
    }
}
