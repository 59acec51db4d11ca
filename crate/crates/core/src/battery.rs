//! Schwartz-class test functions shared by the transform checks.

use num_complex::Complex64;

/// A named test function of the full coordinate vector (x, y).
pub struct TestFunction {
    pub name: &'static str,
    pub eval: fn(&[f64]) -> Complex64,
}

fn r2(v: &[f64]) -> f64 {
    v.iter().map(|t| t * t).sum()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Twelve smooth, rapidly decaying functions with Gaussian rates in [0.5, 0.8].
pub fn schwartz_battery() -> Vec<TestFunction> {
    vec![
        TestFunction { name: "gauss-0.5", eval: |v| re((-0.5 * r2(v)).exp()) },
        TestFunction { name: "gauss-0.6", eval: |v| re((-0.6 * r2(v)).exp()) },
        TestFunction { name: "gauss-0.8", eval: |v| re((-0.8 * r2(v)).exp()) },
        TestFunction { name: "hermite-odd", eval: |v| re(v[v.len() - 1] * (-0.5 * r2(v)).exp()) },
        TestFunction { name: "poly-gauss", eval: |v| re((1.0 + r2(v)) * (-0.7 * r2(v)).exp()) },
        TestFunction {
            name: "shifted-gauss",
            eval: |v| re((-0.5 * v.iter().map(|t| (t - 0.5) * (t - 0.5)).sum::<f64>()).exp()),
        },
        TestFunction { name: "cos-gauss", eval: |v| re((-0.6 * r2(v)).exp() * v[0].cos()) },
        TestFunction {
            name: "chirp-gauss",
            eval: |v| Complex64::from_polar((-0.6 * r2(v)).exp(), 0.8 * v[v.len() - 1]),
        },
        TestFunction { name: "product-odd", eval: |v| re(v[0] * v[v.len() - 1] * (-0.55 * r2(v)).exp()) },
        TestFunction {
            name: "two-bump",
            eval: |v| {
                let a: f64 = v.iter().map(|t| (t - 0.4) * (t - 0.4)).sum();
                let b: f64 = v.iter().map(|t| (t + 0.4) * (t + 0.4)).sum();
                Complex64::new((-0.6 * a).exp(), (-0.6 * b).exp())
            },
        },
        TestFunction {
            name: "ring-gauss",
            eval: |v| re((r2(v) - 1.0) * (r2(v) - 1.0) * (-0.75 * r2(v)).exp()),
        },
        TestFunction {
            name: "sine-gauss",
            eval: |v| re((-0.65 * r2(v)).exp() * (0.7 * v.iter().sum::<f64>()).sin()),
        },
    ]
}
