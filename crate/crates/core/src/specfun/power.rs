use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A complex exponent with finite parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder(Complex64);

impl ComplexOrder {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite order {re}+{im}i")));
        }
        Ok(Self(Complex64::new(re, im)))
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for ComplexOrder {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

impl From<ComplexOrder> for Complex64 {
    fn from(o: ComplexOrder) -> Complex64 {
        o.0
    }
}

/// Which one-sided or boundary-value power is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlusVariant {
    /// x_+^lambda
    Plus,
    /// x_-^lambda = (-x)_+^lambda
    Minus,
    /// (x + i0)^lambda = x_+^lambda + e^{i lambda pi} x_-^lambda
    PlusI0,
    /// (x - i0)^lambda = x_+^lambda + e^{-i lambda pi} x_-^lambda
    MinusI0,
}

fn one_sided(x: f64, lambda: Complex64) -> Result<Complex64> {
    if x > 0.0 {
        Ok((lambda * x.ln()).exp())
    } else if x < 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else if lambda.re > 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else if lambda == Complex64::new(0.0, 0.0) {
        Ok(Complex64::new(1.0, 0.0))
    } else {
        Err(Error::Domain(format!("0^{lambda} is not a function value")))
    }
}

/// Pointwise value of the homogeneous distributions x_±^lambda and (x ± i0)^lambda
/// away from the origin (at the origin only when Re lambda > 0).
pub fn plus_power(x: f64, lambda: ComplexOrder, variant: PlusVariant) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite point {x}")));
    }
    let l = lambda.value();
    match variant {
        PlusVariant::Plus => one_sided(x, l),
        PlusVariant::Minus => one_sided(-x, l),
        PlusVariant::PlusI0 | PlusVariant::MinusI0 => {
            let s = if variant == PlusVariant::PlusI0 { 1.0 } else { -1.0 };
            let phase = (Complex64::new(0.0, s * PI) * l).exp();
            Ok(one_sided(x, l)? + phase * one_sided(-x, l)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i0_powers() {
        let half = ComplexOrder::real(0.5).unwrap();
        let v = plus_power(-4.0, half, PlusVariant::PlusI0).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        let v = plus_power(-4.0, half, PlusVariant::MinusI0).unwrap();
        assert!((v - Complex64::new(0.0, -2.0)).norm() < 1e-15);
        assert_eq!(plus_power(-4.0, half, PlusVariant::Plus).unwrap(), Complex64::new(0.0, 0.0));
        assert!((plus_power(-4.0, half, PlusVariant::Minus).unwrap().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn origin_behaviour() {
        let neg = ComplexOrder::real(-0.5).unwrap();
        assert!(plus_power(0.0, neg, PlusVariant::Plus).is_err());
        let pos = ComplexOrder::new(0.5, 3.0).unwrap();
        assert_eq!(plus_power(0.0, pos, PlusVariant::PlusI0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn modulus_bound() {
        // |(t + i0)^l| <= max(1, e^{-pi Im l}) |t|^{Re l}
        let l = ComplexOrder::new(0.7, -1.3).unwrap();
        for &t in &[-3.0, -0.2, 0.4, 5.0] {
            let v = plus_power(t, l, PlusVariant::PlusI0).unwrap().norm();
            let bound = (1.0f64).max((-PI * -1.3f64).exp()) * f64::abs(t).powf(0.7);
            assert!(v <= bound * (1.0 + 1e-14));
        }
    }
}
