//! Exact exponent arithmetic for the restriction and orthonormal restriction
//! estimates on the three surfaces.

use num_rational::Rational64;
use serde::Serialize;
use std::fmt;

use super::surface::SurfaceKind;
use crate::error::{invalid, Error, Result};
use crate::geometry::DunklGeometry;

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Exact value of a multiplicity; fails when the float is not a short rational.
pub fn exact_rational(x: f64) -> Result<Rational64> {
    let q = Rational64::approximate_float(x).ok_or_else(|| invalid(format!("{x} has no rational form")))?;
    if *q.denom() > 1 << 20 || (*q.numer() as f64 / *q.denom() as f64) != x {
        return Err(invalid(format!("{x} is not a short rational number")));
    }
    Ok(q)
}

/// N = n + d + 2 Σ kappa_j as an exact rational.
pub fn exact_n_kappa(geom: &DunklGeometry) -> Result<Rational64> {
    let mut total = r((geom.n() + geom.d()) as i64);
    for &k in geom.kappa() {
        total += r(2) * exact_rational(k)?;
    }
    Ok(total)
}

/// d + 2 Σ kappa_j as an exact rational.
pub fn exact_y_dimension(geom: &DunklGeometry) -> Result<Rational64> {
    Ok(exact_n_kappa(geom)? - r(geom.n() as i64))
}

/// Endpoint of an interval; `None` as upper bound means +inf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentRange {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational64,
    pub lo_closed: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub hi: Option<Rational64>,
    pub hi_closed: bool,
}

impl ExponentRange {
    pub fn point(x: Rational64) -> Self {
        Self { lo: x, lo_closed: true, hi: Some(x), hi_closed: true }
    }

    pub fn closed(lo: Rational64, hi: Rational64) -> Self {
        Self { lo, lo_closed: true, hi: Some(hi), hi_closed: true }
    }

    pub fn contains(&self, x: Rational64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = match self.hi {
            None => true,
            Some(h) if self.hi_closed => x <= h,
            Some(h) => x < h,
        };
        above && below
    }
}

impl fmt::Display for ExponentRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match self.hi {
            Some(h) => {
                let close = if self.hi_closed { ']' } else { ')' };
                write!(f, "{open}{}, {h}{close}", self.lo)
            }
            None => write!(f, "{open}{}, inf)", self.lo),
        }
    }
}

fn ser_rational<S: serde::Serializer>(x: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_str("inf"),
    }
}

/// Hölder dual p/(p-1); `None` for p = 1.
pub fn dual(p: Rational64) -> Option<Rational64> {
    (p != r(1)).then(|| p / (p - r(1)))
}

/// beta(r) = 2r/(r+1), the coefficient exponent paired with the density norm L^r.
pub fn beta(rr: Rational64) -> Rational64 {
    r(2) * rr / (rr + r(1))
}

/// lambda_0 solving p = 2 lambda_0/(lambda_0 + 1).
pub fn lambda0(p: Rational64) -> Rational64 {
    p / (r(2) - p)
}

/// Exponents of the restriction estimate and its orthonormal version.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentTable {
    pub kind: SurfaceKind,
    /// 1 or 2 for the hyperboloid cases, `None` otherwise.
    pub case: Option<u8>,
    #[serde(serialize_with = "ser_rational")]
    pub n_kappa: Rational64,
    /// Admissible L^p exponents of the restriction estimate.
    pub p_restriction: ExponentRange,
    /// Dual of the largest admissible p.
    #[serde(serialize_with = "ser_rational")]
    pub p_dual: Rational64,
    /// Admissible density exponents r of the orthonormal estimate.
    pub r_orthonormal: ExponentRange,
    /// lambda_0 at the largest admissible p.
    #[serde(serialize_with = "ser_rational")]
    pub lambda0: Rational64,
}

impl ExponentTable {
    /// Coefficient exponent beta at the lower end of the r-range.
    pub fn beta_at_lower_r(&self) -> Rational64 {
        beta(self.r_orthonormal.lo)
    }
}

/// Exponent table for a surface over the given geometry.
pub fn exponent_table(kind: SurfaceKind, geom: &DunklGeometry) -> Result<ExponentTable> {
    let nk = exact_n_kappa(geom)?;
    if nk < r(2) {
        return Err(Error::Hypothesis(format!("N_kappa = {nk} < 2")));
    }
    let p_top = r(2) * (nk + r(1)) / (nk + r(3));
    let r_low = (nk + r(1)) / (nk - r(1));
    let (case, p_restriction, r_orthonormal) = match kind {
        SurfaceKind::Paraboloid => {
            if geom.n() == 0 {
                return Err(Error::Hypothesis("the paraboloid needs n >= 1".into()));
            }
            (None, ExponentRange::point(p_top), ExponentRange::point(r_low))
        }
        SurfaceKind::Sphere => (
            None,
            ExponentRange::closed(r(1), p_top),
            ExponentRange { lo: r_low, lo_closed: true, hi: None, hi_closed: false },
        ),
        SurfaceKind::Hyperboloid => {
            if geom.n() == 0 {
                return Err(Error::Hypothesis("the hyperboloid needs n != 0".into()));
            }
            let euclidean_plane = geom.n() == 1 && geom.d() == 1 && geom.gamma_kappa() == 0.0;
            if euclidean_plane {
                (
                    Some(1),
                    ExponentRange { lo: r(1), lo_closed: false, hi: Some(Rational64::new(6, 5)), hi_closed: true },
                    ExponentRange { lo: r(3), lo_closed: true, hi: None, hi_closed: false },
                )
            } else if nk > r(2) {
                (
                    Some(2),
                    ExponentRange::closed(r(2) * nk / (nk + r(2)), p_top),
                    ExponentRange::closed(r_low, nk / (nk - r(2))),
                )
            } else {
                return Err(Error::Hypothesis(format!("hyperboloid with N_kappa = {nk} fits neither case")));
            }
        }
    };
    let p_hi = p_restriction.hi.expect("restriction ranges are bounded");
    let p_dual = dual(p_hi).ok_or_else(|| Error::Hypothesis("p = 1 has no finite dual".into()))?;
    Ok(ExponentTable { kind, case, n_kappa: nk, p_restriction, p_dual, r_orthonormal, lambda0: lambda0(p_hi) })
}
