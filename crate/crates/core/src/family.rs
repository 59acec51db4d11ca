//! Finite orthonormal systems with coefficient sequences.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};

/// Vectors orthonormal in the inner product Σ_k a_k conj(b_k) w_k, plus
/// one coefficient n_j per member.
#[derive(Debug, Clone)]
pub struct OrthonormalFamily {
    members: Vec<Vec<Complex64>>,
    measure: Vec<f64>,
    coefficients: Vec<Complex64>,
}

impl OrthonormalFamily {
    /// Wraps members without re-orthogonalizing; coefficients default to 1.
    pub fn new(members: Vec<Vec<Complex64>>, measure: Vec<f64>) -> Result<Self> {
        if let Some(m) = members.iter().find(|m| m.len() != measure.len()) {
            return Err(Error::GridMismatch(format!(
                "member of length {} against a measure of length {}",
                m.len(),
                measure.len()
            )));
        }
        if measure.iter().any(|w| !(*w >= 0.0)) {
            return Err(invalid("measure weights must be nonnegative"));
        }
        let coefficients = vec![Complex64::new(1.0, 0.0); members.len()];
        Ok(Self { members, measure, coefficients })
    }

    pub fn with_coefficients(mut self, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != self.members.len() {
            return Err(invalid(format!(
                "{} coefficients for {} members",
                coefficients.len(),
                self.members.len()
            )));
        }
        self.coefficients = coefficients;
        Ok(self)
    }

    /// Orthonormalizes a Gaussian random matrix (Householder QR) in the
    /// weighted inner product. Points of zero weight get zero entries.
    pub fn random(measure: &[f64], size: usize, rng: &mut impl Rng) -> Result<Self> {
        let active: Vec<usize> = (0..measure.len()).filter(|&k| measure[k] > 0.0).collect();
        if size == 0 || size > active.len() {
            return Err(invalid(format!(
                "family size {size} must lie in 1..={} (points of positive weight)",
                active.len()
            )));
        }
        let g = DMatrix::<Complex64>::from_fn(active.len(), size, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let q = g.qr().q();
        let members = (0..size)
            .map(|j| {
                let mut v = vec![Complex64::new(0.0, 0.0); measure.len()];
                for (r, &k) in active.iter().enumerate() {
                    v[k] = q[(r, j)] / measure[k].sqrt();
                }
                v
            })
            .collect();
        Self::new(members, measure.to_vec())
    }

    pub fn members(&self) -> &[Vec<Complex64>] {
        &self.members
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
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

    /// Gram matrix G_ij = ⟨f_i, f_j⟩.
    pub fn gram(&self) -> DMatrix<Complex64> {
        let m = self.members.len();
        DMatrix::from_fn(m, m, |i, j| {
            self.members[i]
                .iter()
                .zip(&self.members[j])
                .zip(&self.measure)
                .map(|((a, b), &w)| a * b.conj() * w)
                .sum()
        })
    }

    /// Largest entry of |G - I|.
    pub fn gram_defect(&self) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }
}

/// (Σ |n_j|^beta)^{1/beta}, with beta = inf giving the maximum.
pub fn coefficient_norm(coefficients: &[Complex64], beta: f64) -> f64 {
    if beta.is_infinite() {
        return coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    let terms: Vec<f64> = coefficients.iter().map(|c| c.norm().powf(beta)).collect();
    crate::output::pairwise_sum(&terms).powf(1.0 / beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_family_is_orthonormal_in_weighted_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let measure: Vec<f64> = (0..30).map(|k| 0.1 + (k as f64 * 0.37).sin().abs()).collect();
        let fam = OrthonormalFamily::random(&measure, 12, &mut rng).unwrap();
        assert_eq!(fam.len(), 12);
        assert!(fam.gram_defect() < 1e-12);
    }

    #[test]
    fn zero_weight_points_are_skipped() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let measure = vec![0.0, 1.0, 2.0, 0.0, 0.5];
        let fam = OrthonormalFamily::random(&measure, 3, &mut rng).unwrap();
        assert!(fam.gram_defect() < 1e-12);
        assert!(fam.members().iter().all(|m| m[0] == Complex64::new(0.0, 0.0)));
        assert!(OrthonormalFamily::random(&measure, 4, &mut rng).is_err());
    }

    #[test]
    fn coefficient_norms() {
        let c = [Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)];
        assert!((coefficient_norm(&c, 2.0) - 5.0).abs() < 1e-15);
        assert_eq!(coefficient_norm(&c, f64::INFINITY), 4.0);
        assert!((coefficient_norm(&c, 1.0) - 7.0).abs() < 1e-15);
    }
}
