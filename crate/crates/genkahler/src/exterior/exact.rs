//! Exact rational mirror of the exterior algebra, for the identities that
//! deserve exact certification (sign laws, the B_theta contraction).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::form::merge_sign;

/// A multivector with BigRational coefficients, dense over bitmasks.
#[derive(Debug, Clone, PartialEq)]
pub struct QForm {
    dim: usize,
    coeffs: Vec<BigRational>,
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= 6);
        QForm {
            dim,
            coeffs: vec![BigRational::zero(); 1 << dim],
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut f = QForm::zero(dim);
        f.coeffs[0] = BigRational::one();
        f
    }

    pub fn monomial(dim: usize, indices: &[usize], value: BigRational) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!(i >= 1 && i <= dim);
            mask |= 1 << (i - 1);
        }
        let mut f = QForm::zero(dim);
        f.coeffs[mask as usize] = value;
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: u32) -> &BigRational {
        &self.coeffs[mask as usize]
    }

    pub fn set_coeff(&mut self, mask: u32, value: BigRational) {
        self.coeffs[mask as usize] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &QForm) -> QForm {
        assert_eq!(self.dim, other.dim);
        QForm {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QForm) -> QForm {
        assert_eq!(self.dim, other.dim);
        QForm {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> QForm {
        QForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn wedge(&self, other: &QForm) -> QForm {
        assert_eq!(self.dim, other.dim);
        let mut out = QForm::zero(self.dim);
        for ma in 0..(1u32 << self.dim) {
            if self.coeffs[ma as usize].is_zero() {
                continue;
            }
            for mb in 0..(1u32 << self.dim) {
                if other.coeffs[mb as usize].is_zero() || ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let term = &self.coeffs[ma as usize] * &other.coeffs[mb as usize];
                let term = if sign < 0.0 { -term } else { term };
                out.coeffs[(ma | mb) as usize] += term;
            }
        }
        out
    }

    /// Interior product with a rational tangent vector.
    pub fn contract(&self, x: &[BigRational]) -> QForm {
        assert_eq!(x.len(), self.dim);
        let mut out = QForm::zero(self.dim);
        for mask in 0..(1u32 << self.dim) {
            if self.coeffs[mask as usize].is_zero() {
                continue;
            }
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let bit = 1u32 << i;
                if mask & bit == 0 {
                    continue;
                }
                let below = (mask & (bit - 1)).count_ones();
                let term = &self.coeffs[mask as usize] * xi;
                let term = if below % 2 == 1 { -term } else { term };
                out.coeffs[(mask & !bit) as usize] += term;
            }
        }
        out
    }

    pub fn clifford_transpose(&self) -> QForm {
        let mut out = self.clone();
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            let k = (mask as u32).count_ones() as usize;
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let n = c.numer().abs();
                let d = c.denom().abs();
                let nf: f64 = n.to_string().parse().unwrap_or(f64::INFINITY);
                let df: f64 = d.to_string().parse().unwrap_or(1.0);
                nf / df
            })
            .fold(0.0, f64::max)
    }
}
