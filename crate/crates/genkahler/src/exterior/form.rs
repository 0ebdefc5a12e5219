//! Graded exterior algebra over R^m with complex coefficients.
//!
//! Basis monomials are indexed by bitmasks over {1..m}: bit i-1 set means
//! dx^i is a factor, always written in increasing index order. Signs of all
//! products are computed by transposition counting against that order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GkError, Result};

/// A multivector in the complexified exterior algebra of (R^m)*.
///
/// Holds exactly 2^m coefficient slots; the degree of a basis slot is the
/// popcount of its bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    dim: usize,
    coeffs: Vec<Complex64>,
}

/// Sign of e_a ∧ e_b relative to the increasing-order monomial e_{a|b}:
/// (-1)^(number of inversions), i.e. pairs i in a, j in b with i > j.
pub(crate) fn merge_sign(a: u32, b: u32) -> f64 {
    let mut sign = 1.0;
    let mut bits_a = a;
    while bits_a != 0 {
        let i = bits_a.trailing_zeros();
        let below = (b & ((1u32 << i) - 1)).count_ones();
        if below % 2 == 1 {
            sign = -sign;
        }
        bits_a &= bits_a - 1;
    }
    sign
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= 6, "supported dimensions are 1..=6");
        Form {
            dim,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << dim],
        }
    }

    /// The constant form 1.
    pub fn one(dim: usize) -> Self {
        let mut f = Form::zero(dim);
        f.coeffs[0] = Complex64::new(1.0, 0.0);
        f
    }

    /// Basis monomial dx^{i1} ∧ ... ∧ dx^{ik} for the set bits of `mask`.
    pub fn basis(dim: usize, mask: u32) -> Self {
        let mut f = Form::zero(dim);
        assert!(
            (mask as usize) < (1 << dim),
            "mask {mask:#b} out of range for dim {dim}"
        );
        f.coeffs[mask as usize] = Complex64::new(1.0, 0.0);
        f
    }

    /// Basis monomial from 1-based indices, e.g. `[1,2]` for dx^1∧dx^2.
    /// Indices must be strictly increasing.
    pub fn monomial(dim: usize, indices: &[usize], value: Complex64) -> Self {
        let mut mask = 0u32;
        let mut prev = 0usize;
        for &i in indices {
            assert!(i >= 1 && i <= dim, "index {i} out of range 1..={dim}");
            assert!(i > prev, "indices must be strictly increasing");
            prev = i;
            mask |= 1 << (i - 1);
        }
        let mut f = Form::zero(dim);
        f.coeffs[mask as usize] = value;
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }

    pub fn set_coeff(&mut self, mask: u32, value: Complex64) {
        self.coeffs[mask as usize] = value;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of the top-degree basis monomial dx^1∧...∧dx^m.
    pub fn top(&self) -> Complex64 {
        self.coeffs[(1 << self.dim) - 1]
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Component of homogeneous degree k.
    pub fn degree_part(&self, k: usize) -> Form {
        let mut out = Form::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if (mask as u32).count_ones() as usize == k {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    /// Degrees that carry a coefficient above `tol`.
    pub fn support_degrees(&self, tol: f64) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..=self.dim)
            .filter(|&k| !self.degree_part(k).is_zero(tol))
            .collect();
        degrees.dedup();
        degrees
    }

    /// True if every nonzero coefficient sits in degree `k`.
    pub fn is_homogeneous(&self, k: usize, tol: f64) -> bool {
        self.coeffs.iter().enumerate().all(|(mask, c)| {
            (mask as u32).count_ones() as usize == k || c.norm() <= tol
        })
    }

    pub fn conj(&self) -> Form {
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Form {
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim);
        Form {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Exterior product. Errors when dimensions differ.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.dim != other.dim {
            return Err(GkError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = Form::zero(self.dim);
        for (ma, &ca) in self.coeffs.iter().enumerate() {
            if ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (mb, &cb) in other.coeffs.iter().enumerate() {
                if cb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (ma, mb) = (ma as u32, mb as u32);
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                out.coeffs[(ma | mb) as usize] += ca * cb * sign;
            }
        }
        Ok(out)
    }

    /// Interior product i_X with a (complex) tangent vector X of length m.
    /// An anti-derivation of degree -1.
    pub fn contract(&self, x: &[Complex64]) -> Form {
        assert_eq!(x.len(), self.dim, "tangent vector length must equal dim");
        let mut out = Form::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mask = mask as u32;
            for (i, &xi) in x.iter().enumerate() {
                if xi == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let bit = 1u32 << i;
                if mask & bit == 0 {
                    continue;
                }
                // factors below position i contribute the anti-derivation sign
                let below = (mask & (bit - 1)).count_ones();
                let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[(mask & !bit) as usize] += c * xi * sign;
            }
        }
        out
    }

    /// Clifford transposition: multiplies the degree-k component by
    /// (-1)^(k(k-1)/2), i.e. reverses the order of the generators.
    pub fn clifford_transpose(&self) -> Form {
        let mut out = self.clone();
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            let k = (mask as u32).count_ones() as usize;
            if (k * (k.saturating_sub(1)) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }
}

/// Serialization schema: `{"dim": m, "terms": [{"indices": [...], "re": .., "im": ..}]}`.
#[derive(Serialize, Deserialize)]
struct FormRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    indices: Vec<usize>,
    re: f64,
    im: f64,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(mask, c)| TermRepr {
                indices: (0..self.dim).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect(),
                re: c.re,
                im: c.im,
            })
            .collect();
        FormRepr { dim: self.dim, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(deserializer)?;
        if repr.dim < 1 || repr.dim > 6 {
            return Err(serde::de::Error::custom(format!(
                "unsupported form dimension {}",
                repr.dim
            )));
        }
        let mut f = Form::zero(repr.dim);
        for t in &repr.terms {
            let mut mask = 0u32;
            for &i in &t.indices {
                if i < 1 || i > repr.dim {
                    return Err(serde::de::Error::custom(format!(
                        "index {i} out of range 1..={}",
                        repr.dim
                    )));
                }
                if mask & (1 << (i - 1)) != 0 {
                    return Err(serde::de::Error::custom("repeated index in term"));
                }
                mask |= 1 << (i - 1);
            }
            let c = f.coeffs[mask as usize] + Complex64::new(t.re, t.im);
            f.coeffs[mask as usize] = c;
        }
        Ok(f)
    }
}
