//! Lie-algebra-valued forms and the kappa-combined exterior pairing.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::form::{merge_sign, Form};
use super::lie::LieAlgebraData;
use crate::error::{GkError, Result};

/// A form with coefficients in a fixed Lie algebra: one length-d complex
/// vector per basis bitmask. The abelian d = 1 case reduces to `Form`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaForm {
    dim: usize,
    algebra: Arc<LieAlgebraData>,
    /// coeffs[mask] is the Lie coordinate vector of that basis monomial
    coeffs: Vec<Vec<Complex64>>,
}

impl LaForm {
    pub fn zero(dim: usize, algebra: Arc<LieAlgebraData>) -> Self {
        assert!(dim >= 1 && dim <= 6);
        let d = algebra.dim();
        LaForm {
            dim,
            algebra,
            coeffs: vec![vec![Complex64::new(0.0, 0.0); d]; 1 << dim],
        }
    }

    /// Monomial (lie vector) ⊗ dx^{indices}.
    pub fn monomial(
        dim: usize,
        algebra: Arc<LieAlgebraData>,
        indices: &[usize],
        lie: &[Complex64],
    ) -> Self {
        assert_eq!(lie.len(), algebra.dim());
        let mut mask = 0u32;
        for &i in indices {
            assert!(i >= 1 && i <= dim);
            mask |= 1 << (i - 1);
        }
        let mut f = LaForm::zero(dim, algebra);
        f.coeffs[mask as usize] = lie.to_vec();
        f
    }

    /// Wraps a scalar form as a u(1)-valued one, or more generally tensors a
    /// scalar form with a fixed Lie coordinate vector.
    pub fn from_scalar(f: &Form, algebra: Arc<LieAlgebraData>, lie: &[Complex64]) -> Self {
        assert_eq!(lie.len(), algebra.dim());
        let mut out = LaForm::zero(f.dim(), algebra);
        for mask in 0..(1usize << f.dim()) {
            let c = f.coeff(mask as u32);
            for (p, &l) in lie.iter().enumerate() {
                out.coeffs[mask][p] = c * l;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraData> {
        &self.algebra
    }

    pub fn coeff(&self, mask: u32) -> &[Complex64] {
        &self.coeffs[mask as usize]
    }

    pub fn set_coeff(&mut self, mask: u32, lie: &[Complex64]) {
        assert_eq!(lie.len(), self.algebra.dim());
        self.coeffs[mask as usize] = lie.to_vec();
    }

    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().flatten().all(|c| c.norm() <= tol)
    }

    pub fn add(&self, other: &LaForm) -> LaForm {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> LaForm {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            for x in a.iter_mut() {
                *x *= s;
            }
        }
        out
    }

    pub fn degree_part(&self, k: usize) -> LaForm {
        let mut out = LaForm::zero(self.dim, self.algebra.clone());
        for mask in 0..(1usize << self.dim) {
            if (mask as u32).count_ones() as usize == k {
                out.coeffs[mask] = self.coeffs[mask].clone();
            }
        }
        out
    }

    /// Wedge by a scalar form on the left: s ∧ a.
    pub fn wedge_scalar_left(&self, s: &Form) -> Result<LaForm> {
        if s.dim() != self.dim {
            return Err(GkError::DimensionMismatch {
                expected: self.dim,
                got: s.dim(),
            });
        }
        let mut out = LaForm::zero(self.dim, self.algebra.clone());
        for ms in 0..(1u32 << self.dim) {
            let cs = s.coeff(ms);
            if cs == Complex64::new(0.0, 0.0) {
                continue;
            }
            for ma in 0..(1u32 << self.dim) {
                if ms & ma != 0 {
                    continue;
                }
                let sign = merge_sign(ms, ma);
                for p in 0..self.algebra.dim() {
                    let add = cs * self.coeffs[ma as usize][p] * sign;
                    out.coeffs[(ms | ma) as usize][p] += add;
                }
            }
        }
        Ok(out)
    }

    /// kappa(a ∧ b): wedge on the form part, kappa on the Lie part.
    /// With d = 1 and kappa = 1 this is the ordinary wedge.
    pub fn kappa_pair(&self, other: &LaForm) -> Result<Form> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && self.algebra != other.algebra {
            return Err(GkError::AlgebraMismatch);
        }
        if self.dim != other.dim {
            return Err(GkError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.algebra.dim();
        let kappa = self.algebra.kappa();
        let mut out = Form::zero(self.dim);
        for ma in 0..(1u32 << self.dim) {
            for mb in 0..(1u32 << self.dim) {
                if ma & mb != 0 {
                    continue;
                }
                let mut k = Complex64::new(0.0, 0.0);
                for p in 0..d {
                    for q in 0..d {
                        if kappa[p][q] != 0.0 {
                            k += kappa[p][q]
                                * self.coeffs[ma as usize][p]
                                * other.coeffs[mb as usize][q];
                        }
                    }
                }
                if k == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let mask = (ma | mb) as usize;
                let cur = out.coeff(mask as u32);
                out.set_coeff(mask as u32, cur + k * sign);
            }
        }
        Ok(out)
    }

    /// Graded bracket-wedge [a ∧ b]: wedge on forms, Lie bracket on
    /// coefficients. Used for ad_A and for the curvature F = 1/2 [A ∧ A].
    pub fn bracket_wedge(&self, other: &LaForm) -> Result<LaForm> {
        if self.algebra != other.algebra {
            return Err(GkError::AlgebraMismatch);
        }
        if self.dim != other.dim {
            return Err(GkError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.algebra.dim();
        let mut out = LaForm::zero(self.dim, self.algebra.clone());
        // complexify the real structure constants entrywise
        for ma in 0..(1u32 << self.dim) {
            for mb in 0..(1u32 << self.dim) {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let a = &self.coeffs[ma as usize];
                let b = &other.coeffs[mb as usize];
                let mut br = vec![Complex64::new(0.0, 0.0); d];
                for i in 0..d {
                    if a[i] == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for j in 0..d {
                        if b[j] == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for k in 0..d {
                            let c = self.algebra_structure(k, i, j);
                            if c != 0.0 {
                                br[k] += a[i] * b[j] * c;
                            }
                        }
                    }
                }
                for k in 0..d {
                    if br[k] != Complex64::new(0.0, 0.0) {
                        out.coeffs[(ma | mb) as usize][k] += br[k] * sign;
                    }
                }
            }
        }
        Ok(out)
    }

    fn algebra_structure(&self, k: usize, i: usize, j: usize) -> f64 {
        // bracket of basis vectors, component k
        let d = self.algebra.dim();
        let mut ei = vec![0.0; d];
        ei[i] = 1.0;
        let mut ej = vec![0.0; d];
        ej[j] = 1.0;
        self.algebra.bracket(&ei, &ej)[k]
    }

    /// Extracts the scalar form when d = 1.
    pub fn to_scalar(&self) -> Form {
        assert_eq!(self.algebra.dim(), 1, "to_scalar requires an abelian algebra");
        let mut f = Form::zero(self.dim);
        for mask in 0..(1usize << self.dim) {
            f.set_coeff(mask as u32, self.coeffs[mask][0]);
        }
        f
    }
}

/// Serialization: like `Form`, with a per-term complex coordinate vector.
#[derive(Serialize, Deserialize)]
pub struct LaFormRepr {
    pub dim: usize,
    pub terms: Vec<LaTermRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct LaTermRepr {
    pub indices: Vec<usize>,
    /// interleaved [re_0, im_0, re_1, im_1, ...] of the Lie coordinates
    pub coeff: Vec<f64>,
}

impl LaForm {
    pub fn to_repr(&self) -> LaFormRepr {
        let mut terms = Vec::new();
        for mask in 0..(1usize << self.dim) {
            if self.coeffs[mask].iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
                continue;
            }
            let indices = (0..self.dim)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect();
            let coeff = self.coeffs[mask]
                .iter()
                .flat_map(|c| [c.re, c.im])
                .collect();
            terms.push(LaTermRepr { indices, coeff });
        }
        LaFormRepr { dim: self.dim, terms }
    }

    pub fn from_repr(repr: &LaFormRepr, algebra: Arc<LieAlgebraData>) -> Result<Self> {
        let d = algebra.dim();
        let mut f = LaForm::zero(repr.dim, algebra);
        for t in &repr.terms {
            if t.coeff.len() != 2 * d {
                return Err(GkError::Scenario(format!(
                    "Lie coefficient vector has length {}, expected {}",
                    t.coeff.len(),
                    2 * d
                )));
            }
            let mut mask = 0u32;
            for &i in &t.indices {
                if i < 1 || i > repr.dim {
                    return Err(GkError::Scenario(format!("index {i} out of range")));
                }
                mask |= 1 << (i - 1);
            }
            for p in 0..d {
                f.coeffs[mask as usize][p] += Complex64::new(t.coeff[2 * p], t.coeff[2 * p + 1]);
            }
        }
        Ok(f)
    }
}
