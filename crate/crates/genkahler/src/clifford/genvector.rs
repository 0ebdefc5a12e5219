//! Elements X + xi of V ⊕ V* and their Clifford action on forms.

use num_complex::Complex64;

use crate::error::{GkError, Result};
use crate::exterior::Form;

/// An element of the generalized tangent fiber: m tangent plus m cotangent
/// complex components.
#[derive(Debug, Clone, PartialEq)]
pub struct GenVector {
    dim: usize,
    x: Vec<Complex64>,
    xi: Vec<Complex64>,
}

impl GenVector {
    pub fn new(x: Vec<Complex64>, xi: Vec<Complex64>) -> Self {
        assert_eq!(x.len(), xi.len());
        GenVector { dim: x.len(), x, xi }
    }

    pub fn zero(dim: usize) -> Self {
        GenVector {
            dim,
            x: vec![Complex64::new(0.0, 0.0); dim],
            xi: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn from_real(x: &[f64], xi: &[f64]) -> Self {
        assert_eq!(x.len(), xi.len());
        GenVector {
            dim: x.len(),
            x: x.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            xi: xi.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// Tangent basis vector e_i (1-based).
    pub fn tangent(dim: usize, i: usize) -> Self {
        let mut v = GenVector::zero(dim);
        v.x[i - 1] = Complex64::new(1.0, 0.0);
        v
    }

    /// Cotangent basis vector dx^i (1-based).
    pub fn cotangent(dim: usize, i: usize) -> Self {
        let mut v = GenVector::zero(dim);
        v.xi[i - 1] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn xi(&self) -> &[Complex64] {
        &self.xi
    }

    /// Flat length-2m coordinate vector (tangent first).
    pub fn to_flat(&self) -> Vec<Complex64> {
        self.x.iter().chain(self.xi.iter()).copied().collect()
    }

    pub fn from_flat(flat: &[Complex64]) -> Self {
        let m = flat.len() / 2;
        GenVector {
            dim: m,
            x: flat[..m].to_vec(),
            xi: flat[m..].to_vec(),
        }
    }

    pub fn add(&self, other: &GenVector) -> GenVector {
        assert_eq!(self.dim, other.dim);
        GenVector {
            dim: self.dim,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            xi: self.xi.iter().zip(&other.xi).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> GenVector {
        GenVector {
            dim: self.dim,
            x: self.x.iter().map(|a| a * s).collect(),
            xi: self.xi.iter().map(|a| a * s).collect(),
        }
    }

    pub fn conj(&self) -> GenVector {
        GenVector {
            dim: self.dim,
            x: self.x.iter().map(|a| a.conj()).collect(),
            xi: self.xi.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.x
            .iter()
            .chain(self.xi.iter())
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Cotangent part as a degree-1 form.
    pub fn xi_form(&self) -> Form {
        let mut f = Form::zero(self.dim);
        for (i, &c) in self.xi.iter().enumerate() {
            f.set_coeff(1 << i, c);
        }
        f
    }
}

/// <X+xi, Y+eta> = (eta(X) + xi(Y)) / 2.
pub fn natural_pairing(v: &GenVector, w: &GenVector) -> Complex64 {
    assert_eq!(v.dim(), w.dim());
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..v.dim() {
        s += w.xi[i] * v.x[i] + v.xi[i] * w.x[i];
    }
    s * 0.5
}

/// Spin representation: (X + xi) . a = i_X a + xi ∧ a.
pub fn clifford_act(v: &GenVector, a: &Form) -> Form {
    assert_eq!(v.dim(), a.dim());
    let contracted = a.contract(&v.x);
    let wedged = v.xi_form().wedge(a).expect("dims checked");
    contracted.add(&wedged)
}

/// Chevalley pairing (a, b)_Ch = -(a ∧ b^t)_top, returned as the coefficient
/// of dx^1 ∧ ... ∧ dx^m.
pub fn chevalley(a: &Form, b: &Form) -> Complex64 {
    -(a.wedge(&b.clifford_transpose()).expect("dims must match").top())
}

/// e^B(X + xi) = X + xi - i_X B for a two-form B.
pub fn b_transform(b: &Form, v: &GenVector) -> Result<GenVector> {
    if b.dim() != v.dim() {
        return Err(GkError::DimensionMismatch {
            expected: v.dim(),
            got: b.dim(),
        });
    }
    if !b.is_homogeneous(2, 1e-14) {
        return Err(GkError::DegreeMismatch { expected: 2 });
    }
    let ixb = b.contract(&v.x);
    let mut out = v.clone();
    for i in 0..v.dim() {
        let cur = out.xi[i];
        out.xi[i] = cur - ixb.coeff(1 << i);
    }
    Ok(out)
}

/// Spin lift of the B-field action: a ↦ e^B ∧ a. The sign is pinned by the
/// equivariance clifford_act(e^B v, e^B a) = e^B clifford_act(v, a).
pub fn b_transform_spinor(b: &Form, a: &Form) -> Result<Form> {
    if b.dim() != a.dim() {
        return Err(GkError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if !b.is_homogeneous(2, 1e-14) {
        return Err(GkError::DegreeMismatch { expected: 2 });
    }
    // e^B = 1 + B + B∧B/2 + ... terminates by nilpotency
    let mut exp = Form::one(b.dim());
    let mut pow = Form::one(b.dim());
    let mut fact = 1.0;
    for k in 1..=(b.dim() / 2) {
        pow = pow.wedge(b)?;
        fact *= k as f64;
        exp = exp.add(&pow.scale(Complex64::new(1.0 / fact, 0.0)));
    }
    exp.wedge(a)
}

/// Courant bracket of constant sections: all derivative terms vanish and
/// [v, w]_H = -i_Y i_X H.
pub fn courant_bracket_const(v: &GenVector, w: &GenVector, h: &Form) -> Result<GenVector> {
    if h.dim() != v.dim() || v.dim() != w.dim() {
        return Err(GkError::DimensionMismatch {
            expected: v.dim(),
            got: h.dim(),
        });
    }
    if !h.is_homogeneous(3, 1e-14) {
        return Err(GkError::DegreeMismatch { expected: 3 });
    }
    let inner = h.contract(&v.x).contract(&w.x);
    let mut out = GenVector::zero(v.dim());
    for i in 0..v.dim() {
        out.xi[i] = -inner.coeff(1 << i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pairing_examples() {
        let e1 = GenVector::tangent(4, 1);
        let dx1 = GenVector::cotangent(4, 1);
        let e2 = GenVector::tangent(4, 2);
        assert_eq!(natural_pairing(&e1, &dx1), c(0.5));
        assert_eq!(natural_pairing(&e1, &e2), c(0.0));
        let v = e1.add(&dx1);
        assert_eq!(natural_pairing(&v, &v), c(1.0));
    }

    #[test]
    fn clifford_action_examples() {
        let e1 = GenVector::tangent(4, 1);
        let w = Form::monomial(4, &[1, 2], c(1.0));
        assert_eq!(clifford_act(&e1, &w), Form::monomial(4, &[2], c(1.0)));
        let dx3 = GenVector::cotangent(4, 3);
        let dx1 = Form::monomial(4, &[1], c(1.0));
        // dx3 . dx1 = dx3 ∧ dx1 = -dx1 ∧ dx3
        assert_eq!(clifford_act(&dx3, &dx1), Form::monomial(4, &[1, 3], c(-1.0)));
    }

    #[test]
    fn clifford_relation_squares_to_pairing() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..100 {
            let v = GenVector::new(
                (0..4).map(|_| Complex64::new(next(), next())).collect(),
                (0..4).map(|_| Complex64::new(next(), next())).collect(),
            );
            let mut a = Form::zero(4);
            for m in 0..16u32 {
                a.set_coeff(m, Complex64::new(next(), next()));
            }
            let vva = clifford_act(&v, &clifford_act(&v, &a));
            let expected = a.scale(natural_pairing(&v, &v));
            assert!(vva.sub(&expected).is_zero(1e-12));
        }
    }

    #[test]
    fn chevalley_examples() {
        // both stated formulas agree: -(phi ∧ psi^t)_top and the graded sign sum
        let one = Form::one(4);
        let vol = Form::monomial(4, &[1, 2, 3, 4], c(1.0));
        assert_eq!(chevalley(&one, &vol), c(-1.0));
        let dx1 = Form::monomial(4, &[1], c(1.0));
        let dx234 = Form::monomial(4, &[2, 3, 4], c(1.0));
        assert_eq!(chevalley(&dx1, &dx234), c(1.0));
        assert_eq!(chevalley(&dx1, &dx1), c(0.0));
    }

    #[test]
    fn chevalley_graded_sum_formula_agrees() {
        // second route: sum_j (-1)^{(m-j)(m-j-1)/2 + 1} phi_j ∧ psi_{m-j}
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..50 {
            let mut a = Form::zero(4);
            let mut b = Form::zero(4);
            for m in 0..16u32 {
                a.set_coeff(m, Complex64::new(next(), next()));
                b.set_coeff(m, Complex64::new(next(), next()));
            }
            let direct = chevalley(&a, &b);
            let mut by_sum = Complex64::new(0.0, 0.0);
            for j in 0..=4usize {
                let mj = 4 - j;
                let sign = if ((mj * mj.saturating_sub(1) / 2) + 1) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let term = a
                    .degree_part(j)
                    .wedge(&b.degree_part(mj))
                    .unwrap()
                    .top();
                by_sum += term * sign;
            }
            assert!((direct - by_sum).norm() < 1e-12);
        }
    }

    #[test]
    fn b_transform_examples() {
        let b = Form::monomial(4, &[1, 2], c(1.0));
        let e1 = GenVector::tangent(4, 1);
        let out = b_transform(&b, &e1).unwrap();
        // e1 - i_{e1}(dx1∧dx2) = e1 - dx2
        let mut expected = GenVector::tangent(4, 1);
        expected = expected.add(&GenVector::cotangent(4, 2).scale(c(-1.0)));
        assert_eq!(out, expected);
        // B = 0 is the identity
        let z = Form::zero(4);
        assert_eq!(b_transform(&z, &e1).unwrap(), e1);
        // wrong degree rejected
        let three = Form::monomial(4, &[1, 2, 3], c(1.0));
        assert!(b_transform(&three, &e1).is_err());
    }

    #[test]
    fn spinor_b_transform_exponential() {
        let b = Form::monomial(4, &[1, 2], c(1.0)).add(&Form::monomial(4, &[3, 4], c(2.0)));
        let out = b_transform_spinor(&b, &Form::one(4)).unwrap();
        let expected = Form::one(4)
            .add(&b)
            .add(&b.wedge(&b).unwrap().scale(c(0.5)));
        assert!(out.sub(&expected).is_zero(1e-14));
    }

    #[test]
    fn spinor_b_transform_equivariance() {
        let mut state = 5u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..50 {
            let mut b = Form::zero(4);
            for i in 0..4u32 {
                for j in (i + 1)..4u32 {
                    let mask = (1 << i) | (1 << j);
                    b.set_coeff(mask, Complex64::new(next(), next()));
                }
            }
            let v = GenVector::new(
                (0..4).map(|_| Complex64::new(next(), next())).collect(),
                (0..4).map(|_| Complex64::new(next(), next())).collect(),
            );
            let mut a = Form::zero(4);
            for m in 0..16u32 {
                a.set_coeff(m, Complex64::new(next(), next()));
            }
            let lhs = clifford_act(
                &b_transform(&b, &v).unwrap(),
                &b_transform_spinor(&b, &a).unwrap(),
            );
            let rhs = b_transform_spinor(&b, &clifford_act(&v, &a)).unwrap();
            assert!(lhs.sub(&rhs).is_zero(1e-11));
        }
    }

    #[test]
    fn b_transform_preserves_pairing() {
        let mut state = 13u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..1000 {
            let mut b = Form::zero(4);
            for i in 0..4u32 {
                for j in (i + 1)..4u32 {
                    b.set_coeff((1 << i) | (1 << j), Complex64::new(next(), 0.0));
                }
            }
            let v = GenVector::from_real(
                &[next(), next(), next(), next()],
                &[next(), next(), next(), next()],
            );
            let w = GenVector::from_real(
                &[next(), next(), next(), next()],
                &[next(), next(), next(), next()],
            );
            let lhs = natural_pairing(
                &b_transform(&b, &v).unwrap(),
                &b_transform(&b, &w).unwrap(),
            );
            let rhs = natural_pairing(&v, &w);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_courant_bracket() {
        let e1 = GenVector::tangent(4, 1);
        let e2 = GenVector::tangent(4, 2);
        let h = Form::monomial(4, &[1, 2, 3], c(1.0));
        // -i_{e2} i_{e1} (dx1∧dx2∧dx3) = -dx3
        let out = courant_bracket_const(&e1, &e2, &h).unwrap();
        assert_eq!(out, GenVector::cotangent(4, 3).scale(c(-1.0)));
        // H = 0 gives zero
        let z = Form::zero(4);
        assert_eq!(
            courant_bracket_const(&e1, &e2, &z).unwrap(),
            GenVector::zero(4)
        );
        // antisymmetric in (v, w)
        let swapped = courant_bracket_const(&e2, &e1, &h).unwrap();
        assert_eq!(swapped, out.scale(c(-1.0)));
    }
}
