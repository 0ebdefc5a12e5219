//! Finite-dimensional real Lie algebra data: structure constants and an
//! ad-invariant inner product, with eager validation of both.

use std::sync::Arc;

use crate::error::{GkError, Result};

const STRUCTURE_TOL: f64 = 1e-12;

/// Structure constants c^k_{ij} and an ad-invariant symmetric form kappa.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    /// c[k][i][j] = coefficient of basis_k in [basis_i, basis_j]
    structure: Vec<Vec<Vec<f64>>>,
    /// kappa[i][j], symmetric, ad-invariant
    kappa: Vec<Vec<f64>>,
    name: String,
}

impl LieAlgebraData {
    pub fn new(
        dim: usize,
        structure: Vec<Vec<Vec<f64>>>,
        kappa: Vec<Vec<f64>>,
        name: &str,
    ) -> Result<Arc<Self>> {
        let data = LieAlgebraData {
            dim,
            structure,
            kappa,
            name: name.to_string(),
        };
        data.validate()?;
        Ok(Arc::new(data))
    }

    /// The abelian algebra u(1) with kappa = 1.
    pub fn u1() -> Arc<Self> {
        LieAlgebraData::new(1, vec![vec![vec![0.0]]], vec![vec![1.0]], "u1")
            .expect("u1 data is valid")
    }

    /// su(2) in the standard real basis with [T_i, T_j] = eps_{ijk} T_k and
    /// kappa normalized so that kappa(T_i, T_i) = 1.
    pub fn su2() -> Arc<Self> {
        let mut structure = vec![vec![vec![0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    structure[k][i][j] = levi_civita(i, j, k);
                }
            }
        }
        let kappa = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        LieAlgebraData::new(3, structure, kappa, "su2").expect("su2 data is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kappa(&self) -> &[Vec<f64>] {
        &self.kappa
    }

    pub fn kappa_pairing(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.kappa[i][j] * a[i] * b[j];
            }
        }
        s
    }

    /// [a, b] in coordinates.
    pub fn bracket(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for k in 0..self.dim {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    out[k] += self.structure[k][i][j] * a[i] * b[j];
                }
            }
        }
        out
    }

    /// Matrix of ad(basis_i) acting on coordinates: ad_i[k][j] = c^k_{ij}.
    pub fn ad_basis(&self, i: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.dim]; self.dim];
        for k in 0..self.dim {
            for j in 0..self.dim {
                m[k][j] = self.structure[k][i][j];
            }
        }
        m
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        if d == 0 {
            return Err(GkError::InvalidAlgebra("dimension must be positive".into()));
        }
        if self.structure.len() != d
            || self.structure.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d))
        {
            return Err(GkError::InvalidAlgebra(
                "structure constants must be a d x d x d array".into(),
            ));
        }
        if self.kappa.len() != d || self.kappa.iter().any(|r| r.len() != d) {
            return Err(GkError::InvalidAlgebra("kappa must be d x d".into()));
        }
        // antisymmetry
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    if (self.structure[k][i][j] + self.structure[k][j][i]).abs() > STRUCTURE_TOL {
                        return Err(GkError::InvalidAlgebra(format!(
                            "structure constants not antisymmetric at (k,i,j)=({k},{i},{j})"
                        )));
                    }
                }
            }
        }
        // kappa symmetric
        for i in 0..d {
            for j in 0..d {
                if (self.kappa[i][j] - self.kappa[j][i]).abs() > STRUCTURE_TOL {
                    return Err(GkError::InvalidAlgebra("kappa not symmetric".into()));
                }
            }
        }
        // Jacobi: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let e = |n: usize| {
                        let mut v = vec![0.0; d];
                        v[n] = 1.0;
                        v
                    };
                    let t1 = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    for l in 0..d {
                        if (t1[l] + t2[l] + t3[l]).abs() > STRUCTURE_TOL {
                            return Err(GkError::InvalidAlgebra(format!(
                                "Jacobi identity fails at (i,j,k)=({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        }
        // ad-invariance: kappa([a,b],c) + kappa(b,[a,c]) = 0 on basis triples
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let e = |n: usize| {
                        let mut v = vec![0.0; d];
                        v[n] = 1.0;
                        v
                    };
                    let lhs = self.kappa_pairing(&self.bracket(&e(a), &e(b)), &e(c))
                        + self.kappa_pairing(&e(b), &self.bracket(&e(a), &e(c)));
                    if lhs.abs() > STRUCTURE_TOL {
                        return Err(GkError::InvalidAlgebra(format!(
                            "kappa not ad-invariant at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}
