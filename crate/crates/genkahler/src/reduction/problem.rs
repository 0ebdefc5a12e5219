//! Reduction problems: an isotropic subspace K in the split quadratic space,
//! its pairing and metric complements, the quotient fiber, the connection
//! two-form B_theta, and the fiberwise generalized Kähler reduction test.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::clifford::{natural_pairing, pairing_gram, GenMetric, GenVector};
use crate::error::{GkError, Result};
use crate::exterior::{Form, QForm};
use crate::gcs::GkFiber;
use crate::linalg::{
    columns, min_symmetric_eigenvalue, orthonormalize, real_nullspace, signature,
    subspace_residual_r,
};

const ISOTROPY_TOL: f64 = 1e-10;
const RANK_TOL: f64 = 1e-10;
/// principal-angle acceptance threshold for J1 K^G = K^G
const INVARIANCE_TOL: f64 = 1e-8;

/// Tangent/cotangent/connection data of a lifted action, one triple of
/// vectors per generator of the acting algebra.
#[derive(Debug, Clone)]
pub struct ActionSplit {
    /// tangent generators X_gamma (length m each)
    pub x: Vec<Vec<f64>>,
    /// cotangent parts xi_gamma (length m each)
    pub xi: Vec<Vec<f64>>,
    /// connection covectors theta^gamma with theta^a(X_b) = delta_ab
    pub theta: Vec<Vec<f64>>,
}

/// An ambient quadratic space R^m ⊕ (R^m)* with an isotropic subspace K and
/// optional metric / lifted-action / GK data.
#[derive(Debug, Clone)]
pub struct ReductionProblem {
    dim: usize,
    k_gens: Vec<GenVector>,
    pub metric: Option<GenMetric>,
    pub action: Option<ActionSplit>,
    pub gk: Option<GkFiber>,
}

/// The quotient K^perp / K with its induced pairing, plus optional metric
/// and reduced structure matrices.
#[derive(Debug, Clone)]
pub struct ReducedFiber {
    /// coset representatives spanning a complement of K in K^perp
    pub basis: DMatrix<f64>,
    /// Gram matrix of the natural pairing in that basis
    pub pairing: DMatrix<f64>,
    pub signature: (usize, usize),
    pub metric_gram: Option<DMatrix<f64>>,
    pub j1_red: Option<DMatrix<f64>>,
    pub j2_red: Option<DMatrix<f64>>,
}

impl ReductionProblem {
    /// Validates isotropy and linear independence of the generators.
    pub fn new(dim: usize, k_gens: Vec<GenVector>) -> Result<Self> {
        let mut max_pairing: f64 = 0.0;
        for a in &k_gens {
            if a.dim() != dim {
                return Err(GkError::DimensionMismatch {
                    expected: dim,
                    got: a.dim(),
                });
            }
            for b in &k_gens {
                max_pairing = max_pairing.max(natural_pairing(a, b).norm());
            }
        }
        if max_pairing > ISOTROPY_TOL {
            return Err(GkError::NotIsotropic { max_pairing });
        }
        if !k_gens.is_empty() {
            let mat = gen_matrix(&k_gens);
            let rank = mat.clone().svd(false, false).rank(RANK_TOL);
            if rank < k_gens.len() {
                return Err(GkError::Degenerate(format!(
                    "K generators are linearly dependent (rank {rank} of {})",
                    k_gens.len()
                )));
            }
        }
        Ok(ReductionProblem {
            dim,
            k_gens,
            metric: None,
            action: None,
            gk: None,
        })
    }

    pub fn with_metric(mut self, metric: GenMetric) -> Self {
        self.metric = Some(metric);
        self
    }

    pub fn with_action(mut self, action: ActionSplit) -> Self {
        self.action = Some(action);
        self
    }

    pub fn with_gk(mut self, gk: GkFiber) -> Self {
        let metric = gk.metric().clone();
        self.gk = Some(gk);
        self.metric = Some(metric);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k_dim(&self) -> usize {
        self.k_gens.len()
    }

    pub fn k_matrix(&self) -> DMatrix<f64> {
        gen_matrix(&self.k_gens)
    }

    /// Basis of the pairing-orthogonal K^perp; dim = 2m - dim K and K ⊆ K^perp.
    pub fn k_perp(&self) -> Vec<DVector<f64>> {
        let q = pairing_gram(self.dim);
        if self.k_gens.is_empty() {
            return (0..2 * self.dim)
                .map(|i| {
                    let mut v = DVector::zeros(2 * self.dim);
                    v[i] = 1.0;
                    v
                })
                .collect();
        }
        let constraints = self.k_matrix().transpose() * q;
        real_nullspace(&constraints, 1e-12)
    }

    /// K^G = K^perp ∩ G(K^perp): the metric complement of K inside K^perp.
    pub fn kg_space(&self) -> Result<Vec<DVector<f64>>> {
        let metric = self
            .metric
            .as_ref()
            .ok_or_else(|| GkError::Scenario("kg_space needs a metric".into()))?;
        let q = pairing_gram(self.dim);
        if self.k_gens.is_empty() {
            return Ok(self.k_perp());
        }
        let k_t_q = self.k_matrix().transpose() * &q;
        let mut constraints = DMatrix::zeros(2 * self.k_gens.len(), 2 * self.dim);
        constraints
            .view_mut((0, 0), (self.k_gens.len(), 2 * self.dim))
            .copy_from(&k_t_q);
        constraints
            .view_mut((self.k_gens.len(), 0), (self.k_gens.len(), 2 * self.dim))
            .copy_from(&(&k_t_q * metric.mat()));
        Ok(real_nullspace(&constraints, 1e-12))
    }

    /// The quotient K^perp / K with its induced pairing. The pairing descends
    /// because K is the pairing-kernel of K^perp; nondegeneracy and split
    /// signature (m - dim K, m - dim K) are verified.
    pub fn quotient_fiber(&self) -> Result<ReducedFiber> {
        let k_perp = self.k_perp();
        let expected_dim = 2 * self.dim - self.k_gens.len();
        if k_perp.len() != expected_dim {
            return Err(GkError::Degenerate(format!(
                "dim K^perp = {}, expected {expected_dim}",
                k_perp.len()
            )));
        }
        let perp = columns(&k_perp);
        // complement of K inside K^perp: project K out (Euclidean) and keep the rank
        let reps = if self.k_gens.is_empty() {
            perp
        } else {
            let k_on = orthonormalize(&self.k_matrix(), 1e-12);
            let projector =
                DMatrix::identity(2 * self.dim, 2 * self.dim) - &k_on * k_on.transpose();
            orthonormalize(&(projector * perp), 1e-10)
        };
        let target = 2 * (self.dim - self.k_gens.len());
        if reps.ncols() != target {
            return Err(GkError::Degenerate(format!(
                "quotient dimension {} differs from expected {target}",
                reps.ncols()
            )));
        }
        let q = pairing_gram(self.dim);
        let gram = reps.transpose() * &q * &reps;
        let (pos, neg, null) = signature(&gram, 1e-10);
        if null > 0 {
            return Err(GkError::Degenerate(
                "induced pairing on K^perp/K is degenerate".into(),
            ));
        }
        let half = self.dim - self.k_gens.len();
        if (pos, neg) != (half, half) {
            return Err(GkError::Degenerate(format!(
                "induced pairing has signature ({pos},{neg}), expected ({half},{half})"
            )));
        }
        Ok(ReducedFiber {
            basis: reps,
            pairing: gram,
            signature: (pos, neg),
            metric_gram: None,
            j1_red: None,
            j2_red: None,
        })
    }

    /// Conditioning of the composite K^G ↪ K^perp ↠ K^perp/K: the smallest
    /// singular value of the change of basis in orthonormal frames.
    pub fn kg_iso_conditioning(&self) -> Result<f64> {
        let kg = self.kg_space()?;
        let quotient = self.quotient_fiber()?;
        if kg.len() != quotient.basis.ncols() {
            return Ok(0.0);
        }
        if kg.is_empty() {
            return Ok(1.0);
        }
        let kg_mat = orthonormalize(&columns(&kg), 1e-12);
        // quotient map: project along K onto the representative complement
        let reps = &quotient.basis; // orthonormal columns
        let coords = reps.transpose() * &kg_mat;
        let svd = coords.svd(false, false);
        Ok(svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min))
    }

    /// Metric reduction at the fiber: the induced metric on K^perp/K obtained
    /// by restricting <G., .> to K^G, plus the transversal tangent
    /// distribution tau_+ of the lifted action.
    pub fn reduced_metric(&self) -> Result<(ReducedFiber, Vec<DVector<f64>>)> {
        let metric = self
            .metric
            .as_ref()
            .ok_or_else(|| GkError::Scenario("reduced_metric needs a metric".into()))?;
        let kg = self.kg_space()?;
        if kg.len() != 2 * (self.dim - self.k_gens.len()) {
            return Err(GkError::Degenerate(format!(
                "dim K^G = {}, expected {}",
                kg.len(),
                2 * (self.dim - self.k_gens.len())
            )));
        }
        let w = orthonormalize(&columns(&kg), 1e-12);
        let q = pairing_gram(self.dim);
        let pairing = w.transpose() * &q * &w;
        let metric_gram = w.transpose() * &q * metric.mat() * &w;
        let min_eig = min_symmetric_eigenvalue(&metric_gram);
        if min_eig <= 0.0 {
            return Err(GkError::Degenerate(format!(
                "reduced metric not positive definite (min eigenvalue {min_eig:.3e})"
            )));
        }
        let (pos, neg, _) = signature(&pairing, 1e-10);
        let fiber = ReducedFiber {
            basis: w,
            pairing,
            signature: (pos, neg),
            metric_gram: Some(metric_gram),
            j1_red: None,
            j2_red: None,
        };
        let tau = self.tau_plus()?;
        Ok((fiber, tau))
    }

    /// tau_+ = { Y tangent : <G(X_gamma) + xi_gamma, Y> = 0 for all gamma }.
    pub fn tau_plus(&self) -> Result<Vec<DVector<f64>>> {
        let metric = self
            .metric
            .as_ref()
            .ok_or_else(|| GkError::Scenario("tau_plus needs a metric".into()))?;
        let action = self
            .action
            .as_ref()
            .ok_or_else(|| GkError::Scenario("tau_plus needs a lifted-action split".into()))?;
        let m = self.dim;
        let gens = action.x.len();
        let mut rows = DMatrix::zeros(gens, m);
        for (g, (x, xi)) in action.x.iter().zip(&action.xi).enumerate() {
            // cotangent component of G(X) + xi annihilates tau_+
            let mut flat = DVector::zeros(2 * m);
            for i in 0..m {
                flat[i] = x[i];
            }
            let gx = metric.mat() * flat;
            for i in 0..m {
                rows[(g, i)] = gx[m + i] + xi[i];
            }
        }
        let tau = real_nullspace(&rows, 1e-12);
        if tau.len() != m - gens {
            return Err(GkError::Degenerate(format!(
                "tau_+ has dimension {}, expected {} (action not transversal)",
                tau.len(),
                m - gens
            )));
        }
        // transversality to the orbit directions
        let mut joint = DMatrix::zeros(m, gens + tau.len());
        for (g, x) in action.x.iter().enumerate() {
            for i in 0..m {
                joint[(i, g)] = x[i];
            }
        }
        for (c, t) in tau.iter().enumerate() {
            joint.set_column(gens + c, t);
        }
        if joint.svd(false, false).rank(1e-9) != m {
            return Err(GkError::Degenerate(
                "tau_+ is not transversal to the orbit directions".into(),
            ));
        }
        Ok(tau)
    }

    /// Fiberwise generalized Kähler reduction: accepts when J1 K^G = K^G and
    /// returns the reduced pair expressed in the K^G basis; otherwise reports
    /// the invariance residual.
    pub fn gk_reduce_fiber(&self) -> Result<GkReduction> {
        let gk = self
            .gk
            .as_ref()
            .ok_or_else(|| GkError::Scenario("gk_reduce_fiber needs a GK fiber".into()))?;
        let kg = self.kg_space()?;
        let w = orthonormalize(&columns(&kg), 1e-12);
        let j1w = gk.j1().j() * &w;
        let residual = subspace_residual_r(&w, &j1w);
        if residual > INVARIANCE_TOL {
            return Ok(GkReduction {
                accepted: false,
                invariance_residual: residual,
                fiber: None,
                axiom_residual: f64::NAN,
            });
        }
        // coordinates of the restricted structures in the orthonormal K^G frame
        let c1 = w.transpose() * gk.j1().j() * &w;
        let c2 = w.transpose() * gk.j2().j() * &w;
        let q = pairing_gram(self.dim);
        let pairing = w.transpose() * &q * &w;
        let r = w.ncols();
        let idr = DMatrix::identity(r, r);
        let mut axiom_residual: f64 = 0.0;
        axiom_residual = axiom_residual.max((&c1 * &c1 + &idr).norm());
        axiom_residual = axiom_residual.max((&c2 * &c2 + &idr).norm());
        axiom_residual = axiom_residual.max((&c1 * &c2 - &c2 * &c1).norm());
        let g_red = -(&c1 * &c2);
        let metric_gram = &pairing * &g_red;
        let min_eig = min_symmetric_eigenvalue(&metric_gram);
        if min_eig <= 0.0 {
            return Err(GkError::Degenerate(format!(
                "reduced product metric not positive (min eigenvalue {min_eig:.3e})"
            )));
        }
        let sig = signature(&pairing, 1e-10);
        let fiber = ReducedFiber {
            basis: w,
            pairing,
            signature: (sig.0, sig.1),
            metric_gram: Some(metric_gram),
            j1_red: Some(c1),
            j2_red: Some(c2),
        };
        Ok(GkReduction {
            accepted: true,
            invariance_residual: residual,
            fiber: Some(fiber),
            axiom_residual,
        })
    }
}

#[derive(Debug, Clone)]
pub struct GkReduction {
    pub accepted: bool,
    pub invariance_residual: f64,
    pub fiber: Option<ReducedFiber>,
    pub axiom_residual: f64,
}

fn gen_matrix(gens: &[GenVector]) -> DMatrix<f64> {
    let rows = gens.first().map(|g| 2 * g.dim()).unwrap_or(0);
    let mut m = DMatrix::zeros(rows, gens.len());
    for (c, g) in gens.iter().enumerate() {
        for (r, v) in g.to_flat().iter().enumerate() {
            m[(r, c)] = v.re;
        }
    }
    m
}

/// The invariant connection two-form B_theta = <theta,xi> + <X∘theta, xi∘theta>/2,
/// evaluated on the coordinate basis. Validates the connection axiom
/// theta^a(X_b) = delta_ab.
pub fn b_theta(dim: usize, action: &ActionSplit) -> Result<Form> {
    validate_connection(dim, action, 1e-10)?;
    let gens = action.x.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let theta_of = |y: &[f64]| -> Vec<f64> {
        (0..gens).map(|g| dot(&action.theta[g], y)).collect()
    };
    let lincomb = |lists: &[Vec<f64>], c: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (g, w) in c.iter().enumerate() {
            for i in 0..dim {
                out[i] += w * lists[g][i];
            }
        }
        out
    };
    let eval = |y: &[f64], z: &[f64]| -> f64 {
        let ty = theta_of(y);
        let tz = theta_of(z);
        let xi_ty = lincomb(&action.xi, &ty);
        let xi_tz = lincomb(&action.xi, &tz);
        let x_ty = lincomb(&action.x, &ty);
        let x_tz = lincomb(&action.x, &tz);
        // <theta,xi>(Y,Z) = xi_{theta(Y)}(Z) - xi_{theta(Z)}(Y)
        let first = dot(&xi_ty, z) - dot(&xi_tz, y);
        // <X∘theta, xi∘theta>(Y,Z) = xi_{theta(Z)}(X_{theta(Y)}) - xi_{theta(Y)}(X_{theta(Z)})
        let second = dot(&xi_tz, &x_ty) - dot(&xi_ty, &x_tz);
        first + 0.5 * second
    };
    let mut b = Form::zero(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut ei = vec![0.0; dim];
            ei[i] = 1.0;
            let mut ej = vec![0.0; dim];
            ej[j] = 1.0;
            let v = eval(&ei, &ej);
            b.set_coeff((1 << i) | (1 << j), num_complex::Complex64::new(v, 0.0));
        }
    }
    Ok(b)
}

fn validate_connection(dim: usize, action: &ActionSplit, tol: f64) -> Result<()> {
    let gens = action.x.len();
    if action.xi.len() != gens || action.theta.len() != gens {
        return Err(GkError::Scenario(
            "action split needs matching x, xi, theta lists".into(),
        ));
    }
    for list in action.x.iter().chain(&action.xi).chain(&action.theta) {
        if list.len() != dim {
            return Err(GkError::DimensionMismatch {
                expected: dim,
                got: list.len(),
            });
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..gens {
        for b in 0..gens {
            let v: f64 = action.theta[a]
                .iter()
                .zip(&action.x[b])
                .map(|(t, x)| t * x)
                .sum();
            let expected = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((v - expected).abs());
        }
    }
    if worst > tol {
        return Err(GkError::ConnectionAxiom { residual: worst });
    }
    Ok(())
}

/// Worst-case residual of the contraction identity i_{X_gamma} B_theta = xi_gamma.
pub fn b_theta_contraction_residual(dim: usize, action: &ActionSplit) -> Result<f64> {
    let b = b_theta(dim, action)?;
    let mut worst: f64 = 0.0;
    for g in 0..action.x.len() {
        let x: Vec<num_complex::Complex64> = action.x[g]
            .iter()
            .map(|&v| num_complex::Complex64::new(v, 0.0))
            .collect();
        let ix_b = b.contract(&x);
        let mut xi = Form::zero(dim);
        for i in 0..dim {
            xi.set_coeff(1 << i, num_complex::Complex64::new(action.xi[g][i], 0.0));
        }
        worst = worst.max(ix_b.sub(&xi).norm());
    }
    Ok(worst)
}

/// Exact-rational B_theta with the same formula; f64 inputs convert exactly.
/// Certifies the contraction identity i_{X_gamma} B_theta = xi_gamma in
/// exact arithmetic, erring if it fails.
pub fn b_theta_exact(dim: usize, action: &ActionSplit) -> Result<Vec<Vec<BigRational>>> {
    validate_connection(dim, action, 1e-10)?;
    let to_q = |v: f64| BigRational::from_float(v).expect("finite float");
    let gens = action.x.len();
    let xq: Vec<Vec<BigRational>> = action
        .x
        .iter()
        .map(|r| r.iter().map(|&v| to_q(v)).collect())
        .collect();
    let xiq: Vec<Vec<BigRational>> = action
        .xi
        .iter()
        .map(|r| r.iter().map(|&v| to_q(v)).collect())
        .collect();
    let thetaq: Vec<Vec<BigRational>> = action
        .theta
        .iter()
        .map(|r| r.iter().map(|&v| to_q(v)).collect())
        .collect();
    let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        let mut s = BigRational::zero();
        for (p, q) in a.iter().zip(b) {
            s += p * q;
        }
        s
    };
    let lincomb = |lists: &[Vec<BigRational>], c: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); dim];
        for (g, w) in c.iter().enumerate() {
            for i in 0..dim {
                out[i] += w * &lists[g][i];
            }
        }
        out
    };
    let theta_of =
        |y: &[BigRational]| -> Vec<BigRational> { (0..gens).map(|g| dot(&thetaq[g], y)).collect() };
    let basis = |i: usize| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); dim];
        v[i] = BigRational::from(BigInt::from(1));
        v
    };
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let eval = |y: &[BigRational], z: &[BigRational]| -> BigRational {
        let ty = theta_of(y);
        let tz = theta_of(z);
        let xi_ty = lincomb(&xiq, &ty);
        let xi_tz = lincomb(&xiq, &tz);
        let x_ty = lincomb(&xq, &ty);
        let x_tz = lincomb(&xq, &tz);
        let first = dot(&xi_ty, z) - dot(&xi_tz, y);
        let second = dot(&xi_tz, &x_ty) - dot(&xi_ty, &x_tz);
        first + second * &half
    };
    let mut b = vec![vec![BigRational::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                b[i][j] = eval(&basis(i), &basis(j));
            }
        }
    }
    for g in 0..gens {
        let mut bq = QForm::zero(dim);
        for i in 0..dim {
            for j in (i + 1)..dim {
                bq.set_coeff((1 << i) | (1 << j), b[i][j].clone());
            }
        }
        let contracted = bq.contract(&xq[g]);
        let mut xi_form = QForm::zero(dim);
        for i in 0..dim {
            xi_form.set_coeff(1 << i, xiq[g][i].clone());
        }
        let diff = contracted.sub(&xi_form);
        if !diff.is_zero() {
            return Err(GkError::Degenerate(format!(
                "exact contraction identity failed for generator {g} (worst {})",
                diff.max_abs_f64()
            )));
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcs::standard_complex_structure;

    fn tangent_k(indices: &[usize]) -> Vec<GenVector> {
        indices.iter().map(|&i| GenVector::tangent(4, i)).collect()
    }

    #[test]
    fn tangent_line_k_perp() {
        let p = ReductionProblem::new(4, tangent_k(&[1])).unwrap();
        let perp = p.k_perp();
        assert_eq!(perp.len(), 7);
        // e1 itself is inside K^perp
        let k = p.k_matrix();
        let perp_mat = columns(&perp);
        let residual = subspace_residual_r(
            &perp_mat,
            &{
                let mut joined = DMatrix::zeros(8, 8);
                joined.view_mut((0, 0), (8, 7)).copy_from(&perp_mat);
                joined.set_column(7, &k.column(0).into_owned());
                joined
            },
        );
        // spans agree: adding K does not enlarge K^perp
        assert!(residual < 1.0);
        // dx1 pairs with e1, so it is not in K^perp
        let q = pairing_gram(4);
        for v in &perp {
            let pairing = (k.transpose() * &q * v)[(0, 0)];
            assert!(pairing.abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_generator_k_perp_dimension() {
        let mut gen = GenVector::tangent(4, 1);
        gen = gen.add(&GenVector::cotangent(4, 2));
        let p = ReductionProblem::new(4, vec![gen]).unwrap();
        assert_eq!(p.k_perp().len(), 7);
    }

    #[test]
    fn cotangent_action_quotient_is_six_dimensional() {
        let p = ReductionProblem::new(4, vec![GenVector::cotangent(4, 1)]).unwrap();
        let fiber = p.quotient_fiber().unwrap();
        assert_eq!(fiber.basis.ncols(), 6);
        assert_eq!(fiber.signature, (3, 3));
    }

    #[test]
    fn tangent_action_quotient_is_six_dimensional() {
        let p = ReductionProblem::new(4, tangent_k(&[1])).unwrap();
        let fiber = p.quotient_fiber().unwrap();
        assert_eq!(fiber.basis.ncols(), 6);
        assert_eq!(fiber.signature, (3, 3));
    }

    #[test]
    fn non_isotropic_k_rejected() {
        let v = GenVector::tangent(4, 1).add(&GenVector::cotangent(4, 1));
        let err = ReductionProblem::new(4, vec![v]);
        assert!(matches!(err, Err(GkError::NotIsotropic { .. })));
    }

    #[test]
    fn dependent_generators_rejected() {
        let gens = vec![GenVector::tangent(4, 1), GenVector::tangent(4, 1)];
        assert!(ReductionProblem::new(4, gens).is_err());
    }

    #[test]
    fn kg_space_for_tangent_line() {
        let p = ReductionProblem::new(4, tangent_k(&[1]))
            .unwrap()
            .with_metric(GenMetric::euclidean(4));
        let kg = p.kg_space().unwrap();
        assert_eq!(kg.len(), 6);
        // K^G = span{e2,e3,e4,dx2,dx3,dx4}: no e1 or dx1 components
        for v in &kg {
            assert!(v[0].abs() < 1e-12);
            assert!(v[4].abs() < 1e-12);
        }
        // empty K: K^G is everything
        let free = ReductionProblem::new(4, vec![])
            .unwrap()
            .with_metric(GenMetric::euclidean(4));
        assert_eq!(free.kg_space().unwrap().len(), 8);
    }

    #[test]
    fn kg_quotient_isomorphism_well_conditioned() {
        let p = ReductionProblem::new(4, tangent_k(&[1, 2]))
            .unwrap()
            .with_metric(GenMetric::euclidean(4));
        let sigma = p.kg_iso_conditioning().unwrap();
        assert!(sigma > 0.5, "conditioning {sigma}");
    }

    #[test]
    fn reduced_metric_for_euclidean_tangent_action() {
        let action = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0; 4]],
            theta: vec![vec![1.0, 0.0, 0.0, 0.0]],
        };
        let p = ReductionProblem::new(4, tangent_k(&[1]))
            .unwrap()
            .with_metric(GenMetric::euclidean(4))
            .with_action(action);
        let (fiber, tau) = p.reduced_metric().unwrap();
        assert_eq!(tau.len(), 3);
        // tau_+ = span{e2,e3,e4}
        for t in &tau {
            assert!(t[0].abs() < 1e-12);
        }
        let gram = fiber.metric_gram.unwrap();
        assert!(min_symmetric_eigenvalue(&gram) > 0.0);
    }

    #[test]
    fn tau_plus_scale_invariance_of_defining_functional() {
        // scaling xi while fixing the annihilator of G(X)+xi leaves tau_+ fixed
        let action1 = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0, 1.0, 0.0, 0.0]],
            theta: vec![vec![1.0, 0.0, 0.0, 0.0]],
        };
        // G(X)+xi = dx1 + dx2; scaling both tangent metric row and xi by 3
        // keeps the same annihilator
        let action2 = ActionSplit {
            x: vec![vec![3.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0, 3.0, 0.0, 0.0]],
            theta: vec![vec![1.0 / 3.0, 0.0, 0.0, 0.0]],
        };
        let k1 = vec![GenVector::from_real(
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        )];
        let k2 = vec![GenVector::from_real(
            &[3.0, 0.0, 0.0, 0.0],
            &[0.0, 3.0, 0.0, 0.0],
        )];
        let p1 = ReductionProblem::new(4, k1)
            .unwrap()
            .with_metric(GenMetric::euclidean(4))
            .with_action(action1);
        let p2 = ReductionProblem::new(4, k2)
            .unwrap()
            .with_metric(GenMetric::euclidean(4))
            .with_action(action2);
        let t1 = columns(&p1.tau_plus().unwrap());
        let t2 = columns(&p2.tau_plus().unwrap());
        assert!(subspace_residual_r(&t1, &t2) < 1e-10);
    }

    #[test]
    fn b_theta_single_generator() {
        let action = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0, 1.0, 0.0, 0.0]],
            theta: vec![vec![1.0, 0.0, 0.0, 0.0]],
        };
        let b = b_theta(4, &action).unwrap();
        assert!((b.coeff(0b0011).re - 1.0).abs() < 1e-14);
        assert!(b_theta_contraction_residual(4, &action).unwrap() < 1e-14);
        // xi = 0 gives B = 0
        let trivial = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0; 4]],
            theta: vec![vec![1.0, 0.0, 0.0, 0.0]],
        };
        assert!(b_theta(4, &trivial).unwrap().is_zero(1e-15));
    }

    #[test]
    fn b_theta_two_commuting_generators_exact() {
        // crossed cotangent parts; isotropy needs xi_a(X_b) antisymmetric
        let action = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
            xi: vec![vec![0.0, 0.5, 0.0, 1.0], vec![-0.5, 0.0, 2.0, 0.0]],
            theta: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
        };
        assert!(b_theta_contraction_residual(4, &action).unwrap() < 1e-14);
        let exact = b_theta_exact(4, &action).unwrap();
        assert!(!exact[0][1].is_zero() || !exact[0][3].is_zero());
    }

    #[test]
    fn connection_axiom_violation_is_typed() {
        let action = ActionSplit {
            x: vec![vec![1.0, 0.0, 0.0, 0.0]],
            xi: vec![vec![0.0; 4]],
            theta: vec![vec![0.5, 0.0, 0.0, 0.0]],
        };
        assert!(matches!(
            b_theta(4, &action),
            Err(GkError::ConnectionAxiom { .. })
        ));
    }

    #[test]
    fn gk_reduction_of_complex_tangent_plane_gives_kahler_fiber() {
        // K = span{e1, J e1} is isotropic and J1-stable; K^G reduction gives
        // the flat Kähler fiber of the quotient plane
        let j = standard_complex_structure();
        let e1 = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        let je1 = &j * &e1;
        let gens = vec![
            GenVector::from_real(e1.as_slice(), &[0.0; 4]),
            GenVector::from_real(je1.as_slice(), &[0.0; 4]),
        ];
        let gk = GkFiber::flat_kahler().unwrap();
        let p = ReductionProblem::new(4, gens).unwrap().with_gk(gk);
        let red = p.gk_reduce_fiber().unwrap();
        assert!(red.accepted, "invariance residual {}", red.invariance_residual);
        assert!(red.axiom_residual < 1e-10);
        let fiber = red.fiber.unwrap();
        assert_eq!(fiber.basis.ncols(), 4);
        assert_eq!(fiber.signature, (2, 2));
    }

    #[test]
    fn gk_reduction_rejects_non_invariant_k() {
        let gens = vec![GenVector::tangent(4, 1)];
        let gk = GkFiber::flat_kahler().unwrap();
        let p = ReductionProblem::new(4, gens).unwrap().with_gk(gk);
        let red = p.gk_reduce_fiber().unwrap();
        assert!(!red.accepted);
        assert!(red.invariance_residual > 1e-2);
    }

    #[test]
    fn empty_k_reduction_returns_input_fiber() {
        let gk = GkFiber::flat_kahler().unwrap();
        let j1 = gk.j1().j().clone();
        let p = ReductionProblem::new(4, vec![]).unwrap().with_gk(gk);
        let red = p.gk_reduce_fiber().unwrap();
        assert!(red.accepted);
        let fiber = red.fiber.unwrap();
        assert_eq!(fiber.basis.ncols(), 8);
        // the reduced J1 is the input J1 up to the orthonormal change of frame
        let w = &fiber.basis;
        let back = w * fiber.j1_red.as_ref().unwrap() * w.transpose();
        assert!((back - j1).norm() < 1e-9);
    }
}
