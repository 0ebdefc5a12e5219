//! Generalized Kähler pairs: validation, the U^{p,q} bigrading, the Hodge
//! star identity star = -J1exp J2exp, and the SD/ASD regrouping.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::fiber::{complex_nullspace, standard_complex_structure, standard_kahler_form, GcsFiber};
use crate::clifford::matrices::{form_to_vec, real_to_complex, vec_to_form, CMat, CVec};
use crate::clifford::{hodge_star_matrix, GenMetric};
use crate::error::{GkError, Result};
use crate::exterior::Form;

const AXIOM_TOL: f64 = 1e-9;

/// The nontrivial (p, q) lattice for a generalized Hermitian four-manifold.
pub const UPQ_LATTICE: [(i32, i32); 9] = [
    (0, 2),
    (0, -2),
    (2, 0),
    (-2, 0),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (0, 0),
];

/// A commuting pair of generalized complex structures with positive product
/// metric, together with its derived bigrading projectors.
#[derive(Debug, Clone)]
pub struct GkFiber {
    j1: GcsFiber,
    j2: GcsFiber,
    metric: GenMetric,
    /// projectors onto U^{p,q}, aligned with UPQ_LATTICE
    upq: Vec<CMat>,
}

impl GkFiber {
    /// Validates commutation and positivity of G = -J1 J2 and caches the
    /// bigrading. Rejects non-commuting or non-positive pairs.
    pub fn validate(j1: GcsFiber, j2: GcsFiber) -> Result<Self> {
        let dim = j1.dim();
        if dim != j2.dim() {
            return Err(GkError::DimensionMismatch {
                expected: dim,
                got: j2.dim(),
            });
        }
        if dim != 4 {
            return Err(GkError::UnsupportedDimension(dim));
        }
        let commutator = (j1.j() * j2.j() - j2.j() * j1.j()).norm();
        if commutator > AXIOM_TOL * (1.0 + j1.j().norm() * j2.j().norm()) {
            return Err(GkError::InvalidStructure(format!(
                "structures do not commute (residual {commutator:.3e})"
            )));
        }
        let g_mat = -(j1.j() * j2.j());
        let metric = GenMetric::new(dim, g_mat)
            .map_err(|e| GkError::InvalidStructure(format!("product is not a metric: {e}")))?;
        let mut upq = Vec::with_capacity(UPQ_LATTICE.len());
        for &(p, q) in UPQ_LATTICE.iter() {
            let pp = j1.projector(p)?;
            let pq = j2.projector(q)?;
            let prod = pp * pq;
            // the two projector families commute; record their product
            let comm = (pq * pp - &prod).norm();
            if comm > 1e-8 {
                return Err(GkError::InvalidStructure(format!(
                    "U^p and U^q projectors do not commute at ({p},{q})"
                )));
            }
            upq.push(prod);
        }
        // completeness over the lattice
        let size = 1 << dim;
        let mut total = CMat::zeros(size, size);
        for p in &upq {
            total += p;
        }
        if (&total - CMat::identity(size, size)).norm() > 1e-8 {
            return Err(GkError::InvalidStructure(
                "U^{p,q} projectors do not resolve the identity".into(),
            ));
        }
        Ok(GkFiber { j1, j2, metric, upq })
    }

    /// The flat Kähler fiber: standard complex structure paired with the
    /// compatible symplectic form, so that G is the Euclidean block metric.
    pub fn flat_kahler() -> Result<Self> {
        let j1 = GcsFiber::from_complex(&standard_complex_structure())?;
        let j2 = GcsFiber::from_symplectic(&standard_kahler_form())?;
        GkFiber::validate(j1, j2)
    }

    pub fn dim(&self) -> usize {
        self.j1.dim()
    }

    pub fn j1(&self) -> &GcsFiber {
        &self.j1
    }

    pub fn j2(&self) -> &GcsFiber {
        &self.j2
    }

    pub fn metric(&self) -> &GenMetric {
        &self.metric
    }

    pub fn upq_projector(&self, p: i32, q: i32) -> Result<&CMat> {
        UPQ_LATTICE
            .iter()
            .position(|&(a, b)| (a, b) == (p, q))
            .map(|idx| &self.upq[idx])
            .ok_or_else(|| {
                GkError::InvalidStructure(format!("({p},{q}) is outside the m=4 lattice"))
            })
    }

    pub fn upq_project(&self, p: i32, q: i32, a: &Form) -> Result<Form> {
        let proj = self.upq_projector(p, q)?;
        Ok(vec_to_form(self.dim(), &(proj * form_to_vec(a))))
    }

    /// Complex basis of V_+^{1,0} = L1 ∩ L2 and friends; `signs` selects the
    /// eigenvalues of (J1, J2) as (+i or -i, +i or -i).
    pub fn v_subspace(&self, plus1: bool, plus2: bool) -> Vec<CVec> {
        let n2 = 2 * self.dim();
        let i = Complex64::i();
        let e1 = if plus1 { i } else { -i };
        let e2 = if plus2 { i } else { -i };
        let j1c = real_to_complex(self.j1.j());
        let j2c = real_to_complex(self.j2.j());
        let mut stacked = CMat::zeros(2 * n2, n2);
        stacked
            .view_mut((0, 0), (n2, n2))
            .copy_from(&(&j1c - CMat::identity(n2, n2) * e1));
        stacked
            .view_mut((n2, 0), (n2, n2))
            .copy_from(&(&j2c - CMat::identity(n2, n2) * e2));
        complex_nullspace(&stacked, 1e-9)
    }

    /// Verifies star = -J1exp J2exp as a 16x16 operator identity, and the
    /// scalar action star = -i^{p+q} on every lattice point. Failures are
    /// reported, not thrown.
    pub fn verify_star_identity(&self) -> Result<StarIdentityReport> {
        let star = hodge_star_matrix(&self.metric)?;
        let jexp = self.j1.jexp_matrix() * self.j2.jexp_matrix();
        let op_residual = (&star + &jexp).norm();
        let mut per_pq = Vec::new();
        for &(p, q) in UPQ_LATTICE.iter() {
            let proj = self.upq_projector(p, q)?;
            let scalar = -Complex64::i().powi(p + q);
            let residual = (&star * proj - proj * scalar).norm();
            per_pq.push(((p, q), residual));
        }
        let max_pq = per_pq.iter().map(|x| x.1).fold(0.0, f64::max);
        Ok(StarIdentityReport {
            op_residual,
            per_pq,
            max_residual: op_residual.max(max_pq),
        })
    }

    /// SD/ASD regrouping of the bigrading: returns the worst residual over
    /// the four identities of the even/odd self-dual decomposition.
    pub fn sd_asd_regrouping_residual(&self) -> Result<f64> {
        let star = hodge_star_matrix(&self.metric)?;
        let size = 1 << self.dim();
        let idm = CMat::identity(size, size);
        let p_plus = (&idm + &star).scale(0.5);
        let p_minus = (&idm - &star).scale(0.5);
        let parity = |p: u32| {
            real_to_complex(&crate::clifford::matrices::parity_projector(self.dim(), p))
        };
        let p_even = parity(0);
        let p_odd = parity(1);
        let sum = |pts: &[(i32, i32)]| -> Result<CMat> {
            let mut s = CMat::zeros(size, size);
            for &(p, q) in pts {
                s += self.upq_projector(p, q)?;
            }
            Ok(s)
        };
        let ev_plus = sum(&[(2, 0), (0, 2), (-2, 0), (0, -2)])?;
        let ev_minus = sum(&[(0, 0)])?;
        let od_plus = sum(&[(1, 1), (-1, -1)])?;
        let od_minus = sum(&[(1, -1), (-1, 1)])?;
        let r1 = (&p_plus * &p_even - &ev_plus).norm();
        let r2 = (&p_minus * &p_even - &ev_minus).norm();
        let r3 = (&p_plus * &p_odd - &od_plus).norm();
        let r4 = (&p_minus * &p_odd - &od_minus).norm();
        Ok(r1.max(r2).max(r3).max(r4))
    }

    /// Residual of the Figure-2 arrow property: the Clifford action of each
    /// V_±^{1,0/0,1} subspace sends U^{p,q} into a single adjacent target.
    pub fn clifford_arrow_residual(&self) -> Result<f64> {
        use crate::clifford::genvector::GenVector;
        let size = 1 << self.dim();
        let mut worst: f64 = 0.0;
        for (plus1, plus2) in [(true, true), (true, false), (false, true), (false, false)] {
            // (e1, e2) eigensigns translate to the (p, q) step of the action
            let dp = if plus1 { 1 } else { -1 };
            let dq = if plus2 { 1 } else { -1 };
            for v in self.v_subspace(plus1, plus2) {
                let gv = crate::clifford::matrices::gamma_matrix(&GenVector::from_flat(
                    v.as_slice(),
                ));
                for &(p, q) in UPQ_LATTICE.iter() {
                    let source = self.upq_projector(p, q)?;
                    let target = (p + dp, q + dq);
                    let mut image = &gv * source;
                    if UPQ_LATTICE.contains(&target) {
                        let pt = self.upq_projector(target.0, target.1)?;
                        image -= pt * &gv * source;
                    }
                    // if the target is outside the lattice the image must die
                    let denom = 1.0 + gv.norm();
                    worst = worst.max(image.norm() / denom);
                }
            }
        }
        let _ = size;
        Ok(worst)
    }
}

#[derive(Debug, Clone)]
pub struct StarIdentityReport {
    pub op_residual: f64,
    pub per_pq: Vec<((i32, i32), f64)>,
    pub max_residual: f64,
}

/// Conjugates a GK pair by the two-form action e^B and revalidates.
pub fn b_conjugate(fiber: &GkFiber, b: &Form) -> Result<GkFiber> {
    let dim = fiber.dim();
    if !b.is_homogeneous(2, 1e-13) {
        return Err(GkError::DegreeMismatch { expected: 2 });
    }
    let mut bm = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = b.coeff((1 << i) | (1 << j)).re;
            bm[(i, j)] = v;
            bm[(j, i)] = -v;
        }
    }
    // e^B as a flat endomorphism: X + xi -> X + xi - i_X B
    let mut e = DMatrix::identity(2 * dim, 2 * dim);
    for r in 0..dim {
        for c in 0..dim {
            // (i_{e_c} B)_r = B_{cr}
            e[(dim + r, c)] = -bm[(c, r)];
        }
    }
    let e_inv = {
        let mut inv = DMatrix::identity(2 * dim, 2 * dim);
        for r in 0..dim {
            for c in 0..dim {
                inv[(dim + r, c)] = bm[(c, r)];
            }
        }
        inv
    };
    let j1 = GcsFiber::new(dim, &e * fiber.j1().j() * &e_inv)?;
    let j2 = GcsFiber::new(dim, &e * fiber.j2().j() * &e_inv)?;
    GkFiber::validate(j1, j2)
}

/// Conjugates a GK pair by a pairing-orthogonal transformation exp(M Q) with
/// M antisymmetric, and revalidates.
pub fn orthogonal_conjugate(fiber: &GkFiber, antisym: &DMatrix<f64>) -> Result<GkFiber> {
    let dim = fiber.dim();
    let q = crate::clifford::pairing_gram(dim);
    let s = antisym * &q;
    let o = matrix_exp_real(&s);
    let o_inv = matrix_exp_real(&(-&s));
    let j1 = GcsFiber::new(dim, &o * fiber.j1().j() * &o_inv)?;
    let j2 = GcsFiber::new(dim, &o * fiber.j2().j() * &o_inv)?;
    GkFiber::validate(j1, j2)
}

/// Scaling-and-squaring series exponential; fine at these sizes.
pub fn matrix_exp_real(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.norm();
    let squarings = norm.log2().ceil().max(0.0) as usize + 1;
    let scaled = a / 2f64.powi(squarings as i32);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = &out * &out;
    }
    out
}
