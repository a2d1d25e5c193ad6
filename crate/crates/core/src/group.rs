//! Group elements of the cross-product symmetry group inside SO(7):
//! the matrix exponential, exponentials of Lie-algebra directions,
//! seeded random sampling and membership testing.

use thiserror::Error;

use crate::euclid7::cross_r;
use crate::g2alg::G2Basis;
use crate::mat::Mat7;
use crate::report::f17;
use crate::sample::{rng_from_seed, sample_coeffs14, sample_vec7r};

/// Orthogonality residual an element must stay below.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Cross-compatibility residual an element must stay below.
pub const CROSS_COMPAT_TOL: f64 = 1e-9;

/// Random pairs drawn when checking cross-compatibility of one matrix.
pub const MEMBERSHIP_PAIRS: usize = 50;

/// Fixed stream for the membership pairs, so the check is a pure function
/// of the matrix.
const MEMBERSHIP_SEED: u64 = 0x67C2_0007;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(
        "exponential left the group (orthogonality residual {orthogonality:.3e}, \
         cross-compatibility residual {cross_compat:.3e}); basis is corrupt"
    )]
    InvariantViolation { orthogonality: f64, cross_compat: f64 },
}

/// Matrix exponential by scaling and squaring around a degree-18 Taylor
/// polynomial: scale so the Frobenius norm is ≤ 0.5, evaluate the series
/// by Horner's rule, square back up.
pub fn expm(a: &Mat7) -> Mat7 {
    const DEGREE: usize = 18;
    let norm = a.frobenius_norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale(0.5f64.powi(s as i32));
    // Horner: I + B(I + B/2(I + B/3(...)))
    let mut t = Mat7::identity();
    for k in (1..=DEGREE).rev() {
        t = Mat7::identity().add(&b.mul(&t).scale(1.0 / k as f64));
    }
    for _ in 0..s {
        t = t.mul(&t);
    }
    t
}

/// Worst residual of m(v×w) − (mv)×(mw) over seeded random pairs.
pub fn cross_compat_residual(m: &Mat7, n_pairs: usize, seed: u64) -> f64 {
    let mut rng = rng_from_seed(seed);
    let mut r: f64 = 0.0;
    for _ in 0..n_pairs {
        let v = sample_vec7r(&mut rng);
        let w = sample_vec7r(&mut rng);
        let lhs = m.apply_r(&cross_r(&v, &w));
        let rhs = cross_r(&m.apply_r(&v), &m.apply_r(&w));
        r = r.max(lhs.sub(&rhs).max_abs());
    }
    r
}

/// True iff both membership residuals are ≤ tol.
pub fn is_g2(m: &Mat7, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    m.orthogonality_residual() <= tol
        && cross_compat_residual(m, MEMBERSHIP_PAIRS, MEMBERSHIP_SEED) <= tol
}

/// An orthogonal 7×7 matrix compatible with the cross product. Instances
/// are only handed out after both membership residuals pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct G2Element {
    mat: Mat7,
}

impl G2Element {
    pub fn identity() -> Self {
        G2Element {
            mat: Mat7::identity(),
        }
    }

    /// For internal call sites that already know the matrix is in the
    /// group (products with exponentials of algebra directions).
    pub(crate) fn from_mat_unchecked(mat: Mat7) -> Self {
        G2Element { mat }
    }

    pub fn mat(&self) -> &Mat7 {
        &self.mat
    }

    /// Group product.
    pub fn mul(&self, other: &Self) -> Self {
        G2Element {
            mat: self.mat.mul(&other.mat),
        }
    }

    /// Inverse; for orthogonal matrices this is the transpose.
    pub fn inverse(&self) -> Self {
        G2Element {
            mat: self.mat.transpose(),
        }
    }

    /// Row-major 49-entry JSON array, 17 significant digits.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.mat.to_row_major().iter().map(|&x| f17(x)).collect())
    }
}

/// exp(Σᵢ coeffsᵢ Xᵢ), verified against both membership invariants.
pub fn exp_g2(coeffs: &[f64; 14], basis: &G2Basis) -> Result<G2Element, GroupError> {
    let mut a = Mat7::zero();
    for (c, x) in coeffs.iter().zip(basis.mats()) {
        a = a.add(&x.scale(*c));
    }
    let mat = expm(&a);
    let orthogonality = mat.orthogonality_residual();
    let cross_compat = cross_compat_residual(&mat, MEMBERSHIP_PAIRS, MEMBERSHIP_SEED);
    if orthogonality > ORTHOGONALITY_TOL || cross_compat > CROSS_COMPAT_TOL {
        return Err(GroupError::InvariantViolation {
            orthogonality,
            cross_compat,
        });
    }
    Ok(G2Element { mat })
}

/// Deterministic sampling: the product of two exponentials with i.i.d.
/// standard Gaussian coefficient vectors drawn from the seeded stream.
/// The distribution is not claimed to be Haar; the identities under test
/// hold pointwise, so coverage is what matters.
pub fn random_element(seed: u64, basis: &G2Basis) -> G2Element {
    let mut rng = rng_from_seed(seed);
    let c1 = sample_coeffs14(&mut rng);
    let c2 = sample_coeffs14(&mut rng);
    let g1 = exp_g2(&c1, basis).expect("valid basis");
    let g2 = exp_g2(&c2, basis).expect("valid basis");
    g1.mul(&g2)
}
