//! The 14-dimensional derivation algebra of the cross product inside
//! so(7), an orthonormal basis for it, the complementary projections onto
//! R(W) = {L_v} and onto the algebra, the conformality form Q in both its
//! defining-sum and closed forms, and the Casimir scalar.

use std::sync::LazyLock;

use num_complex::Complex64;
use thiserror::Error;

use crate::euclid7::{cross, dot, Vec7C};
use crate::mat::Mat7;
use crate::report::f17;
use crate::sample::{rng_from_seed, sample_vec7r};
use crate::wedge::{lmap, lmap_r, mat_inner, rho_iso, wedge, wedge_inner, SkewMat7, WEDGE_PAIRS};

/// Gram–Schmidt drops a candidate whose residual norm falls below this;
/// true dependencies show up at roundoff scale, far below.
pub const RANK_DROP_TOL: f64 = 1e-9;

/// A Casimir matrix must be scalar to within this before a scalar is read off.
pub const CASIMIR_SCALAR_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum G2AlgError {
    #[error(
        "orthonormalization yielded {found} basis matrices instead of 14; \
         the cross-product table does not define a consistent product"
    )]
    RankMismatch { found: usize },
    #[error(
        "Casimir matrix is not scalar (off-diagonal max {off_diag:.3e}, \
         diagonal spread {spread:.3e}); basis is corrupt or reducible"
    )]
    NonScalarCasimir { off_diag: f64, spread: f64 },
}

static LMAPS: LazyLock<[SkewMat7; 7]> =
    LazyLock::new(|| std::array::from_fn(|k| lmap(&Vec7C::basis(k))));

static LMAPS_R: LazyLock<[Mat7; 7]> =
    LazyLock::new(|| std::array::from_fn(|k| lmap_r(&crate::euclid7::Vec7R::basis(k))));

/// Orthogonal projection of a skew matrix onto R(W) = span{L_{e_k}}.
/// The L_{e_k} have squared norm 6, hence the 1/6.
pub fn project_rw(a: &SkewMat7) -> SkewMat7 {
    let mut out = SkewMat7::zero();
    for l in LMAPS.iter() {
        let c = mat_inner(a, l) / 6.0;
        out = out.add(&l.scale(c));
    }
    out
}

/// Projection onto the orthogonal complement of R(W) in so(7), which is
/// exactly the derivation algebra of the cross product.
pub fn project_g2(a: &SkewMat7) -> SkewMat7 {
    a.sub(&project_rw(a))
}

/// Orthonormal basis (trace inner product) of the 14-dimensional algebra.
#[derive(Clone, Debug)]
pub struct G2Basis {
    mats: Vec<Mat7>,
}

/// Builds the basis by Gram–Schmidt over the projections of the 21 images
/// R(eᵢ∧eⱼ), pairs taken in lexicographic order for reproducibility.
pub fn build_g2_basis() -> Result<G2Basis, G2AlgError> {
    let mut accepted: Vec<SkewMat7> = Vec::with_capacity(14);
    for &(i, j) in WEDGE_PAIRS.iter() {
        let cand = project_g2(&rho_iso(&wedge(&Vec7C::basis(i), &Vec7C::basis(j))));
        let mut v = cand;
        // two passes: the second mops up roundoff lost by the first
        for _ in 0..2 {
            for x in &accepted {
                let c = mat_inner(&v, x);
                v = v.sub(&x.scale(c));
            }
        }
        let norm = mat_inner(&v, &v).re.sqrt();
        if norm >= RANK_DROP_TOL {
            v = v.scale(Complex64::new(1.0 / norm, 0.0));
            accepted.push(v);
        }
    }
    if accepted.len() != 14 {
        return Err(G2AlgError::RankMismatch {
            found: accepted.len(),
        });
    }
    // all inputs are real-valued, so the imaginary parts are exactly zero
    let mats = accepted.iter().map(|m| m.re()).collect();
    Ok(G2Basis { mats })
}

impl G2Basis {
    pub fn mats(&self) -> &[Mat7] {
        &self.mats
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// max |⟨Xᵢ,Xⱼ⟩ − δᵢⱼ| over all pairs.
    pub fn gram_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for (i, a) in self.mats.iter().enumerate() {
            for (j, b) in self.mats.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                r = r.max((a.inner(b) - expect).abs());
            }
        }
        r
    }

    /// Worst violation of X(v×w) = (Xv)×w + v×(Xw) over seeded random
    /// real pairs, across all basis matrices.
    pub fn derivation_residual(&self, n_pairs: usize, seed: u64) -> f64 {
        let mut rng = rng_from_seed(seed);
        let mut r: f64 = 0.0;
        for _ in 0..n_pairs {
            let v = sample_vec7r(&mut rng);
            let w = sample_vec7r(&mut rng);
            for x in &self.mats {
                let lhs = x.apply_r(&crate::euclid7::cross_r(&v, &w));
                let rhs = crate::euclid7::cross_r(&x.apply_r(&v), &w)
                    .add(&crate::euclid7::cross_r(&v, &x.apply_r(&w)));
                r = r.max(lhs.sub(&rhs).max_abs());
            }
        }
        r
    }

    /// Worst distance of a bracket [Xᵢ,Xⱼ] from span{X₁..X₁₄}.
    pub fn closure_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.mats.len() {
            for j in (i + 1)..self.mats.len() {
                let b = self.mats[i].commutator(&self.mats[j]);
                let mut rem = b;
                for x in &self.mats {
                    rem = rem.sub(&x.scale(b.inner(x)));
                }
                r = r.max(rem.max_abs());
            }
        }
        r
    }

    /// max |⟨Xᵢ, L_{e_k}⟩|: the basis must be orthogonal to R(W).
    pub fn rw_orthogonality_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for x in &self.mats {
            for l in LMAPS_R.iter() {
                r = r.max(x.inner(l).abs());
            }
        }
        r
    }

    /// JSON layout: array of 14 row-major 49-entry matrices, 17 significant
    /// digits per entry.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.mats
                .iter()
                .map(|m| {
                    serde_json::Value::Array(m.to_row_major().iter().map(|&x| f17(x)).collect())
                })
                .collect(),
        )
    }
}

/// The conformality form as its defining sum Σᵢ ⟨Xᵢa,b⟩⟨Xᵢc,d⟩ over the
/// orthonormal basis.
pub fn q_sum(a: &Vec7C, b: &Vec7C, c: &Vec7C, d: &Vec7C, basis: &G2Basis) -> Complex64 {
    let mut s = Complex64::ZERO;
    for x in basis.mats() {
        s += dot(&x.apply_c(a), b) * dot(&x.apply_c(c), d);
    }
    s
}

/// Closed form of the same pairing: ½⟨⟨a∧b,c∧d⟩⟩ − (1/6)⟨a×b,c×d⟩.
pub fn q_closed(a: &Vec7C, b: &Vec7C, c: &Vec7C, d: &Vec7C) -> Complex64 {
    0.5 * wedge_inner(&wedge(a, b), &wedge(c, d))
        - dot(&cross(a, b), &cross(c, d)) / 6.0
}

/// Σᵢ Xᵢ² as a matrix; scalar on the standard representation.
pub fn casimir_matrix(basis: &G2Basis) -> Mat7 {
    let mut c = Mat7::zero();
    for x in basis.mats() {
        c = c.add(&x.mul(x));
    }
    c
}

/// Reads the Casimir scalar off Σᵢ Xᵢ², after asserting the matrix is
/// scalar to [`CASIMIR_SCALAR_TOL`]. This scalar is the Laplace eigenvalue
/// of every matrix coefficient of the standard representation.
pub fn casimir_scalar(basis: &G2Basis) -> Result<f64, G2AlgError> {
    let c = casimir_matrix(basis);
    let mut off_diag: f64 = 0.0;
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                off_diag = off_diag.max(c.0[i][j].abs());
            }
        }
    }
    let diag: Vec<f64> = (0..7).map(|k| c.0[k][k]).collect();
    let spread = diag.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x))
        - diag.iter().fold(f64::INFINITY, |m, x| m.min(*x));
    if off_diag > CASIMIR_SCALAR_TOL || spread > CASIMIR_SCALAR_TOL {
        return Err(G2AlgError::NonScalarCasimir { off_diag, spread });
    }
    Ok(diag.iter().sum::<f64>() / 7.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid7::Vec7R;
    use crate::sample::{sample_isotropic, sample_vec7c};

    fn basis() -> G2Basis {
        build_g2_basis().expect("basis construction")
    }

    #[test]
    fn basis_has_fourteen_orthonormal_matrices() {
        let b = basis();
        assert_eq!(b.len(), 14);
        assert!(b.gram_residual() <= 1e-10, "gram {}", b.gram_residual());
    }

    #[test]
    fn basis_matrices_are_skew_derivations() {
        let b = basis();
        for x in b.mats() {
            assert!(x.skew_residual() <= 1e-13);
        }
        assert!(b.derivation_residual(200, 99) <= 1e-10);
    }

    #[test]
    fn basis_brackets_stay_in_span() {
        assert!(basis().closure_residual() <= 1e-10);
    }

    #[test]
    fn basis_is_orthogonal_to_rw() {
        assert!(basis().rw_orthogonality_residual() <= 1e-12);
    }

    #[test]
    fn project_rw_fixes_lmaps_and_is_idempotent() {
        let mut rng = rng_from_seed(51);
        for _ in 0..20 {
            let v = sample_vec7c(&mut rng);
            let l = lmap(&v);
            assert!(project_rw(&l).sub(&l).max_abs() <= 1e-12);
        }
        for _ in 0..20 {
            let a = rho_iso(&crate::wedge::wedge(
                &sample_vec7c(&mut rng),
                &sample_vec7c(&mut rng),
            ));
            let once = project_rw(&a);
            assert!(project_rw(&once).sub(&once).max_abs() <= 1e-12);
            // complementarity: the two projections add back to the input
            let total = once.add(&project_g2(&a));
            assert!(total.sub(&a).max_abs() <= 1e-13);
        }
    }

    #[test]
    fn projection_of_decomposable_image_is_third_of_lmap() {
        let mut rng = rng_from_seed(53);
        for _ in 0..100 {
            let a = sample_vec7r(&mut rng);
            let b = sample_vec7r(&mut rng);
            let r = rho_iso(&wedge(&a.complexify(), &b.complexify()));
            let lhs = project_rw(&r);
            let rhs = lmap(&crate::euclid7::cross_r(&a, &b).complexify())
                .scale(Complex64::new(1.0 / 3.0, 0.0));
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn project_g2_annihilates_rw_and_fixes_the_basis() {
        let b = basis();
        let mut rng = rng_from_seed(57);
        for _ in 0..20 {
            let v = sample_vec7c(&mut rng);
            assert!(project_g2(&lmap(&v)).max_abs() <= 1e-12);
        }
        for x in b.mats() {
            let xc = SkewMat7::from_real(x);
            assert!(project_g2(&xc).sub(&xc).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn q_values_on_basis_quadruple() {
        let b = basis();
        let (e1, e2) = (Vec7C::basis(0), Vec7C::basis(1));
        // ½·1 − (1/6)·⟨e1×e2, e1×e2⟩ = ½ − 1/6 = 1/3
        let qs = q_sum(&e1, &e2, &e1, &e2, &b);
        let qc = q_closed(&e1, &e2, &e1, &e2);
        assert!((qs - 1.0 / 3.0).norm() <= 1e-12, "q_sum = {qs}");
        assert!((qc - 1.0 / 3.0).norm() <= 1e-14, "q_closed = {qc}");
    }

    #[test]
    fn q_sum_vanishes_on_repeated_first_pair_and_is_pair_symmetric() {
        let b = basis();
        let mut rng = rng_from_seed(59);
        for _ in 0..20 {
            let a = sample_vec7c(&mut rng);
            let c = sample_vec7c(&mut rng);
            let d = sample_vec7c(&mut rng);
            assert!(q_sum(&a, &a, &c, &d, &b).norm() <= 1e-13);
            let lhs = q_sum(&a, &c, &c, &d, &b);
            let rhs = q_sum(&c, &d, &a, &c, &b);
            assert!((lhs - rhs).norm() <= 1e-12);
        }
    }

    #[test]
    fn q_sum_equals_q_closed_on_random_complex_quadruples() {
        let b = basis();
        let mut rng = rng_from_seed(61);
        for _ in 0..200 {
            let (a, bb) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let (c, d) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let qs = q_sum(&a, &bb, &c, &d, &b);
            let qc = q_closed(&a, &bb, &c, &d);
            assert!((qs - qc).norm() <= 1e-10, "diff {}", (qs - qc).norm());
        }
    }

    #[test]
    fn q_sum_matches_half_the_projected_wedge_pairing() {
        // The defining sum equals ½⟨⟨P(a∧b), c∧d⟩⟩ — the proof-side
        // normalization of the projection formula, carrying the extra ½
        // relative to the bare pairing. ⟨⟨w1,w2⟩⟩ is evaluated through
        // matrices as ½⟨R(w1), R(w2)⟩.
        let b = basis();
        let mut rng = rng_from_seed(63);
        for _ in 0..50 {
            let (a, bb) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let (c, d) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let qs = q_sum(&a, &bb, &c, &d, &b);
            let paired = 0.5
                * mat_inner(
                    &project_g2(&rho_iso(&wedge(&a, &bb))),
                    &rho_iso(&wedge(&c, &d)),
                );
            assert!((qs - 0.5 * paired).norm() <= 1e-10);
            // and differs from the un-halved pairing whenever it is nonzero
            if paired.norm() > 1e-6 {
                assert!((qs - paired).norm() > 1e-8);
            }
        }
    }

    #[test]
    fn q_on_common_second_slot_is_third_of_wedge_pairing() {
        // for every complex a, b, p — isotropy of p not required
        let mut rng = rng_from_seed(67);
        for _ in 0..200 {
            let a = sample_vec7c(&mut rng);
            let b = sample_vec7c(&mut rng);
            let p = sample_vec7c(&mut rng);
            let lhs = q_closed(&a, &p, &b, &p);
            let rhs = wedge_inner(&wedge(&a, &p), &wedge(&b, &p)) / 3.0;
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
        // and in particular for isotropic p
        for _ in 0..50 {
            let a = sample_vec7c(&mut rng);
            let b = sample_vec7c(&mut rng);
            let p = sample_isotropic(&mut rng);
            let lhs = q_closed(&a, &p, &b, &p);
            let rhs = wedge_inner(&wedge(&a, &p), &wedge(&b, &p)) / 3.0;
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn casimir_is_minus_two_by_the_trace_oracle() {
        let b = basis();
        let c = casimir_scalar(&b).expect("scalar Casimir");
        // trace(ΣXᵢ²) = −Σ⟨Xᵢ,Xᵢ⟩ = −14, so the scalar must be −14/7
        let trace: f64 = (0..7).map(|k| casimir_matrix(&b).0[k][k]).sum();
        assert!((trace + 14.0).abs() <= 1e-10, "trace {trace}");
        assert!((c - trace / 7.0).abs() <= 1e-12);
        assert!((c + 2.0).abs() <= 1e-10, "casimir {c}");
        assert!(c < 0.0);
    }

    #[test]
    fn casimir_rejects_a_corrupted_basis() {
        let mut b = basis();
        b.mats[0] = Mat7::identity(); // not even skew
        assert!(matches!(
            casimir_scalar(&b),
            Err(G2AlgError::NonScalarCasimir { .. })
        ));
    }

    #[test]
    fn rank_of_projected_wedge_images_is_fourteen() {
        // build_g2_basis already Gram–Schmidts the 21 projected images;
        // reaching exactly 14 is the rank statement.
        assert_eq!(basis().len(), 14);
    }

    #[test]
    fn basis_json_has_fourteen_rows_of_49() {
        let v = basis().to_json();
        let rows = v.as_array().expect("array");
        assert_eq!(rows.len(), 14);
        for r in rows {
            assert_eq!(r.as_array().expect("row").len(), 49);
        }
    }
}
