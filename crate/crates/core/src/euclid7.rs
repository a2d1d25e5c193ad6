//! Seven-dimensional Euclidean space, its cross product, and the
//! complex-bilinear extension of the scalar product.
//!
//! The cross product is generated by the cyclic rule eᵢ × eᵢ₊₁ = eᵢ₊₃
//! (indices mod 7) together with total antisymmetry. Every identity the
//! rest of the crate relies on is certified against this table by the
//! `verify` suites rather than assumed.

use num_complex::Complex64;

/// Real vector in ℝ⁷.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec7R(pub [f64; 7]);

/// Complex vector in ℂ⁷, always paired with the *bilinear* scalar product
/// (no conjugation anywhere in this crate).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec7C(pub [Complex64; 7]);

impl Vec7R {
    pub fn zero() -> Self {
        Vec7R([0.0; 7])
    }

    /// Standard basis vector e_k, 0-based.
    pub fn basis(k: usize) -> Self {
        let mut v = [0.0; 7];
        v[k] = 1.0;
        Vec7R(v)
    }

    pub fn scale(&self, s: f64) -> Self {
        Vec7R(self.0.map(|x| x * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, x) in out.iter_mut().zip(other.0) {
            *o += x;
        }
        Vec7R(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, x) in out.iter_mut().zip(other.0) {
            *o -= x;
        }
        Vec7R(out)
    }

    pub fn norm(&self) -> f64 {
        dot_r(self, self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn complexify(&self) -> Vec7C {
        Vec7C(self.0.map(|x| Complex64::new(x, 0.0)))
    }
}

impl Vec7C {
    pub fn zero() -> Self {
        Vec7C([Complex64::ZERO; 7])
    }

    /// Standard basis vector e_k, 0-based.
    pub fn basis(k: usize) -> Self {
        Vec7R::basis(k).complexify()
    }

    pub fn from_re_im(re: &Vec7R, im: &Vec7R) -> Self {
        let mut v = [Complex64::ZERO; 7];
        for k in 0..7 {
            v[k] = Complex64::new(re.0[k], im.0[k]);
        }
        Vec7C(v)
    }

    pub fn re(&self) -> Vec7R {
        Vec7R(self.0.map(|z| z.re))
    }

    pub fn im(&self) -> Vec7R {
        Vec7R(self.0.map(|z| z.im))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Vec7C(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Vec7C(self.0.map(|z| z * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, z) in out.iter_mut().zip(other.0) {
            *o += z;
        }
        Vec7C(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, z) in out.iter_mut().zip(other.0) {
            *o -= z;
        }
        Vec7C(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// The oriented Fano lines (0-based): within a line [a, b, c] the products
/// are a×b = c, b×c = a, c×a = b.
const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 3],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 0],
    [5, 6, 1],
    [6, 0, 2],
];

const fn cross_tables() -> ([[usize; 7]; 7], [[i8; 7]; 7]) {
    let mut idx = [[0usize; 7]; 7];
    let mut sign = [[0i8; 7]; 7];
    let mut l = 0;
    while l < 7 {
        let [a, b, c] = FANO_LINES[l];
        idx[a][b] = c;
        sign[a][b] = 1;
        idx[b][a] = c;
        sign[b][a] = -1;
        idx[b][c] = a;
        sign[b][c] = 1;
        idx[c][b] = a;
        sign[c][b] = -1;
        idx[c][a] = b;
        sign[c][a] = 1;
        idx[a][c] = b;
        sign[a][c] = -1;
        l += 1;
    }
    (idx, sign)
}

/// CROSS_IDX[i][j] names the basis index of eᵢ × eⱼ, CROSS_SIGN its sign
/// (0 on the diagonal).
pub(crate) const CROSS_IDX: [[usize; 7]; 7] = cross_tables().0;
pub(crate) const CROSS_SIGN: [[i8; 7]; 7] = cross_tables().1;

/// Bilinear scalar product Σᵢ uᵢvᵢ on ℂ⁷ — no conjugation.
pub fn dot(u: &Vec7C, v: &Vec7C) -> Complex64 {
    let mut s = Complex64::ZERO;
    for k in 0..7 {
        s += u.0[k] * v.0[k];
    }
    s
}

/// Real scalar product Σᵢ uᵢvᵢ.
pub fn dot_r(u: &Vec7R, v: &Vec7R) -> f64 {
    let mut s = 0.0;
    for k in 0..7 {
        s += u.0[k] * v.0[k];
    }
    s
}

/// Seven-dimensional cross product on real vectors.
///
/// Accumulates sᵢⱼ·(uᵢvⱼ − uⱼvᵢ) over unordered pairs so that
/// cross_r(u, v) = −cross_r(v, u) holds exactly, not just to roundoff.
pub fn cross_r(u: &Vec7R, v: &Vec7R) -> Vec7R {
    let mut out = [0.0; 7];
    for i in 0..7 {
        for j in (i + 1)..7 {
            let s = CROSS_SIGN[i][j] as f64;
            out[CROSS_IDX[i][j]] += s * (u.0[i] * v.0[j] - u.0[j] * v.0[i]);
        }
    }
    Vec7R(out)
}

/// Complex-bilinear extension of the cross product.
pub fn cross(u: &Vec7C, v: &Vec7C) -> Vec7C {
    let mut out = [Complex64::ZERO; 7];
    for i in 0..7 {
        for j in (i + 1)..7 {
            let s = CROSS_SIGN[i][j] as f64;
            out[CROSS_IDX[i][j]] += s * (u.0[i] * v.0[j] - u.0[j] * v.0[i]);
        }
    }
    Vec7C(out)
}

/// True iff |⟨p,p⟩| ≤ tol under the bilinear product.
pub fn is_isotropic(p: &Vec7C, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    dot(p, p).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{rng_from_seed, sample_vec7c, sample_vec7r};
    use proptest::prelude::*;

    fn e(k: usize) -> Vec7R {
        Vec7R::basis(k)
    }

    #[test]
    fn dot_on_basis_and_isotropic_vector() {
        let e1 = Vec7C::basis(0);
        assert_eq!(dot(&e1, &e1), Complex64::new(1.0, 0.0));
        // e1 + i e2 is isotropic: 1 + i² = 0
        let p = Vec7C::from_re_im(&e(0), &e(1));
        assert_eq!(dot(&p, &p), Complex64::ZERO);
    }

    #[test]
    fn dot_matches_componentwise_sum() {
        let mut rng = rng_from_seed(7);
        for _ in 0..100 {
            let u = sample_vec7r(&mut rng);
            let v = sample_vec7r(&mut rng);
            let oracle: f64 = (0..7).map(|k| u.0[k] * v.0[k]).sum();
            assert!((dot_r(&u, &v) - oracle).abs() <= 1e-12);
        }
    }

    #[test]
    fn cross_follows_cyclic_rule() {
        // eᵢ × eᵢ₊₁ = eᵢ₊₃ for every i (0-based, mod 7)
        for i in 0..7 {
            let got = cross_r(&e(i), &e((i + 1) % 7));
            assert_eq!(got, e((i + 3) % 7), "e{} x e{}", i + 1, (i + 1) % 7 + 1);
        }
        // spot value from the table: e1 × e2 = e4 in 1-based labels
        assert_eq!(cross_r(&e(0), &e(1)), e(3));
    }

    #[test]
    fn cross_of_vector_with_itself_vanishes() {
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let u = sample_vec7c(&mut rng);
            assert_eq!(cross(&u, &u), Vec7C::zero());
        }
    }

    #[test]
    fn double_product_with_repeated_factor() {
        // u × (u × w) = ⟨u,w⟩u − ⟨u,u⟩w
        let mut rng = rng_from_seed(13);
        for _ in 0..200 {
            let u = sample_vec7r(&mut rng);
            let w = sample_vec7r(&mut rng);
            let lhs = cross_r(&u, &cross_r(&u, &w));
            let rhs = u.scale(dot_r(&u, &w)).sub(&w.scale(dot_r(&u, &u)));
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn isotropy_detection() {
        assert!(is_isotropic(&Vec7C::from_re_im(&e(0), &e(1)), 1e-12));
        assert!(!is_isotropic(&Vec7C::basis(0), 1e-12));
    }

    #[test]
    fn random_isotropic_vectors_from_orthogonal_pairs() {
        // u + iv with |u| = |v| and u ⊥ v is isotropic.
        let mut rng = rng_from_seed(17);
        for _ in 0..100 {
            let u = sample_vec7r(&mut rng);
            let mut v = sample_vec7r(&mut rng);
            v = v.sub(&u.scale(dot_r(&u, &v) / dot_r(&u, &u)));
            let v = v.scale(u.norm() / v.norm());
            let p = Vec7C::from_re_im(&u, &v);
            assert!(is_isotropic(&p, 1e-10), "|<p,p>| = {}", dot(&p, &p).norm());
        }
    }

    #[test]
    fn table_covers_every_pair_antisymmetrically() {
        for i in 0..7 {
            assert_eq!(CROSS_SIGN[i][i], 0);
            for j in 0..7 {
                if i != j {
                    assert_ne!(CROSS_SIGN[i][j], 0);
                    assert_eq!(CROSS_SIGN[i][j], -CROSS_SIGN[j][i]);
                    assert_eq!(CROSS_IDX[i][j], CROSS_IDX[j][i]);
                    // product lands outside {i, j}
                    assert_ne!(CROSS_IDX[i][j], i);
                    assert_ne!(CROSS_IDX[i][j], j);
                }
            }
        }
    }

    fn small_f64() -> impl Strategy<Value = f64> {
        -10.0f64..10.0
    }

    proptest! {
        #[test]
        fn prop_cross_antisymmetric_exactly(
            u in prop::array::uniform7(small_f64()),
            v in prop::array::uniform7(small_f64()),
        ) {
            let (u, v) = (Vec7R(u), Vec7R(v));
            let lhs = cross_r(&u, &v);
            let rhs = cross_r(&v, &u);
            for k in 0..7 {
                prop_assert_eq!(lhs.0[k], -rhs.0[k]);
            }
        }

        #[test]
        fn prop_dot_symmetric(
            u in prop::array::uniform7(small_f64()),
            v in prop::array::uniform7(small_f64()),
        ) {
            let (u, v) = (Vec7R(u), Vec7R(v));
            prop_assert_eq!(dot_r(&u, &v), dot_r(&v, &u));
        }

        #[test]
        fn prop_cross_bilinear_in_first_slot(
            u in prop::array::uniform7(small_f64()),
            v in prop::array::uniform7(small_f64()),
            w in prop::array::uniform7(small_f64()),
            s in -4.0f64..4.0,
        ) {
            let (u, v, w) = (Vec7R(u), Vec7R(v), Vec7R(w));
            let lhs = cross_r(&u.scale(s).add(&v), &w);
            let rhs = cross_r(&u, &w).scale(s).add(&cross_r(&v, &w));
            prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-10 * (1.0 + s.abs()));
        }
    }
}
