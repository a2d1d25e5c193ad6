//! The exterior square Λ²ℂ⁷ in the 21-dimensional basis {eᵢ∧eⱼ, i<j},
//! the isomorphism onto skew matrices R(a∧b)(v) = ⟨a,v⟩b − ⟨b,v⟩a, the
//! cross-product operator L_v(w) = v×w, and the two inner products
//! ⟨⟨·,·⟩⟩ and trace(AᵀB). All complex pairings are bilinear extensions.

use num_complex::Complex64;

use crate::euclid7::{Vec7C, Vec7R, CROSS_IDX, CROSS_SIGN};
use crate::mat::Mat7;

/// Index pairs (i, j) with i < j enumerating the basis eᵢ∧eⱼ of Λ²,
/// in lexicographic order.
pub const WEDGE_PAIRS: [(usize, usize); 21] = wedge_pairs();

const fn wedge_pairs() -> [(usize, usize); 21] {
    let mut pairs = [(0usize, 0usize); 21];
    let mut n = 0;
    let mut i = 0;
    while i < 7 {
        let mut j = i + 1;
        while j < 7 {
            pairs[n] = (i, j);
            n += 1;
            j += 1;
        }
        i += 1;
    }
    pairs
}

/// Position of eᵢ∧eⱼ (i < j) in the 21-coefficient layout.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < 7);
    // offset of row i in the strictly upper triangle, then the column
    i * 7 - i * (i + 1) / 2 + (j - i - 1)
}

/// Element of Λ²ℂ⁷ as 21 dense coefficients over {eᵢ∧eⱼ, i<j}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wedge2(pub [Complex64; 21]);

impl Wedge2 {
    pub fn zero() -> Self {
        Wedge2([Complex64::ZERO; 21])
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.0[pair_index(i, j)]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, z) in out.iter_mut().zip(other.0) {
            *o += z;
        }
        Wedge2(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Wedge2(self.0.map(|z| z * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Complex 7×7 matrix, the carrier of so(7)^ℂ elements. Constructors in
/// this crate only ever produce skew-symmetric entries; `skew_residual`
/// measures how well an instance honours that.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewMat7(pub [[Complex64; 7]; 7]);

impl SkewMat7 {
    pub fn zero() -> Self {
        SkewMat7([[Complex64::ZERO; 7]; 7])
    }

    pub fn from_real(m: &Mat7) -> Self {
        let mut out = [[Complex64::ZERO; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                out[i][j] = Complex64::new(m.0[i][j], 0.0);
            }
        }
        SkewMat7(out)
    }

    /// Real part, entrywise.
    pub fn re(&self) -> Mat7 {
        Mat7(self.0.map(|row| row.map(|z| z.re)))
    }

    /// Largest imaginary magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, z| m.max(z.im.abs()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.0;
        for i in 0..7 {
            for j in 0..7 {
                m[i][j] += other.0[i][j];
            }
        }
        SkewMat7(m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = self.0;
        for i in 0..7 {
            for j in 0..7 {
                m[i][j] -= other.0[i][j];
            }
        }
        SkewMat7(m)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        SkewMat7(self.0.map(|row| row.map(|z| z * s)))
    }

    pub fn apply(&self, v: &Vec7C) -> Vec7C {
        let mut out = [Complex64::ZERO; 7];
        for i in 0..7 {
            for j in 0..7 {
                out[i] += self.0[i][j] * v.0[j];
            }
        }
        Vec7C(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, z| m.max(z.norm()))
    }

    /// ‖A + Aᵀ‖_max (plain transpose, no conjugation).
    pub fn skew_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..7 {
            for j in 0..7 {
                r = r.max((self.0[i][j] + self.0[j][i]).norm());
            }
        }
        r
    }
}

/// Exterior product a∧b: coefficient aᵢbⱼ − aⱼbᵢ at (i, j).
pub fn wedge(a: &Vec7C, b: &Vec7C) -> Wedge2 {
    let mut w = [Complex64::ZERO; 21];
    for (n, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
        w[n] = a.0[i] * b.0[j] - a.0[j] * b.0[i];
    }
    Wedge2(w)
}

/// ⟨⟨·,·⟩⟩ on Λ²: the basis {eᵢ∧eⱼ} is orthonormal, so this is the plain
/// bilinear sum over the 21 coefficients. On decomposables it equals
/// ⟨a,c⟩⟨b,d⟩ − ⟨a,d⟩⟨b,c⟩.
pub fn wedge_inner(w1: &Wedge2, w2: &Wedge2) -> Complex64 {
    let mut s = Complex64::ZERO;
    for n in 0..21 {
        s += w1.0[n] * w2.0[n];
    }
    s
}

/// The isomorphism Λ²V → so(V): eᵢ∧eⱼ ↦ Eⱼᵢ − Eᵢⱼ, extended linearly,
/// so that on decomposables the image sends v ↦ ⟨a,v⟩b − ⟨b,v⟩a.
pub fn rho_iso(w: &Wedge2) -> SkewMat7 {
    let mut m = [[Complex64::ZERO; 7]; 7];
    for (n, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
        m[j][i] += w.0[n];
        m[i][j] -= w.0[n];
    }
    SkewMat7(m)
}

/// Bilinear trace pairing trace(AᵀB) = Σᵢⱼ AᵢⱼBᵢⱼ on complex matrices.
pub fn mat_inner(a: &SkewMat7, b: &SkewMat7) -> Complex64 {
    let mut s = Complex64::ZERO;
    for i in 0..7 {
        for j in 0..7 {
            s += a.0[i][j] * b.0[i][j];
        }
    }
    s
}

/// The operator L_v : w ↦ v×w as a complex skew matrix.
pub fn lmap(v: &Vec7C) -> SkewMat7 {
    let mut m = [[Complex64::ZERO; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            let s = CROSS_SIGN[i][j];
            if s != 0 {
                // column j of L_v is v × e_j
                m[CROSS_IDX[i][j]][j] += s as f64 * v.0[i];
            }
        }
    }
    SkewMat7(m)
}

/// Real-valued L_v for real v.
pub fn lmap_r(v: &Vec7R) -> Mat7 {
    let mut m = [[0.0; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            let s = CROSS_SIGN[i][j];
            if s != 0 {
                m[CROSS_IDX[i][j]][j] += s as f64 * v.0[i];
            }
        }
    }
    Mat7(m)
}
