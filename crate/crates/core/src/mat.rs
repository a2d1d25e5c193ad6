//! Dense real 7×7 matrices. Just enough linear algebra for this crate:
//! products, transposes, the trace inner product, and residual norms.

use num_complex::Complex64;

use crate::euclid7::{Vec7C, Vec7R};

/// Real 7×7 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat7(pub [[f64; 7]; 7]);

impl Mat7 {
    pub fn zero() -> Self {
        Mat7([[0.0; 7]; 7])
    }

    pub fn identity() -> Self {
        let mut m = [[0.0; 7]; 7];
        for k in 0..7 {
            m[k][k] = 1.0;
        }
        Mat7(m)
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                t[j][i] = self.0[i][j];
            }
        }
        Mat7(t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.0;
        for i in 0..7 {
            for j in 0..7 {
                m[i][j] += other.0[i][j];
            }
        }
        Mat7(m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = self.0;
        for i in 0..7 {
            for j in 0..7 {
                m[i][j] -= other.0[i][j];
            }
        }
        Mat7(m)
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat7(self.0.map(|row| row.map(|x| x * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0.0; 7]; 7];
        for i in 0..7 {
            for k in 0..7 {
                let a = self.0[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..7 {
                    m[i][j] += a * other.0[k][j];
                }
            }
        }
        Mat7(m)
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply_r(&self, v: &Vec7R) -> Vec7R {
        let mut out = [0.0; 7];
        for i in 0..7 {
            for j in 0..7 {
                out[i] += self.0[i][j] * v.0[j];
            }
        }
        Vec7R(out)
    }

    pub fn apply_c(&self, v: &Vec7C) -> Vec7C {
        let mut out = [Complex64::ZERO; 7];
        for i in 0..7 {
            for j in 0..7 {
                out[i] += self.0[i][j] * v.0[j];
            }
        }
        Vec7C(out)
    }

    pub fn column(&self, j: usize) -> Vec7R {
        let mut c = [0.0; 7];
        for i in 0..7 {
            c[i] = self.0[i][j];
        }
        Vec7R(c)
    }

    /// Trace inner product trace(AᵀB) = Σᵢⱼ AᵢⱼBᵢⱼ.
    pub fn inner(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..7 {
            for j in 0..7 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    /// ‖A + Aᵀ‖_max; zero for skew-symmetric matrices.
    pub fn skew_residual(&self) -> f64 {
        self.add(&self.transpose()).max_abs()
    }

    /// ‖AᵀA − I‖_max; zero for orthogonal matrices.
    pub fn orthogonality_residual(&self) -> f64 {
        self.transpose().mul(self).sub(&Mat7::identity()).max_abs()
    }

    /// Row-major flattening, the on-disk layout for basis and group elements.
    pub fn to_row_major(&self) -> [f64; 49] {
        let mut flat = [0.0; 49];
        for i in 0..7 {
            flat[7 * i..7 * i + 7].copy_from_slice(&self.0[i]);
        }
        flat
    }
}
