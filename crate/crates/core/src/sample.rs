//! Seeded, reproducible sampling of the random inputs the verification
//! suites draw: real/complex vectors, Lie-algebra coefficients, isotropic
//! vectors. Same seed, same stream, on every platform.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::euclid7::{dot_r, Vec7C, Vec7R};

/// The deterministic generator used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real vector with i.i.d. standard Gaussian entries.
pub fn sample_vec7r(rng: &mut impl Rng) -> Vec7R {
    Vec7R([(); 7].map(|_| rng.sample(StandardNormal)))
}

/// Complex vector with i.i.d. standard Gaussian real and imaginary parts.
pub fn sample_vec7c(rng: &mut impl Rng) -> Vec7C {
    Vec7C([(); 7].map(|_| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }))
}

/// 14 i.i.d. standard Gaussian Lie-algebra coefficients.
pub fn sample_coeffs14(rng: &mut impl Rng) -> [f64; 14] {
    [(); 14].map(|_| rng.sample(StandardNormal))
}

/// Random isotropic vector u + iv built from a Gaussian pair by making
/// v ⊥ u with |v| = |u|, so ⟨p,p⟩ = |u|² − |v|² + 2i⟨u,v⟩ = 0.
pub fn sample_isotropic(rng: &mut impl Rng) -> Vec7C {
    loop {
        let u = sample_vec7r(rng);
        let mut v = sample_vec7r(rng);
        let uu = dot_r(&u, &u);
        if uu < 1e-6 {
            continue;
        }
        v = v.sub(&u.scale(dot_r(&u, &v) / uu));
        let vn = v.norm();
        if vn < 1e-6 {
            continue;
        }
        return Vec7C::from_re_im(&u, &v.scale(u.norm() / vn));
    }
}
