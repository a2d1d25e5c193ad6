//! Matrix-coefficient eigenfunctions of the standard representation,
//! exact and finite-difference derivatives along left-invariant fields,
//! the Laplacian and conformality operators (including their chain- and
//! quotient-rule extensions to polynomial and rational composites),
//! eigenfamily construction and certification, symmetric powers, and
//! harmonic-morphism candidates.

pub mod poly;

pub use poly::{linearly_dependent, MultiIndex, PolyFn, RationalMap, RationalMapError};

use num_complex::Complex64;
use thiserror::Error;

use crate::euclid7::{dot, Vec7C};
use crate::g2alg::{casimir_scalar, G2AlgError, G2Basis};
use crate::group::{expm, random_element, G2Element};
use crate::mat::Mat7;
use crate::report::QReport;

/// A vector is accepted as isotropic when |⟨p,p⟩| stays below this.
pub const ISOTROPY_TOL: f64 = 1e-12;

/// Eigenvalue of the conformality form on pairs sharing their second slot:
/// Q(a∧p, b∧p) = Q_MU·⟨⟨a∧p, b∧p⟩⟩.
pub const Q_MU: f64 = 1.0 / 3.0;

/// Family-level conformality eigenvalue: with ⟨p,p⟩ = 0 the wedge pairing
/// collapses to −φφ, so κ(φ,ψ) = −Q_MU·φψ.
pub const FAMILY_MU: f64 = -1.0 / 3.0;

/// Samples where |den∘φ| falls below this fraction of the sample median
/// are excluded from rational-map checks.
pub const POLE_GUARD_FRACTION: f64 = 0.05;

/// Default step for first-order central differences.
pub const FD_H_FIRST: f64 = 1e-4;

/// Default step for second-order central differences.
pub const FD_H_SECOND: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum HarmonicError {
    #[error("vector is not isotropic: |<p,p>| = {norm_sq_abs:.3e}")]
    NonIsotropic { norm_sq_abs: f64 },
    #[error(transparent)]
    Algebra(#[from] G2AlgError),
    #[error("composite operators need exactly 7 members, family has {found}")]
    WrongMemberCount { found: usize },
    #[error("denominator magnitude {denom_abs:.3e} is below the pole guard {floor:.3e}")]
    NearPole { denom_abs: f64, floor: f64 },
    #[error("all {n_samples} samples fell inside the pole guard; check is inconclusive")]
    PoleGuardExhausted { n_samples: usize },
}

impl HarmonicError {
    pub fn code(&self) -> &'static str {
        match self {
            HarmonicError::NonIsotropic { .. } => "non_isotropic",
            HarmonicError::Algebra(_) => "algebra",
            HarmonicError::WrongMemberCount { .. } => "wrong_member_count",
            HarmonicError::NearPole { .. } => "near_pole",
            HarmonicError::PoleGuardExhausted { .. } => "pole_guard_exhausted",
        }
    }
}

/// The matrix coefficient g ↦ ⟨ρ(g)a, b⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenFunction {
    pub a: Vec7C,
    pub b: Vec7C,
}

impl EigenFunction {
    pub fn new(a: Vec7C, b: Vec7C) -> Self {
        EigenFunction { a, b }
    }

    pub fn eval(&self, g: &G2Element) -> Complex64 {
        dot(&g.mat().apply_c(&self.a), &self.b)
    }

    /// Exact derivative along the left-invariant field of X:
    /// d/dt|₀ of the function at g·exp(tX), which is ⟨ρ(g)Xa, b⟩.
    pub fn deriv(&self, g: &G2Element, x: &Mat7) -> Complex64 {
        dot(&g.mat().apply_c(&x.apply_c(&self.a)), &self.b)
    }

    /// Exact second derivative along the same one-parameter subgroup.
    pub fn deriv2(&self, g: &G2Element, x: &Mat7) -> Complex64 {
        dot(&g.mat().apply_c(&x.apply_c(&x.apply_c(&self.a))), &self.b)
    }

    /// The complex-conjugate function: conjugating both vectors conjugates
    /// the values, since the representation matrices are real.
    pub fn conj(&self) -> Self {
        EigenFunction {
            a: self.a.conj(),
            b: self.b.conj(),
        }
    }
}

/// Central-difference order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FdOrder {
    First,
    Second,
}

/// Independent finite-difference oracle along t ↦ g·exp(tX).
pub fn fd_deriv(
    f: impl Fn(&G2Element) -> Complex64,
    g: &G2Element,
    x: &Mat7,
    h: f64,
    order: FdOrder,
) -> Complex64 {
    assert!(h > 0.0, "step must be positive");
    let step = expm(&x.scale(h));
    let back = expm(&x.scale(-h));
    let g_plus = G2Element::from_mat_unchecked(g.mat().mul(&step));
    let g_minus = G2Element::from_mat_unchecked(g.mat().mul(&back));
    match order {
        FdOrder::First => (f(&g_plus) - f(&g_minus)) / (2.0 * h),
        FdOrder::Second => (f(&g_plus) - 2.0 * f(g) + f(&g_minus)) / (h * h),
    }
}

/// Δf(g) = Σᵢ XᵢXᵢf(g) over the orthonormal basis.
pub fn laplacian(f: &EigenFunction, g: &G2Element, basis: &G2Basis) -> Complex64 {
    basis.mats().iter().map(|x| f.deriv2(g, x)).sum()
}

/// κ(f₁,f₂)(g) = Σᵢ Xᵢf₁(g)·Xᵢf₂(g).
pub fn conformality(
    f1: &EigenFunction,
    f2: &EigenFunction,
    g: &G2Element,
    basis: &G2Basis,
) -> Complex64 {
    basis
        .mats()
        .iter()
        .map(|x| f1.deriv(g, x) * f2.deriv(g, x))
        .sum()
}

/// The family {φ_{a p} | a ∈ ℂ⁷} attached to an isotropic p, carried by
/// its seven basis members φ_{eᵢ p}.
#[derive(Clone, Debug)]
pub struct EigenFamily {
    p: Vec7C,
    members: Vec<EigenFunction>,
    lambda: f64,
    mu: f64,
}

impl EigenFamily {
    /// Skips the isotropy validation. For negative controls and
    /// diagnostics; `make_eigenfamily` is the checked entry point.
    pub fn with_members_unchecked(
        p: Vec7C,
        members: Vec<EigenFunction>,
        lambda: f64,
        mu: f64,
    ) -> Self {
        EigenFamily {
            p,
            members,
            lambda,
            mu,
        }
    }

    /// The seven members φ_{eᵢ p}.
    pub fn standard_members(p: &Vec7C) -> Vec<EigenFunction> {
        (0..7)
            .map(|k| EigenFunction::new(Vec7C::basis(k), *p))
            .collect()
    }

    pub fn p(&self) -> &Vec7C {
        &self.p
    }

    pub fn members(&self) -> &[EigenFunction] {
        &self.members
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// The conjugated family, again an eigenfamily with the same eigenvalues.
    pub fn conjugate(&self) -> Self {
        EigenFamily {
            p: self.p.conj(),
            members: self.members.iter().map(EigenFunction::conj).collect(),
            lambda: self.lambda,
            mu: self.mu,
        }
    }
}

/// Builds the eigenfamily of an isotropic vector. λ comes from the Casimir
/// scalar of the supplied basis, μ is pinned at −1/3.
pub fn make_eigenfamily(p: &Vec7C, basis: &G2Basis) -> Result<EigenFamily, HarmonicError> {
    let norm_sq_abs = dot(p, p).norm();
    if norm_sq_abs > ISOTROPY_TOL {
        return Err(HarmonicError::NonIsotropic { norm_sq_abs });
    }
    let lambda = casimir_scalar(basis)?;
    Ok(EigenFamily {
        p: *p,
        members: EigenFamily::standard_members(p),
        lambda,
        mu: FAMILY_MU,
    })
}

/// Certifies the two eigenfamily identities over sampled group elements:
/// |Δφᵢ − λφᵢ| for every member and |κ(φᵢ,φⱼ) − μφᵢφⱼ| for every pair.
pub fn check_eigenfamily(
    fam: &EigenFamily,
    basis: &G2Basis,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> QReport {
    assert!(n_samples >= 1, "need at least one sample");
    let m = fam.members.len();
    let mut max_err: f64 = 0.0;
    if m > 0 {
        for s in 0..n_samples {
            let g = random_element(seed.wrapping_add(s as u64), basis);
            let vals: Vec<Complex64> = fam.members.iter().map(|f| f.eval(&g)).collect();
            for (i, f) in fam.members.iter().enumerate() {
                let lap = laplacian(f, &g, basis);
                max_err = max_err.max((lap - fam.lambda * vals[i]).norm());
            }
            // all first derivatives once, then every pair
            let derivs: Vec<Vec<Complex64>> = fam
                .members
                .iter()
                .map(|f| basis.mats().iter().map(|x| f.deriv(&g, x)).collect())
                .collect();
            for i in 0..m {
                for j in i..m {
                    let kappa: Complex64 = derivs[i]
                        .iter()
                        .zip(&derivs[j])
                        .map(|(a, b)| a * b)
                        .sum();
                    max_err = max_err.max((kappa - fam.mu * vals[i] * vals[j]).norm());
                }
            }
        }
    }
    QReport {
        check: "eigenfamily".into(),
        n_samples,
        seed,
        tol,
        max_abs_error: max_err,
        pass: max_err <= tol,
        lambda: Some(fam.lambda),
        mu: Some(fam.mu),
        admitted_samples: None,
    }
}

/// Values, first derivatives, summed second derivatives and the pairwise
/// conformality matrix of the seven members at one group element — all a
/// composite needs.
struct MemberJet {
    vals: [Complex64; 7],
    sum_d2: [Complex64; 7],
    kappa: [[Complex64; 7]; 7],
}

fn member_jet(fam: &EigenFamily, g: &G2Element, basis: &G2Basis) -> Result<MemberJet, HarmonicError> {
    if fam.members.len() != 7 {
        return Err(HarmonicError::WrongMemberCount {
            found: fam.members.len(),
        });
    }
    let mut vals = [Complex64::ZERO; 7];
    for (k, f) in fam.members.iter().enumerate() {
        vals[k] = f.eval(g);
    }
    let mut sum_d2 = [Complex64::ZERO; 7];
    let mut d1 = vec![[Complex64::ZERO; 7]; basis.len()];
    for (m, x) in basis.mats().iter().enumerate() {
        for (k, f) in fam.members.iter().enumerate() {
            d1[m][k] = f.deriv(g, x);
            sum_d2[k] += f.deriv2(g, x);
        }
    }
    let mut kappa = [[Complex64::ZERO; 7]; 7];
    for k in 0..7 {
        for l in k..7 {
            let s: Complex64 = d1.iter().map(|row| row[k] * row[l]).sum();
            kappa[k][l] = s;
            kappa[l][k] = s;
        }
    }
    Ok(MemberJet {
        vals,
        sum_d2,
        kappa,
    })
}

/// Symbolic gradient and Hessian of a polynomial, precomputed once so the
/// per-sample work is pure evaluation.
struct PolyPipeline {
    f: PolyFn,
    grad: Vec<PolyFn>,
    hess: Vec<Vec<PolyFn>>,
}

impl PolyPipeline {
    fn new(f: &PolyFn) -> Self {
        let grad: Vec<PolyFn> = (0..7).map(|k| f.partial(k)).collect();
        let hess = (0..7)
            .map(|k| (0..7).map(|l| grad[k].partial(l)).collect())
            .collect();
        PolyPipeline {
            f: f.clone(),
            grad,
            hess,
        }
    }

    fn value(&self, jet: &MemberJet) -> Complex64 {
        self.f.eval(&jet.vals)
    }

    /// Chain rule: ΔF∘φ = Σₖ ∂ₖF·Σᵢ Xᵢ²φₖ + Σₖₗ ∂ₖ∂ₗF·Σᵢ(Xᵢφₖ)(Xᵢφₗ).
    fn laplacian(&self, jet: &MemberJet) -> Complex64 {
        let g: Vec<Complex64> = self.grad.iter().map(|p| p.eval(&jet.vals)).collect();
        let mut acc = Complex64::ZERO;
        for k in 0..7 {
            acc += g[k] * jet.sum_d2[k];
        }
        for k in 0..7 {
            for l in 0..7 {
                if !self.hess[k][l].is_zero() {
                    acc += self.hess[k][l].eval(&jet.vals) * jet.kappa[k][l];
                }
            }
        }
        acc
    }

    /// κ(F∘φ, G∘φ) = Σₖₗ ∂ₖF·∂ₗG·Σᵢ(Xᵢφₖ)(Xᵢφₗ).
    fn conformality_with(&self, other: &PolyPipeline, jet: &MemberJet) -> Complex64 {
        let gf: Vec<Complex64> = self.grad.iter().map(|p| p.eval(&jet.vals)).collect();
        let gg: Vec<Complex64> = other.grad.iter().map(|p| p.eval(&jet.vals)).collect();
        let mut acc = Complex64::ZERO;
        for k in 0..7 {
            if gf[k] == Complex64::ZERO {
                continue;
            }
            for l in 0..7 {
                acc += gf[k] * gg[l] * jet.kappa[k][l];
            }
        }
        acc
    }
}

/// Δ(F∘φ)(g) for a polynomial in the seven members, by the chain rule with
/// exact inner derivatives.
pub fn laplacian_composite(
    f: &PolyFn,
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
) -> Result<Complex64, HarmonicError> {
    let jet = member_jet(fam, g, basis)?;
    Ok(PolyPipeline::new(f).laplacian(&jet))
}

/// κ(F∘φ, G∘φ)(g) for polynomials in the seven members.
pub fn conformality_composite(
    f: &PolyFn,
    h: &PolyFn,
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
) -> Result<Complex64, HarmonicError> {
    let jet = member_jet(fam, g, basis)?;
    Ok(PolyPipeline::new(f).conformality_with(&PolyPipeline::new(h), &jet))
}

/// (F∘φ)(g) — handy when reporting rational-map denominators.
pub fn eval_composite(
    f: &PolyFn,
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
) -> Result<Complex64, HarmonicError> {
    let jet = member_jet(fam, g, basis)?;
    Ok(f.eval(&jet.vals))
}

struct RationalPipeline {
    num: PolyPipeline,
    den: PolyPipeline,
}

impl RationalPipeline {
    fn new(map: &RationalMap) -> Self {
        RationalPipeline {
            num: PolyPipeline::new(map.num()),
            den: PolyPipeline::new(map.den()),
        }
    }

    /// Quotient rule at one point, guarded against near-zero denominators:
    ///   Δ(f/q) = Δf/q − 2κ(f,q)/q² − fΔq/q² + 2fκ(q,q)/q³
    ///   κ(f/q, f/q) = κ(f,f)/q² − 2fκ(f,q)/q³ + f²κ(q,q)/q⁴
    fn point(
        &self,
        jet: &MemberJet,
        denom_floor: f64,
    ) -> Result<(Complex64, Complex64), HarmonicError> {
        let q = self.den.value(jet);
        if q.norm() < denom_floor {
            return Err(HarmonicError::NearPole {
                denom_abs: q.norm(),
                floor: denom_floor,
            });
        }
        let f = self.num.value(jet);
        let lap_f = self.num.laplacian(jet);
        let lap_q = self.den.laplacian(jet);
        let k_fq = self.num.conformality_with(&self.den, jet);
        let k_ff = self.num.conformality_with(&self.num, jet);
        let k_qq = self.den.conformality_with(&self.den, jet);
        let q2 = q * q;
        let q3 = q2 * q;
        let q4 = q3 * q;
        let lap = lap_f / q - 2.0 * k_fq / q2 - f * lap_q / q2 + 2.0 * f * k_qq / q3;
        let conf = k_ff / q2 - 2.0 * f * k_fq / q3 + f * f * k_qq / q4;
        Ok((lap, conf))
    }
}

/// Δ(P/Q)(g) with exact derivatives throughout; rejects evaluation when
/// |Q∘φ| falls below `denom_floor`.
pub fn laplacian_rational(
    map: &RationalMap,
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
    denom_floor: f64,
) -> Result<Complex64, HarmonicError> {
    let jet = member_jet(fam, g, basis)?;
    Ok(RationalPipeline::new(map).point(&jet, denom_floor)?.0)
}

/// κ(P/Q, P/Q)(g), same guard as [`laplacian_rational`].
pub fn conformality_rational(
    map: &RationalMap,
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
    denom_floor: f64,
) -> Result<Complex64, HarmonicError> {
    let jet = member_jet(fam, g, basis)?;
    Ok(RationalPipeline::new(map).point(&jet, denom_floor)?.1)
}

/// The member jet at one group element, reusable across many composite
/// evaluations at the same point.
pub struct CompositePoint {
    jet: MemberJet,
}

/// Precomputes everything composites need at g; evaluating many
/// polynomials at the same element then costs only polynomial arithmetic.
pub fn composite_point(
    fam: &EigenFamily,
    g: &G2Element,
    basis: &G2Basis,
) -> Result<CompositePoint, HarmonicError> {
    Ok(CompositePoint {
        jet: member_jet(fam, g, basis)?,
    })
}

impl CompositePoint {
    pub fn eval(&self, f: &PolyFn) -> Complex64 {
        f.eval(&self.jet.vals)
    }

    pub fn laplacian(&self, f: &PolyFn) -> Complex64 {
        PolyPipeline::new(f).laplacian(&self.jet)
    }

    pub fn conformality(&self, f: &PolyFn, h: &PolyFn) -> Complex64 {
        PolyPipeline::new(f).conformality_with(&PolyPipeline::new(h), &self.jet)
    }
}

/// The degree-n symmetric power of a family: the monomial basis of degree-n
/// products of members, with the eigenvalues such products must carry.
#[derive(Clone, Debug)]
pub struct SymmetricPower {
    pub degree: u32,
    pub monomials: Vec<PolyFn>,
    /// k(λ + (k−1)μ) at k = degree.
    pub laplace_eigenvalue: f64,
    /// k·l·μ at k = l = degree.
    pub conformality_eigenvalue: f64,
}

/// Monomial exponent vectors of total degree n over 7 variables, in a
/// fixed deterministic order.
fn exponents_of_degree(n: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut idx = [0u32; 7];
    fn rec(pos: usize, remaining: u32, idx: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if pos == 6 {
            idx[6] = remaining;
            out.push(*idx);
            return;
        }
        for e in (0..=remaining).rev() {
            idx[pos] = e;
            rec(pos + 1, remaining - e, idx, out);
        }
        idx[pos] = 0;
    }
    rec(0, n, &mut idx, &mut out);
    out
}

pub fn sym_power(fam: &EigenFamily, n: u32) -> SymmetricPower {
    assert!(n >= 1, "symmetric power needs degree >= 1");
    let k = n as f64;
    SymmetricPower {
        degree: n,
        monomials: exponents_of_degree(n)
            .into_iter()
            .map(|idx| PolyFn::monomial(idx, Complex64::new(1.0, 0.0)))
            .collect(),
        laplace_eigenvalue: k * (fam.lambda + (k - 1.0) * fam.mu),
        conformality_eigenvalue: k * k * fam.mu,
    }
}

/// Certifies |Δ(P/Q)| and |κ(P/Q, P/Q)| over sampled group elements away
/// from the poles of Q∘φ. Samples with |Q∘φ| below
/// [`POLE_GUARD_FRACTION`]·median are excluded; if none survive the result
/// is the inconclusive [`HarmonicError::PoleGuardExhausted`], distinct
/// from a failure.
pub fn check_harmonic_morphism(
    map: &RationalMap,
    fam: &EigenFamily,
    basis: &G2Basis,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<QReport, HarmonicError> {
    assert!(n_samples >= 1, "need at least one sample");
    let pipeline = RationalPipeline::new(map);
    let mut jets = Vec::with_capacity(n_samples);
    let mut denom_abs = Vec::with_capacity(n_samples);
    for s in 0..n_samples {
        let g = random_element(seed.wrapping_add(s as u64), basis);
        let jet = member_jet(fam, &g, basis)?;
        denom_abs.push(pipeline.den.value(&jet).norm());
        jets.push(jet);
    }
    let mut sorted = denom_abs.clone();
    sorted.sort_by(f64::total_cmp);
    let median = if n_samples % 2 == 1 {
        sorted[n_samples / 2]
    } else {
        0.5 * (sorted[n_samples / 2 - 1] + sorted[n_samples / 2])
    };
    let floor = POLE_GUARD_FRACTION * median;
    if median == 0.0 {
        return Err(HarmonicError::PoleGuardExhausted { n_samples });
    }
    let mut admitted = 0;
    let mut max_err: f64 = 0.0;
    for (jet, qa) in jets.iter().zip(&denom_abs) {
        if *qa < floor {
            continue;
        }
        admitted += 1;
        let (lap, conf) = pipeline.point(jet, floor)?;
        max_err = max_err.max(lap.norm()).max(conf.norm());
    }
    if admitted == 0 {
        return Err(HarmonicError::PoleGuardExhausted { n_samples });
    }
    Ok(QReport {
        check: "harmonic_morphism".into(),
        n_samples,
        seed,
        tol,
        max_abs_error: max_err,
        pass: max_err <= tol,
        lambda: Some(fam.lambda),
        mu: Some(fam.mu),
        admitted_samples: Some(admitted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid7::Vec7R;
    use crate::g2alg::{build_g2_basis, q_sum};
    use crate::sample::{rng_from_seed, sample_coeffs14, sample_isotropic, sample_vec7c};

    fn basis() -> G2Basis {
        build_g2_basis().expect("basis")
    }

    fn canonical_p() -> Vec7C {
        Vec7C::from_re_im(&Vec7R::basis(0), &Vec7R::basis(1))
    }

    fn unit_direction(rng: &mut impl rand::Rng, basis: &G2Basis) -> Mat7 {
        let mut c = sample_coeffs14(rng);
        let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in c.iter_mut() {
            *x /= n;
        }
        let mut a = Mat7::zero();
        for (ci, x) in c.iter().zip(basis.mats()) {
            a = a.add(&x.scale(*ci));
        }
        a
    }

    #[test]
    fn eval_at_identity_is_the_bilinear_pairing() {
        let mut rng = rng_from_seed(101);
        let (a, b) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
        let f = EigenFunction::new(a, b);
        assert_eq!(f.eval(&G2Element::identity()), dot(&a, &b));
    }

    #[test]
    fn eval_reads_matrix_entries_on_basis_pairs() {
        let b = basis();
        let g = random_element(3, &b);
        // ⟨ρ(g)e₁, e₁⟩ is the (1,1) entry
        let f = EigenFunction::new(Vec7C::basis(0), Vec7C::basis(0));
        assert_eq!(f.eval(&g), Complex64::new(g.mat().0[0][0], 0.0));
    }

    #[test]
    fn eval_is_linear_in_the_second_slot() {
        let b = basis();
        let g = random_element(5, &b);
        let mut rng = rng_from_seed(103);
        let (a, v) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
        let f1 = EigenFunction::new(a, v);
        let f2 = EigenFunction::new(a, v.scale(Complex64::new(2.0, 0.0)));
        assert!((f2.eval(&g) - 2.0 * f1.eval(&g)).norm() <= 1e-13);
    }

    #[test]
    fn deriv_basics() {
        let b = basis();
        let g = random_element(7, &b);
        let mut rng = rng_from_seed(107);
        let f = EigenFunction::new(sample_vec7c(&mut rng), sample_vec7c(&mut rng));
        assert_eq!(f.deriv(&g, &Mat7::zero()), Complex64::ZERO);
        // at the identity the derivative is ⟨Xa, b⟩
        let x = &b.mats()[4];
        let at_e = f.deriv(&G2Element::identity(), x);
        assert!((at_e - dot(&x.apply_c(&f.a), &f.b)).norm() <= 1e-15);
    }

    #[test]
    fn exact_derivatives_match_central_differences() {
        let b = basis();
        let mut rng = rng_from_seed(109);
        for trial in 0..10u64 {
            let g = random_element(200 + trial, &b);
            let f = EigenFunction::new(sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let x = unit_direction(&mut rng, &b);
            let fd1 = fd_deriv(|h| f.eval(h), &g, &x, FD_H_FIRST, FdOrder::First);
            assert!((fd1 - f.deriv(&g, &x)).norm() <= 1e-7);
            let fd2 = fd_deriv(|h| f.eval(h), &g, &x, FD_H_SECOND, FdOrder::Second);
            assert!((fd2 - f.deriv2(&g, &x)).norm() <= 1e-5);
        }
    }

    #[test]
    fn fd_of_a_constant_vanishes() {
        let b = basis();
        let g = random_element(17, &b);
        let x = &b.mats()[0];
        let c = Complex64::new(0.7, -0.3);
        let fd = fd_deriv(|_| c, &g, x, 1e-4, FdOrder::First);
        assert!(fd.norm() <= 1e-12 / 1e-4);
        let fd2 = fd_deriv(|_| c, &g, x, 1e-3, FdOrder::Second);
        assert!(fd2.norm() <= 1e-9);
    }

    #[test]
    fn halving_h_divides_the_discrepancy_by_about_four() {
        let b = basis();
        let mut rng = rng_from_seed(113);
        // aggregate over several draws so the leading truncation term dominates
        let mut d_h: f64 = 0.0;
        let mut d_h2: f64 = 0.0;
        let mut d2_h: f64 = 0.0;
        let mut d2_h2: f64 = 0.0;
        for trial in 0..8u64 {
            let g = random_element(300 + trial, &b);
            let f = EigenFunction::new(sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let x = unit_direction(&mut rng, &b);
            let exact1 = f.deriv(&g, &x);
            let h1 = FD_H_FIRST;
            d_h = d_h.max((fd_deriv(|h| f.eval(h), &g, &x, h1, FdOrder::First) - exact1).norm());
            d_h2 = d_h2
                .max((fd_deriv(|h| f.eval(h), &g, &x, h1 / 2.0, FdOrder::First) - exact1).norm());
            let exact2 = f.deriv2(&g, &x);
            // larger step for the second-order ratio keeps truncation above roundoff
            let h2 = 1e-2;
            d2_h =
                d2_h.max((fd_deriv(|h| f.eval(h), &g, &x, h2, FdOrder::Second) - exact2).norm());
            d2_h2 = d2_h2.max(
                (fd_deriv(|h| f.eval(h), &g, &x, h2 / 2.0, FdOrder::Second) - exact2).norm(),
            );
        }
        let r1 = d_h / d_h2;
        let r2 = d2_h / d2_h2;
        assert!((3.5..=4.5).contains(&r1), "order-1 ratio {r1}");
        assert!((3.5..=4.5).contains(&r2), "order-2 ratio {r2}");
    }

    #[test]
    fn members_are_laplace_eigenfunctions() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        for seed in 0..5u64 {
            let g = random_element(400 + seed, &b);
            for f in fam.members() {
                let lap = laplacian(f, &g, &b);
                let expect = fam.lambda() * f.eval(&g);
                assert!((lap - expect).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn conformality_at_identity_is_the_q_form() {
        let b = basis();
        let mut rng = rng_from_seed(127);
        for _ in 0..20 {
            let (a, bb) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let (c, d) = (sample_vec7c(&mut rng), sample_vec7c(&mut rng));
            let f1 = EigenFunction::new(a, bb);
            let f2 = EigenFunction::new(c, d);
            let kappa = conformality(&f1, &f2, &G2Element::identity(), &b);
            let q = q_sum(&a, &bb, &c, &d, &b);
            assert!((kappa - q).norm() <= 1e-12);
        }
    }

    #[test]
    fn conformality_of_family_members_is_minus_third_of_product() {
        let b = basis();
        let mut rng = rng_from_seed(131);
        let p = sample_isotropic(&mut rng);
        let fam = make_eigenfamily(&p, &b).unwrap();
        for seed in 0..5u64 {
            let g = random_element(500 + seed, &b);
            let (fa, fb) = (&fam.members()[2], &fam.members()[5]);
            let kappa = conformality(fa, fb, &g, &b);
            let expect = -Q_MU * fa.eval(&g) * fb.eval(&g);
            assert!((kappa - expect).norm() <= 1e-9);
        }
    }

    #[test]
    fn conformality_with_constant_vanishes() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let g = random_element(23, &b);
        let one = PolyFn::constant(Complex64::new(1.0, 0.0));
        let z1 = PolyFn::var(0);
        let k = conformality_composite(&z1, &one, &fam, &g, &b).unwrap();
        assert!(k.norm() <= 1e-13);
        let lap = laplacian_composite(&one, &fam, &g, &b).unwrap();
        assert!(lap.norm() <= 1e-13);
    }

    #[test]
    fn make_eigenfamily_validates_isotropy() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        assert_eq!(fam.members().len(), 7);
        assert!((fam.lambda() + 2.0).abs() <= 1e-10);
        assert_eq!(fam.mu(), FAMILY_MU);
        match make_eigenfamily(&Vec7C::basis(0), &b) {
            Err(HarmonicError::NonIsotropic { norm_sq_abs }) => {
                assert!((norm_sq_abs - 1.0).abs() <= 1e-15)
            }
            other => panic!("expected isotropy rejection, got {other:?}"),
        }
    }

    #[test]
    fn family_certification_and_negative_controls() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let report = check_eigenfamily(&fam, &b, 25, 42, 1e-9);
        assert!(report.pass, "max error {}", report.max_abs_error);

        // vacuous family
        let empty = EigenFamily::with_members_unchecked(canonical_p(), vec![], -2.0, FAMILY_MU);
        let report = check_eigenfamily(&empty, &b, 5, 42, 1e-12);
        assert!(report.pass);
        assert_eq!(report.max_abs_error, 0.0);

        // corrupted mu must fail
        let bad = EigenFamily::with_members_unchecked(
            canonical_p(),
            EigenFamily::standard_members(&canonical_p()),
            -2.0,
            -0.5,
        );
        assert!(!check_eigenfamily(&bad, &b, 10, 42, 1e-9).pass);
    }

    #[test]
    fn random_isotropic_families_certify() {
        let b = basis();
        let mut rng = rng_from_seed(137);
        let p = sample_isotropic(&mut rng);
        let fam = make_eigenfamily(&p, &b).unwrap();
        let report = check_eigenfamily(&fam, &b, 20, 7, 1e-9);
        assert!(report.pass, "max error {}", report.max_abs_error);
    }

    #[test]
    fn conjugate_family_certifies_with_same_eigenvalues() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap().conjugate();
        assert!((fam.lambda() + 2.0).abs() <= 1e-10);
        assert_eq!(fam.mu(), FAMILY_MU);
        let report = check_eigenfamily(&fam, &b, 20, 11, 1e-9);
        assert!(report.pass, "max error {}", report.max_abs_error);
    }

    #[test]
    fn polarization_identity_for_members() {
        // κ(φ,ψ) = ½(κ(φ+ψ,φ+ψ) − κ(φ,φ) − κ(ψ,ψ)); members share the
        // second slot so φ+ψ is again a matrix coefficient.
        let b = basis();
        let p = canonical_p();
        let fam = make_eigenfamily(&p, &b).unwrap();
        let g = random_element(29, &b);
        let (f1, f2) = (&fam.members()[0], &fam.members()[3]);
        let sum = EigenFunction::new(f1.a.add(&f2.a), p);
        let lhs = conformality(f1, f2, &g, &b);
        let rhs = 0.5
            * (conformality(&sum, &sum, &g, &b)
                - conformality(f1, f1, &g, &b)
                - conformality(f2, f2, &g, &b));
        assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn product_rule_through_the_composite_pipeline() {
        // Δ(φψ) = ψΔφ + 2κ(φ,ψ) + φΔψ with φ = z₂∘members, ψ = z₆∘members
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let mut idx = [0u32; 7];
        idx[1] = 1;
        idx[5] = 1;
        let product = PolyFn::monomial(idx, Complex64::new(1.0, 0.0));
        for seed in 0..5u64 {
            let g = random_element(600 + seed, &b);
            let (phi, psi) = (&fam.members()[1], &fam.members()[5]);
            let lhs = laplacian_composite(&product, &fam, &g, &b).unwrap();
            let rhs = psi.eval(&g) * laplacian(phi, &g, &b)
                + 2.0 * conformality(phi, psi, &g, &b)
                + phi.eval(&g) * laplacian(psi, &g, &b);
            assert!((lhs - rhs).norm() <= 1e-9);
        }
    }

    #[test]
    fn symmetric_powers_carry_shifted_eigenvalues() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let p1 = sym_power(&fam, 1);
        assert_eq!(p1.monomials.len(), 7);
        assert!((p1.laplace_eigenvalue - fam.lambda()).abs() <= 1e-15);

        let p2 = sym_power(&fam, 2);
        assert_eq!(p2.monomials.len(), 28);
        // 2(λ+μ) and 4μ
        assert!((p2.laplace_eigenvalue - 2.0 * (fam.lambda() + fam.mu())).abs() <= 1e-15);
        assert!((p2.conformality_eigenvalue - 4.0 * fam.mu()).abs() <= 1e-15);

        let g = random_element(31, &b);
        // a square member: z₃², Laplace eigenvalue 2(λ+μ), conformality 4μ
        let mut idx = [0u32; 7];
        idx[2] = 2;
        let sq = PolyFn::monomial(idx, Complex64::new(1.0, 0.0));
        let val = eval_composite(&sq, &fam, &g, &b).unwrap();
        let lap = laplacian_composite(&sq, &fam, &g, &b).unwrap();
        assert!((lap - p2.laplace_eigenvalue * val).norm() <= 1e-8);
        let conf = conformality_composite(&sq, &sq, &fam, &g, &b).unwrap();
        assert!((conf - p2.conformality_eigenvalue * val * val).norm() <= 1e-8);

        // mixed degrees: κ between degree 2 and degree 3 elements is 6μ·φψ
        let p3 = sym_power(&fam, 3);
        assert_eq!(p3.monomials.len(), 84);
        let cube = &p3.monomials[0];
        let val3 = eval_composite(cube, &fam, &g, &b).unwrap();
        let cross = conformality_composite(&sq, cube, &fam, &g, &b).unwrap();
        let expect = 2.0 * 3.0 * fam.mu() * val * val3;
        assert!((cross - expect).norm() <= 1e-8);
    }

    #[test]
    fn nonzero_span_elements_are_not_real_valued() {
        // a real-valued member combination would have to be constant, hence
        // zero; generic combinations show a solidly nonzero imaginary part
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let mut rng = rng_from_seed(139);
        for _ in 0..5 {
            let coeffs = sample_vec7c(&mut rng);
            let mut a = Vec7C::zero();
            for k in 0..7 {
                a = a.add(&Vec7C::basis(k).scale(coeffs.0[k]));
            }
            let f = EigenFunction::new(a, *fam.p());
            let mut max_im: f64 = 0.0;
            for s in 0..100u64 {
                let g = random_element(700 + s, &b);
                max_im = max_im.max(f.eval(&g).im.abs());
            }
            assert!(max_im > 1e-6, "imaginary part never exceeded {max_im}");
        }
    }

    #[test]
    fn simple_rational_maps_are_harmonic_morphisms() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let map = RationalMap::new(PolyFn::var(0), PolyFn::var(1)).unwrap();
        let report = check_harmonic_morphism(&map, &fam, &b, 60, 42, 1e-7).unwrap();
        assert!(report.pass, "max residual {}", report.max_abs_error);
        assert!(report.admitted_samples.unwrap() > 0);
    }

    #[test]
    fn non_isotropic_second_slot_breaks_the_conformality_identity() {
        let b = basis();
        // members φ_{eᵢ, e₁} with e₁ non-isotropic: Δ still behaves, κ does not
        let p = Vec7C::basis(0);
        let fam = EigenFamily::with_members_unchecked(
            p,
            EigenFamily::standard_members(&p),
            -2.0,
            FAMILY_MU,
        );
        let report = check_eigenfamily(&fam, &b, 10, 42, 1e-9);
        assert!(!report.pass);
        assert!(report.max_abs_error > 1e-3);

        let map = RationalMap::new(PolyFn::var(0), PolyFn::var(1)).unwrap();
        let report = check_harmonic_morphism(&map, &fam, &b, 60, 42, 1e-7).unwrap();
        assert!(!report.pass);
        assert!(report.max_abs_error > 1e-3);
    }

    #[test]
    fn rational_ops_respect_the_pole_guard() {
        let b = basis();
        let fam = make_eigenfamily(&canonical_p(), &b).unwrap();
        let map = RationalMap::new(PolyFn::var(0), PolyFn::var(1)).unwrap();
        let g = random_element(43, &b);
        let denom = eval_composite(map.den(), &fam, &g, &b).unwrap().norm();
        let err = laplacian_rational(&map, &fam, &g, &b, denom * 2.0).unwrap_err();
        assert!(matches!(err, HarmonicError::NearPole { .. }));
        assert!(laplacian_rational(&map, &fam, &g, &b, denom * 0.5).is_ok());
        assert!(conformality_rational(&map, &fam, &g, &b, denom * 0.5).is_ok());
    }

    #[test]
    fn exponent_enumeration_counts_match() {
        assert_eq!(exponents_of_degree(1).len(), 7);
        assert_eq!(exponents_of_degree(2).len(), 28);
        assert_eq!(exponents_of_degree(3).len(), 84);
        for idx in exponents_of_degree(3) {
            assert_eq!(idx.iter().sum::<u32>(), 3);
        }
    }
}
