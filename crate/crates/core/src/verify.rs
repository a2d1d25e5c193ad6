//! Every identity the crate rests on, packaged as a seeded residual check
//! with a pinned tolerance. The acceptance suite and the CLI `verify`
//! subcommand both run exactly these checks, so a green run certifies the
//! whole construction end to end.

use num_complex::Complex64;
use rand::Rng;

use crate::euclid7::{cross, cross_r, dot, dot_r, Vec7C, Vec7R};
use crate::g2alg::{
    build_g2_basis, casimir_matrix, casimir_scalar, project_g2, project_rw, q_closed, q_sum,
    G2AlgError, G2Basis,
};
use crate::group::{
    cross_compat_residual, expm, random_element, CROSS_COMPAT_TOL, MEMBERSHIP_PAIRS,
    ORTHOGONALITY_TOL,
};
use crate::harmonic::{
    check_eigenfamily, check_harmonic_morphism, composite_point, conformality, fd_deriv,
    laplacian, make_eigenfamily, sym_power, EigenFamily, EigenFunction, FdOrder, PolyFn,
    RationalMap, FAMILY_MU, FD_H_FIRST,
};
use crate::mat::Mat7;
use crate::report::CheckOutcome;
use crate::sample::{rng_from_seed, sample_coeffs14, sample_vec7c, sample_vec7r};
use crate::wedge::{lmap, lmap_r, mat_inner, rho_iso, wedge, wedge_inner, SkewMat7};

/// Knobs shared by every check; `None` fields fall back to each check's
/// own defaults.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub h: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            samples: None,
            tol: None,
            h: None,
        }
    }
}

impl SuiteConfig {
    fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default).max(1)
    }

    fn t(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn outcome(
    check: &str,
    identity: &str,
    n_samples: usize,
    seed: u64,
    tol: f64,
    max_abs_error: f64,
) -> CheckOutcome {
    CheckOutcome {
        check: check.into(),
        identity: identity.into(),
        n_samples,
        seed,
        tol,
        max_abs_error,
        pass: max_abs_error <= tol,
        details: Vec::new(),
        note: None,
    }
}

fn canonical_p() -> Vec7C {
    Vec7C::from_re_im(&Vec7R::basis(0), &Vec7R::basis(1))
}

fn unit_direction(rng: &mut impl rand::Rng, basis: &G2Basis) -> Mat7 {
    let mut c = sample_coeffs14(rng);
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in c.iter_mut() {
        *x /= norm;
    }
    let mut a = Mat7::zero();
    for (ci, x) in c.iter().zip(basis.mats()) {
        a = a.add(&x.scale(*ci));
    }
    a
}

/// The two defining identities of the cross product, on random real triples.
pub fn check_cross_identities(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(1000);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut skew_adj: f64 = 0.0;
    let mut double: f64 = 0.0;
    for _ in 0..n {
        let u = sample_vec7r(&mut rng);
        let v = sample_vec7r(&mut rng);
        let w = sample_vec7r(&mut rng);
        skew_adj = skew_adj.max((dot_r(&cross_r(&v, &u), &w) + dot_r(&u, &cross_r(&v, &w))).abs());
        let lhs = cross_r(&u, &cross_r(&v, &w)).add(&cross_r(&v, &cross_r(&u, &w)));
        let rhs = u
            .scale(dot_r(&v, &w))
            .add(&v.scale(dot_r(&u, &w)))
            .sub(&w.scale(2.0 * dot_r(&u, &v)));
        double = double.max(lhs.sub(&rhs).max_abs());
    }
    let mut out = outcome(
        "cross_identities",
        "⟨v×u,w⟩ = −⟨u,v×w⟩ and u×(v×w)+v×(u×w) = ⟨u,w⟩v+⟨v,w⟩u−2⟨u,v⟩w",
        n,
        cfg.seed,
        tol,
        skew_adj.max(double),
    );
    out.details = vec![
        ("skew_adjoint_residual".into(), skew_adj),
        ("double_product_residual".into(), double),
    ];
    out
}

/// Norm identity and antisymmetry of the complex-bilinear extension.
pub fn check_cross_norm_antisymmetry(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(1000);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut norm_res: f64 = 0.0;
    let mut antisym: f64 = 0.0;
    for _ in 0..n {
        let u = sample_vec7r(&mut rng);
        let v = sample_vec7r(&mut rng);
        let c = cross_r(&u, &v);
        let lhs = dot_r(&c, &c);
        let rhs = dot_r(&u, &u) * dot_r(&v, &v) - dot_r(&u, &v) * dot_r(&u, &v);
        norm_res = norm_res.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
        let a = sample_vec7c(&mut rng);
        let b = sample_vec7c(&mut rng);
        antisym = antisym.max(cross(&a, &b).add(&cross(&b, &a)).max_abs());
    }
    let mut out = outcome(
        "cross_norm_antisymmetry",
        "|u×v|² = |u|²|v|² − ⟨u,v⟩² and u×v + v×u = 0 after complex extension",
        n,
        cfg.seed,
        tol,
        norm_res.max(antisym),
    );
    out.pass = norm_res <= tol && antisym <= 1e-13;
    out.details = vec![
        ("norm_identity_residual".into(), norm_res),
        ("antisymmetry_residual".into(), antisym),
    ];
    out
}

/// Both pairing identities between the wedge square and skew matrices.
pub fn check_wedge_so7(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(500);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    for _ in 0..n {
        // random real skew matrix
        let mut skew = Mat7::zero();
        for i in 0..7 {
            for j in (i + 1)..7 {
                let x: f64 = rng.sample(rand_distr::StandardNormal);
                skew.0[i][j] = x;
                skew.0[j][i] = -x;
            }
        }
        let a_c = SkewMat7::from_real(&skew);
        let a = sample_vec7c(&mut rng);
        let b = sample_vec7c(&mut rng);
        let lhs = mat_inner(&a_c, &rho_iso(&wedge(&a, &b)));
        let rhs = 2.0 * dot(&a_c.apply(&a), &b);
        first = first.max((lhs - rhs).norm() / (1.0 + rhs.norm()));

        let c = sample_vec7c(&mut rng);
        let d = sample_vec7c(&mut rng);
        let lhs = mat_inner(&rho_iso(&wedge(&a, &b)), &rho_iso(&wedge(&c, &d)));
        let rhs = 2.0 * wedge_inner(&wedge(&a, &b), &wedge(&c, &d));
        second = second.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    let mut out = outcome(
        "wedge_so7",
        "⟨A,R(a∧b)⟩ = 2⟨A(a),b⟩ and ⟨R(a∧b),R(c∧d)⟩ = 2⟨⟨a∧b,c∧d⟩⟩",
        n,
        cfg.seed,
        tol,
        first.max(second),
    );
    out.details = vec![
        ("pairing_with_skew_residual".into(), first),
        ("pairing_of_images_residual".into(), second),
    ];
    out
}

/// Mixed cross/wedge pairing identity on real quadruples.
pub fn check_cross_wedge_mixed(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(1000);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut res: f64 = 0.0;
    for _ in 0..n {
        let a = sample_vec7r(&mut rng).complexify();
        let b = sample_vec7r(&mut rng).complexify();
        let u = sample_vec7r(&mut rng).complexify();
        let v = sample_vec7r(&mut rng).complexify();
        let lhs = dot(&cross(&a, &u), &cross(&b, &v)) + dot(&cross(&a, &v), &cross(&b, &u));
        let rhs = wedge_inner(&wedge(&a, &u), &wedge(&b, &v))
            + wedge_inner(&wedge(&a, &v), &wedge(&b, &u));
        res = res.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    outcome(
        "cross_wedge_mixed",
        "⟨a×u,b×v⟩+⟨a×v,b×u⟩ = ⟨⟨a∧u,b∧v⟩⟩+⟨⟨a∧v,b∧u⟩⟩",
        n,
        cfg.seed,
        tol,
        res,
    )
}

/// The L operator: pairing identity, dimension of its span, and
/// orthogonality against the constructed algebra.
pub fn check_lmap_span(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(500);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut pairing: f64 = 0.0;
    for _ in 0..n {
        let v = sample_vec7r(&mut rng);
        let w = sample_vec7r(&mut rng);
        let lhs = lmap_r(&v).inner(&lmap_r(&w));
        let rhs = 6.0 * dot_r(&v, &w);
        pairing = pairing.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
    }
    // Gram matrix of {L_{e_k}} is 6·I₇, so the span has dimension 7
    let lmaps: Vec<Mat7> = (0..7).map(|k| lmap_r(&Vec7R::basis(k))).collect();
    let mut gram_res: f64 = 0.0;
    for (i, a) in lmaps.iter().enumerate() {
        for (j, b) in lmaps.iter().enumerate() {
            let expect = if i == j { 6.0 } else { 0.0 };
            gram_res = gram_res.max((a.inner(b) - expect).abs());
        }
    }
    let complement = basis.rw_orthogonality_residual();
    let mut out = outcome(
        "lmap_span",
        "⟨L_v,L_w⟩ = 6⟨v,w⟩; span{L_{e_k}} is 7-dimensional and orthogonal to the algebra",
        n,
        cfg.seed,
        tol,
        pairing.max(gram_res).max(complement),
    );
    out.details = vec![
        ("pairing_residual".into(), pairing),
        ("lmap_gram_residual".into(), gram_res),
        ("span_dimension".into(), 7.0),
        ("algebra_orthogonality_residual".into(), complement),
    ];
    out.note = Some(
        "dim span{L_{e_k}} = 7 and dim algebra = 14 partition the 21-dimensional image of R"
            .into(),
    );
    out
}

/// Projection of decomposable images onto the span of the L operators.
pub fn check_rw_projection(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(500);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut proj: f64 = 0.0;
    let mut images_orth: f64 = 0.0;
    for _ in 0..n {
        let a = sample_vec7r(&mut rng);
        let b = sample_vec7r(&mut rng);
        let r = rho_iso(&wedge(&a.complexify(), &b.complexify()));
        let lhs = project_rw(&r);
        let rhs = lmap(&cross_r(&a, &b).complexify()).scale(Complex64::new(1.0 / 3.0, 0.0));
        proj = proj.max(lhs.sub(&rhs).max_abs());
        // images of the two complementary projections stay orthogonal
        let c = sample_vec7c(&mut rng);
        let d = sample_vec7c(&mut rng);
        let other = rho_iso(&wedge(&c, &d));
        images_orth = images_orth.max(mat_inner(&project_rw(&r), &project_g2(&other)).norm());
    }
    let mut out = outcome(
        "rw_projection",
        "P_{R(W)}(R(a∧b)) = (1/3)L_{a×b}",
        n,
        cfg.seed,
        tol,
        proj.max(images_orth),
    );
    out.details = vec![
        ("projection_residual".into(), proj),
        ("image_orthogonality_residual".into(), images_orth),
    ];
    out
}

/// Count, orthonormality, derivation property and bracket closure of the
/// constructed basis.
pub fn check_basis_construction(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let tol = cfg.t(1e-10);
    let n = cfg.n(200);
    let gram = basis.gram_residual();
    let derivation = basis.derivation_residual(n, cfg.seed);
    let closure = basis.closure_residual();
    let count = basis.len();
    let max = gram.max(derivation).max(closure);
    let mut out = outcome(
        "basis_construction",
        "14 orthonormal skew matrices, each a cross-product derivation, closed under brackets",
        n,
        cfg.seed,
        tol,
        max,
    );
    out.pass = count == 14 && max <= tol;
    out.details = vec![
        ("count".into(), count as f64),
        ("gram_residual".into(), gram),
        ("derivation_residual".into(), derivation),
        ("closure_residual".into(), closure),
    ];
    out
}

/// The Casimir matrix is scalar with value −2.
pub fn check_casimir(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let tol = cfg.t(1e-10);
    let c = casimir_matrix(basis);
    let mut off_diag: f64 = 0.0;
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                off_diag = off_diag.max(c.0[i][j].abs());
            }
        }
    }
    let trace: f64 = (0..7).map(|k| c.0[k][k]).sum();
    let scalar = casimir_scalar(basis);
    let (value, scalar_err) = match &scalar {
        Ok(v) => (*v, (*v + 2.0).abs()),
        Err(_) => (f64::NAN, f64::INFINITY),
    };
    let mut out = outcome(
        "casimir_scalar",
        "ΣᵢXᵢ² = c·I₇ with c = −2 (trace oracle: trace = −Σ⟨Xᵢ,Xᵢ⟩ = −14 over dimension 7)",
        1,
        cfg.seed,
        tol,
        off_diag.max(scalar_err),
    );
    out.pass = scalar.is_ok() && off_diag <= tol && scalar_err <= tol;
    out.details = vec![
        ("casimir".into(), value),
        ("off_diagonal_max".into(), off_diag),
        ("trace".into(), trace),
        ("deviation_from_minus_two".into(), scalar_err),
    ];
    out
}

/// Defining sum vs closed form of the conformality pairing, plus the
/// record of which multiple of the projected wedge pairing the sum equals.
pub fn check_q_equivalence(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(1000);
    let tol = cfg.t(1e-10);
    let mut rng = rng_from_seed(cfg.seed);
    let mut sum_vs_closed: f64 = 0.0;
    let mut vs_half_pairing: f64 = 0.0;
    let mut vs_unit_pairing: f64 = 0.0;
    for _ in 0..n {
        let a = sample_vec7c(&mut rng);
        let b = sample_vec7c(&mut rng);
        let c = sample_vec7c(&mut rng);
        let d = sample_vec7c(&mut rng);
        let qs = q_sum(&a, &b, &c, &d, basis);
        let qc = q_closed(&a, &b, &c, &d);
        sum_vs_closed = sum_vs_closed.max((qs - qc).norm());
        // ⟨⟨P(a∧b), c∧d⟩⟩ evaluated through matrices
        let pairing = 0.5
            * mat_inner(
                &project_g2(&rho_iso(&wedge(&a, &b))),
                &rho_iso(&wedge(&c, &d)),
            );
        vs_half_pairing = vs_half_pairing.max((qs - 0.5 * pairing).norm());
        vs_unit_pairing = vs_unit_pairing.max((qs - pairing).norm());
    }
    let mut out = outcome(
        "q_equivalence",
        "Σᵢ⟨Xᵢa,b⟩⟨Xᵢc,d⟩ = ½⟨⟨a∧b,c∧d⟩⟩ − (1/6)⟨a×b,c×d⟩",
        n,
        cfg.seed,
        tol,
        sum_vs_closed.max(vs_half_pairing),
    );
    out.details = vec![
        ("sum_vs_closed_residual".into(), sum_vs_closed),
        ("vs_half_projected_pairing".into(), vs_half_pairing),
        ("vs_unhalved_projected_pairing".into(), vs_unit_pairing),
    ];
    out.note = Some(format!(
        "the defining sum equals ½⟨⟨P(a∧b),c∧d⟩⟩ (residual {vs_half_pairing:.3e}); \
         the unhalved pairing does not match (residual {vs_unit_pairing:.3e})"
    ));
    out
}

/// The eigenvalue form of the pairing on wedges sharing their second slot,
/// quantified over all complex vectors.
pub fn check_q_second_slot(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.n(1000);
    let tol = cfg.t(1e-12);
    let mut rng = rng_from_seed(cfg.seed);
    let mut res: f64 = 0.0;
    for _ in 0..n {
        let a = sample_vec7c(&mut rng);
        let b = sample_vec7c(&mut rng);
        let p = sample_vec7c(&mut rng);
        let lhs = q_closed(&a, &p, &b, &p);
        let rhs = wedge_inner(&wedge(&a, &p), &wedge(&b, &p)) / 3.0;
        res = res.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    outcome(
        "q_second_slot",
        "Q(a∧p, b∧p) = (1/3)⟨⟨a∧p, b∧p⟩⟩ for all complex a, b, p",
        n,
        cfg.seed,
        tol,
        res,
    )
}

/// Conjugation invariance: the conformality operator evaluated anywhere on
/// the group through exact derivatives agrees with the pairing of the
/// rotated arguments.
pub fn check_q_ad_invariance(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(50);
    let tol = cfg.t(1e-9);
    let mut rng = rng_from_seed(cfg.seed);
    let mut res: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let a = sample_vec7c(&mut rng);
        let b = sample_vec7c(&mut rng);
        let c = sample_vec7c(&mut rng);
        let d = sample_vec7c(&mut rng);
        let f1 = EigenFunction::new(a, b);
        let f2 = EigenFunction::new(c, d);
        let kappa = conformality(&f1, &f2, &g, basis);
        let ga = g.mat().apply_c(&a);
        let gc = g.mat().apply_c(&c);
        let q = q_closed(&ga, &b, &gc, &d);
        res = res.max((kappa - q).norm() / (1.0 + q.norm()));
    }
    outcome(
        "q_ad_invariance",
        "κ(φ_{ab},φ_{cd})(g) = Q(ρ(g)a, b, ρ(g)c, d)",
        n,
        cfg.seed,
        tol,
        res,
    )
}

/// One hundred sampled elements satisfy both membership invariants; a
/// generic rotation of SO(7) does not.
pub fn check_group_membership(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(100);
    let tol = cfg.t(CROSS_COMPAT_TOL);
    let mut max_orth: f64 = 0.0;
    let mut max_cross: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        max_orth = max_orth.max(g.mat().orthogonality_residual());
        max_cross = max_cross.max(cross_compat_residual(
            g.mat(),
            MEMBERSHIP_PAIRS,
            cfg.seed.wrapping_add(s as u64),
        ));
    }
    // negative control: a generic orthogonal matrix fails the cross check
    let mut rng = rng_from_seed(cfg.seed ^ 0x5051);
    let mut skew = Mat7::zero();
    for i in 0..7 {
        for j in (i + 1)..7 {
            let x: f64 = rng.sample(rand_distr::StandardNormal);
            skew.0[i][j] = x;
            skew.0[j][i] = -x;
        }
    }
    let rogue = expm(&skew);
    let rogue_cross = cross_compat_residual(&rogue, MEMBERSHIP_PAIRS, cfg.seed);
    let mut out = outcome(
        "group_membership",
        "sampled elements satisfy gᵀg = I and g(v×w) = (gv)×(gw); generic rotations do not",
        n,
        cfg.seed,
        tol,
        max_orth.max(max_cross),
    );
    out.pass = max_orth <= ORTHOGONALITY_TOL && max_cross <= CROSS_COMPAT_TOL
        && rogue.orthogonality_residual() <= 1e-12
        && rogue_cross > 1e-3;
    out.details = vec![
        ("max_orthogonality_residual".into(), max_orth),
        ("max_cross_compat_residual".into(), max_cross),
        ("rogue_rotation_cross_residual".into(), rogue_cross),
    ];
    out
}

/// Conjugation carries L_v to L_{gv} and keeps the basis frame orthonormal.
pub fn check_representation_conjugation(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(20);
    let tol = cfg.t(1e-9);
    let mut rng = rng_from_seed(cfg.seed);
    let mut lmap_res: f64 = 0.0;
    let mut frame_res: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let v = sample_vec7r(&mut rng);
        let lhs = g.mat().mul(&lmap_r(&v)).mul(&g.inverse().mat());
        let rhs = lmap_r(&g.mat().apply_r(&v));
        lmap_res = lmap_res.max(lhs.sub(&rhs).max_abs());
        let conj: Vec<Mat7> = basis
            .mats()
            .iter()
            .map(|x| g.mat().mul(x).mul(&g.inverse().mat()))
            .collect();
        for (i, a) in conj.iter().enumerate() {
            for (j, b) in conj.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                frame_res = frame_res.max((a.inner(b) - expect).abs());
            }
        }
    }
    let mut out = outcome(
        "representation_conjugation",
        "g L_v g⁻¹ = L_{gv} and {gXᵢg⁻¹} is again orthonormal",
        n,
        cfg.seed,
        tol,
        lmap_res.max(frame_res),
    );
    out.details = vec![
        ("lmap_conjugation_residual".into(), lmap_res),
        ("conjugated_frame_gram_residual".into(), frame_res),
    ];
    out
}

/// Exact derivatives against central differences, including the order-2
/// convergence of the stencils.
pub fn check_derivative_oracle(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(10);
    let h1 = cfg.h.unwrap_or(FD_H_FIRST);
    let h2 = 10.0 * h1;
    let tol1 = cfg.t(1e-7);
    let tol2 = 100.0 * tol1;
    let mut rng = rng_from_seed(cfg.seed);
    let mut d1: f64 = 0.0;
    let mut d2: f64 = 0.0;
    let mut d1_half: f64 = 0.0;
    let mut d2_big: f64 = 0.0;
    let mut d2_big_half: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let f = EigenFunction::new(sample_vec7c(&mut rng), sample_vec7c(&mut rng));
        let x = unit_direction(&mut rng, basis);
        let exact1 = f.deriv(&g, &x);
        let exact2 = f.deriv2(&g, &x);
        d1 = d1.max((fd_deriv(|h| f.eval(h), &g, &x, h1, FdOrder::First) - exact1).norm());
        d1_half = d1_half
            .max((fd_deriv(|h| f.eval(h), &g, &x, h1 / 2.0, FdOrder::First) - exact1).norm());
        d2 = d2.max((fd_deriv(|h| f.eval(h), &g, &x, h2, FdOrder::Second) - exact2).norm());
        // the convergence-rate measurement for the second-order stencil
        // runs at a larger step so truncation stays above roundoff
        let hb = 100.0 * h1;
        d2_big = d2_big.max((fd_deriv(|h| f.eval(h), &g, &x, hb, FdOrder::Second) - exact2).norm());
        d2_big_half = d2_big_half
            .max((fd_deriv(|h| f.eval(h), &g, &x, hb / 2.0, FdOrder::Second) - exact2).norm());
    }
    let ratio1 = d1 / d1_half;
    let ratio2 = d2_big / d2_big_half;
    let mut out = outcome(
        "derivative_oracle",
        "exact left-invariant derivatives match central differences at O(h²)",
        n,
        cfg.seed,
        tol1,
        d1.max(d2 / (tol2 / tol1)),
    );
    out.pass = d1 <= tol1
        && d2 <= tol2
        && (3.5..=4.5).contains(&ratio1)
        && (3.5..=4.5).contains(&ratio2);
    out.details = vec![
        ("order1_residual".into(), d1),
        ("order2_residual".into(), d2),
        ("order1_halving_ratio".into(), ratio1),
        ("order2_halving_ratio".into(), ratio2),
    ];
    out
}

/// The canonical eigenfamily certifies with λ = −2 and μ = −1/3.
pub fn check_eigenfamily_canonical(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(100);
    let tol = cfg.t(1e-9);
    let fam = match make_eigenfamily(&canonical_p(), basis) {
        Ok(f) => f,
        Err(e) => {
            let mut out = outcome("eigenfamily_canonical", "", 0, cfg.seed, tol, f64::INFINITY);
            out.pass = false;
            out.note = Some(format!("family construction failed: {e}"));
            return out;
        }
    };
    let report = check_eigenfamily(&fam, basis, n, cfg.seed, tol);
    let lambda_err = (fam.lambda() + 2.0).abs();
    let mu_err = (fam.mu() + 1.0 / 3.0).abs();
    let mut out = outcome(
        "eigenfamily_canonical",
        "Δφ = λφ and κ(φ,ψ) = μφψ over the family of e₁+ie₂, λ = −2, μ = −1/3",
        n,
        cfg.seed,
        tol,
        report.max_abs_error,
    );
    out.pass = report.pass && lambda_err <= 1e-10 && mu_err == 0.0;
    out.details = vec![
        ("lambda".into(), fam.lambda()),
        ("mu".into(), fam.mu()),
        ("lambda_deviation".into(), lambda_err),
    ];
    out
}

/// The conjugated family certifies with the same eigenvalues.
pub fn check_conjugate_family(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(50);
    let tol = cfg.t(1e-9);
    let fam = make_eigenfamily(&canonical_p(), basis).expect("canonical family");
    let conj = fam.conjugate();
    let report = check_eigenfamily(&conj, basis, n, cfg.seed, tol);
    let mut out = outcome(
        "conjugate_family",
        "the conjugated family is again an eigenfamily with the same λ and μ",
        n,
        cfg.seed,
        tol,
        report.max_abs_error,
    );
    out.pass = report.pass && conj.lambda() == fam.lambda() && conj.mu() == fam.mu();
    out.details = vec![("lambda".into(), conj.lambda()), ("mu".into(), conj.mu())];
    out
}

/// Polarization ties κ on pairs to κ on sums of members.
pub fn check_polarization(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(50);
    let tol = cfg.t(1e-10);
    let mut rng = rng_from_seed(cfg.seed);
    let p = canonical_p();
    let mut res: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let a1 = sample_vec7c(&mut rng);
        let a2 = sample_vec7c(&mut rng);
        let f1 = EigenFunction::new(a1, p);
        let f2 = EigenFunction::new(a2, p);
        let sum = EigenFunction::new(a1.add(&a2), p);
        let lhs = conformality(&f1, &f2, &g, basis);
        let rhs = 0.5
            * (conformality(&sum, &sum, &g, basis)
                - conformality(&f1, &f1, &g, basis)
                - conformality(&f2, &f2, &g, basis));
        res = res.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    outcome(
        "polarization",
        "κ(φ,ψ) = ½(κ(φ+ψ,φ+ψ) − κ(φ,φ) − κ(ψ,ψ))",
        n,
        cfg.seed,
        tol,
        res,
    )
}

/// Product rule for the Laplacian through the composite pipeline.
pub fn check_product_rule(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(20);
    let tol = cfg.t(1e-9);
    let fam = make_eigenfamily(&canonical_p(), basis).expect("canonical family");
    let mut res: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let point = composite_point(&fam, &g, basis).expect("seven members");
        let (i, j) = ((s as usize) % 7, (3 + s as usize) % 7);
        let mut idx = [0u32; 7];
        idx[i] += 1;
        idx[j] += 1;
        let product = PolyFn::monomial(idx, Complex64::new(1.0, 0.0));
        let (phi, psi) = (&fam.members()[i], &fam.members()[j]);
        let lhs = point.laplacian(&product);
        let rhs = psi.eval(&g) * laplacian(phi, &g, basis)
            + 2.0 * conformality(phi, psi, &g, basis)
            + phi.eval(&g) * laplacian(psi, &g, basis);
        res = res.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    outcome(
        "product_rule",
        "Δ(φψ) = ψΔφ + 2κ(φ,ψ) + φΔψ",
        n,
        cfg.seed,
        tol,
        res,
    )
}

/// Symmetric powers carry the shifted eigenvalues k(λ+(k−1)μ) and klμ.
pub fn check_sym_powers(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(50);
    let tol = cfg.t(1e-8);
    let fam = make_eigenfamily(&canonical_p(), basis).expect("canonical family");
    let powers: Vec<_> = (1..=3).map(|k| sym_power(&fam, k)).collect();
    // a few representative monomials per degree
    let picks: Vec<Vec<&PolyFn>> = powers
        .iter()
        .map(|p| {
            let m = p.monomials.len();
            vec![&p.monomials[0], &p.monomials[m / 2], &p.monomials[m - 1]]
        })
        .collect();
    let mut lap_res: f64 = 0.0;
    let mut conf_res: f64 = 0.0;
    for s in 0..n {
        let g = random_element(cfg.seed.wrapping_add(s as u64), basis);
        let point = composite_point(&fam, &g, basis).expect("seven members");
        for (ki, power) in powers.iter().enumerate() {
            for f in &picks[ki] {
                let val = point.eval(f);
                let lap = point.laplacian(f);
                lap_res = lap_res.max((lap - power.laplace_eigenvalue * val).norm());
            }
        }
        // κ across all degree pairs k, l ∈ {1,2,3}
        for (ki, pk) in powers.iter().enumerate() {
            for (li, pl) in powers.iter().enumerate() {
                let f = picks[ki][1];
                let h = picks[li][2];
                let expect = (pk.degree * pl.degree) as f64 * fam.mu();
                let kappa = point.conformality(f, h);
                conf_res =
                    conf_res.max((kappa - expect * point.eval(f) * point.eval(h)).norm());
            }
        }
    }
    let mut out = outcome(
        "sym_powers",
        "Δ(φ) = k(λ+(k−1)μ)φ on degree-k products and κ(φ,ψ) = klμφψ across degrees",
        n,
        cfg.seed,
        tol,
        lap_res.max(conf_res),
    );
    out.details = vec![
        ("laplace_residual".into(), lap_res),
        ("conformality_residual".into(), conf_res),
    ];
    out
}

/// Rational maps in the members are harmonic morphisms away from poles;
/// replacing the family by one with a non-isotropic second slot must break
/// the conformality identity.
pub fn check_harmonic_morphisms(cfg: &SuiteConfig, basis: &G2Basis) -> CheckOutcome {
    let n = cfg.n(150);
    let tol = cfg.t(1e-7);
    let fam = make_eigenfamily(&canonical_p(), basis).expect("canonical family");
    let linear = RationalMap::new(PolyFn::var(0), PolyFn::var(1)).expect("z1/z2");
    let quadratic = RationalMap::new(
        PolyFn::parse("z1^2+z2*z3").expect("numerator"),
        PolyFn::parse("z4^2").expect("denominator"),
    )
    .expect("quadratic map");

    let mut max_res: f64 = 0.0;
    let mut min_admitted = usize::MAX;
    let mut all_ok = true;
    for map in [&linear, &quadratic] {
        match check_harmonic_morphism(map, &fam, basis, n, cfg.seed, tol) {
            Ok(report) => {
                max_res = max_res.max(report.max_abs_error);
                min_admitted = min_admitted.min(report.admitted_samples.unwrap_or(0));
                all_ok &= report.pass;
            }
            Err(_) => all_ok = false,
        }
    }

    // negative control: non-isotropic second slot
    let bad_p = Vec7C::basis(0);
    let bad = EigenFamily::with_members_unchecked(
        bad_p,
        EigenFamily::standard_members(&bad_p),
        -2.0,
        FAMILY_MU,
    );
    let control = match check_harmonic_morphism(&linear, &bad, basis, n, cfg.seed, tol) {
        Ok(report) => report.max_abs_error,
        Err(_) => 0.0,
    };

    let mut out = outcome(
        "harmonic_morphisms",
        "Δ(P/Q) = 0 and κ(P/Q, P/Q) = 0 away from the zero set of Q∘φ",
        n,
        cfg.seed,
        tol,
        max_res,
    );
    out.pass = all_ok && min_admitted >= 100 && control > 1e-3;
    out.details = vec![
        ("max_residual".into(), max_res),
        ("min_admitted_samples".into(), min_admitted as f64),
        ("negative_control_residual".into(), control),
    ];
    out
}

/// Runs every check against one shared basis, in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>, G2AlgError> {
    let basis = build_g2_basis()?;
    Ok(vec![
        check_cross_identities(cfg),
        check_cross_norm_antisymmetry(cfg),
        check_wedge_so7(cfg),
        check_cross_wedge_mixed(cfg),
        check_lmap_span(cfg, &basis),
        check_rw_projection(cfg),
        check_basis_construction(cfg, &basis),
        check_casimir(cfg, &basis),
        check_q_equivalence(cfg, &basis),
        check_q_second_slot(cfg),
        check_q_ad_invariance(cfg, &basis),
        check_group_membership(cfg, &basis),
        check_representation_conjugation(cfg, &basis),
        check_derivative_oracle(cfg, &basis),
        check_eigenfamily_canonical(cfg, &basis),
        check_conjugate_family(cfg, &basis),
        check_polarization(cfg, &basis),
        check_product_rule(cfg, &basis),
        check_sym_powers(cfg, &basis),
        check_harmonic_morphisms(cfg, &basis),
    ])
}
