//! Dynamical r-matrices: residual sweeps, derivative oracle, negative controls,
//! and the round trip through `classify_phi`.

use dynpoisson::dynr::{
    build_phi, check_phi_condition, classify_phi, coth, dr_finite_difference, dr_from_phi, eval_r,
    twist_permutation, verify_dynamical_r, verify_phi, EvaluationPoint, PhiFunction, RMatrixSpec,
};
use dynpoisson::liealg::{Algebra, Normalization};
use dynpoisson::rootsys::{Family, RootSystem, WeylGroup};
use dynpoisson::{Error, Tolerances, C64};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alg(f: Family, n: usize) -> Algebra {
    Algebra::new(&RootSystem::new(f, n).unwrap(), Normalization::Unitary).unwrap()
}

fn subsets(r: usize) -> Vec<Vec<usize>> {
    (0..1usize << r)
        .map(|m| (0..r).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn random_lambda(rng: &mut ChaCha8Rng, r: usize) -> EvaluationPoint {
    EvaluationPoint::new(
        (0..r)
            .map(|_| C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-0.4..0.4)))
            .collect(),
    )
}

fn random_c(rng: &mut ChaCha8Rng, r: usize) -> Vec<Vec<C64>> {
    let mut c = vec![vec![C64::zero(); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            c[i][j] = v;
            c[j][i] = -v;
        }
    }
    c
}

#[test]
fn residuals_vanish_for_all_subsets_rank_le_3() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (f, n) in [
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::A, 3),
        (Family::C, 3),
    ] {
        let l = alg(f, n);
        let rs = l.root_system().clone();
        for x in subsets(n) {
            for _ in 0..3 {
                let eps = C64::new(rng.gen_range(0.3..1.5), rng.gen_range(-1.0..1.0));
                let word: Vec<usize> = (0..rng.gen_range(0..4))
                    .map(|_| rng.gen_range(0..n))
                    .collect();
                let spec = RMatrixSpec::new(&rs, eps, &x)
                    .unwrap()
                    .with_twist(&word)
                    .with_mu(&random_lambda(&mut rng, n).values)
                    .with_c(random_c(&mut rng, n));
                let lambda = random_lambda(&mut rng, n);
                let rep = verify_dynamical_r(&l, &spec, &lambda, &tol).unwrap();
                assert!(rep.passes(1e-9), "{f}{n} X={x:?} w={word:?}: {rep:?}");
            }
        }
    }
}

#[test]
fn analytic_derivative_matches_finite_difference() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
        let l = alg(f, n);
        let rs = l.root_system().clone();
        for x in subsets(n) {
            let spec = RMatrixSpec::new(&rs, C64::new(0.8, 0.3), &x).unwrap();
            let lambda = random_lambda(&mut rng, n);
            let phi = build_phi(&rs, &spec, &lambda, &tol).unwrap();
            let analytic = dr_from_phi(&l, &phi);
            let fd = dr_finite_difference(&l, &spec, &lambda, 1e-6, &tol).unwrap();
            assert!(analytic.sub(&fd).norm() < 1e-5, "{f}{n} X={x:?}");
        }
    }
}

#[test]
fn dr_lies_in_cartan_tensor_g_tensor_g() {
    let l = alg(Family::B, 2);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.0), &[0, 1]).unwrap();
    let phi = build_phi(
        &rs,
        &spec,
        &EvaluationPoint::real(&[0.4, 0.9]),
        &Tolerances::default(),
    )
    .unwrap();
    let dr = dr_from_phi(&l, &phi);
    assert!(!dr.is_empty());
    assert!(dr.terms().all(|(k, _)| l.is_cartan(k[0] as usize)));
}

#[test]
fn constant_spec_has_zero_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let l = alg(Family::A, 3);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.3, 0.0), &[])
        .unwrap()
        .with_c(random_c(&mut rng, 3));
    let lambda = random_lambda(&mut rng, 3);
    let phi = build_phi(&rs, &spec, &lambda, &Tolerances::default()).unwrap();
    assert!(dr_from_phi(&l, &phi).is_empty());
    let rep = verify_dynamical_r(&l, &spec, &lambda, &Tolerances::default()).unwrap();
    assert!(rep.cdybe < 1e-12);
}

#[test]
fn empty_x_gives_half_epsilon_by_positivity() {
    let rs = RootSystem::new(Family::G, 2).unwrap();
    let eps = C64::new(0.0, 1.0);
    let spec = RMatrixSpec::new(&rs, eps, &[]).unwrap();
    let phi = build_phi(
        &rs,
        &spec,
        &EvaluationPoint::real(&[0.3, 0.1]),
        &Tolerances::default(),
    )
    .unwrap();
    for a in 0..rs.num_roots() {
        let expect = if rs.is_positive(a) {
            eps / 2.0
        } else {
            -eps / 2.0
        };
        assert_eq!(phi.value(a), expect);
    }
    assert_eq!(check_phi_condition(&rs, &phi, eps), 0.0);
}

#[test]
fn a1_constant_r_matrix() {
    let l = alg(Family::A, 1);
    let rs = l.root_system().clone();
    let eps = C64::new(2.0, 0.0);
    let spec = RMatrixSpec::new(&rs, eps, &[]).unwrap();
    let r = eval_r(
        &l,
        &spec,
        &EvaluationPoint::real(&[0.7]),
        &Tolerances::default(),
    )
    .unwrap();
    let mut expect = l.omega().scale(&(eps / 2.0));
    expect.add_term(vec![l.e(0) as u16, l.e(1) as u16], eps / 2.0);
    expect.add_term(vec![l.e(1) as u16, l.e(0) as u16], -eps / 2.0);
    assert!(r.r.sub(&expect).norm() < 1e-15);
}

#[test]
fn a2_coefficient_of_dynamic_root() {
    // ε = 1, ⟪α1, λ⟫ = 0.5: coefficient (1/2)coth(0.25)
    let l = alg(Family::A, 2);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.0), &[0]).unwrap();
    let r = eval_r(
        &l,
        &spec,
        &EvaluationPoint::real(&[0.5, 0.9]),
        &Tolerances::default(),
    )
    .unwrap();
    let key = [l.e(0) as u16, l.e(rs.neg(0)) as u16];
    let c = r.a.coeff(&key);
    let oracle = 0.5 * (0.25f64.cosh() / 0.25f64.sinh());
    assert!((c.re - oracle).abs() < 1e-12 && c.im.abs() < 1e-15);
    assert!((c.re - 2.0415).abs() < 1e-4);
    // the full tensor adds the Casimir part ε/2
    assert!((r.r.coeff(&key).re - 0.5 - oracle).abs() < 1e-12);
}

#[test]
fn a2_phi_condition_and_perturbation() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let eps = C64::new(1.0, 0.0);
    // φ_α = (ε/2) coth α(h) with α1(h) = 1, α2(h) = 0.7: ⟪α_i, λ⟫ = 2 α_i(h)/ε.
    let spec = RMatrixSpec::new(&rs, eps, &[0, 1]).unwrap();
    let phi = build_phi(
        &rs,
        &spec,
        &EvaluationPoint::real(&[2.0, 1.4]),
        &Tolerances::default(),
    )
    .unwrap();
    assert!(check_phi_condition(&rs, &phi, eps) < 1e-12);
    let p = phi.perturbed(&rs, 0, C64::new(0.1, 0.0));
    let res = check_phi_condition(&rs, &p, eps);
    // residual of the triple (α1, α2, −α1−α2): 0.1 |φ_α2 + φ_{−α1−α2}|
    let oracle = 0.1 * (0.5 * coth(C64::new(0.7, 0.0)) - 0.5 * coth(C64::new(1.7, 0.0))).norm();
    assert!((res - oracle).abs() < 1e-12 && res > 1e-3);
}

#[test]
fn perturbed_phi_breaks_cdybe() {
    let l = alg(Family::A, 2);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.0), &[0, 1]).unwrap();
    let phi = build_phi(
        &rs,
        &spec,
        &EvaluationPoint::real(&[0.6, 1.1]),
        &Tolerances::default(),
    )
    .unwrap();
    let rep = verify_phi(
        &l,
        spec.epsilon,
        &spec.c,
        &phi.perturbed(&rs, 0, C64::new(0.1, 0.0)),
    )
    .unwrap();
    assert!(rep.cdybe > 1e-3 && rep.modified_cdybe > 1e-3);
    assert!(rep.unitarity < 1e-14 && rep.zero_weight < 1e-14);
}

#[test]
fn cdybe_and_modified_form_agree() {
    // modified = 2 |Alt(dr) + CYB(r)| identically, so both vanish together
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let l = alg(Family::B, 2);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.2), &[0, 1]).unwrap();
    for k in 0..6 {
        let phi = build_phi(
            &rs,
            &spec,
            &random_lambda(&mut rng, 2),
            &Tolerances::default(),
        )
        .unwrap();
        let phi = if k % 2 == 0 {
            phi
        } else {
            phi.perturbed(&rs, 2, C64::new(0.05, 0.0))
        };
        let rep = verify_phi(&l, spec.epsilon, &spec.c, &phi).unwrap();
        assert!(
            (rep.modified_cdybe - 2.0 * rep.cdybe).abs() < 1e-10,
            "{rep:?}"
        );
    }
}

#[test]
fn pole_propagates_from_eval() {
    let l = alg(Family::A, 2);
    let rs = l.root_system().clone();
    let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.0), &[0, 1]).unwrap();
    // α1 + α2 vanishes
    let r = eval_r(
        &l,
        &spec,
        &EvaluationPoint::real(&[0.5, -0.5]),
        &Tolerances::default(),
    );
    assert!(matches!(r, Err(Error::PoleAt(ref s)) if s == "[1,1]"));
}

#[test]
fn classify_round_trip_identity_twist() {
    let tol = Tolerances::default();
    let eps = C64::new(1.0, 0.0);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::A, 3)] {
        let rs = RootSystem::new(f, n).unwrap();
        for x in subsets(n) {
            // positive values on X so that Re φ_α/ε > 0 on [X]⁺
            let vals: Vec<f64> = (0..n).map(|i| 0.3 + 0.2 * i as f64).collect();
            let spec = RMatrixSpec::new(&rs, eps, &x).unwrap();
            let phi = build_phi(&rs, &spec, &EvaluationPoint::real(&vals), &tol).unwrap();
            let cl = classify_phi(&rs, &phi, eps, &tol).unwrap();
            assert!(cl.twist.is_empty(), "{f}{n} X={x:?}");
            assert_eq!(cl.x, x);
            for &g in &cl.x_roots {
                let hv: C64 = rs
                    .root(g)
                    .iter()
                    .zip(&cl.h_values)
                    .map(|(&a, v)| v * a as f64)
                    .sum();
                assert!(((coth(hv) * eps / 2.0) - phi.value(g)).norm() < 1e-10);
            }
            assert!(cl.reconstruction_error < 1e-10);
        }
    }
}

#[test]
fn classify_constant_phi() {
    let rs = RootSystem::new(Family::B, 2).unwrap();
    let eps = C64::new(0.0, 2.0);
    let phi = build_phi(
        &rs,
        &RMatrixSpec::new(&rs, eps, &[]).unwrap(),
        &EvaluationPoint::real(&[1.0, 1.0]),
        &Tolerances::default(),
    )
    .unwrap();
    let cl = classify_phi(&rs, &phi, eps, &Tolerances::default()).unwrap();
    assert!(cl.x.is_empty());
    assert!(cl.h_values.iter().all(|v| v.is_zero()));
    assert_eq!(cl.positive_system, rs.positive_roots().collect::<Vec<_>>());
}

#[test]
fn classify_recovers_twisted_positive_system() {
    let tol = Tolerances::default();
    let eps = C64::new(1.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
        let rs = RootSystem::new(f, n).unwrap();
        let weyl = WeylGroup::new(&rs).unwrap();
        for x in [vec![], vec![0]] {
            let spec = RMatrixSpec::new(&rs, eps, &x).unwrap();
            let phi = build_phi(&rs, &spec, &EvaluationPoint::real(&[0.7, 0.4]), &tol).unwrap();
            let w = rng.gen_range(0..weyl.order());
            let perm: Vec<usize> = (0..rs.num_roots()).map(|a| weyl.act(w, a)).collect();
            let twisted = phi.pulled_back(&perm);
            let cl = classify_phi(&rs, &twisted, eps, &tol).unwrap();
            let winv = weyl.inverse(w);
            let mut expect: Vec<usize> = rs.positive_roots().map(|a| weyl.act(winv, a)).collect();
            expect.sort_unstable();
            assert_eq!(cl.positive_system, expect, "{f}{n} X={x:?}");
            assert!(cl.reconstruction_error < 1e-10);
        }
    }
}

#[test]
fn classify_rejects_invalid_phi() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let eps = C64::new(1.0, 0.0);
    let v = [0.3, 0.2, 0.5];
    let phi = PhiFunction::constant(
        (0..6)
            .map(|a| C64::new(if a < 3 { v[a] } else { -v[a - 3] }, 0.0))
            .collect(),
    );
    assert!(check_phi_condition(&rs, &phi, eps) > 0.05);
    assert!(matches!(
        classify_phi(&rs, &phi, eps, &Tolerances::default()),
        Err(Error::NotClassifiable(_))
    ));
}

#[test]
fn twist_permutation_maps_positive_system() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let perm = twist_permutation(&rs, &[0]);
    // s1 α1 = −α1, s1 α2 = α1 + α2
    assert_eq!(perm[0], rs.neg(0));
    assert_eq!(perm[1], 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn constructed_phi_satisfies_triple_condition(
        mask in 0usize..8,
        vals in prop::collection::vec(0.05f64..2.0, 3),
        signs in prop::collection::vec(any::<bool>(), 3),
        eps_re in 0.2f64..2.0,
        eps_im in -1.0f64..1.0,
    ) {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        let x: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
        let eps = C64::new(eps_re, eps_im);
        let spec = RMatrixSpec::new(&rs, eps, &x).unwrap();
        let lam: Vec<f64> = vals.iter().zip(&signs).map(|(v, s)| if *s { *v } else { -*v }).collect();
        match build_phi(&rs, &spec, &EvaluationPoint::real(&lam), &Tolerances::default()) {
            Ok(phi) => {
                prop_assert!(check_phi_condition(&rs, &phi, eps) < 1e-9);
                prop_assert!(phi.oddness_defect(&rs) < 1e-14);
            }
            Err(Error::PoleAt(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn unitarity_holds_for_random_data(v1 in -2.0f64..2.0, v2 in -2.0f64..2.0, c in -1.0f64..1.0) {
        prop_assume!(v1.abs() > 1e-3 && v2.abs() > 1e-3 && (v1 + v2).abs() > 1e-3);
        let l = alg(Family::A, 2);
        let rs = l.root_system().clone();
        let cm = vec![vec![C64::zero(), C64::new(c, 0.0)], vec![C64::new(-c, 0.0), C64::zero()]];
        let spec = RMatrixSpec::new(&rs, C64::new(1.0, 0.5), &[0, 1]).unwrap().with_c(cm);
        let rep = verify_dynamical_r(&l, &spec, &EvaluationPoint::real(&[v1, v2]), &Tolerances::default()).unwrap();
        prop_assert!(rep.unitarity < 1e-13 && rep.zero_weight < 1e-13);
    }
}
