use dynpoisson::dynr::{build_phi, check_phi_condition, EvaluationPoint, RMatrixSpec};
use dynpoisson::homog::*;
use dynpoisson::linalg::{RealSubspace, RANK_TOL};
use dynpoisson::{
    Algebra, CompactForm, Error, Family, Normalization, RootSystem, Tolerances, WeylGroup, C64,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(X, X₁, λ₁, Y)` of a limit check.
type LimitConfig<'a> = (&'a [usize], &'a [usize], &'a [f64], &'a [usize]);

fn alg(f: Family, n: usize) -> Algebra {
    Algebra::new(&RootSystem::new(f, n).unwrap(), Normalization::Unitary).unwrap()
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn rank_le_3() -> Vec<(Family, usize)> {
    vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::G, 2),
        (Family::A, 3),
        (Family::B, 3),
        (Family::C, 3),
    ]
}

/// Values `γ(λ₁)` bounded away from zero.
fn random_lambda(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(0.2..1.2) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect()
}

#[test]
fn sl2_case_coefficients() {
    let rs = RootSystem::new(Family::A, 1).unwrap();
    let eps = C64::new(0.0, 1.5);
    for l1 in [-0.7, 0.2, 0.9] {
        // λ₁ = diag(l1, −l1): α(λ₁) = 2·l1
        let case2 = build_pi_spec(&rs, &[0], &[], &[2.0 * l1], eps, &tol()).unwrap();
        assert!((case2.k(0) - 1.0 / (1.0 - (4.0 * l1).exp())).abs() < 1e-14);
        let want = -C64::i() * eps / 2.0 / (1.0 - (4.0f64 * l1).exp());
        assert!((case2.pi_coefficients()[0].1 - want).norm() < 1e-14);
        let case3 = build_pi_spec(&rs, &[0], &[0], &[2.0 * l1], eps, &tol()).unwrap();
        assert!((case3.k(0) - 1.0 / (1.0 + (4.0 * l1).exp())).abs() < 1e-14);
    }
    let case3 = build_pi_spec(&rs, &[0], &[0], &[0.0], eps, &tol()).unwrap();
    assert!((case3.k(0) - 0.5).abs() < 1e-15);
}

#[test]
fn su3_denominators() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let grid = [-1.0, -0.4, 0.1, 0.6, 1.3];
    for &l1 in &grid {
        for &l2 in &grid {
            // diagonal entries (l1, l2, −l1−l2): α₁(λ₁) = l1 − l2, α₂(λ₁) = l1 + 2 l2
            let (v1, v2) = (l1 - l2, l1 + 2.0 * l2);
            let Ok(s) = build_pi_spec(&rs, &[0, 1], &[0], &[v1, v2], C64::i(), &tol()) else {
                assert!(v2.abs() < 1e-12);
                continue;
            };
            let a3 = rs.id_of(&[1, 1]).unwrap();
            let want = [
                1.0 / (1.0 + (2.0 * (l1 - l2)).exp()),
                1.0 / (1.0 - (2.0 * l1 + 4.0 * l2).exp()),
                1.0 / (1.0 + (4.0 * l1 + 2.0 * l2).exp()),
            ];
            for (root, w) in [0, 1, a3].into_iter().zip(want) {
                assert!(
                    (s.k(root) - w).abs() <= 1e-12 * (1.0 + w.abs()),
                    "{l1} {l2} root {root}"
                );
            }
        }
    }
}

#[test]
fn coefficients_are_real_and_zero_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (f, n) = rank_le_3()[rng.gen_range(0..7)];
        let l = alg(f, n);
        let rs = l.root_system();
        let x: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        let x1: Vec<usize> = x.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let s = build_pi_spec(
            rs,
            &x,
            &x1,
            &random_lambda(&mut rng, x.len()),
            C64::new(0.0, 0.7),
            &tol(),
        )
        .unwrap();
        for &(a, _) in s.coefficients() {
            let e = (2.0 * s.root_value(a)).exp();
            assert!(e.im.abs() <= 1e-12 * e.norm());
        }
        for (_, c) in s.pi_coefficients() {
            assert!(c.im.abs() < 1e-15);
        }
        assert!(zero_weight_defect(&l, &s) < 1e-13);
        // π_e lies in ∧²k
        let cf = CompactForm::new(&l).unwrap();
        assert!(cf.reality_defect(&s.pi_e(&l)) < 1e-12);
        assert!(levi_invariance_defect(&l, &s).unwrap() < 1e-12);
    }
}

#[test]
fn regularity_and_nesting_errors() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    // α₁ + α₂ even with α₁(λ₁) = −α₂(λ₁)
    let r = build_pi_spec(&rs, &[0, 1], &[], &[0.5, -0.5], C64::i(), &tol());
    assert!(matches!(r, Err(Error::RegularityViolated(_))));
    // same values but X₁ = {α₁} makes α₁+α₂ odd
    assert!(build_pi_spec(&rs, &[0, 1], &[0], &[0.5, -0.5], C64::i(), &tol()).is_ok());
    assert!(matches!(
        build_pi_spec(&rs, &[], &[0], &[], C64::i(), &tol()),
        Err(Error::BadNesting)
    ));
}

#[test]
fn jacobi_obstruction_matches_phi_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
        let l = alg(f, n);
        let rs = l.root_system();
        let weyl = WeylGroup::new(rs).unwrap();
        for trial in 0..30 {
            let eps = C64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
            let x: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let w = rng.gen_range(0..weyl.order());
            let spec = RMatrixSpec::new(rs, eps, &x)
                .unwrap()
                .with_twist(weyl.reduced_word(w));
            let lam = EvaluationPoint::new(
                (0..n)
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3)))
                    .collect(),
            );
            let mut phi = build_phi(rs, &spec, &lam, &tol()).unwrap();
            if trial % 2 == 1 {
                phi = phi.perturbed(
                    rs,
                    rng.gen_range(0..rs.num_positive()),
                    C64::new(rng.gen_range(0.05..0.5), 0.0),
                );
            }
            let cond = check_phi_condition(rs, &phi, eps);
            let jac = jacobi_obstruction(&l, &phi, eps).unwrap();
            assert_eq!(
                cond <= 1e-10,
                jac <= 1e-10,
                "{f}{n} trial {trial}: {cond} vs {jac}"
            );
            // some perturbations stay valid, e.g. on a constant φ where the partner values cancel
            if cond > 1e-4 {
                assert!(jac > 1e-4, "{f}{n} trial {trial}: {cond} vs {jac}");
            }
        }
    }
}

#[test]
fn constant_phi_has_zero_obstruction() {
    let l = alg(Family::B, 2);
    let rs = l.root_system();
    let eps = C64::new(0.0, 2.0);
    let spec = RMatrixSpec::new(rs, eps, &[]).unwrap();
    let phi = build_phi(rs, &spec, &EvaluationPoint::real(&[0.0, 0.0]), &tol()).unwrap();
    assert!(jacobi_obstruction(&l, &phi, eps).unwrap() < 1e-14);
}

#[test]
fn lagrangian_suite_all_parities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (f, n) in rank_le_3() {
        let l = alg(f, n);
        let rs = l.root_system();
        for x in subsets(n) {
            for x1 in subsets(x.len())
                .into_iter()
                .map(|s| s.iter().map(|&i| x[i]).collect::<Vec<_>>())
            {
                let s = build_pi_spec(
                    rs,
                    &x,
                    &x1,
                    &random_lambda(&mut rng, x.len()),
                    C64::i(),
                    &tol(),
                )
                .unwrap();
                let lag = lagrangian_subalgebra(&l, &s).unwrap();
                let rep = verify_lagrangian(&l, &lag);
                assert!(rep.passes(1e-10), "{f}{n} X={x:?} X1={x1:?}: {rep:?}");
                assert_eq!(compact_intersection_dim(&l, &lag).unwrap(), n);
                let conj = conjugated_subalgebra(&l, &s).unwrap();
                let d = lag.subspace().distance(&conj.subspace());
                assert!(d <= 1e-10, "{f}{n} X={x:?} X1={x1:?}: {d}");
            }
        }
    }
}

#[test]
fn bruhat_and_symplectic_extremes() {
    let l = alg(Family::A, 2);
    let rs = l.root_system();
    // X = ∅: l = t + n
    let s = build_pi_spec(rs, &[], &[], &[], C64::i(), &tol()).unwrap();
    let cf = CompactForm::new(&l).unwrap();
    let mut tn: Vec<Vec<C64>> = (0..2).map(|j| cf.t(j)).collect();
    for a in rs.positive_roots() {
        let e = l.basis_vector(l.e(a));
        tn.push(e.iter().map(|c| c * C64::i()).collect());
        tn.push(e);
    }
    let tn = RealSubspace::from_complex(&tn, RANK_TOL);
    assert_eq!(tn.dim(), 8);
    assert!(
        lagrangian_subalgebra(&l, &s)
            .unwrap()
            .subspace()
            .distance(&tn)
            < 1e-12
    );
    // X = S, X₁ = ∅: l = Ad_{e^λ} k
    let s = build_pi_spec(rs, &[0, 1], &[], &[0.4, -0.3], C64::i(), &tol()).unwrap();
    let lam = s.lambda_coords(rs);
    let adk: Vec<Vec<C64>> = cf
        .real_basis()
        .into_iter()
        .map(|mut v| {
            for a in 0..rs.num_roots() {
                // α(λ) = Σ_i λ_i ⟪α, α_i⟫
                let val: C64 = (0..2)
                    .map(|i| lam[i] * dynpoisson::scalar::rational_to_f64(&rs.killing_ip(a, i)))
                    .sum();
                v[l.e(a)] *= val.exp();
            }
            v
        })
        .collect();
    let adk = RealSubspace::from_complex(&adk, RANK_TOL);
    assert!(
        lagrangian_subalgebra(&l, &s)
            .unwrap()
            .subspace()
            .distance(&adk)
            < 1e-10
    );
    assert!(
        verify_lagrangian(
            &l,
            &LagrangianSubalgebra {
                x: vec![0, 1],
                x1: vec![],
                basis: adk.complex_basis()
            }
        )
        .isotropy
            < 1e-12
    );
}

#[test]
fn isotropy_negative_control() {
    let l = alg(Family::A, 1);
    let rs = l.root_system();
    let s = build_pi_spec(rs, &[], &[], &[], C64::i(), &tol()).unwrap();
    let mut lag = lagrangian_subalgebra(&l, &s).unwrap();
    let rep = verify_lagrangian(&l, &lag);
    assert_eq!(rep.dim, 3);
    assert!(rep.isotropy == 0.0 && rep.closure < 1e-15);
    // replace E by E + F
    let mut ef = l.zero_vector();
    ef[l.e(0)] = C64::new(1.0, 0.0);
    ef[l.e(1)] = C64::new(1.0, 0.0);
    lag.basis[1] = ef;
    assert!(verify_lagrangian(&l, &lag).isotropy > 0.1);
}

#[test]
fn karolinsky_triples() {
    let eps = C64::new(0.8, 0.3);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::A, 3)] {
        let l = alg(f, n);
        let rs = l.root_system();
        for x in subsets(n) {
            let lam = EvaluationPoint::new(
                (0..n)
                    .map(|i| C64::new(0.3 + 0.25 * i as f64, -0.1))
                    .collect(),
            );
            let t = karolinsky_triple(&l, &x, &lam, eps, &tol()).unwrap();
            let span = rs.root_span_subset(&x).unwrap().len();
            assert_eq!(t.m.len(), n + span);
            assert_eq!(t.p.len(), n + span + (rs.num_positive() - span / 2));
            assert_eq!(t.fixed_dim, n);
            let phi = phi_of_rx(&l, &x, &lam, eps, &tol()).unwrap();
            let from_phi = double_lagrangian_from_phi(&l, &phi, eps);
            let from_triple = double_lagrangian_from_triple(&l, &t);
            let a = RealSubspace::complex_span(&from_phi, RANK_TOL);
            let b = RealSubspace::complex_span(&from_triple, RANK_TOL);
            assert_eq!(a.dim(), 2 * l.dim());
            assert!(a.distance(&b) < 1e-10, "{f}{n} {x:?}");
            assert!(double_pairing_defect(&l, &from_triple, eps) < 1e-12);
        }
        let full: Vec<usize> = (0..n).collect();
        let t = karolinsky_triple(
            &l,
            &full,
            &EvaluationPoint::real(&vec![0.5; n]),
            eps,
            &tol(),
        )
        .unwrap();
        assert_eq!(t.p.len(), l.dim());
        assert_eq!(t.p_prime.len(), l.dim());
        let t0 =
            karolinsky_triple(&l, &[], &EvaluationPoint::real(&vec![0.5; n]), eps, &tol()).unwrap();
        assert_eq!(t0.m.len(), n);
    }
}

#[test]
fn sl2_limit_to_bruhat() {
    let l = alg(Family::A, 1);
    let target = build_pi_spec(l.root_system(), &[], &[], &[], C64::i(), &tol()).unwrap();
    let d = limit_distance(&l, &target, &[0], 20.0, &tol()).unwrap();
    assert!(d.bivector_dist < 1e-6 && d.subspace_dist < 1e-6, "{d:?}");
    // two equal principal angles: Plücker distance = √2 · projector distance
    for t in [0.3, 1.0, 5.0, 20.0] {
        let d = limit_distance(&l, &target, &[0], t, &tol()).unwrap();
        let p = d.plucker_dist.unwrap();
        assert!(
            (p / 2f64.sqrt() - d.subspace_dist).abs() < 1e-8,
            "{t}: {d:?}"
        );
    }
}

#[test]
fn a2_limits_decrease() {
    let l = alg(Family::A, 2);
    let rs = l.root_system();
    let configs: [LimitConfig; 3] = [
        (&[0], &[], &[0.5], &[0, 1]),
        (&[0], &[0], &[0.5], &[0, 1]),
        (&[], &[], &[], &[1]),
    ];
    for (x, x1, lam, y) in configs {
        let target = build_pi_spec(rs, x, x1, lam, C64::i(), &tol()).unwrap();
        let ds: Vec<LimitDistance> = [1.0, 5.0, 10.0, 20.0]
            .iter()
            .map(|&t| limit_distance(&l, &target, y, t, &tol()).unwrap())
            .collect();
        for w in ds.windows(2) {
            assert!(w[1].bivector_dist < w[0].bivector_dist);
            assert!(w[1].subspace_dist < w[0].subspace_dist);
        }
        assert!(ds[3].bivector_dist < 1e-6 && ds[3].subspace_dist < 1e-6);
    }
    let target = build_pi_spec(rs, &[0], &[], &[0.5], C64::i(), &tol()).unwrap();
    assert!(
        limit_distance(&l, &target, &[0, 1], 0.0, &tol())
            .unwrap()
            .subspace_dist
            > 0.1
    );
    assert!(matches!(
        limit_distance(&l, &target, &[1], 1.0, &tol()),
        Err(Error::BadNesting)
    ));
}

#[test]
fn a2_leaf_atlases() {
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let w = WeylGroup::new(&rs).unwrap();
    for (x, count, dims) in [
        (vec![], 6, vec![0, 2, 2, 4, 4, 6]),
        (vec![0], 3, vec![2, 4, 6]),
        (vec![1], 3, vec![2, 4, 6]),
        (vec![0, 1], 1, vec![6]),
    ] {
        let atlas = enumerate_leaves(&rs, &w, &x, &[]).unwrap();
        assert_eq!(atlas.leaves.len(), count);
        let mut got: Vec<usize> = atlas.leaves.iter().map(|l| l.dimension).collect();
        got.sort_unstable();
        assert_eq!(got, dims);
        assert!(atlas.cells_partition(w.order()));
        let open: Vec<&Leaf> = atlas.leaves.iter().filter(|l| l.open_dense).collect();
        assert_eq!(open.len(), 1);
        assert_eq!(open[0].dimension, atlas.manifold_dimension);
        assert!(open[0].cells.contains(&w.longest()));
    }
}

#[test]
fn leaf_cell_dimensions_sum() {
    for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::G, 2)] {
        let rs = RootSystem::new(f, n).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        let total: usize = (0..w.order()).map(|v| 2 * w.length(v)).sum();
        for x in subsets(n) {
            let atlas = enumerate_leaves(&rs, &w, &x, &[]).unwrap();
            let s: usize = atlas
                .leaves
                .iter()
                .flat_map(|l| l.cells.iter())
                .map(|&c| 2 * w.length(c))
                .sum();
            assert_eq!(s, total);
            // every cell of a leaf is at most as large as the leaf
            for leaf in &atlas.leaves {
                assert!(leaf
                    .cells
                    .iter()
                    .all(|&c| 2 * w.length(c) <= leaf.dimension));
            }
        }
    }
}

#[test]
fn ranks_at_weyl_points() {
    for n in [1, 2] {
        let rs = RootSystem::new(Family::A, n).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        let full: Vec<usize> = (0..n).collect();
        for x1 in subsets(n) {
            let lam: Vec<f64> = (0..n).map(|i| 0.35 + 0.4 * i as f64).collect();
            let s = build_pi_spec(&rs, &full, &x1, &lam, C64::i(), &tol()).unwrap();
            for v in 0..w.order() {
                assert_eq!(
                    rank_at_weyl_point(&rs, &w, &s, v, 1e-12),
                    2 * rs.num_positive()
                );
            }
        }
    }
    let rs = RootSystem::new(Family::A, 1).unwrap();
    let w = WeylGroup::new(&rs).unwrap();
    let s = build_pi_spec(&rs, &[0], &[0], &[0.0], C64::i(), &tol()).unwrap();
    assert!((0..2).all(|v| rank_at_weyl_point(&rs, &w, &s, v, 1e-12) == 2));
    let rs = RootSystem::new(Family::A, 2).unwrap();
    let w = WeylGroup::new(&rs).unwrap();
    let bruhat = build_pi_spec(&rs, &[], &[], &[], C64::i(), &tol()).unwrap();
    assert_eq!(rank_at_weyl_point(&rs, &w, &bruhat, w.identity(), 1e-12), 0);
    // on the Bruhat structure the rank at ẇ is 2·l(w)
    for v in 0..w.order() {
        assert_eq!(
            rank_at_weyl_point(&rs, &w, &bruhat, v, 1e-12),
            2 * w.length(v)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_specs_give_lagrangians(v1 in 0.1f64..2.0, v2 in -2.0f64..-0.1, odd1: bool, odd2: bool) {
        let l = alg(Family::B, 2);
        let rs = l.root_system();
        let x1: Vec<usize> = [(0, odd1), (1, odd2)].iter().filter(|p| p.1).map(|p| p.0).collect();
        let Ok(s) = build_pi_spec(rs, &[0, 1], &x1, &[v1, v2], C64::i(), &tol()) else { return Ok(()) };
        let lag = lagrangian_subalgebra(&l, &s).unwrap();
        prop_assert!(verify_lagrangian(&l, &lag).passes(1e-9));
        prop_assert!(jacobi_obstruction(&l, &s.phi(rs), s.epsilon).unwrap() < 1e-10);
    }
}
