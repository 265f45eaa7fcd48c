//! Lagrangian subalgebras `l_{X,X₁,λ}` of `g` viewed as a real Lie algebra,
//! their limits in λ, and the Karolinsky triple of `π_{r_X(λ)}`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::PoissonHomSpec;
use crate::dynr::{build_phi, EvaluationPoint, PhiFunction, RMatrixSpec};
use crate::error::{Error, Result};
use crate::liealg::{Algebra, CompactForm};
use crate::linalg::{cnorm, RealSubspace, RANK_TOL};
use crate::scalar::C64;
use crate::tol::Tolerances;

/// A real subalgebra of `g` given by a real basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianSubalgebra {
    pub x: Vec<usize>,
    pub x1: Vec<usize>,
    pub basis: Vec<Vec<C64>>,
}

impl LagrangianSubalgebra {
    pub fn subspace(&self) -> RealSubspace {
        RealSubspace::from_complex(&self.basis, RANK_TOL)
    }
}

/// `t + span_R{E_β, iE_β : β ∈ Σ₊\[X]}
///  + span_R{X_α/(e^{2α(λ)}−1) + E_α, Y_α/(e^{2α(λ)}−1) + iE_α : α ∈ [X]∩Σ₊}`.
pub fn lagrangian_subalgebra(alg: &Algebra, spec: &PoissonHomSpec) -> Result<LagrangianSubalgebra> {
    let rs = alg.root_system();
    let cf = CompactForm::new(alg)?;
    let i = C64::i();
    let mut basis: Vec<Vec<C64>> = (0..rs.rank()).map(|j| cf.t(j)).collect();
    for a in rs.positive_roots() {
        let mut e = alg.zero_vector();
        e[alg.e(a)] = C64::one();
        let ie: Vec<C64> = e.iter().map(|c| c * i).collect();
        if rs.in_span(&spec.x, a) {
            let c = 1.0 / (spec.exp2(a) - 1.0);
            basis.push(cf.x(a).iter().zip(&e).map(|(x, e)| x * c + e).collect());
            basis.push(cf.y(a).iter().zip(&ie).map(|(y, e)| y * c + e).collect());
        } else {
            basis.push(e);
            basis.push(ie);
        }
    }
    Ok(LagrangianSubalgebra {
        x: spec.x.clone(),
        x1: spec.x1.clone(),
        basis,
    })
}

/// `Ad_{e^λ}(m_X^τ + n_X)` with `τ = Ad_{exp(πiρ̌_{X₁})}∘θ`, built from the
/// fixed points of τ on `m_X = h + span{E_α : α ∈ [X]}`.
pub fn conjugated_subalgebra(alg: &Algebra, spec: &PoissonHomSpec) -> Result<LagrangianSubalgebra> {
    let rs = alg.root_system();
    let cf = CompactForm::new(alg)?;
    let i = C64::i();
    let mut m_basis: Vec<Vec<C64>> = Vec::new();
    let mut push_both = |idx: usize| {
        let mut v = alg.zero_vector();
        v[idx] = C64::one();
        let iv: Vec<C64> = v.iter().map(|c| c * i).collect();
        m_basis.push(v);
        m_basis.push(iv);
    };
    for j in 0..rs.rank() {
        push_both(alg.h(j));
    }
    for a in (0..rs.num_roots()).filter(|&a| rs.in_span(&spec.x, a)) {
        push_both(alg.e(a));
    }
    let fixed: Vec<Vec<C64>> = m_basis
        .iter()
        .map(|v| {
            v.iter()
                .zip(cf.tau(&spec.x1, v))
                .map(|(a, b)| a + b)
                .collect()
        })
        .collect();
    let fixed = RealSubspace::from_complex(&fixed, RANK_TOL).complex_basis();
    let mut basis: Vec<Vec<C64>> = fixed
        .into_iter()
        .map(|mut v| {
            for a in 0..rs.num_roots() {
                v[alg.e(a)] *= spec.root_value(a).exp();
            }
            v
        })
        .collect();
    for a in rs.positive_roots().filter(|&a| !rs.in_span(&spec.x, a)) {
        let mut e = alg.zero_vector();
        e[alg.e(a)] = C64::one();
        basis.push(e.iter().map(|c| c * i).collect());
        basis.push(e);
    }
    Ok(LagrangianSubalgebra {
        x: spec.x.clone(),
        x1: spec.x1.clone(),
        basis,
    })
}

/// Dimension, isotropy and closure residuals of a candidate Lagrangian subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LagrangianReport {
    /// Real dimension of the span.
    pub dim: usize,
    /// `dim_R k = dim_C g`.
    pub expected_dim: usize,
    /// `max |Im⟪x, y⟫|` over normalized basis pairs.
    pub isotropy: f64,
    /// `max` distance of `[x, y]` from the span over normalized basis pairs.
    pub closure: f64,
}

impl LagrangianReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.dim == self.expected_dim && self.isotropy <= tol && self.closure <= tol
    }
}

pub fn verify_lagrangian(alg: &Algebra, l: &LagrangianSubalgebra) -> LagrangianReport {
    let sub = l.subspace();
    let basis: Vec<Vec<C64>> = l
        .basis
        .iter()
        .filter(|v| cnorm(v) > 0.0)
        .map(|v| {
            let n = cnorm(v);
            v.iter().map(|c| c / n).collect()
        })
        .collect();
    let mut isotropy = 0.0f64;
    let mut closure = 0.0f64;
    for (p, x) in basis.iter().enumerate() {
        for y in &basis[p..] {
            isotropy = isotropy.max(alg.killing(x, y).im.abs());
            closure = closure.max(sub.residual_complex(&alg.bracket(x, y)));
        }
    }
    LagrangianReport {
        dim: sub.dim(),
        expected_dim: alg.dim(),
        isotropy,
        closure,
    }
}

/// Real dimension of `l ∩ k`.
pub fn compact_intersection_dim(alg: &Algebra, l: &LagrangianSubalgebra) -> Result<usize> {
    let k = RealSubspace::from_complex(&CompactForm::new(alg)?.real_basis(), RANK_TOL);
    Ok(l.subspace().intersection_dim(&k, 1e-8))
}

/// Distances between `π_{Y,X₁,λ+tρ̌_{Y\X}}` and `π_{X,X₁,λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitDistance {
    pub t: f64,
    /// `max_α` of the `X_α∧Y_α` coefficient differences of `π_e`.
    pub bivector_dist: f64,
    /// Projector distance of the Lagrangian subalgebras.
    pub subspace_dist: f64,
    /// Plücker-line distance, computed for `sl2` only.
    pub plucker_dist: Option<f64>,
}

/// Compares the `Y`-structure at `λ + tρ̌_{Y\X}` with the target `X`-structure.
pub fn limit_distance(
    alg: &Algebra,
    target: &PoissonHomSpec,
    y: &[usize],
    t: f64,
    tol: &Tolerances,
) -> Result<LimitDistance> {
    let rs = alg.root_system();
    rs.check_simple_subset(y)?;
    if target.x.iter().any(|g| !y.contains(g)) {
        return Err(Error::BadNesting);
    }
    let values: Vec<f64> = y
        .iter()
        .map(|&g| target.root_value(g).re + if target.x.contains(&g) { 0.0 } else { t })
        .collect();
    let moved = PoissonHomSpec::new(rs, y, &target.x1, &values, target.epsilon, tol)?;
    let coeff = |s: &PoissonHomSpec, a: usize| -C64::i() * s.epsilon / 2.0 * s.k(a);
    let bivector_dist = rs
        .positive_roots()
        .map(|a| (coeff(&moved, a) - coeff(target, a)).norm())
        .fold(0.0, f64::max);
    let lt = lagrangian_subalgebra(alg, target)?.subspace();
    let lm = lagrangian_subalgebra(alg, &moved)?.subspace();
    let plucker_dist = (alg.dim() == 3).then(|| lm.plucker_distance(&lt));
    Ok(LimitDistance {
        t,
        bivector_dist,
        subspace_dist: lm.distance(&lt),
        plucker_dist,
    })
}

/// Parabolics `p'_X ⊇ m_X ⊆ p_X` as basis index lists and
/// `η = Ad_{exp(ε h_λ)}` on `m_X` as eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct KarolinskyTriple {
    pub x: Vec<usize>,
    /// `h + span{E_α : α ∈ [X] ∪ −Y}`.
    pub p_prime: Vec<usize>,
    /// `h + span{E_α : α ∈ [X] ∪ Y}` with `Y = Σ₊ \ [X]`.
    pub p: Vec<usize>,
    /// `m_X = p ∩ p'`.
    pub m: Vec<usize>,
    /// `(basis index, eigenvalue)` of `η` on `m_X`.
    pub eta: Vec<(usize, C64)>,
    /// Complex dimension of the fixed space of `η` in `m_X`.
    pub fixed_dim: usize,
}

/// The triple for `r_X(λ)` with λ given by its simple-root values.
pub fn karolinsky_triple(
    alg: &Algebra,
    x: &[usize],
    lambda: &EvaluationPoint,
    epsilon: C64,
    tol: &Tolerances,
) -> Result<KarolinskyTriple> {
    let rs = alg.root_system();
    rs.check_simple_subset(x)?;
    let mut p = Vec::new();
    let mut p_prime = Vec::new();
    let mut m = Vec::new();
    let mut eta = Vec::new();
    for j in 0..rs.rank() {
        for v in [&mut p, &mut p_prime, &mut m] {
            v.push(alg.h(j));
        }
        eta.push((alg.h(j), C64::one()));
    }
    for a in 0..rs.num_roots() {
        let idx = alg.e(a);
        if rs.in_span(x, a) {
            for v in [&mut p, &mut p_prime, &mut m] {
                v.push(idx);
            }
            eta.push((idx, (epsilon * lambda.pairing(rs, a)).exp()));
        } else if rs.is_positive(a) {
            p.push(idx);
        } else {
            p_prime.push(idx);
        }
    }
    let fixed_dim = eta
        .iter()
        .filter(|(_, e)| (e - C64::one()).norm() <= tol.strict)
        .count();
    Ok(KarolinskyTriple {
        x: x.to_vec(),
        p_prime,
        p,
        m,
        eta,
        fixed_dim,
    })
}

fn pair_vector(alg: &Algebra, first: &[(usize, C64)], second: &[(usize, C64)]) -> Vec<C64> {
    let d = alg.dim();
    let mut v = vec![C64::zero(); 2 * d];
    for &(i, c) in first {
        v[i] += c;
    }
    for &(i, c) in second {
        v[d + i] += c;
    }
    v
}

/// `h + span{ξ_α}` in `g ⊕ g` with `ξ_α = ((φ_α − ε/2)E_α, (φ_α + ε/2)E_α)`.
pub fn double_lagrangian_from_phi(alg: &Algebra, phi: &PhiFunction, epsilon: C64) -> Vec<Vec<C64>> {
    let rs = alg.root_system();
    let half = epsilon / 2.0;
    let mut out: Vec<Vec<C64>> = (0..rs.rank())
        .map(|j| pair_vector(alg, &[(alg.h(j), C64::one())], &[(alg.h(j), C64::one())]))
        .collect();
    for a in 0..rs.num_roots() {
        let idx = alg.e(a);
        out.push(pair_vector(
            alg,
            &[(idx, phi.value(a) - half)],
            &[(idx, phi.value(a) + half)],
        ));
    }
    out
}

/// `{(x', x) ∈ p' × p : η(x'_m) = x_m}`.
pub fn double_lagrangian_from_triple(alg: &Algebra, triple: &KarolinskyTriple) -> Vec<Vec<C64>> {
    let mut out = Vec::new();
    for &(idx, e) in &triple.eta {
        out.push(pair_vector(alg, &[(idx, C64::one())], &[(idx, e)]));
    }
    for &idx in triple.p.iter().filter(|i| !triple.m.contains(i)) {
        out.push(pair_vector(alg, &[], &[(idx, C64::one())]));
    }
    for &idx in triple.p_prime.iter().filter(|i| !triple.m.contains(i)) {
        out.push(pair_vector(alg, &[(idx, C64::one())], &[]));
    }
    out
}

/// `max |⟨u, v⟩|` for `⟨(x₁,x₂),(y₁,y₂)⟩ = (⟪x₂,y₂⟫ − ⟪x₁,y₁⟫)/ε` over normalized pairs.
pub fn double_pairing_defect(alg: &Algebra, vecs: &[Vec<C64>], epsilon: C64) -> f64 {
    let d = alg.dim();
    let norm: Vec<Vec<C64>> = vecs
        .iter()
        .map(|v| {
            let n = cnorm(v);
            v.iter().map(|c| c / n).collect()
        })
        .collect();
    let mut worst = 0.0f64;
    for (p, u) in norm.iter().enumerate() {
        for v in &norm[p..] {
            let s = (alg.killing(&u[d..], &v[d..]) - alg.killing(&u[..d], &v[..d])) / epsilon;
            worst = worst.max(s.norm());
        }
    }
    worst
}

/// `φ` of `r_X(λ)` on the reference positive system.
pub fn phi_of_rx(
    alg: &Algebra,
    x: &[usize],
    lambda: &EvaluationPoint,
    epsilon: C64,
    tol: &Tolerances,
) -> Result<PhiFunction> {
    let rs = alg.root_system();
    build_phi(rs, &RMatrixSpec::new(rs, epsilon, x)?, lambda, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Normalization;
    use crate::rootsys::{Family, RootSystem};

    fn alg(f: Family, n: usize) -> Algebra {
        Algebra::new(&RootSystem::new(f, n).unwrap(), Normalization::Unitary).unwrap()
    }

    #[test]
    fn a1_odd_parity_basis_passes() {
        let l = alg(Family::A, 1);
        let s = PoissonHomSpec::new(
            l.root_system(),
            &[0],
            &[0],
            &[0.6],
            C64::i(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(s.exp2(0) < 0.0);
        let lag = lagrangian_subalgebra(&l, &s).unwrap();
        assert!(verify_lagrangian(&l, &lag).passes(1e-10));
        let conj = conjugated_subalgebra(&l, &s).unwrap();
        assert!(lag.subspace().distance(&conj.subspace()) < 1e-10);
    }

    #[test]
    fn karolinsky_a2_single_root() {
        let l = alg(Family::A, 2);
        let lam = EvaluationPoint::real(&[0.4, -0.9]);
        let t =
            karolinsky_triple(&l, &[0], &lam, C64::new(1.0, 0.0), &Tolerances::default()).unwrap();
        assert_eq!(t.m.len(), 4);
        assert_eq!(t.p.len(), 6);
        assert_eq!(t.p_prime.len(), 6);
        assert_eq!(t.fixed_dim, 2);
    }
}
