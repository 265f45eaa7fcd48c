//! Homogeneous Poisson structures `π_{X,X₁,λ}` on `K/T` at the base point:
//! coefficients, Jacobi obstruction, Lagrangian subalgebras, Karolinsky
//! triples, limits in λ, symplectic leaves and ranks at Weyl points.
//!
//! λ is parametrized as `λ = λ₁ + (iπ/2)ρ̌_{X₁}` with `λ₁ ∈ a_X` given by the
//! real values `γ(λ₁)` for `γ ∈ X`.

mod lagrangian;
mod leaves;

pub use lagrangian::{
    compact_intersection_dim, conjugated_subalgebra, double_lagrangian_from_phi,
    double_lagrangian_from_triple, double_pairing_defect, karolinsky_triple, lagrangian_subalgebra,
    limit_distance, phi_of_rx, verify_lagrangian, KarolinskyTriple, LagrangianReport,
    LagrangianSubalgebra, LimitDistance,
};
pub use leaves::{bivector_at_weyl_point, enumerate_leaves, rank_at_weyl_point, Leaf, LeafAtlas};

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::dynr::PhiFunction;
use crate::error::{Error, Result};
use crate::liealg::{Algebra, CompactForm, Wedge};
use crate::rootsys::RootSystem;
use crate::scalar::{rational_to_f64, C64};
use crate::tol::Tolerances;

/// Data `(X, X₁, λ₁, ε, u)` of `π_{X,X₁,λ}` and the derived coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonHomSpec {
    /// Simple root indices of `X`, sorted.
    pub x: Vec<usize>,
    /// Simple root indices of `X₁ ⊆ X`, sorted.
    pub x1: Vec<usize>,
    /// `γ(λ₁)` for `γ` in `x`, same order.
    pub lambda1: Vec<f64>,
    /// Imaginary coupling constant.
    pub epsilon: C64,
    /// `u ∈ t∧t` as an antisymmetric matrix in the basis `ih_j ∧ ih_k`.
    pub u: Vec<Vec<f64>>,
    lambda1_coords: Vec<f64>,
    root_values: Vec<C64>,
    k: Vec<(usize, f64)>,
}

/// Builds the spec; see [`PoissonHomSpec::new`].
pub fn build_pi_spec(
    rs: &RootSystem,
    x: &[usize],
    x1: &[usize],
    lambda1: &[f64],
    epsilon: C64,
    tol: &Tolerances,
) -> Result<PoissonHomSpec> {
    PoissonHomSpec::new(rs, x, x1, lambda1, epsilon, tol)
}

impl PoissonHomSpec {
    /// `lambda1[j]` is `γ(λ₁)` for `γ = x[j]`; the pairs are reordered with `x`.
    pub fn new(
        rs: &RootSystem,
        x: &[usize],
        x1: &[usize],
        lambda1: &[f64],
        epsilon: C64,
        tol: &Tolerances,
    ) -> Result<Self> {
        rs.check_simple_subset(x)?;
        rs.check_simple_subset(x1)?;
        if x1.iter().any(|g| !x.contains(g)) {
            return Err(Error::BadNesting);
        }
        if lambda1.len() != x.len() {
            return Err(Error::InvalidArgument(format!(
                "lambda needs one value per root of X ({})",
                x.len()
            )));
        }
        if epsilon.norm() == 0.0 || epsilon.re.abs() > 1e-14 * epsilon.norm() {
            return Err(Error::InvalidArgument(
                "coupling constant must be nonzero and imaginary".into(),
            ));
        }
        let mut pairs: Vec<(usize, f64)> = x.iter().copied().zip(lambda1.iter().copied()).collect();
        pairs.sort_by_key(|p| p.0);
        pairs.dedup_by_key(|p| p.0);
        let x: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let lambda1: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let mut x1 = x1.to_vec();
        x1.sort_unstable();
        x1.dedup();

        // λ₁ = Σ c_γ h_γ with Σ_γ' c_γ' ⟪γ, γ'⟫ = γ(λ₁)
        let n = x.len();
        let mut lambda1_coords = vec![0.0; rs.rank()];
        if n > 0 {
            let gram = DMatrix::from_fn(n, n, |i, j| rational_to_f64(&rs.killing_ip(x[i], x[j])));
            let c = gram
                .lu()
                .solve(&DVector::from_vec(lambda1.clone()))
                .ok_or(Error::IrregularLambda)?;
            for (j, &g) in x.iter().enumerate() {
                lambda1_coords[g] = c[j];
            }
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        let root_values: Vec<C64> = (0..rs.num_roots())
            .map(|a| {
                let re: f64 = (0..rs.rank())
                    .map(|i| lambda1_coords[i] * rational_to_f64(&rs.killing_ip(a, i)))
                    .sum();
                C64::new(re, half_pi * rs.coweight_sum_value(&x1, a) as f64)
            })
            .collect();
        let mut k = Vec::new();
        for a in rs.positive_roots().filter(|&a| rs.in_span(&x, a)) {
            let even = rs.coweight_sum_value(&x1, a).rem_euclid(2) == 0;
            let v = root_values[a].re;
            if even && v.abs() < tol.pole {
                return Err(Error::RegularityViolated(rs.root_label(a)));
            }
            // e^{2α(λ)} = ±e^{2α(λ₁)} by the parity of α(ρ̌_{X₁})
            let e2 = if even {
                (2.0 * v).exp()
            } else {
                -(2.0 * v).exp()
            };
            k.push((a, 1.0 / (1.0 - e2)));
        }
        Ok(PoissonHomSpec {
            x,
            x1,
            lambda1,
            epsilon,
            u: vec![vec![0.0; rs.rank()]; rs.rank()],
            lambda1_coords,
            root_values,
            k,
        })
    }

    /// Replaces `u`; it must be antisymmetric.
    pub fn with_u(mut self, u: Vec<Vec<f64>>) -> Result<Self> {
        let r = self.u.len();
        if u.len() != r || u.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument(format!("u must be {r}x{r}")));
        }
        for i in 0..r {
            for j in 0..r {
                if (u[i][j] + u[j][i]).abs() > 1e-14 {
                    return Err(Error::InvalidArgument("u must be antisymmetric".into()));
                }
            }
        }
        self.u = u;
        Ok(self)
    }

    /// `λ₁` in the basis `h_i`.
    pub fn lambda1_coords(&self) -> &[f64] {
        &self.lambda1_coords
    }

    /// `λ = λ₁ + (iπ/2)ρ̌_{X₁}` in the basis `h_i`.
    pub fn lambda_coords(&self, rs: &RootSystem) -> Vec<C64> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        (0..rs.rank())
            .map(|i| {
                let im: f64 = self
                    .x1
                    .iter()
                    .map(|&g| rational_to_f64(&rs.coweight(g)[i]))
                    .sum();
                C64::new(self.lambda1_coords[i], half_pi * im)
            })
            .collect()
    }

    /// `α(λ)` for a root id.
    pub fn root_value(&self, root: usize) -> C64 {
        self.root_values[root]
    }

    /// `(α, k_α)` with `k_α = 1/(1 − e^{2α(λ)})` for `α ∈ [X]∩Σ₊`.
    pub fn coefficients(&self) -> &[(usize, f64)] {
        &self.k
    }

    /// `k_α`, zero outside `[X]`.
    pub fn k(&self, root: usize) -> f64 {
        self.k.iter().find(|p| p.0 == root).map_or(0.0, |p| p.1)
    }

    /// `(α, −(iε/2)k_α)`: the coefficients of `X_α∧Y_α` in `π_e`.
    pub fn pi_coefficients(&self) -> Vec<(usize, C64)> {
        let pre = -C64::i() * self.epsilon / 2.0;
        self.k.iter().map(|&(a, k)| (a, pre * k)).collect()
    }

    /// `e^{2α(λ)}` as a real number, for `α ∈ [X]`.
    pub fn exp2(&self, root: usize) -> f64 {
        (2.0 * self.root_values[root]).exp().re
    }

    /// `cothᵉ α(λ) = (e^{2α(λ)} + 1)/(e^{2α(λ)} − 1)` on `[X]`, `1` elsewhere.
    pub fn coth_e(&self, rs: &RootSystem, root: usize) -> f64 {
        if rs.in_span(&self.x, root) {
            let e = self.exp2(root);
            (e + 1.0) / (e - 1.0)
        } else {
            1.0
        }
    }

    /// `π_e = −(iε/2)Σ k_α X_α∧Y_α` in the root-vector basis.
    pub fn pi_e(&self, alg: &Algebra) -> Wedge<C64> {
        let rs = alg.root_system();
        let mut w = Wedge::zero(2);
        // X_α∧Y_α = 2i E_α∧E_−α
        for (a, c) in self.pi_coefficients() {
            w.add_basis(
                &[alg.e(a) as u16, alg.e(rs.neg(a)) as u16],
                c * C64::new(0.0, 2.0),
            );
        }
        w
    }

    /// The odd function with `π_e = Σ_{α>0}(ε/2 − φ_α)E_α∧E_−α`.
    pub fn phi(&self, rs: &RootSystem) -> PhiFunction {
        let half = self.epsilon / 2.0;
        let mut v = vec![C64::zero(); rs.num_roots()];
        for a in rs.positive_roots() {
            v[a] = half - self.epsilon * self.k(a);
            v[rs.neg(a)] = -v[a];
        }
        PhiFunction::constant(v)
    }

    /// `Λ = u − (iε/4)Σ_{α>0} X_α∧Y_α`.
    pub fn lambda_bivector(&self, alg: &Algebra) -> Wedge<C64> {
        let (l1, l2) = levi_split(alg, self);
        let mut out = l1.add(&l2);
        for i in 0..alg.rank() {
            for j in i + 1..alg.rank() {
                // ih_i ∧ ih_j = −h_i ∧ h_j
                out.add_basis(
                    &[alg.h(i) as u16, alg.h(j) as u16],
                    C64::new(-self.u[i][j], 0.0),
                );
            }
        }
        out
    }
}

/// `X_α∧Y_α` summed with weight `c` over the given positive roots.
fn xy_sum(alg: &Algebra, roots: impl Iterator<Item = usize>, c: C64) -> Wedge<C64> {
    let rs = alg.root_system();
    let mut w = Wedge::zero(2);
    for a in roots {
        w.add_basis(
            &[alg.e(a) as u16, alg.e(rs.neg(a)) as u16],
            c * C64::new(0.0, 2.0),
        );
    }
    w
}

/// `(Λ₁, Λ₂)` with `Λ₁ = −(iε/4)Σ_{[X]∩Σ₊} X_α∧Y_α` and `Λ₂` the sum over `Σ₊ \ [X]`.
pub fn levi_split(alg: &Algebra, spec: &PoissonHomSpec) -> (Wedge<C64>, Wedge<C64>) {
    let rs = alg.root_system();
    let c = -C64::i() * spec.epsilon / 4.0;
    let l1 = xy_sum(
        alg,
        rs.positive_roots().filter(|&a| rs.in_span(&spec.x, a)),
        c,
    );
    let l2 = xy_sum(
        alg,
        rs.positive_roots().filter(|&a| !rs.in_span(&spec.x, a)),
        c,
    );
    (l1, l2)
}

/// `max ‖ad_x Λ₂‖` over the real basis `ih_j, X_α, Y_α (α ∈ [X])` of `k_X`.
pub fn levi_invariance_defect(alg: &Algebra, spec: &PoissonHomSpec) -> Result<f64> {
    let rs = alg.root_system();
    let cf = CompactForm::new(alg)?;
    let (_, l2) = levi_split(alg, spec);
    let mut basis: Vec<Vec<C64>> = (0..rs.rank()).map(|j| cf.t(j)).collect();
    for a in rs.positive_roots().filter(|&a| rs.in_span(&spec.x, a)) {
        basis.push(cf.x(a));
        basis.push(cf.y(a));
    }
    Ok(basis
        .iter()
        .map(|x| alg.ad_wedge(x, &l2).norm())
        .fold(0.0, f64::max))
}

/// `max_j ‖ad_{h_j} π_e‖`.
pub fn zero_weight_defect(alg: &Algebra, spec: &PoissonHomSpec) -> f64 {
    let pi = spec.pi_e(alg);
    (0..alg.rank())
        .map(|j| alg.ad_wedge(&alg.basis_vector(alg.h(j)), &pi).norm())
        .fold(0.0, f64::max)
}

/// Norm of the part of `[A,A] − (ε²/2)[Ω¹²,Ω²³]` transverse to `h∧g∧g`,
/// with `A = Σ_{α>0} φ_α E_α∧E_−α`.
pub fn jacobi_obstruction(alg: &Algebra, phi: &PhiFunction, epsilon: C64) -> Result<f64> {
    let rs = alg.root_system();
    let mut a = Wedge::zero(2);
    for al in rs.positive_roots() {
        a.add_basis(&[alg.e(al) as u16, alg.e(rs.neg(al)) as u16], phi.value(al));
    }
    let b = alg
        .schouten(&a, &a)?
        .to_tensor()
        .sub(&alg.omega12_23().scale(&(epsilon * epsilon / 2.0)));
    Ok(b.terms()
        .filter(|(k, _)| k.iter().all(|&i| !alg.is_cartan(i as usize)))
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max))
}
