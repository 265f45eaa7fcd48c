//! Classical dynamical r-matrices
//! `r(λ) = (ε/2)Ω + Σ C_ij h_i⊗h_j + Σ_α φ_α(λ) E_α⊗E_−α`,
//! their λ-derivatives and the dynamical Yang-Baxter equation.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Algebra, Tensor, Wedge};
use crate::rootsys::{RootSystem, WeylGroup};
use crate::scalar::{Scalar, C64};
use crate::tol::Tolerances;

/// Data `(ε, wΣ₊, X, μ, C)` of a dynamical r-matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrixSpec {
    /// Coupling constant, nonzero.
    pub epsilon: C64,
    /// Word `i1..ik` of `w = s_i1 .. s_ik`; the positive system is `wΣ₊`.
    pub twist: Vec<usize>,
    /// Indices `i` of the simple roots `wα_i` of `wΣ₊` forming `X`.
    pub x: Vec<usize>,
    /// Shift μ as its values `⟪α_i, μ⟫` on the reference simple roots.
    pub mu: Vec<C64>,
    /// Constant antisymmetric matrix in the basis `h_i`.
    pub c: Vec<Vec<C64>>,
}

impl RMatrixSpec {
    /// Spec with identity twist, `μ = 0` and `C = 0`.
    pub fn new(rs: &RootSystem, epsilon: C64, x: &[usize]) -> Result<Self> {
        let r = rs.rank();
        let spec = RMatrixSpec {
            epsilon,
            twist: Vec::new(),
            x: x.to_vec(),
            mu: vec![C64::zero(); r],
            c: vec![vec![C64::zero(); r]; r],
        };
        spec.validate(rs)?;
        Ok(spec)
    }

    pub fn with_twist(mut self, word: &[usize]) -> Self {
        self.twist = word.to_vec();
        self
    }

    pub fn with_mu(mut self, mu: &[C64]) -> Self {
        self.mu = mu.to_vec();
        self
    }

    pub fn with_c(mut self, c: Vec<Vec<C64>>) -> Self {
        self.c = c;
        self
    }

    /// Checks `X ⊆ S(wΣ₊)`, the twist word, `C = −Cᵀ` and the shapes.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let r = rs.rank();
        if self.epsilon.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "coupling constant must be nonzero".into(),
            ));
        }
        rs.check_simple_subset(&self.x)?;
        if let Some(&i) = self.twist.iter().find(|&&i| i >= r) {
            return Err(Error::BadSubset(format!("reflection index {}", i + 1)));
        }
        if self.mu.len() != r {
            return Err(Error::InvalidArgument(format!("mu needs {r} values")));
        }
        if self.c.len() != r || self.c.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument(format!("C must be {r}x{r}")));
        }
        for i in 0..r {
            for j in 0..r {
                if (self.c[i][j] + self.c[j][i]).norm() > 1e-14 {
                    return Err(Error::InvalidArgument("C must be antisymmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// Permutation of root ids induced by the twist `w`.
    pub fn twist_permutation(&self, rs: &RootSystem) -> Vec<usize> {
        twist_permutation(rs, &self.twist)
    }

    /// Membership in `wΣ₊` per root id.
    pub fn positive_system(&self, rs: &RootSystem) -> Vec<bool> {
        let perm = self.twist_permutation(rs);
        let mut out = vec![false; rs.num_roots()];
        for a in rs.positive_roots() {
            out[perm[a]] = true;
        }
        out
    }

    /// Membership in `[X]` of the twisted system per root id.
    pub fn dynamic_roots(&self, rs: &RootSystem) -> Vec<bool> {
        let perm = self.twist_permutation(rs);
        let mut out = vec![false; rs.num_roots()];
        for b in 0..rs.num_roots() {
            if rs.in_span(&self.x, b) {
                out[perm[b]] = true;
            }
        }
        out
    }

    /// Root ids of the twisted simple roots in `X`.
    pub fn x_roots(&self, rs: &RootSystem) -> Vec<usize> {
        let perm = self.twist_permutation(rs);
        self.x.iter().map(|&i| perm[i]).collect()
    }
}

/// Root permutation of `w = s_i1 .. s_ik`.
pub fn twist_permutation(rs: &RootSystem, word: &[usize]) -> Vec<usize> {
    (0..rs.num_roots())
        .map(|b| word.iter().rev().fold(b, |acc, &i| rs.reflect(i, acc)))
        .collect()
}

/// A point λ of `h*` given by `⟪α_i, λ⟫` on the simple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationPoint {
    pub values: Vec<C64>,
}

impl EvaluationPoint {
    pub fn new(values: Vec<C64>) -> Self {
        EvaluationPoint { values }
    }

    pub fn real(values: &[f64]) -> Self {
        EvaluationPoint {
            values: values.iter().map(|&v| C64::new(v, 0.0)).collect(),
        }
    }

    /// `⟪α, λ⟫` by linearity.
    pub fn pairing(&self, rs: &RootSystem, root: usize) -> C64 {
        rs.root(root)
            .iter()
            .zip(&self.values)
            .map(|(&a, v)| v * a as f64)
            .sum()
    }

    /// `⟪α, λ − μ⟫` for every root id.
    pub fn shifted_values(&self, rs: &RootSystem, mu: &[C64]) -> Vec<C64> {
        let diff = EvaluationPoint::new(self.values.iter().zip(mu).map(|(a, b)| a - b).collect());
        (0..rs.num_roots()).map(|a| diff.pairing(rs, a)).collect()
    }

    /// The point moved by `t` along simple value `i`.
    pub fn moved(&self, i: usize, t: f64) -> Self {
        let mut v = self.values.clone();
        v[i] += t;
        EvaluationPoint { values: v }
    }
}

/// `coth z`, evaluated through `e^{−2|Re z|}` when `|Re z| > 20`.
pub fn coth(z: C64) -> C64 {
    if z.re > 20.0 {
        let q = (-2.0 * z).exp();
        (C64::one() + q) / (C64::one() - q)
    } else if z.re < -20.0 {
        -coth(-z)
    } else {
        z.cosh() / z.sinh()
    }
}

/// An odd function `φ: Σ → ℂ` with its derivatives `dφ_α/du` where `u = ⟪α, λ − μ⟫`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFunction {
    values: Vec<C64>,
    derivs: Vec<C64>,
}

impl PhiFunction {
    /// A λ-independent function with the given values; must be odd.
    pub fn constant(values: Vec<C64>) -> Self {
        let n = values.len();
        PhiFunction {
            values,
            derivs: vec![C64::zero(); n],
        }
    }

    pub fn value(&self, root: usize) -> C64 {
        self.values[root]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `dφ_α/du`.
    pub fn derivative(&self, root: usize) -> C64 {
        self.derivs[root]
    }

    /// Adds `delta` to `φ_α` and `−delta` to `φ_{−α}`, keeping derivatives.
    pub fn perturbed(&self, rs: &RootSystem, root: usize, delta: C64) -> Self {
        let mut p = self.clone();
        p.values[root] += delta;
        p.values[rs.neg(root)] -= delta;
        p
    }

    /// `max |φ_α + φ_{−α}|`.
    pub fn oddness_defect(&self, rs: &RootSystem) -> f64 {
        (0..rs.num_roots())
            .map(|a| (self.values[a] + self.values[rs.neg(a)]).norm())
            .fold(0.0, f64::max)
    }

    /// `φ'_α = φ_{wα}` for a root permutation `w`.
    pub fn pulled_back(&self, perm: &[usize]) -> Self {
        PhiFunction {
            values: perm.iter().map(|&b| self.values[b]).collect(),
            derivs: perm.iter().map(|&b| self.derivs[b]).collect(),
        }
    }
}

/// `φ_α = (ε/2)coth((ε/2)⟪α, λ−μ⟫)` on `[X]`, `±ε/2` by positivity elsewhere.
pub fn build_phi(
    rs: &RootSystem,
    spec: &RMatrixSpec,
    lambda: &EvaluationPoint,
    tol: &Tolerances,
) -> Result<PhiFunction> {
    spec.validate(rs)?;
    if lambda.values.len() != rs.rank() {
        return Err(Error::InvalidArgument(format!(
            "lambda needs {} values",
            rs.rank()
        )));
    }
    let half = spec.epsilon / 2.0;
    let positive = spec.positive_system(rs);
    let dynamic = spec.dynamic_roots(rs);
    let u = lambda.shifted_values(rs, &spec.mu);
    let period = C64::new(0.0, 2.0 * std::f64::consts::PI) / spec.epsilon;
    let mut values = vec![C64::zero(); rs.num_roots()];
    let mut derivs = vec![C64::zero(); rs.num_roots()];
    for a in 0..rs.num_roots() {
        if dynamic[a] {
            // poles at u ∈ (2πi/ε)ℤ
            let k = (u[a] / period).re.round();
            if (u[a] - period * k).norm() < tol.pole {
                return Err(Error::PoleAt(rs.root_label(a)));
            }
            let c = coth(half * u[a]);
            values[a] = half * c;
            derivs[a] = half * half * (C64::one() - c * c);
        } else {
            values[a] = if positive[a] { half } else { -half };
        }
    }
    Ok(PhiFunction { values, derivs })
}

/// `max |φ_αφ_β + φ_βφ_γ + φ_γφ_α + ε²/4|` over triples `α + β + γ = 0`.
pub fn check_phi_condition(rs: &RootSystem, phi: &PhiFunction, epsilon: C64) -> f64 {
    let e2 = epsilon * epsilon / 4.0;
    let mut worst = 0.0f64;
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            if let Some(s) = rs.add(a, b) {
                let g = rs.neg(s);
                let (pa, pb, pg) = (phi.value(a), phi.value(b), phi.value(g));
                worst = worst.max((pa * pb + pb * pg + pg * pa + e2).norm());
            }
        }
    }
    worst
}

/// The r-matrix and its skew part `A = r − (ε/2)Ω`.
#[derive(Debug, Clone)]
pub struct RMatrix {
    pub r: Tensor<C64>,
    pub a: Wedge<C64>,
}

/// `r` from `φ`, ε and `C`.
pub fn r_from_phi(alg: &Algebra, epsilon: C64, c: &[Vec<C64>], phi: &PhiFunction) -> RMatrix {
    let rs = alg.root_system();
    let mut a = Wedge::zero(2);
    for i in 0..rs.rank() {
        for j in i + 1..rs.rank() {
            a.add_basis(&[alg.h(i) as u16, alg.h(j) as u16], c[i][j]);
        }
    }
    for al in rs.positive_roots() {
        a.add_basis(&[alg.e(al) as u16, alg.e(rs.neg(al)) as u16], phi.value(al));
    }
    // non-odd φ keeps its tensor form in r
    let mut r = alg.omega().scale(&(epsilon / 2.0));
    for i in 0..rs.rank() {
        for j in 0..rs.rank() {
            r.add_term(vec![alg.h(i) as u16, alg.h(j) as u16], c[i][j]);
        }
    }
    for al in 0..rs.num_roots() {
        r.add_term(
            vec![alg.e(al) as u16, alg.e(rs.neg(al)) as u16],
            phi.value(al),
        );
    }
    RMatrix { r, a }
}

/// `r(λ)` of a spec.
pub fn eval_r(
    alg: &Algebra,
    spec: &RMatrixSpec,
    lambda: &EvaluationPoint,
    tol: &Tolerances,
) -> Result<RMatrix> {
    let phi = build_phi(alg.root_system(), spec, lambda, tol)?;
    Ok(r_from_phi(alg, spec.epsilon, &spec.c, &phi))
}

/// `dr = Σ_α (dφ_α/du) h_α ⊗ E_α ⊗ E_−α ∈ h⊗g⊗g`.
pub fn dr_from_phi(alg: &Algebra, phi: &PhiFunction) -> Tensor<C64> {
    let rs = alg.root_system();
    let mut out = Tensor::zero(3);
    for al in 0..rs.num_roots() {
        let d = phi.derivative(al);
        if d.is_zero() {
            continue;
        }
        for (i, &c) in rs.root(al).iter().enumerate() {
            if c != 0 {
                out.add_term(
                    vec![alg.h(i) as u16, alg.e(al) as u16, alg.e(rs.neg(al)) as u16],
                    d * c as f64,
                );
            }
        }
    }
    out
}

/// `dr` by central differences: `Σ_i h_i ⊗ ∂r/∂v_i` with `v_i = ⟪α_i, λ⟫`.
pub fn dr_finite_difference(
    alg: &Algebra,
    spec: &RMatrixSpec,
    lambda: &EvaluationPoint,
    step: f64,
    tol: &Tolerances,
) -> Result<Tensor<C64>> {
    let mut out = Tensor::zero(3);
    for i in 0..alg.rank() {
        let plus = eval_r(alg, spec, &lambda.moved(i, step), tol)?.r;
        let minus = eval_r(alg, spec, &lambda.moved(i, -step), tol)?.r;
        let d = plus.sub(&minus).scale(&C64::new(0.5 / step, 0.0));
        for (k, c) in d.terms() {
            let mut key = vec![alg.h(i) as u16];
            key.extend_from_slice(k);
            out.add_term(key, *c);
        }
    }
    Ok(out)
}

/// Residual norms (largest coefficient magnitude) of the defining identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdybeReport {
    /// `max_i |[h_i⊗1 + 1⊗h_i, r]|`.
    pub zero_weight: f64,
    /// `|r + r²¹ − εΩ|`.
    pub unitarity: f64,
    /// `|Alt(dr) + CYB(r)|`.
    pub cdybe: f64,
    /// `|[A,A] − (ε²/2)[Ω¹²,Ω²³] + 2Alt(dA)|`.
    pub modified_cdybe: f64,
}

impl CdybeReport {
    pub fn max(&self) -> f64 {
        self.zero_weight
            .max(self.unitarity)
            .max(self.cdybe)
            .max(self.modified_cdybe)
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.max() <= threshold
    }
}

/// All four residuals for given `φ` data.
pub fn verify_phi(
    alg: &Algebra,
    epsilon: C64,
    c: &[Vec<C64>],
    phi: &PhiFunction,
) -> Result<CdybeReport> {
    let RMatrix { r, a } = r_from_phi(alg, epsilon, c, phi);
    let dr = dr_from_phi(alg, phi);
    let alt = Algebra::alt(&dr);
    let zero_weight = (0..alg.rank())
        .map(|i| alg.ad_tensor(alg.h(i), &r).norm())
        .fold(0.0, f64::max);
    let unitarity = r.add(&r.flip()).sub(&alg.omega().scale(&epsilon)).norm();
    let cdybe = alt.add(&alg.cyb(&r)).norm();
    let modified = alg
        .schouten(&a, &a)?
        .to_tensor()
        .sub(&alg.omega12_23().scale(&(epsilon * epsilon / 2.0)))
        .add(&alt.scale(&C64::new(2.0, 0.0)))
        .norm();
    Ok(CdybeReport {
        zero_weight,
        unitarity,
        cdybe,
        modified_cdybe: modified,
    })
}

/// Verifies zero weight, unitarity and both forms of the dynamical Yang-Baxter equation.
pub fn verify_dynamical_r(
    alg: &Algebra,
    spec: &RMatrixSpec,
    lambda: &EvaluationPoint,
    tol: &Tolerances,
) -> Result<CdybeReport> {
    let phi = build_phi(alg.root_system(), spec, lambda, tol)?;
    verify_phi(alg, spec.epsilon, &spec.c, &phi)
}

/// A positive system `wΣ₊`, a subset `X'` of its simple roots and `h ∈ h_X'`
/// reproducing a given `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// Reduced word of `w`.
    pub twist: Vec<usize>,
    /// Root ids of `wΣ₊`, sorted.
    pub positive_system: Vec<usize>,
    /// Indices `i` with `wα_i ∈ X'`.
    pub x: Vec<usize>,
    /// Root ids of `X'`.
    pub x_roots: Vec<usize>,
    /// `α_i(h)` on the reference simple roots.
    pub h_values: Vec<C64>,
    /// `max_α |φ_α − φ^rec_α|` of the reconstruction.
    pub reconstruction_error: f64,
}

impl Classification {
    /// Spec and evaluation point that rebuild `φ` through [`build_phi`].
    pub fn as_spec(&self, rs: &RootSystem, epsilon: C64) -> Result<(RMatrixSpec, EvaluationPoint)> {
        let spec = RMatrixSpec::new(rs, epsilon, &self.x)?.with_twist(&self.twist);
        // (ε/2)⟪γ, λ⟫ = γ(h)
        let lambda =
            EvaluationPoint::new(self.h_values.iter().map(|v| v * 2.0 / epsilon).collect());
        Ok((spec, lambda))
    }
}

/// Finds `(wΣ₊, X', h)` with `φ_γ = (ε/2)coth γ(h)` on `[X']` and `±ε/2` elsewhere.
///
/// Candidates `w` with `Y = {φ_α = ε/2} ⊆ wΣ₊` are tried in order of the
/// number of roots of `wΣ₊ ∩ [X']` with `Re(φ_α/ε) > 0` (descending), then length.
pub fn classify_phi(
    rs: &RootSystem,
    phi: &PhiFunction,
    epsilon: C64,
    tol: &Tolerances,
) -> Result<Classification> {
    let residual = check_phi_condition(rs, phi, epsilon);
    if residual > tol.residual || phi.oddness_defect(rs) > tol.residual {
        return Err(Error::NotClassifiable(residual));
    }
    let half = epsilon / 2.0;
    let y: Vec<usize> = (0..rs.num_roots())
        .filter(|&a| (phi.value(a) - half).norm() <= 1e-9 * (1.0 + half.norm()))
        .collect();
    let weyl = WeylGroup::new(rs)?;
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for w in 0..weyl.order() {
        let inv = weyl.inverse(w);
        if !y.iter().all(|&a| rs.is_positive(weyl.act(inv, a))) {
            continue;
        }
        let score = rs
            .positive_roots()
            .map(|a| weyl.act(w, a))
            .filter(|b| !y.contains(b) && (phi.value(*b) / epsilon).re > 0.0)
            .count();
        candidates.push((usize::MAX - score, weyl.length(w), w));
    }
    candidates.sort_unstable();
    let mut best_err = f64::INFINITY;
    for &(_, _, w) in &candidates {
        let word = weyl.reduced_word(w).to_vec();
        let perm = twist_permutation(rs, &word);
        let x: Vec<usize> = (0..rs.rank()).filter(|&i| !y.contains(&perm[i])).collect();
        let x_roots: Vec<usize> = x.iter().map(|&i| perm[i]).collect();
        let Some(h_values) = solve_h(rs, phi, epsilon, &x_roots) else {
            continue;
        };
        let mut positive_system: Vec<usize> = rs.positive_roots().map(|a| perm[a]).collect();
        positive_system.sort_unstable();
        let mut cl = Classification {
            twist: word,
            positive_system,
            x,
            x_roots,
            h_values,
            reconstruction_error: 0.0,
        };
        let (spec, lambda) = cl.as_spec(rs, epsilon)?;
        let Ok(rec) = build_phi(rs, &spec, &lambda, tol) else {
            continue;
        };
        let err = (0..rs.num_roots())
            .map(|a| (rec.value(a) - phi.value(a)).norm())
            .fold(0.0, f64::max);
        if err <= tol.residual {
            cl.reconstruction_error = err;
            return Ok(cl);
        }
        best_err = best_err.min(err);
    }
    Err(Error::NotClassifiable(best_err))
}

/// `h ∈ span{h_γ : γ ∈ X'}` with `γ(h) = atanh(ε/(2φ_γ))`, as simple-root values.
fn solve_h(
    rs: &RootSystem,
    phi: &PhiFunction,
    epsilon: C64,
    x_roots: &[usize],
) -> Option<Vec<C64>> {
    let k = x_roots.len();
    if k == 0 {
        return Some(vec![C64::zero(); rs.rank()]);
    }
    let target = DVector::from_iterator(
        k,
        x_roots.iter().map(|&g| {
            let t = epsilon / (phi.value(g) * 2.0);
            ((C64::one() + t) / (C64::one() - t)).ln() / 2.0
        }),
    );
    if target.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let gram = DMatrix::from_fn(k, k, |i, j| {
        C64::from_rational(rs.killing_ip(x_roots[i], x_roots[j]))
    });
    let coef = gram.lu().solve(&target)?;
    let simple = rs.simple_roots();
    Some(
        simple
            .iter()
            .map(|&s| {
                x_roots
                    .iter()
                    .zip(coef.iter())
                    .map(|(&g, c)| c * C64::from_rational(rs.killing_ip(s, g)))
                    .sum()
            })
            .collect(),
    )
}
