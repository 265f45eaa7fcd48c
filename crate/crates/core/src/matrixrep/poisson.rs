//! Group-level Poisson bivectors: `π_K = Λ^R − Λ^L` on `SU(n)`, the quotient
//! structures `π_{X,X₁,λ}` lifted to `SU(n)`, the dressing pairing on `AN`,
//! and brackets of functions computed from analytic directional derivatives.

use super::{check_special_unitary, k_projection, polar_projection, Mat, MatrixModel};
use crate::error::{Error, Result};
use crate::homog::PoissonHomSpec;
use crate::scalar::C64;

/// A function on matrices with a directional derivative.
pub trait Observable {
    fn value(&self, m: &Mat) -> C64;
    /// Derivative at `m` along the tangent matrix `w`, real-linear in `w`.
    fn deriv(&self, m: &Mat, w: &Mat) -> C64;
}

/// The entry `m_ij` or its conjugate.
#[derive(Debug, Clone, Copy)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub conj: bool,
}

impl MatrixEntry {
    pub fn new(row: usize, col: usize) -> Self {
        MatrixEntry {
            row,
            col,
            conj: false,
        }
    }

    pub fn conj(row: usize, col: usize) -> Self {
        MatrixEntry {
            row,
            col,
            conj: true,
        }
    }
}

impl Observable for MatrixEntry {
    fn value(&self, m: &Mat) -> C64 {
        let v = m[(self.row, self.col)];
        if self.conj {
            v.conj()
        } else {
            v
        }
    }

    fn deriv(&self, _m: &Mat, w: &Mat) -> C64 {
        self.value(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

impl Part {
    fn take(self, c: C64) -> C64 {
        match self {
            Part::Re => C64::new(c.re, 0.0),
            Part::Im => C64::new(c.im, 0.0),
        }
    }
}

/// Real or imaginary part of an entry of `m·D·m†`; right `T`-invariant when
/// `D` is diagonal.
#[derive(Debug, Clone)]
pub struct AdjointEntry {
    pub d: Mat,
    pub row: usize,
    pub col: usize,
    pub part: Part,
}

impl Observable for AdjointEntry {
    fn value(&self, m: &Mat) -> C64 {
        let p = m * &self.d * m.adjoint();
        self.part.take(p[(self.row, self.col)])
    }

    fn deriv(&self, m: &Mat, w: &Mat) -> C64 {
        let dp = w * &self.d * m.adjoint() + m * &self.d * w.adjoint();
        self.part.take(dp[(self.row, self.col)])
    }
}

/// The linear function `m ↦ c·⟪m, x⟫` with the trace form `2n·tr`.
#[derive(Debug, Clone)]
pub struct KillingCoordinate {
    pub x: Mat,
    pub scale: C64,
}

impl Observable for KillingCoordinate {
    fn value(&self, m: &Mat) -> C64 {
        (m * &self.x).trace() * (2 * m.nrows()) as f64 * self.scale
    }

    fn deriv(&self, _m: &Mat, w: &Mat) -> C64 {
        self.value(w)
    }
}

/// A function on `SU(n)` differentiated by central differences along the
/// polar-projected curve `m ± h·w`.
pub struct NumericObservable<F: Fn(&Mat) -> C64> {
    pub f: F,
    pub step: f64,
}

impl<F: Fn(&Mat) -> C64> Observable for NumericObservable<F> {
    fn value(&self, m: &Mat) -> C64 {
        (self.f)(m)
    }

    fn deriv(&self, m: &Mat, w: &Mat) -> C64 {
        let h = self.step;
        let plus = polar_projection(&(m + w * C64::new(h, 0.0)));
        let minus = polar_projection(&(m - w * C64::new(h, 0.0)));
        ((self.f)(&plus) - (self.f)(&minus)) / (2.0 * h)
    }
}

/// `Σ c·(a∧b)` with `a, b ∈ su(n)` and `a∧b = a⊗b − b⊗a`.
#[derive(Debug, Clone, Default)]
pub struct MatrixBivector(pub Vec<(C64, Mat, Mat)>);

impl MatrixBivector {
    /// Right translation to `k`: tangents `a·k`.
    pub fn right(&self, k: &Mat) -> GroupBivector {
        GroupBivector {
            terms: self.0.iter().map(|(c, a, b)| (*c, a * k, b * k)).collect(),
        }
    }

    /// Left translation to `k`: tangents `k·a`.
    pub fn left(&self, k: &Mat) -> GroupBivector {
        GroupBivector {
            terms: self.0.iter().map(|(c, a, b)| (*c, k * a, k * b)).collect(),
        }
    }

    /// `R_kΛ − L_kΛ`.
    pub fn poisson_lie(&self, k: &Mat) -> GroupBivector {
        self.right(k)
            .plus(&self.left(k).scaled(C64::new(-1.0, 0.0)))
    }
}

/// A bivector at one group point, stored as tangent matrices at that point.
#[derive(Debug, Clone, Default)]
pub struct GroupBivector {
    pub terms: Vec<(C64, Mat, Mat)>,
}

impl GroupBivector {
    pub fn plus(mut self, other: &GroupBivector) -> GroupBivector {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn scaled(mut self, c: C64) -> GroupBivector {
        self.terms.iter_mut().for_each(|t| t.0 *= c);
        self
    }

    /// Pushes every tangent `v` to `v·g` (right multiplication by `g`).
    pub fn times_right(&self, g: &Mat) -> GroupBivector {
        GroupBivector {
            terms: self
                .terms
                .iter()
                .map(|(c, a, b)| (*c, a * g, b * g))
                .collect(),
        }
    }

    /// Pushes every tangent `v` to `g·v`.
    pub fn times_left(&self, g: &Mat) -> GroupBivector {
        GroupBivector {
            terms: self
                .terms
                .iter()
                .map(|(c, a, b)| (*c, g * a, g * b))
                .collect(),
        }
    }

    /// `{f, g} = Σ c·(df(a)dg(b) − df(b)dg(a))` at the point `m`.
    pub fn bracket(&self, m: &Mat, f: &dyn Observable, g: &dyn Observable) -> C64 {
        self.terms
            .iter()
            .map(|(c, a, b)| *c * (f.deriv(m, a) * g.deriv(m, b) - f.deriv(m, b) * g.deriv(m, a)))
            .sum()
    }
}

/// `Λ = u − (iε/4)Σ_{α>0} X_α∧Y_α`.
pub fn lambda_terms(model: &MatrixModel, spec: &PoissonHomSpec) -> MatrixBivector {
    let rs = model.algebra().root_system();
    let pre = -C64::i() * spec.epsilon / 4.0;
    let mut terms: Vec<(C64, Mat, Mat)> = rs
        .positive_roots()
        .map(|a| (pre, model.x(a), model.y(a)))
        .collect();
    terms.extend(cartan_terms(model, spec));
    MatrixBivector(terms)
}

/// `u − (iε/4)Σ_{α ∈ [X]∩Σ₊} X_α∧Y_α`, the part of `Λ` tangent to `K_X`.
pub fn levi_lambda_terms(model: &MatrixModel, spec: &PoissonHomSpec) -> MatrixBivector {
    let rs = model.algebra().root_system();
    let pre = -C64::i() * spec.epsilon / 4.0;
    let mut terms: Vec<(C64, Mat, Mat)> = rs
        .positive_roots()
        .filter(|&a| rs.in_span(&spec.x, a))
        .map(|a| (pre, model.x(a), model.y(a)))
        .collect();
    terms.extend(cartan_terms(model, spec));
    MatrixBivector(terms)
}

fn cartan_terms(model: &MatrixModel, spec: &PoissonHomSpec) -> Vec<(C64, Mat, Mat)> {
    let r = spec.u.len();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if spec.u[i][j] != 0.0 {
                out.push((C64::new(spec.u[i][j], 0.0), model.t(i), model.t(j)));
            }
        }
    }
    out
}

/// `π_e = −(iε/2)Σ k_α X_α∧Y_α`.
pub fn pi_e_terms(model: &MatrixModel, spec: &PoissonHomSpec) -> MatrixBivector {
    MatrixBivector(
        spec.pi_coefficients()
            .into_iter()
            .map(|(a, c)| (c, model.x(a), model.y(a)))
            .collect(),
    )
}

/// `π_K(k) = Λ^R(k) − Λ^L(k)`.
pub fn k_bivector(model: &MatrixModel, spec: &PoissonHomSpec, k: &Mat) -> Result<GroupBivector> {
    check_special_unitary(k)?;
    Ok(lambda_terms(model, spec).poisson_lie(k))
}

/// Lift of `π_{X,X₁,λ}(kT)`: `π_K(k) + L_k π_e`. Brackets of right
/// `T`-invariant functions computed with it are brackets on `K/T`.
pub fn quotient_bivector(
    model: &MatrixModel,
    spec: &PoissonHomSpec,
    k: &Mat,
) -> Result<GroupBivector> {
    Ok(k_bivector(model, spec, k)?.plus(&pi_e_terms(model, spec).left(k)))
}

/// Lift of the structure `π^X_{∅,λ}` on `K_X/T` at `k ∈ K_X`.
pub fn levi_bivector(model: &MatrixModel, spec: &PoissonHomSpec, k: &Mat) -> Result<GroupBivector> {
    check_special_unitary(k)?;
    Ok(levi_lambda_terms(model, spec)
        .poisson_lie(k)
        .plus(&pi_e_terms(model, spec).left(k)))
}

/// Largest deviation of `m₁ : (K, π_K) × (K_X/T, π^X) → (K/T, π_{X,X₁,λ})`,
/// `(k, k'T) ↦ kk'T` from being a Poisson map, over all pairs of `functions`.
pub fn m1_poisson_defect(
    model: &MatrixModel,
    spec: &PoissonHomSpec,
    k: &Mat,
    kx: &Mat,
    functions: &[&dyn Observable],
) -> Result<f64> {
    let prod = k * kx;
    let target = quotient_bivector(model, spec, &prod)?;
    let source = k_bivector(model, spec, k)?
        .times_right(kx)
        .plus(&levi_bivector(model, spec, kx)?.times_left(k));
    let mut worst = 0.0f64;
    for (i, f) in functions.iter().enumerate() {
        for g in &functions[i + 1..] {
            let d = target.bracket(&prod, *f, *g) - source.bracket(&prod, *f, *g);
            worst = worst.max(d.norm());
        }
    }
    Ok(worst)
}

/// Dressing pairing `π_AN(x^l, y^l)(a) = (2i/ε)·Im⟪Ad_a x, p_k Ad_a y⟫` at a
/// positive diagonal `a` of determinant one.
pub fn an_pairing(model: &MatrixModel, epsilon: C64, a: &Mat, x: &Mat, y: &Mat) -> Result<C64> {
    let n = a.nrows();
    let mut dev = (a.determinant() - C64::new(1.0, 0.0)).norm();
    for i in 0..n {
        for j in 0..n {
            let v = a[(i, j)];
            if i == j {
                if v.re <= 0.0 {
                    return Err(Error::OffManifold(v.norm()));
                }
                dev = dev.max(v.im.abs());
            } else {
                dev = dev.max(v.norm());
            }
        }
    }
    if dev > super::MANIFOLD_TOL {
        return Err(Error::OffManifold(dev));
    }
    let ainv = Mat::from_fn(n, n, |i, j| {
        if i == j {
            1.0 / a[(i, i)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let ax = a * x * &ainv;
    let ay = a * y * &ainv;
    let im = model.killing(&ax, &k_projection(&ay)).im;
    Ok(C64::new(0.0, 2.0) / epsilon * im)
}

/// Coefficients of `X_α∧Y_α` in `π_{X,X₁,λ}(e)`, read off the lifted
/// bivector at the identity with the coordinates `−⟪·, X_α⟫/2`, `−⟪·, Y_α⟫/2`.
pub fn pi_e_table(model: &MatrixModel, spec: &PoissonHomSpec) -> Result<Vec<(usize, C64)>> {
    let e = Mat::identity(model.size(), model.size());
    let pi = quotient_bivector(model, spec, &e)?;
    let rs = model.algebra().root_system();
    Ok(rs
        .positive_roots()
        .map(|a| {
            let fx = KillingCoordinate {
                x: model.x(a),
                scale: C64::new(-0.5, 0.0),
            };
            let fy = KillingCoordinate {
                x: model.y(a),
                scale: C64::new(-0.5, 0.0),
            };
            (a, pi.bracket(&e, &fx, &fy))
        })
        .collect())
}

/// Brackets of the `SU(2)` coordinates `k = [[u, v], [−v̄, ū]]` under `π_K`
/// with `Λ = −(iε/4)X_α∧Y_α`.
#[derive(Debug, Clone, Copy)]
pub struct Su2Brackets {
    pub u_ubar: C64,
    pub u_v: C64,
    pub u_vbar: C64,
    pub v_vbar: C64,
}

pub fn su2_brackets(model: &MatrixModel, epsilon: C64, k: &Mat) -> Result<Su2Brackets> {
    if model.size() != 2 {
        return Err(Error::UnsupportedType(
            model.algebra().root_system().designator(),
        ));
    }
    check_special_unitary(k)?;
    let lam = MatrixBivector(vec![(-C64::i() * epsilon / 4.0, model.x(0), model.y(0))]);
    let pi = lam.poisson_lie(k);
    let (u, ub) = (MatrixEntry::new(0, 0), MatrixEntry::conj(0, 0));
    let (v, vb) = (MatrixEntry::new(0, 1), MatrixEntry::conj(0, 1));
    Ok(Su2Brackets {
        u_ubar: pi.bracket(k, &u, &ub),
        u_v: pi.bracket(k, &u, &v),
        u_vbar: pi.bracket(k, &u, &vb),
        v_vbar: pi.bracket(k, &v, &vb),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{Algebra, Normalization};
    use crate::rootsys::{Family, RootSystem};
    use crate::tol::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn su2_bracket_table() {
        let l = Algebra::new(
            &RootSystem::new(Family::A, 1).unwrap(),
            Normalization::Unitary,
        )
        .unwrap();
        let m = MatrixModel::new(&l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let eps = C64::new(0.0, 1.3);
        for _ in 0..10 {
            let k = m.random_su(&mut rng);
            let (u, v) = (k[(0, 0)], k[(0, 1)]);
            let b = su2_brackets(&m, eps, &k).unwrap();
            assert!((b.u_ubar + eps / 4.0 * v.norm_sqr()).norm() < 1e-13);
            assert!((b.u_v - eps / 8.0 * u * v).norm() < 1e-13);
            assert!((b.u_vbar - eps / 8.0 * u * v.conj()).norm() < 1e-13);
            assert!(b.v_vbar.norm() < 1e-13);
        }
    }

    #[test]
    fn an_pairing_of_root_pair() {
        let l = Algebra::new(
            &RootSystem::new(Family::A, 2).unwrap(),
            Normalization::Unitary,
        )
        .unwrap();
        let m = MatrixModel::new(&l).unwrap();
        let eps = C64::new(0.0, 0.9);
        let spec = PoissonHomSpec::new(
            l.root_system(),
            &[0, 1],
            &[],
            &[0.4, -0.7],
            eps,
            &Tolerances::default(),
        )
        .unwrap();
        let lam = m.cartan(&spec.lambda_coords(l.root_system()));
        let a = (-lam).exp();
        for (root, c) in spec.pi_coefficients() {
            let p = an_pairing(&m, eps, &a, &m.x(root), &m.y(root)).unwrap();
            assert!((1.0 / p - c).norm() < 1e-12);
        }
    }
}
