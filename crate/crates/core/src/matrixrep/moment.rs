//! Moment maps for the left `T`-action on `K/T`: the Bruhat-cell map `φ_w`,
//! the dressing map `Φ_λ`, the limit relating them, and a finite-difference
//! check of the Hamiltonian property.

use serde::Serialize;

use super::poisson::{quotient_bivector, AdjointEntry, NumericObservable, Observable, Part};
use super::{check_special_unitary, iwasawa, Mat, MatrixModel};
use crate::error::{Error, Result};
use crate::homog::PoissonHomSpec;
use crate::rootsys::WeylGroup;
use crate::scalar::C64;
use crate::tol::Tolerances;

/// Sign `s` in `π(dH_x, df) = s·σ_x(f)`, where `σ_x` is the generator of
/// `t ↦ exp(t·x)·kT`. Both the dressing and the Bruhat moment maps satisfy it
/// with `s = −1`.
pub const HAMILTONIAN_SIGN: f64 = -1.0;

fn real_factor(epsilon: C64) -> Result<f64> {
    if epsilon.norm() == 0.0 || epsilon.re.abs() > 1e-14 * epsilon.norm() {
        return Err(Error::InvalidArgument(
            "coupling constant must be nonzero and imaginary".into(),
        ));
    }
    // 2i/ε is real for imaginary ε
    Ok((C64::new(0.0, 2.0) / epsilon).re)
}

/// `⟨φ_w(j_w(n)), x⟩ = (2i/ε)·Im⟪Ad_ẇ log P_A(nẇ), x⟫` for `n ∈ N_w`.
pub fn bruhat_moment(
    model: &MatrixModel,
    weyl: &WeylGroup,
    w: usize,
    n: &Mat,
    x: &Mat,
    epsilon: C64,
) -> Result<f64> {
    let c = real_factor(epsilon)?;
    let size = model.size();
    let roots = model.cell_roots(weyl, w);
    for i in 0..size {
        for j in 0..size {
            let v = n[(i, j)];
            let allowed = if i == j {
                (v - C64::new(1.0, 0.0)).norm() < 1e-12
            } else {
                v.norm() == 0.0 || roots.iter().any(|&a| model.position(a) == (i, j))
            };
            if !allowed {
                return Err(Error::OffCell);
            }
        }
    }
    let wd = model.weyl_representative(weyl, w);
    let f = iwasawa(&(n * &wd))?;
    let ad = &wd * f.log_a() * wd.adjoint();
    Ok(c * model.killing(&ad, x).im)
}

/// `⟨Φ_λ(kT), x⟩ = (2i/ε)·Im⟪log P_A(k e^{−λ} k⁻¹), x⟫` for real regular `λ`.
pub fn dressing_moment(
    model: &MatrixModel,
    lambda: &Mat,
    k: &Mat,
    x: &Mat,
    epsilon: C64,
) -> Result<f64> {
    let c = real_factor(epsilon)?;
    check_special_unitary(k)?;
    let size = model.size();
    let mut diag = Vec::with_capacity(size);
    for i in 0..size {
        for j in 0..size {
            let v = lambda[(i, j)];
            if (i != j && v.norm() > 1e-14) || v.im.abs() > 1e-14 {
                return Err(Error::InvalidArgument(
                    "lambda must be a real diagonal matrix".into(),
                ));
            }
        }
        diag.push(lambda[(i, i)].re);
    }
    for i in 0..size {
        for j in i + 1..size {
            if (diag[i] - diag[j]).abs() < 1e-12 {
                return Err(Error::IrregularLambda);
            }
        }
    }
    let e = Mat::from_fn(size, size, |i, j| {
        if i == j {
            C64::new((-diag[i]).exp(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let f = iwasawa(&(k * e * k.adjoint()))?;
    Ok(c * model.killing(&f.log_a(), x).im)
}

/// `n = [[1, z], [0, 1]] ∈ N_{s_α}` for `SU(2)`.
pub fn su2_cell_element(z: C64) -> Mat {
    Mat::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            z,
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ],
    )
}

/// The coordinate `z` of `kT ∈ Σ_{s_α}` with `k = [[u, v], [−v̄, ū]]`: `z = −u/v̄`.
pub fn su2_cell_coordinate(k: &Mat) -> Result<C64> {
    if k.nrows() != 2 {
        return Err(Error::InvalidArgument(
            "cell coordinate is defined on SU(2)".into(),
        ));
    }
    let v = k[(0, 1)];
    if v.norm() < 1e-12 {
        return Err(Error::OffCell);
    }
    Ok(-k[(0, 0)] / v.conj())
}

/// `|Φ_{λ+tρ̌}(kT) − Φ_{λ+tρ̌}(ẇT) − φ_w(kT)|` at `kT = j_w(n)`.
#[allow(clippy::too_many_arguments)]
pub fn moment_limit_defect(
    model: &MatrixModel,
    weyl: &WeylGroup,
    w: usize,
    n: &Mat,
    lambda: &Mat,
    t: f64,
    x: &Mat,
    epsilon: C64,
) -> Result<f64> {
    Ok(limit_difference(model, weyl, w, n, lambda, t, x, epsilon)?.abs())
}

#[allow(clippy::too_many_arguments)]
fn limit_difference(
    model: &MatrixModel,
    weyl: &WeylGroup,
    w: usize,
    n: &Mat,
    lambda: &Mat,
    t: f64,
    x: &Mat,
    epsilon: C64,
) -> Result<f64> {
    let rs = model.algebra().root_system();
    let wd = model.weyl_representative(weyl, w);
    let bruhat = bruhat_moment(model, weyl, w, n, x, epsilon)?;
    let k = iwasawa(&(n * &wd))?.k;
    let all: Vec<usize> = (0..rs.rank()).collect();
    let lt = lambda + model.coweight_sum(&all) * C64::new(t, 0.0);
    let at_k = dressing_moment(model, &lt, &k, x, epsilon)?;
    let at_w = dressing_moment(model, &lt, &wd, x, epsilon)?;
    Ok(at_k - at_w - bruhat)
}

/// A point of `t*` given by its pairings with `i h_1, …, i h_r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentValue {
    pub pairings: Vec<f64>,
    /// How the additive constant is fixed.
    pub normalization: &'static str,
}

/// Which moment map to evaluate in [`moment_map_eval`].
#[derive(Debug, Clone)]
pub enum MomentKind {
    /// `φ_w` at `j_w(n)`, `n ∈ N_w`.
    Bruhat { w: usize, n: Mat },
    /// `Φ_λ` at `kT` for real regular `λ`.
    Dressing { lambda: Mat, k: Mat },
    /// `Φ_{λ+tρ̌}(kT) − Φ_{λ+tρ̌}(ẇT) − φ_w(kT)` at `kT = j_w(n)`.
    LimitCheck {
        lambda: Mat,
        t: f64,
        w: usize,
        n: Mat,
    },
}

pub fn moment_map_eval(
    model: &MatrixModel,
    weyl: &WeylGroup,
    kind: &MomentKind,
    epsilon: C64,
) -> Result<MomentValue> {
    let rank = model.algebra().rank();
    let basis: Vec<Mat> = (0..rank).map(|j| model.t(j)).collect();
    let (pairings, normalization) = match kind {
        MomentKind::Bruhat { w, n } => (
            basis
                .iter()
                .map(|x| bruhat_moment(model, weyl, *w, n, x, epsilon))
                .collect::<Result<Vec<_>>>()?,
            "vanishes at the point wT",
        ),
        MomentKind::Dressing { lambda, k } => (
            basis
                .iter()
                .map(|x| dressing_moment(model, lambda, k, x, epsilon))
                .collect::<Result<Vec<_>>>()?,
            "log of the A-part of k exp(-lambda) k^-1",
        ),
        MomentKind::LimitCheck { lambda, t, w, n } => (
            basis
                .iter()
                .map(|x| limit_difference(model, weyl, *w, n, lambda, *t, x, epsilon))
                .collect::<Result<Vec<_>>>()?,
            "difference of normalized maps",
        ),
    };
    Ok(MomentValue {
        pairings,
        normalization,
    })
}

/// Which moment map to test.
#[derive(Debug, Clone)]
pub enum HamiltonianKind {
    /// `Φ_λ` on `(K/T, π_{S,∅,λ})`; the spec must have `X = S` and `X₁ = ∅`.
    Dressing(PoissonHomSpec),
    /// `φ_{s_α}` on the big cell of `(SU(2)/T, π_∞)`.
    Bruhat { epsilon: C64 },
}

type MomentFn<'a> = Box<dyn Fn(&Mat) -> Result<f64> + 'a>;

/// Largest `|π(dH_x, df) − s·σ_x(f)|` over the real and imaginary parts of
/// the entries of `k·D·k†` (`D = i·diag(1, …, n)`), where `H_x = ⟨moment, x⟩`
/// is differentiated by central differences with `step`.
pub fn hamiltonian_consistency(
    model: &MatrixModel,
    weyl: &WeylGroup,
    kind: &HamiltonianKind,
    k: &Mat,
    x: &Mat,
    step: f64,
) -> Result<f64> {
    let rs = model.algebra().root_system();
    let size = model.size();
    let (pi, h): (_, MomentFn) = match kind {
        HamiltonianKind::Dressing(spec) => {
            if spec.x.len() != rs.rank() || !spec.x1.is_empty() {
                return Err(Error::InvalidArgument(
                    "dressing moment needs X = S and X1 = empty".into(),
                ));
            }
            let lam = model.cartan(&spec.lambda_coords(rs));
            let eps = spec.epsilon;
            (
                quotient_bivector(model, spec, k)?,
                Box::new(move |m: &Mat| dressing_moment(model, &lam, m, x, eps)),
            )
        }
        HamiltonianKind::Bruhat { epsilon } => {
            if size != 2 {
                return Err(Error::UnsupportedType(rs.designator()));
            }
            let spec = PoissonHomSpec::new(rs, &[], &[], &[], *epsilon, &Tolerances::default())?;
            let w = weyl.longest();
            let eps = *epsilon;
            let hf = move |m: &Mat| -> Result<f64> {
                bruhat_moment(
                    model,
                    weyl,
                    w,
                    &su2_cell_element(su2_cell_coordinate(m)?),
                    x,
                    eps,
                )
            };
            (quotient_bivector(model, &spec, k)?, Box::new(hf))
        }
    };
    h(k)?;
    let hobs = NumericObservable {
        f: |m: &Mat| h(m).map_or(C64::new(f64::NAN, 0.0), |v| C64::new(v, 0.0)),
        step,
    };
    let d = Mat::from_fn(size, size, |i, j| {
        if i == j {
            C64::new(0.0, (i + 1) as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let sigma_tangent = x * k;
    let mut worst = 0.0f64;
    for row in 0..size {
        for col in row..size {
            for part in [Part::Re, Part::Im] {
                let f = AdjointEntry {
                    d: d.clone(),
                    row,
                    col,
                    part,
                };
                let lhs = pi.bracket(k, &hobs, &f);
                let rhs = f.deriv(k, &sigma_tangent) * HAMILTONIAN_SIGN;
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    if !worst.is_finite() {
        return Err(Error::OffCell);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{Algebra, Normalization};
    use crate::rootsys::{Family, RootSystem};

    #[test]
    fn su2_bruhat_moment_closed_form() {
        let l = Algebra::new(
            &RootSystem::new(Family::A, 1).unwrap(),
            Normalization::Unitary,
        )
        .unwrap();
        let m = MatrixModel::new(&l).unwrap();
        let weyl = WeylGroup::new(l.root_system()).unwrap();
        let eps = C64::new(0.0, 0.8);
        let x = m.h_rho() * eps;
        for z in [C64::new(0.0, 0.0), C64::new(0.5, -1.0), C64::new(3.0, 2.0)] {
            let got =
                bruhat_moment(&m, &weyl, weyl.longest(), &su2_cell_element(z), &x, eps).unwrap();
            assert!((got + (1.0 + z.norm_sqr()).ln()).abs() < 1e-13);
        }
        let bad = Mat::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
            ],
        );
        assert!(matches!(
            bruhat_moment(&m, &weyl, weyl.longest(), &bad, &x, eps),
            Err(Error::OffCell)
        ));
    }

    #[test]
    fn cell_coordinate_inverts_cell_map() {
        let l = Algebra::new(
            &RootSystem::new(Family::A, 1).unwrap(),
            Normalization::Unitary,
        )
        .unwrap();
        let m = MatrixModel::new(&l).unwrap();
        let weyl = WeylGroup::new(l.root_system()).unwrap();
        let wd = m.weyl_representative(&weyl, weyl.longest());
        let z = C64::new(-0.4, 1.7);
        let k = iwasawa(&(su2_cell_element(z) * wd)).unwrap().k;
        assert!((su2_cell_coordinate(&k).unwrap() - z).norm() < 1e-14);
    }
}
