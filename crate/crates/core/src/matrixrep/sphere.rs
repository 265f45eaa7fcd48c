//! The family `π^a = π_∞ − (iε/2)a·π₀` on `SU(2)/T ≅ S²`: polynomial fits
//! of the coordinate brackets, the rank census and the modular vector field
//! with respect to the round area form.

use nalgebra::DMatrix;

use super::poisson::{AdjointEntry, GroupBivector, MatrixBivector, Observable, Part};
use super::{Mat, MatrixModel};
use crate::error::{Error, Result};
use crate::scalar::C64;

/// Monomials of the bracket fits; `z²` is eliminated by `x² + y² + z² = 1`.
pub const SPHERE_MONOMIALS: [&str; 9] = ["1", "x", "y", "z", "x^2", "xy", "xz", "y^2", "yz"];

fn monomials(p: &[f64; 3]) -> [f64; 9] {
    let [x, y, z] = *p;
    [1.0, x, y, z, x * x, x * y, x * z, y * y, y * z]
}

fn require_su2(model: &MatrixModel) -> Result<()> {
    if model.size() != 2 {
        return Err(Error::UnsupportedType(
            model.algebra().root_system().designator(),
        ));
    }
    Ok(())
}

fn d0() -> Mat {
    Mat::from_row_slice(
        2,
        2,
        &[C64::i(), C64::new(0.0, 0.0), C64::new(0.0, 0.0), -C64::i()],
    )
}

/// `(x, y, z)` with `Ad_k diag(i, −i) = [[ix, y + iz], [−y + iz, −ix]]`.
pub fn sphere_coordinates() -> [AdjointEntry; 3] {
    [
        AdjointEntry {
            d: d0(),
            row: 0,
            col: 0,
            part: Part::Im,
        },
        AdjointEntry {
            d: d0(),
            row: 0,
            col: 1,
            part: Part::Re,
        },
        AdjointEntry {
            d: d0(),
            row: 0,
            col: 1,
            part: Part::Im,
        },
    ]
}

/// Image of `kT` in `S²`.
pub fn sphere_point(k: &Mat) -> [f64; 3] {
    let c = sphere_coordinates();
    [c[0].value(k).re, c[1].value(k).re, c[2].value(k).re]
}

/// Section `S² → SU(2)` with `u = √((1+x)/2)` real and `v = (−z + iy)/(2u)`.
pub fn sphere_to_su2(p: &[f64; 3]) -> Result<Mat> {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if (r - 1.0).abs() > super::MANIFOLD_TOL {
        return Err(Error::OffManifold((r - 1.0).abs()));
    }
    if 1.0 + p[0] < 1e-8 {
        return Err(Error::ChartSingularity);
    }
    let u = ((1.0 + p[0]) / 2.0).sqrt();
    let v = C64::new(-p[2], p[1]) / (2.0 * u);
    let u = C64::new(u, 0.0);
    Ok(Mat::from_row_slice(2, 2, &[u, v, -v.conj(), u.conj()]))
}

/// `n` nearly uniform points on `S²`, spiralling about the `x` axis.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let x = 1.0 - (2 * i + 1) as f64 / n as f64;
            let r = (1.0 - x * x).sqrt();
            let t = golden * i as f64;
            [x, r * t.cos(), r * t.sin()]
        })
        .collect()
}

/// Lift of `π^a(kT)`: `π_K(k) − (iε/2)a·L_k(X_α∧Y_α)`.
pub fn sphere_family_bivector(
    model: &MatrixModel,
    epsilon: C64,
    a: f64,
    k: &Mat,
) -> Result<GroupBivector> {
    require_su2(model)?;
    super::check_special_unitary(k)?;
    let (x, y) = (model.x(0), model.y(0));
    let lam = MatrixBivector(vec![(-C64::i() * epsilon / 4.0, x.clone(), y.clone())]);
    let pi0 = MatrixBivector(vec![(-C64::i() * epsilon / 2.0 * a, x, y)]);
    Ok(lam.poisson_lie(k).plus(&pi0.left(k)))
}

/// `({x,y}, {y,z}, {z,x})` at a point of `S²`.
fn coordinate_brackets(
    model: &MatrixModel,
    epsilon: C64,
    a: f64,
    p: &[f64; 3],
) -> Result<[C64; 3]> {
    let k = sphere_to_su2(p)?;
    let pi = sphere_family_bivector(model, epsilon, a, &k)?;
    let [x, y, z] = sphere_coordinates();
    Ok([
        pi.bracket(&k, &x, &y),
        pi.bracket(&k, &y, &z),
        pi.bracket(&k, &z, &x),
    ])
}

/// `x{y,z} + y{z,x} + z{x,y}`: the bivector divided by the round area bivector.
fn pfaffian(model: &MatrixModel, epsilon: C64, a: f64, p: &[f64; 3]) -> Result<C64> {
    let [xy, yz, zx] = coordinate_brackets(model, epsilon, a, p)?;
    Ok(yz * p[0] + zx * p[1] + xy * p[2])
}

/// Least-squares fit of the coordinate brackets over [`SPHERE_MONOMIALS`].
#[derive(Debug, Clone)]
pub struct SphereBracketTable {
    pub a: f64,
    /// Coefficients of `{x,y}`, `{y,z}`, `{z,x}`.
    pub coefficients: [Vec<C64>; 3],
    /// Largest pointwise residual of the fits.
    pub fit_residual: f64,
}

pub fn sphere_bracket_table(
    model: &MatrixModel,
    epsilon: C64,
    a: f64,
    points: &[[f64; 3]],
) -> Result<SphereBracketTable> {
    require_su2(model)?;
    if points.len() < SPHERE_MONOMIALS.len() {
        return Err(Error::InvalidArgument(
            "the fit needs at least 9 sample points".into(),
        ));
    }
    let design = DMatrix::from_fn(points.len(), 9, |i, j| monomials(&points[i])[j]);
    let values: Vec<[C64; 3]> = points
        .iter()
        .map(|p| coordinate_brackets(model, epsilon, a, p))
        .collect::<Result<_>>()?;
    let svd = design.clone().svd(true, true);
    let mut coefficients: [Vec<C64>; 3] = Default::default();
    let mut fit_residual = 0.0f64;
    for (r, out) in coefficients.iter_mut().enumerate() {
        let mut parts = Vec::new();
        for part in [Part::Re, Part::Im] {
            let rhs = DMatrix::from_fn(points.len(), 1, |i, _| match part {
                Part::Re => values[i][r].re,
                Part::Im => values[i][r].im,
            });
            let sol = svd
                .solve(&rhs, 1e-12)
                .map_err(|e| Error::InvalidArgument(e.into()))?;
            fit_residual = fit_residual.max((&design * &sol - rhs).amax());
            parts.push(sol);
        }
        *out = (0..9).map(|j| C64::new(parts[0][j], parts[1][j])).collect();
    }
    Ok(SphereBracketTable {
        a,
        coefficients,
        fit_residual,
    })
}

/// Where the bivector of `π^a` vanishes.
#[derive(Debug, Clone)]
pub struct SphereLeafCensus {
    pub a: f64,
    pub min_abs_pfaffian: f64,
    pub max_abs_pfaffian: f64,
    /// `x₀` of the zero circle `{x = x₀}` when it meets the sphere.
    pub zero_circle_x: Option<f64>,
    /// Largest `|pfaffian|` on the zero circle.
    pub circle_max_pfaffian: Option<f64>,
    /// Largest deviation of the pfaffian from an affine function of `x`.
    pub affine_residual: f64,
}

pub fn sphere_leaf_census(
    model: &MatrixModel,
    epsilon: C64,
    a: f64,
    points: &[[f64; 3]],
) -> Result<SphereLeafCensus> {
    require_su2(model)?;
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "the census needs at least 2 sample points".into(),
        ));
    }
    let w: Vec<C64> = points
        .iter()
        .map(|p| pfaffian(model, epsilon, a, p))
        .collect::<Result<_>>()?;
    let min_abs_pfaffian = w.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min);
    let max_abs_pfaffian = w.iter().map(|c| c.norm()).fold(0.0, f64::max);
    // w ≈ p + q·x, fitted separately in real and imaginary parts
    let design = DMatrix::from_fn(
        points.len(),
        2,
        |i, j| if j == 0 { 1.0 } else { points[i][0] },
    );
    let svd = design.clone().svd(true, true);
    let re = DMatrix::from_fn(points.len(), 1, |i, _| w[i].re);
    let im = DMatrix::from_fn(points.len(), 1, |i, _| w[i].im);
    let sr = svd
        .solve(&re, 1e-12)
        .map_err(|e| Error::InvalidArgument(e.into()))?;
    let si = svd
        .solve(&im, 1e-12)
        .map_err(|e| Error::InvalidArgument(e.into()))?;
    let affine_residual = (&design * &sr - re).amax().max((&design * &si - im).amax());
    let (p, q) = (C64::new(sr[0], si[0]), C64::new(sr[1], si[1]));
    let zero_circle_x = if q.norm() > 0.0 {
        let x0 = -p / q;
        (x0.im.abs() < 1e-9 && x0.re.abs() <= 1.0).then_some(x0.re)
    } else {
        None
    };
    let circle_max_pfaffian = match zero_circle_x {
        Some(x0) if x0 > -1.0 + 1e-8 => {
            let r = (1.0 - x0 * x0).max(0.0).sqrt();
            let mut worst = 0.0f64;
            for j in 0..16 {
                let t = std::f64::consts::TAU * j as f64 / 16.0;
                worst =
                    worst.max(pfaffian(model, epsilon, a, &[x0, r * t.cos(), r * t.sin()])?.norm());
            }
            Some(worst)
        }
        _ => None,
    };
    Ok(SphereLeafCensus {
        a,
        min_abs_pfaffian,
        max_abs_pfaffian,
        zero_circle_x,
        circle_max_pfaffian,
        affine_residual,
    })
}

/// Modular vector field of `π^a` for the round area form, sampled on a grid.
#[derive(Debug, Clone)]
pub struct ModularFieldReport {
    pub a: f64,
    pub points: Vec<[f64; 3]>,
    /// Numerical field, ambient components.
    pub field: Vec<[C64; 3]>,
    /// `−iε·σ_{iH_ρ}` at the same points.
    pub expected: Vec<[C64; 3]>,
    pub match_defect: f64,
    /// Largest divergence of the numerical field.
    pub max_divergence: f64,
}

impl ModularFieldReport {
    /// Largest pointwise difference of two sampled fields on the same grid.
    pub fn difference(&self, other: &ModularFieldReport) -> f64 {
        self.field
            .iter()
            .zip(&other.field)
            .map(|(u, v)| (0..3).map(|i| (u[i] - v[i]).norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

/// `v` with `ι_v μ = d(π ⌟ μ)`, computed as `v = ∇w × p` where `w` is the
/// pfaffian extended homogeneously of degree zero and `∇w` is taken by
/// central differences with the given step.
pub fn modular_field_numeric(
    model: &MatrixModel,
    epsilon: C64,
    a: f64,
    points: &[[f64; 3]],
    step: f64,
) -> Result<ModularFieldReport> {
    require_su2(model)?;
    let w = |q: &[f64; 3]| -> Result<C64> {
        let r = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        pfaffian(model, epsilon, a, &[q[0] / r, q[1] / r, q[2] / r])
    };
    let field_at = |q: &[f64; 3]| -> Result<[C64; 3]> {
        let mut grad = [C64::new(0.0, 0.0); 3];
        for (i, g) in grad.iter_mut().enumerate() {
            let (mut qp, mut qm) = (*q, *q);
            qp[i] += step;
            qm[i] -= step;
            *g = (w(&qp)? - w(&qm)?) / (2.0 * step);
        }
        let r = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        let p = [q[0] / r, q[1] / r, q[2] / r];
        Ok([
            grad[1] * p[2] - grad[2] * p[1],
            grad[2] * p[0] - grad[0] * p[2],
            grad[0] * p[1] - grad[1] * p[0],
        ])
    };
    let ih_rho = model.h_rho() * C64::i();
    let outer = 100.0 * step;
    let mut field = Vec::with_capacity(points.len());
    let mut expected = Vec::with_capacity(points.len());
    let (mut match_defect, mut max_divergence) = (0.0f64, 0.0f64);
    for p in points {
        let k = sphere_to_su2(p)?;
        let v = field_at(p)?;
        // σ_{iH_ρ}(p) = [iH_ρ, P] in the (x, y, z) coordinates
        let pm = &k * d0() * k.adjoint();
        let s = super::commutator(&ih_rho, &pm);
        let sigma = [s[(0, 0)].im, s[(0, 1)].re, s[(0, 1)].im];
        let e: [C64; 3] = std::array::from_fn(|i| -C64::i() * epsilon * sigma[i]);
        match_defect = match_defect.max((0..3).map(|i| (v[i] - e[i]).norm()).fold(0.0, f64::max));
        let mut div = C64::new(0.0, 0.0);
        for i in 0..3 {
            let (mut qp, mut qm) = (*p, *p);
            qp[i] += outer;
            qm[i] -= outer;
            div += (field_at(&qp)?[i] - field_at(&qm)?[i]) / (2.0 * outer);
        }
        max_divergence = max_divergence.max(div.norm());
        field.push(v);
        expected.push(e);
    }
    Ok(ModularFieldReport {
        a,
        points: points.to_vec(),
        field,
        expected,
        match_defect,
        max_divergence,
    })
}
