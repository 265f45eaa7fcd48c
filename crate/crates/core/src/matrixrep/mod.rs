//! Defining representation of `su(n)` for `n ≤ 4`: the embedding of the
//! abstract basis, Iwasawa factorization, group-level Poisson bivectors on
//! `SU(n)`, `AN` and `K/T`, the `S²` family, moment maps and the modular field.

mod iwasawa;
mod moment;
mod poisson;
mod sphere;

pub use iwasawa::{iwasawa, k_projection, IwasawaFactors, MAX_CONDITION};
pub use moment::{
    bruhat_moment, dressing_moment, hamiltonian_consistency, moment_limit_defect, moment_map_eval,
    su2_cell_coordinate, su2_cell_element, HamiltonianKind, MomentKind, MomentValue,
    HAMILTONIAN_SIGN,
};
pub use poisson::{
    an_pairing, k_bivector, lambda_terms, levi_bivector, levi_lambda_terms, m1_poisson_defect,
    pi_e_table, pi_e_terms, quotient_bivector, su2_brackets, AdjointEntry, GroupBivector,
    KillingCoordinate, MatrixBivector, MatrixEntry, NumericObservable, Observable, Part,
    Su2Brackets,
};
pub use sphere::{
    fibonacci_sphere, modular_field_numeric, sphere_bracket_table, sphere_coordinates,
    sphere_family_bivector, sphere_leaf_census, sphere_point, sphere_to_su2, ModularFieldReport,
    SphereBracketTable, SphereLeafCensus, SPHERE_MONOMIALS,
};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::liealg::{Algebra, Normalization};
use crate::rootsys::{Family, WeylGroup};
use crate::scalar::{rational_to_f64, C64};

/// Complex square matrix.
pub type Mat = DMatrix<C64>;

/// Tolerance for unitarity and determinant checks on group points.
pub const MANIFOLD_TOL: f64 = 1e-10;

/// The defining representation of a unitary-normalized `A_{n−1}` algebra, `n ≤ 4`.
///
/// `E_α ↦ s_α e_ij/√(2n)` for `α = e_i − e_j`, `E_−α ↦ s_α e_ji/√(2n)` and
/// `h_i ↦ (e_ii − e_{i+1,i+1})/(2n)`, with signs `s_α = ±1` fixed by the
/// structure constants. The Killing form is `2n·tr`.
#[derive(Debug, Clone)]
pub struct MatrixModel<'a> {
    alg: &'a Algebra,
    n: usize,
    images: Vec<Mat>,
    /// Matrix position `(i, j)` of every root vector.
    positions: Vec<(usize, usize)>,
    signs: Vec<f64>,
}

fn unit(n: usize, i: usize, j: usize, c: f64) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = C64::new(c, 0.0);
    m
}

/// `ab − ba`.
pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0f64, |acc, c| acc.max(c.norm()))
}

impl<'a> MatrixModel<'a> {
    pub fn new(alg: &'a Algebra) -> Result<Self> {
        let rs = alg.root_system();
        if rs.family() != Family::A || rs.rank() > 3 {
            return Err(Error::UnsupportedType(format!(
                "{} (matrix model covers A1..A3)",
                rs.designator()
            )));
        }
        if alg.normalization() != Normalization::Unitary {
            return Err(Error::NoCompactForm);
        }
        let n = rs.rank() + 1;
        let scale = 1.0 / ((2 * n) as f64).sqrt();
        let positions: Vec<(usize, usize)> = (0..rs.num_roots())
            .map(|a| {
                let c = rs.root(a);
                let first = c.iter().position(|&v| v != 0).expect("roots are nonzero");
                let last = c.iter().rposition(|&v| v != 0).expect("roots are nonzero");
                if rs.is_positive(a) {
                    (first, last + 1)
                } else {
                    (last + 1, first)
                }
            })
            .collect();

        let mut signs = vec![0.0; rs.num_roots()];
        for a in rs.positive_roots() {
            if rs.height(a) == 1 {
                signs[a] = 1.0;
                continue;
            }
            // α = β + γ with β simple and γ already signed
            let (b, g) = rs
                .simple_roots()
                .into_iter()
                .find_map(|b| {
                    rs.positive_roots()
                        .find(|&g| rs.add(b, g) == Some(a))
                        .map(|g| (b, g))
                })
                .expect("every non-simple positive root splits off a simple root");
            let img = |r: usize| unit(n, positions[r].0, positions[r].1, signs[r] * scale);
            let m = commutator(&img(b), &img(g));
            let bracket = alg.bracket(&alg.basis_vector(alg.e(b)), &alg.basis_vector(alg.e(g)));
            let nc = bracket[alg.e(a)];
            let (i, j) = positions[a];
            signs[a] = (m[(i, j)] / (nc * scale)).re.signum();
        }
        for a in rs.positive_roots() {
            signs[rs.neg(a)] = signs[a];
        }

        let mut images = vec![Mat::zeros(n, n); alg.dim()];
        for i in 0..rs.rank() {
            let d = 1.0 / (2 * n) as f64;
            images[alg.h(i)] = unit(n, i, i, d) - unit(n, i + 1, i + 1, d);
        }
        for a in 0..rs.num_roots() {
            let (i, j) = positions[a];
            images[alg.e(a)] = unit(n, i, j, signs[a] * scale);
        }
        Ok(MatrixModel {
            alg,
            n,
            images,
            positions,
            signs,
        })
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    /// Matrix size `n`.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Image of a basis index.
    pub fn image(&self, idx: usize) -> &Mat {
        &self.images[idx]
    }

    /// Matrix position of the root vector `E_α`.
    pub fn position(&self, root: usize) -> (usize, usize) {
        self.positions[root]
    }

    pub fn sign(&self, root: usize) -> f64 {
        self.signs[root]
    }

    pub fn to_matrix(&self, v: &[C64]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (c, img) in v.iter().zip(&self.images) {
            if *c != C64::new(0.0, 0.0) {
                m += img * *c;
            }
        }
        m
    }

    /// Coordinates of a traceless matrix in the abstract basis.
    pub fn from_matrix(&self, m: &Mat) -> Vec<C64> {
        let mut v = self.alg.zero_vector();
        let two_n = (2 * self.n) as f64;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.n - 1 {
            acc += m[(i, i)];
            v[self.alg.h(i)] = acc * two_n;
        }
        let scale = two_n.sqrt();
        for (a, &(i, j)) in self.positions.iter().enumerate() {
            v[self.alg.e(a)] = m[(i, j)] * scale * self.signs[a];
        }
        v
    }

    /// `⟪a, b⟫ = 2n·tr(ab)`.
    pub fn killing(&self, a: &Mat, b: &Mat) -> C64 {
        (a * b).trace() * (2 * self.n) as f64
    }

    /// Largest `‖[ρ(b_i), ρ(b_j)] − ρ([b_i, b_j])‖` over basis pairs.
    pub fn homomorphism_residual(&self) -> f64 {
        let d = self.alg.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let lhs = commutator(&self.images[i], &self.images[j]);
                let rhs = self.to_matrix(
                    &self
                        .alg
                        .bracket(&self.alg.basis_vector(i), &self.alg.basis_vector(j)),
                );
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
        worst
    }

    /// Largest deviation of `2n·tr` from the abstract Killing table.
    pub fn killing_residual(&self) -> f64 {
        let d = self.alg.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let got = self.killing(&self.images[i], &self.images[j]);
                worst = worst.max((got - self.alg.killing_basis(i, j)).norm());
            }
        }
        worst
    }

    /// `X_α = E_α − E_−α`.
    pub fn x(&self, a: usize) -> Mat {
        let rs = self.alg.root_system();
        &self.images[self.alg.e(a)] - &self.images[self.alg.e(rs.neg(a))]
    }

    /// `Y_α = i(E_α + E_−α)`.
    pub fn y(&self, a: usize) -> Mat {
        let rs = self.alg.root_system();
        (&self.images[self.alg.e(a)] + &self.images[self.alg.e(rs.neg(a))]) * C64::i()
    }

    /// `i h_j`.
    pub fn t(&self, j: usize) -> Mat {
        &self.images[self.alg.h(j)] * C64::i()
    }

    /// Cartan element `Σ c_i h_i`.
    pub fn cartan(&self, coords: &[C64]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (i, c) in coords.iter().enumerate() {
            m += &self.images[self.alg.h(i)] * *c;
        }
        m
    }

    /// `H_ρ`, the Killing dual of the half sum of positive roots.
    pub fn h_rho(&self) -> Mat {
        let rs = self.alg.root_system();
        let mut m = Mat::zeros(self.n, self.n);
        for a in rs.positive_roots() {
            m += self.to_matrix(&self.alg.coroot(a)) * C64::new(0.5, 0.0);
        }
        m
    }

    /// Sum of the fundamental coweights of the roots in `x`.
    pub fn coweight_sum(&self, x: &[usize]) -> Mat {
        let rs = self.alg.root_system();
        let mut coords = vec![C64::new(0.0, 0.0); rs.rank()];
        for &g in x {
            for (i, c) in rs.coweight(g).iter().enumerate() {
                coords[i] += rational_to_f64(c);
            }
        }
        self.cartan(&coords)
    }

    /// `ṡ_i`: the rotation `[[0, 1], [−1, 0]]` in rows `i, i+1`.
    pub fn simple_reflection(&self, i: usize) -> Mat {
        let mut m = Mat::identity(self.n, self.n);
        m[(i, i)] = C64::new(0.0, 0.0);
        m[(i + 1, i + 1)] = C64::new(0.0, 0.0);
        m[(i, i + 1)] = C64::new(1.0, 0.0);
        m[(i + 1, i)] = C64::new(-1.0, 0.0);
        m
    }

    /// Representative `ẇ ∈ SU(n)` of a Weyl group element.
    pub fn weyl_representative(&self, weyl: &WeylGroup, w: usize) -> Mat {
        weyl.reduced_word(w)
            .iter()
            .fold(Mat::identity(self.n, self.n), |acc, &i| {
                acc * self.simple_reflection(i)
            })
    }

    /// Positive roots `α` with `w⁻¹α < 0`, the roots of `N_w = N ∩ ẇN₋ẇ⁻¹`.
    pub fn cell_roots(&self, weyl: &WeylGroup, w: usize) -> Vec<usize> {
        let rs = self.alg.root_system();
        let winv = weyl.inverse(w);
        rs.positive_roots()
            .filter(|&a| !rs.is_positive(weyl.act(winv, a)))
            .collect()
    }

    /// Haar-random element of `SU(n)`.
    pub fn random_su<R: Rng>(&self, rng: &mut R) -> Mat {
        polar_projection(&self.random_gl(rng))
    }

    /// Matrix with independent standard complex Gaussian entries.
    pub fn random_gl<R: Rng>(&self, rng: &mut R) -> Mat {
        Mat::from_fn(self.n, self.n, |_, _| {
            C64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
    }

    /// Random positive diagonal matrix of determinant one.
    pub fn random_a<R: Rng>(&self, rng: &mut R) -> Mat {
        let mut logs: Vec<f64> = (0..self.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = logs.iter().sum::<f64>() / self.n as f64;
        logs.iter_mut().for_each(|l| *l -= mean);
        Mat::from_fn(self.n, self.n, |i, j| {
            if i == j {
                C64::new(logs[i].exp(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Random unipotent upper triangular matrix.
    pub fn random_n<R: Rng>(&self, rng: &mut R) -> Mat {
        Mat::from_fn(self.n, self.n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => C64::new(1.0, 0.0),
            std::cmp::Ordering::Less => {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }
            std::cmp::Ordering::Greater => C64::new(0.0, 0.0),
        })
    }

    /// `exp(ξ)` for a random `ξ` in `k_X = t + span{X_α, Y_α : α ∈ [X]}`.
    pub fn random_levi_element<R: Rng>(&self, x: &[usize], rng: &mut R) -> Mat {
        let rs = self.alg.root_system();
        let mut xi = Mat::zeros(self.n, self.n);
        for j in 0..rs.rank() {
            xi += self.t(j) * C64::new(rng.gen_range(-2.0..2.0), 0.0);
        }
        for a in rs.positive_roots().filter(|&a| rs.in_span(x, a)) {
            xi += self.x(a) * C64::new(rng.gen_range(-2.0..2.0), 0.0)
                + self.y(a) * C64::new(rng.gen_range(-2.0..2.0), 0.0);
        }
        xi.exp()
    }
}

/// Nearest unitary matrix, rescaled to determinant one.
pub fn polar_projection(m: &Mat) -> Mat {
    let n = m.nrows();
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested")
        * svd.v_t.expect("right singular vectors requested");
    let det = u.determinant();
    u * (C64::new(0.0, -det.arg() / n as f64)).exp()
}

/// Errors with [`Error::OffManifold`] unless `k ∈ SU(n)` within [`MANIFOLD_TOL`].
pub fn check_special_unitary(k: &Mat) -> Result<()> {
    let n = k.nrows();
    let dev = max_abs(&(k.adjoint() * k - Mat::identity(n, n)))
        .max((k.determinant() - C64::new(1.0, 0.0)).norm());
    if dev > MANIFOLD_TOL {
        return Err(Error::OffManifold(dev));
    }
    Ok(())
}
