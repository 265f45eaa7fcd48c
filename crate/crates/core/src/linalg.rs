//! Real subspaces of `ℂ^d ≅ ℝ^{2d}`: orthonormal bases, projector distances,
//! intersections, principal angles and Plücker coordinates.

use nalgebra::{DMatrix, DVector};

use crate::scalar::C64;

/// Default relative singular-value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-9;

/// `(Re v, Im v)` stacked.
pub fn realify(v: &[C64]) -> DVector<f64> {
    let d = v.len();
    DVector::from_fn(2 * d, |i, _| if i < d { v[i].re } else { v[i - d].im })
}

/// Inverse of [`realify`].
pub fn complexify(v: &DVector<f64>) -> Vec<C64> {
    let d = v.len() / 2;
    (0..d).map(|i| C64::new(v[i], v[i + d])).collect()
}

/// Euclidean norm of a complex vector.
pub fn cnorm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// A real subspace stored by an orthonormal basis (columns of `q`).
#[derive(Debug, Clone)]
pub struct RealSubspace {
    q: DMatrix<f64>,
}

impl RealSubspace {
    /// Span of real vectors of length `ambient`; singular values below
    /// `rank_tol · σ_max` are dropped.
    pub fn from_real(ambient: usize, vecs: &[DVector<f64>], rank_tol: f64) -> Self {
        if vecs.is_empty() {
            return RealSubspace {
                q: DMatrix::zeros(ambient, 0),
            };
        }
        let m = DMatrix::from_columns(vecs);
        let svd = m.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if smax == 0.0 {
            return RealSubspace {
                q: DMatrix::zeros(ambient, 0),
            };
        }
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > rank_tol * smax)
            .collect();
        let cols: Vec<DVector<f64>> = keep.iter().map(|&i| u.column(i).into_owned()).collect();
        RealSubspace {
            q: if cols.is_empty() {
                DMatrix::zeros(ambient, 0)
            } else {
                DMatrix::from_columns(&cols)
            },
        }
    }

    /// Real span of complex vectors.
    pub fn from_complex(vecs: &[Vec<C64>], rank_tol: f64) -> Self {
        let ambient = vecs.first().map_or(0, |v| 2 * v.len());
        let real: Vec<DVector<f64>> = vecs.iter().map(|v| realify(v)).collect();
        Self::from_real(ambient, &real, rank_tol)
    }

    /// Complex span of complex vectors, as a real subspace.
    pub fn complex_span(vecs: &[Vec<C64>], rank_tol: f64) -> Self {
        let i = C64::new(0.0, 1.0);
        let mut all = vecs.to_vec();
        all.extend(
            vecs.iter()
                .map(|v| v.iter().map(|c| c * i).collect::<Vec<_>>()),
        );
        Self::from_complex(&all, rank_tol)
    }

    pub fn ambient(&self) -> usize {
        self.q.nrows()
    }

    pub fn dim(&self) -> usize {
        self.q.ncols()
    }

    /// Orthonormal basis as columns.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// Orthonormal basis converted back to complex vectors.
    pub fn complex_basis(&self) -> Vec<Vec<C64>> {
        (0..self.dim())
            .map(|j| complexify(&self.q.column(j).into_owned()))
            .collect()
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.q * self.q.transpose()
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &DVector<f64>) -> f64 {
        let p = &self.q * (self.q.transpose() * v);
        (v - p).norm()
    }

    /// [`RealSubspace::residual`] of a complex vector.
    pub fn residual_complex(&self, v: &[C64]) -> f64 {
        self.residual(&realify(v))
    }

    /// Operator norm of the difference of the orthogonal projectors.
    pub fn distance(&self, other: &RealSubspace) -> f64 {
        let d = self.projector() - other.projector();
        d.symmetric_eigenvalues()
            .iter()
            .fold(0.0f64, |m, e| m.max(e.abs()))
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &RealSubspace, rank_tol: f64) -> RealSubspace {
        let cols: Vec<DVector<f64>> = self
            .q
            .column_iter()
            .chain(other.q.column_iter())
            .map(|c| c.into_owned())
            .collect();
        RealSubspace::from_real(self.ambient(), &cols, rank_tol)
    }

    /// `dim(U ∩ V) = dim U + dim V − dim(U + V)`.
    pub fn intersection_dim(&self, other: &RealSubspace, rank_tol: f64) -> usize {
        self.dim() + other.dim() - self.sum(other, rank_tol).dim()
    }

    /// Principal angles in increasing order.
    pub fn principal_angles(&self, other: &RealSubspace) -> Vec<f64> {
        if self.dim() == 0 || other.dim() == 0 {
            return Vec::new();
        }
        let m = self.q.transpose() * &other.q;
        let mut angles: Vec<f64> = m
            .singular_values()
            .iter()
            .map(|s| s.clamp(0.0, 1.0).acos())
            .collect();
        angles.sort_by(|a, b| a.total_cmp(b));
        angles
    }

    /// Unit Plücker vector: all maximal minors of the orthonormal basis in
    /// lexicographic row order.
    pub fn plucker(&self) -> Vec<f64> {
        let k = self.dim();
        let mut out = Vec::new();
        for rows in combinations(self.ambient(), k) {
            let sub = DMatrix::from_fn(k, k, |i, j| self.q[(rows[i], j)]);
            out.push(sub.determinant());
        }
        out
    }

    /// Distance of the Plücker lines, `min_± |p_U ∓ p_V|`.
    pub fn plucker_distance(&self, other: &RealSubspace) -> f64 {
        let (p, q) = (self.plucker(), other.plucker());
        let dot: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();
        (2.0 - 2.0 * dot.abs()).max(0.0).sqrt()
    }
}

/// All increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
