//! Iwasawa factorization `g = k·a·n` of `SL(n, ℂ)` with `k ∈ SU(n)`, `a`
//! positive diagonal and `n` unipotent upper triangular.

use super::Mat;
use crate::error::{Error, Result};
use crate::scalar::C64;

/// Condition number above which a matrix is rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct IwasawaFactors {
    pub k: Mat,
    /// Diagonal of `a`, i.e. `P_A(g)`.
    pub a: Vec<f64>,
    pub n: Mat,
    /// Determinant root removed before factoring: `g = scale·k·a·n`.
    pub scale: C64,
}

impl IwasawaFactors {
    /// `a` as a diagonal matrix.
    pub fn a_matrix(&self) -> Mat {
        let d = self.a.len();
        Mat::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(self.a[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// `log P_A(g)` as a diagonal matrix.
    pub fn log_a(&self) -> Mat {
        let d = self.a.len();
        Mat::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(self.a[i].ln(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn product(&self) -> Mat {
        &self.k * self.a_matrix() * &self.n * self.scale
    }
}

/// Factors `g·det(g)^{−1/n}` by twice-iterated classical Gram-Schmidt.
pub fn iwasawa(g: &Mat) -> Result<IwasawaFactors> {
    let d = g.nrows();
    if d == 0 || g.ncols() != d {
        return Err(Error::InvalidArgument(
            "iwasawa needs a nonempty square matrix".into(),
        ));
    }
    let sv = g.singular_values();
    let (smax, smin) = sv
        .iter()
        .fold((0.0f64, f64::INFINITY), |(a, b), &s| (a.max(s), b.min(s)));
    if smin == 0.0 || !(smax / smin).is_finite() {
        return Err(Error::Singular(f64::INFINITY));
    }
    if smax / smin > MAX_CONDITION {
        return Err(Error::Singular(smax / smin));
    }
    let det = g.determinant();
    let scale = C64::from_polar(det.norm().powf(1.0 / d as f64), det.arg() / d as f64);
    let h = g / scale;

    let mut q = Mat::zeros(d, d);
    let mut r = Mat::zeros(d, d);
    for j in 0..d {
        let mut v = h.column(j).into_owned();
        for _ in 0..2 {
            for i in 0..j {
                let qi = q.column(i);
                let c = qi.dotc(&v);
                v -= qi * c;
                r[(i, j)] += c;
            }
        }
        let norm = v.norm();
        r[(j, j)] = C64::new(norm, 0.0);
        q.set_column(j, &(v / C64::new(norm, 0.0)));
    }
    let a: Vec<f64> = (0..d).map(|i| r[(i, i)].re).collect();
    let n = Mat::from_fn(d, d, |i, j| r[(i, j)] / a[i]);
    Ok(IwasawaFactors { k: q, a, n, scale })
}

/// Projection `g → k` along `a + n` for the decomposition `sl(n) = su(n) ⊕ (a + n)`.
pub fn k_projection(z: &Mat) -> Mat {
    let d = z.nrows();
    Mat::from_fn(d, d, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => z[(i, j)],
        std::cmp::Ordering::Less => -z[(j, i)].conj(),
        std::cmp::Ordering::Equal => C64::new(0.0, z[(i, i)].im),
    })
}
