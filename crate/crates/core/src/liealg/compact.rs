//! The compact real form `k = span_R{i h_a, X_a, Y_a}` with
//! `X_a = E_a - E_-a`, `Y_a = i(E_a + E_-a)` and its conjugation
//! `theta(E_a) = -E_-a`, `theta(h) = -h`, extended antilinearly.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{LieAlgebra, Normalization, Wedge};

/// Compact real form of a unitary-normalized algebra over a field containing `i`.
#[derive(Debug)]
pub struct CompactForm<'a, S> {
    alg: &'a LieAlgebra<S>,
    i: S,
}

impl<'a, S: Scalar> CompactForm<'a, S> {
    pub fn new(alg: &'a LieAlgebra<S>) -> Result<Self> {
        if alg.normalization() != Normalization::Unitary {
            return Err(Error::NoCompactForm);
        }
        let i = S::imaginary_unit().ok_or(Error::NoCompactForm)?;
        Ok(CompactForm { alg, i })
    }

    pub fn algebra(&self) -> &'a LieAlgebra<S> {
        self.alg
    }

    /// `X_a = E_a - E_-a` for a positive root `a`.
    pub fn x(&self, a: usize) -> Vec<S> {
        let rs = self.alg.root_system();
        let mut v = self.alg.zero_vector();
        v[self.alg.e(a)] = S::one();
        v[self.alg.e(rs.neg(a))] = -S::one();
        v
    }

    /// `Y_a = i(E_a + E_-a)` for a positive root `a`.
    pub fn y(&self, a: usize) -> Vec<S> {
        let rs = self.alg.root_system();
        let mut v = self.alg.zero_vector();
        v[self.alg.e(a)] = self.i.clone();
        v[self.alg.e(rs.neg(a))] = self.i.clone();
        v
    }

    /// `i h_j` for the Cartan basis element `h_j`.
    pub fn t(&self, j: usize) -> Vec<S> {
        let mut v = self.alg.zero_vector();
        v[self.alg.h(j)] = self.i.clone();
        v
    }

    /// Real basis of `k`: `i h_1..i h_r`, then `X_a, Y_a` for each positive root.
    pub fn real_basis(&self) -> Vec<Vec<S>> {
        let rs = self.alg.root_system();
        let mut out: Vec<Vec<S>> = (0..rs.rank()).map(|j| self.t(j)).collect();
        for a in rs.positive_roots() {
            out.push(self.x(a));
            out.push(self.y(a));
        }
        out
    }

    /// Image of a basis index under `theta`, with the sign `-1` on every basis vector.
    fn theta_index(&self, idx: usize) -> usize {
        match self.alg.root_of(idx) {
            None => idx,
            Some(a) => self.alg.e(self.alg.root_system().neg(a)),
        }
    }

    /// The conjugation `theta` fixing `k`.
    pub fn theta(&self, v: &[S]) -> Vec<S> {
        let mut out = self.alg.zero_vector();
        for (idx, c) in v.iter().enumerate() {
            out[self.theta_index(idx)] = -c.conj();
        }
        out
    }

    /// `tau_{X,X1} = Ad_{exp(pi i rho_vee_{X1})} ∘ theta`; `E_a` picks up `(-1)^{a(rho_vee_{X1})}`.
    pub fn tau(&self, x1: &[usize], v: &[S]) -> Vec<S> {
        let rs = self.alg.root_system();
        let mut out = self.theta(v);
        for (idx, c) in out.iter_mut().enumerate() {
            if let Some(a) = self.alg.root_of(idx) {
                if rs.coweight_sum_value(x1, a).rem_euclid(2) == 1 {
                    *c = -c.clone();
                }
            }
        }
        out
    }

    /// `theta` extended to wedges.
    pub fn theta_wedge(&self, w: &Wedge<S>) -> Wedge<S> {
        let mut out = Wedge::zero(w.degree());
        let sign_neg = w.degree() % 2 == 1;
        for (k, c) in w.terms() {
            let idx: Vec<u16> = k
                .iter()
                .map(|&i| self.theta_index(i as usize) as u16)
                .collect();
            let c = if sign_neg { -c.conj() } else { c.conj() };
            out.add_basis(&idx, c);
        }
        out
    }

    /// Distance of a wedge from the real subspace `∧k`: `|theta(w) - w|`.
    pub fn reality_defect(&self, w: &Wedge<S>) -> f64 {
        self.theta_wedge(w).sub(w).norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::ExactAlgebra;
    use crate::rootsys::{Family, RootSystem};
    use crate::scalar::{rat, GaussRational};

    fn a1() -> ExactAlgebra {
        ExactAlgebra::new(
            &RootSystem::new(Family::A, 1).unwrap(),
            Normalization::Unitary,
        )
        .unwrap()
    }

    #[test]
    fn a1_killing_values() {
        let l = a1();
        let k = CompactForm::new(&l).unwrap();
        let (x, y) = (k.x(0), k.y(0));
        assert_eq!(l.killing(&x, &x), GaussRational::from_rational(rat(-2, 1)));
        assert_eq!(l.killing(&y, &y), GaussRational::from_rational(rat(-2, 1)));
        assert_eq!(l.killing(&x, &y), GaussRational::from_rational(rat(0, 1)));
    }

    #[test]
    fn theta_fixes_compact_basis() {
        let l = a1();
        let k = CompactForm::new(&l).unwrap();
        for v in k.real_basis() {
            assert_eq!(k.theta(&v), v);
        }
        let e = l.basis_vector(l.e(0));
        assert_eq!(k.theta(&k.theta(&e)), e);
    }

    #[test]
    fn rational_normalization_has_no_compact_form() {
        let l = ExactAlgebra::new(
            &RootSystem::new(Family::A, 1).unwrap(),
            Normalization::Rational,
        )
        .unwrap();
        assert!(matches!(CompactForm::new(&l), Err(Error::NoCompactForm)));
    }
}
