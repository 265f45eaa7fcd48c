//! Simple Lie algebras in a Chevalley-type basis normalized by
//! `<<E_a, E_-a>> = 1` for the Killing form, with the Casimir element, the
//! Schouten bracket on `∧g` and the classical Yang-Baxter operator.
//!
//! Basis layout: indices `0..rank` are `h_i = h_{alpha_i} = [E_{alpha_i}, E_{-alpha_i}]`,
//! index `rank + id` is the root vector of root `id`.

mod chevalley;
pub mod compact;
pub mod tensor;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::scalar::{rat, Rational, Scalar, C64};

pub use compact::CompactForm;
pub use tensor::{Key, Tensor, Wedge};

/// How the root vectors are scaled from the integral Chevalley basis `e_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `E_a = e_a / kappa_a` for positive `a`, `E_-a = e_-a`, with
    /// `kappa_a = <<e_a, e_-a>>`. All structure constants are rational.
    Rational,
    /// `E_{±a} = e_{±a} / sqrt(kappa_a)`. Structure constants satisfy
    /// `N_{-a,-b} = -N_{a,b}`, so `E_a ↦ -E_-a` extends to the compact
    /// conjugation; they are irrational in general.
    Unitary,
}

/// A simple complex Lie algebra with coefficients in `S`.
#[derive(Debug)]
pub struct LieAlgebra<S> {
    rs: RootSystem,
    normalization: Normalization,
    chevalley: HashMap<(usize, usize), i64>,
    table: Vec<Vec<Vec<(u16, S)>>>,
    omega: OnceLock<Tensor<S>>,
    omega12_23: OnceLock<Tensor<S>>,
}

/// Exact algebra over the Gaussian rationals.
pub type ExactAlgebra = LieAlgebra<crate::scalar::GaussRational>;
/// Floating-point algebra used once transcendental values enter.
pub type Algebra = LieAlgebra<C64>;

impl<S: Scalar> LieAlgebra<S> {
    /// Builds the algebra with the given normalization of root vectors.
    pub fn new(rs: &RootSystem, normalization: Normalization) -> Result<Self> {
        let chevalley = chevalley::structure_constants(rs);
        let rank = rs.rank();
        let nroots = rs.num_roots();
        let dim = rank + nroots;
        let len2: Vec<Rational> = (0..nroots).map(|a| rs.killing_ip(a, a)).collect();
        // Scale c_a with E_a = c_a e_a; only ratios c_a c_b / c_{a+b} are needed.
        let ratio = |a: usize, b: usize, s: usize| -> Result<S> {
            match normalization {
                Normalization::Rational => {
                    let c = |x: usize| {
                        if rs.is_positive(x) {
                            len2[x] / rat(2, 1)
                        } else {
                            Rational::one()
                        }
                    };
                    Ok(S::from_rational(c(a) * c(b) / c(s)))
                }
                Normalization::Unitary => {
                    let q = len2[a] * len2[b] / (rat(2, 1) * len2[s]);
                    S::sqrt_rational(q)
                        .ok_or_else(|| Error::NormalizationUnavailable(q.to_string()))
                }
            }
        };

        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..rank {
            for b in 0..nroots {
                let v = rs.root_value(b, &unit(rank, i));
                if !v.is_zero() {
                    table[i][rank + b] = vec![((rank + b) as u16, S::from_rational(v))];
                    table[rank + b][i] = vec![((rank + b) as u16, S::from_rational(-v))];
                }
            }
        }
        for a in 0..nroots {
            for b in 0..nroots {
                let entry = if b == rs.neg(a) {
                    rs.root(a)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i as u16, S::from_rational(rat(c, 1))))
                        .collect()
                } else if let Some(s) = rs.add(a, b) {
                    let n = chevalley[&(a, b)];
                    let c = S::from_rational(rat(n, 1)) * ratio(a, b, s)?;
                    vec![((rank + s) as u16, c)]
                } else {
                    Vec::new()
                };
                table[rank + a][rank + b] = entry;
            }
        }
        Ok(LieAlgebra {
            rs: rs.clone(),
            normalization,
            chevalley,
            table,
            omega: OnceLock::new(),
            omega12_23: OnceLock::new(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.num_roots()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Basis index of `h_i`.
    pub fn h(&self, i: usize) -> usize {
        i
    }

    /// Basis index of the root vector `E_a`.
    pub fn e(&self, root: usize) -> usize {
        self.rs.rank() + root
    }

    /// Root id of a basis index, `None` for Cartan indices.
    pub fn root_of(&self, idx: usize) -> Option<usize> {
        idx.checked_sub(self.rs.rank())
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        idx < self.rs.rank()
    }

    /// Symbolic name of a basis element: `h1`, `E[1,0]`.
    pub fn basis_name(&self, idx: usize) -> String {
        match self.root_of(idx) {
            None => format!("h{}", idx + 1),
            Some(r) => format!("E{}", self.rs.root_label(r)),
        }
    }

    /// Integral Chevalley constant `N_{a,b}` before rescaling (zero if `a + b` is not a root).
    pub fn chevalley_constant(&self, a: usize, b: usize) -> i64 {
        self.chevalley.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Structure constant in this basis: `[E_a, E_b] = N_{a,b} E_{a+b}`.
    pub fn structure_constant(&self, a: usize, b: usize) -> S {
        let (ea, eb) = (self.e(a), self.e(b));
        match self.rs.add(a, b) {
            Some(_) => self.table[ea][eb][0].1.clone(),
            None => S::zero(),
        }
    }

    /// `[e_i, e_j]` as a sparse list.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u16, S)] {
        &self.table[i][j]
    }

    pub fn zero_vector(&self) -> Vec<S> {
        vec![S::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = self.zero_vector();
        v[i] = S::one();
        v
    }

    /// Lie bracket of dense vectors.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_exact_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_exact_zero()) {
                for (k, c) in &self.table[i][j] {
                    let k = *k as usize;
                    out[k] = out[k].clone() + a.clone() * b.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Killing form on basis elements from the normalized table.
    pub fn killing_basis(&self, i: usize, j: usize) -> S {
        match (self.root_of(i), self.root_of(j)) {
            (None, None) => S::from_rational(self.rs.gram()[i][j]),
            (Some(a), Some(b)) if b == self.rs.neg(a) => S::one(),
            _ => S::zero(),
        }
    }

    /// Killing form of dense vectors (bilinear, no conjugation).
    pub fn killing(&self, x: &[S], y: &[S]) -> S {
        let mut acc = S::zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_exact_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_exact_zero()) {
                let k = self.killing_basis(i, j);
                if !k.is_exact_zero() {
                    acc = acc + a.clone() * b.clone() * k;
                }
            }
        }
        acc
    }

    /// Killing form computed as `tr(ad x ad y)` on basis elements.
    pub fn killing_trace(&self, i: usize, j: usize) -> S {
        let mut acc = S::zero();
        for k in 0..self.dim() {
            // coefficient of e_k in [e_i, [e_j, e_k]]
            for (m, c1) in &self.table[j][k] {
                for (kk, c2) in &self.table[i][*m as usize] {
                    if *kk as usize == k {
                        acc = acc + c1.clone() * c2.clone();
                    }
                }
            }
        }
        acc
    }

    /// `h_a = [E_a, E_-a]` as a dense vector; equals the Killing dual of `a`.
    pub fn coroot(&self, a: usize) -> Vec<S> {
        let mut v = self.zero_vector();
        for (i, &c) in self.rs.root(a).iter().enumerate() {
            v[i] = S::from_rational(rat(c, 1));
        }
        v
    }

    /// Cartan element with rational coordinates in the basis `h_i`.
    pub fn cartan_element(&self, coords: &[Rational]) -> Vec<S> {
        let mut v = self.zero_vector();
        for (i, c) in coords.iter().enumerate() {
            v[i] = S::from_rational(*c);
        }
        v
    }

    /// Largest Jacobi residual over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis_vec(i, j);
                for k in j + 1..n {
                    let ek = self.basis_vector(k);
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let t1 = self.bracket(&eij, &ek);
                    let t2 = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let t3 = self.bracket(&self.bracket(&ek, &ei), &ej);
                    for m in 0..n {
                        let s = t1[m].clone() + t2[m].clone() + t3[m].clone();
                        worst = worst.max(s.magnitude());
                    }
                }
            }
        }
        worst
    }

    fn bracket_basis_vec(&self, i: usize, j: usize) -> Vec<S> {
        let mut v = self.zero_vector();
        for (k, c) in &self.table[i][j] {
            v[*k as usize] = c.clone();
        }
        v
    }

    /// Casimir element `Omega = sum x_i ⊗ x^i` over Killing-dual bases.
    pub fn omega(&self) -> &Tensor<S> {
        self.omega.get_or_init(|| {
            let rank = self.rank();
            let mut t = Tensor::zero(2);
            let ginv = self.rs.gram_inverse();
            for i in 0..rank {
                for j in 0..rank {
                    t.add_term(vec![i as u16, j as u16], S::from_rational(ginv[i][j]));
                }
            }
            for a in 0..self.rs.num_roots() {
                t.add_term(
                    vec![self.e(a) as u16, self.e(self.rs.neg(a)) as u16],
                    S::one(),
                );
            }
            t
        })
    }

    /// Replaces slot `leg` of every term of `t` by `[x, ·]` for basis element `x`.
    pub fn ad_leg(&self, x: usize, t: &Tensor<S>, leg: usize) -> Tensor<S> {
        let mut out = Tensor::zero(t.degree());
        for (k, v) in t.terms() {
            for (m, c) in &self.table[x][k[leg] as usize] {
                let mut key = k.clone();
                key[leg] = *m;
                out.add_term(key, v.clone() * c.clone());
            }
        }
        out
    }

    /// Diagonal adjoint action `ad_x` on a tensor.
    pub fn ad_tensor(&self, x: usize, t: &Tensor<S>) -> Tensor<S> {
        let mut out = Tensor::zero(t.degree());
        for leg in 0..t.degree() {
            out.add_assign(&self.ad_leg(x, t, leg));
        }
        out
    }

    /// Diagonal adjoint action of a dense vector on a wedge.
    pub fn ad_wedge(&self, x: &[S], w: &Wedge<S>) -> Wedge<S> {
        let mut out = Wedge::zero(w.degree());
        for (k, v) in w.terms() {
            for slot in 0..k.len() {
                for (xi, a) in x.iter().enumerate().filter(|(_, a)| !a.is_exact_zero()) {
                    for (m, c) in &self.table[xi][k[slot] as usize] {
                        let mut key = k.clone();
                        key[slot] = *m;
                        out.add_basis(&key, v.clone() * a.clone() * c.clone());
                    }
                }
            }
        }
        out
    }

    /// Commutator `[a^{p q}, b^{p' q'}]` in `g⊗g⊗g` of two two-tensors
    /// placed on the given legs, which must share exactly one leg.
    pub fn leg_bracket(
        &self,
        a: &Tensor<S>,
        la: (usize, usize),
        b: &Tensor<S>,
        lb: (usize, usize),
    ) -> Tensor<S> {
        let mut out = Tensor::zero(3);
        for (ka, va) in a.terms() {
            for (kb, vb) in b.terms() {
                let mut slots: [Option<u16>; 3] = [None; 3];
                slots[la.0] = Some(ka[0]);
                slots[la.1] = Some(ka[1]);
                let shared = if lb.0 == la.0 || lb.0 == la.1 {
                    lb.0
                } else {
                    lb.1
                };
                let other = if shared == lb.0 { lb.1 } else { lb.0 };
                let (bs, bo) = if shared == lb.0 {
                    (kb[0], kb[1])
                } else {
                    (kb[1], kb[0])
                };
                slots[other] = Some(bo);
                let left = slots[shared].expect("legs share one slot");
                for (m, c) in &self.table[left as usize][bs as usize] {
                    let mut key: Vec<u16> = slots.iter().map(|s| s.unwrap_or(0)).collect();
                    key[shared] = *m;
                    out.add_term(key, va.clone() * vb.clone() * c.clone());
                }
            }
        }
        out
    }

    /// `CYB(r) = [r12, r13] + [r12, r23] + [r13, r23]`.
    pub fn cyb(&self, r: &Tensor<S>) -> Tensor<S> {
        let mut out = self.leg_bracket(r, (0, 1), r, (0, 2));
        out.add_assign(&self.leg_bracket(r, (0, 1), r, (1, 2)));
        out.add_assign(&self.leg_bracket(r, (0, 2), r, (1, 2)));
        out
    }

    /// `[Omega12, Omega23]`, cached.
    pub fn omega12_23(&self) -> &Tensor<S> {
        self.omega12_23.get_or_init(|| {
            let o = self.omega();
            self.leg_bracket(o, (0, 1), o, (1, 2))
        })
    }

    /// Schouten bracket of constant multivectors:
    /// `[x1∧..∧xp, y1∧..∧yq] = sum (-1)^{i+j} [xi, yj] ∧ x1..x̂i..xp ∧ y1..ŷj..yq`.
    pub fn schouten(&self, a: &Wedge<S>, b: &Wedge<S>) -> Result<Wedge<S>> {
        if a.degree() == 0 || b.degree() == 0 {
            return Err(Error::DegreeMismatch);
        }
        let deg = a.degree() + b.degree() - 1;
        let mut out = Wedge::zero(deg);
        for (ka, va) in a.terms() {
            for (kb, vb) in b.terms() {
                let coeff = va.clone() * vb.clone();
                for i in 0..ka.len() {
                    for j in 0..kb.len() {
                        let br = &self.table[ka[i] as usize][kb[j] as usize];
                        if br.is_empty() {
                            continue;
                        }
                        let sign_neg = (i + j) % 2 == 1;
                        let mut rest: Vec<u16> = Vec::with_capacity(deg);
                        rest.push(0);
                        rest.extend(
                            ka.iter()
                                .enumerate()
                                .filter(|&(t, _)| t != i)
                                .map(|(_, &v)| v),
                        );
                        rest.extend(
                            kb.iter()
                                .enumerate()
                                .filter(|&(t, _)| t != j)
                                .map(|(_, &v)| v),
                        );
                        for (m, c) in br {
                            rest[0] = *m;
                            let v = coeff.clone() * c.clone();
                            out.add_basis(&rest, if sign_neg { -v } else { v });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Skew-symmetrization used for `dr`: `x⊗u⊗v ↦ x⊗u⊗v - u⊗x⊗v + u⊗v⊗x`.
    ///
    /// On tensors antisymmetric in the last two slots this equals half the
    /// full signed sum over permutations.
    pub fn alt(t: &Tensor<S>) -> Tensor<S> {
        let mut out = t.clone();
        out.add_assign(&t.permute(&[1, 0, 2]).scale(&-S::one()));
        out.add_assign(&t.permute(&[1, 2, 0]));
        out
    }

    /// Dense Killing table on the basis.
    pub fn killing_table(&self) -> Vec<Vec<S>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.killing_basis(i, j)).collect())
            .collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n)
        .map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}
