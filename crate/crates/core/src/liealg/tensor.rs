//! Sparse tensors and wedges over an ordered basis.
//!
//! A wedge of basis vectors embeds into tensors by
//! `x1 ∧ .. ∧ xk = sum_sigma sign(sigma) x_sigma(1) ⊗ .. ⊗ x_sigma(k)`,
//! without a `1/k!` factor.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Index tuple into a basis.
pub type Key = Vec<u16>;

/// Element of the `k`-fold tensor power of a vector space.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S> {
    degree: usize,
    terms: BTreeMap<Key, S>,
}

/// Element of the `k`-th exterior power, keyed by strictly increasing tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct Wedge<S> {
    degree: usize,
    terms: BTreeMap<Key, S>,
}

fn accumulate<S: Scalar>(terms: &mut BTreeMap<Key, S>, key: Key, c: S) {
    if c.is_exact_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_exact_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, c);
        }
    }
}

impl<S: Scalar> Tensor<S> {
    pub fn zero(degree: usize) -> Self {
        Tensor {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c` times the basis tensor with indices `key`.
    pub fn add_term(&mut self, key: Key, c: S) {
        debug_assert_eq!(key.len(), self.degree);
        accumulate(&mut self.terms, key, c);
    }

    pub fn coeff(&self, key: &[u16]) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Tensor<S>) -> Tensor<S> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Tensor<S>) {
        assert_eq!(self.degree, other.degree, "tensor degree mismatch");
        for (k, v) in &other.terms {
            accumulate(&mut self.terms, k.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &Tensor<S>) -> Tensor<S> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Tensor<S> {
        let mut out = Tensor::zero(self.degree);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Reorders tensor slots: slot `j` of the result holds slot `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor<S> {
        let mut out = Tensor::zero(self.degree);
        for (k, v) in &self.terms {
            let key: Key = perm.iter().map(|&p| k[p]).collect();
            accumulate(&mut out.terms, key, v.clone());
        }
        out
    }

    /// Flip `r^{21}` of a two-tensor.
    pub fn flip(&self) -> Tensor<S> {
        self.permute(&[1, 0])
    }

    /// Tensor product.
    pub fn tensor(&self, other: &Tensor<S>) -> Tensor<S> {
        let mut out = Tensor::zero(self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key = a.clone();
                key.extend(b);
                accumulate(&mut out.terms, key, x.clone() * y.clone());
            }
        }
        out
    }

    /// Largest coefficient magnitude (zero for the empty tensor).
    pub fn norm(&self) -> f64 {
        self.terms.values().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Reads an antisymmetric tensor as a wedge by taking its coefficients
    /// on strictly increasing keys.
    pub fn to_wedge(&self) -> Wedge<S> {
        let mut out = Wedge::zero(self.degree);
        for (k, v) in &self.terms {
            if k.windows(2).all(|w| w[0] < w[1]) {
                accumulate(&mut out.terms, k.clone(), v.clone());
            }
        }
        out
    }

    /// Full antisymmetrization `sum_sigma sign(sigma) sigma(T)`.
    pub fn antisymmetrize(&self) -> Tensor<S> {
        let mut out = Tensor::zero(self.degree);
        for (k, v) in &self.terms {
            for (perm, sign) in permutations(self.degree) {
                let key: Key = perm.iter().map(|&p| k[p]).collect();
                let c = if sign > 0 { v.clone() } else { -v.clone() };
                accumulate(&mut out.terms, key, c);
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        let mut out = Tensor::zero(self.degree);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, k.clone(), f(v));
        }
        out
    }
}

/// All permutations of `0..k` with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(
        prefix: &mut Vec<usize>,
        rest: &mut Vec<usize>,
        sign: i32,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if rest.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            // Moving element i of the remaining list to the front costs i transpositions.
            let s = if i % 2 == 0 { sign } else { -sign };
            rec(prefix, rest, s, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), 1, &mut out);
    out
}

/// Sorts a list of indices, returning the sign of the sorting permutation,
/// or `None` when an index repeats.
pub fn sort_with_sign(mut idx: Vec<u16>) -> Option<(Key, i32)> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((idx, sign))
    }
}

impl<S: Scalar> Wedge<S> {
    pub fn zero(degree: usize) -> Self {
        Wedge {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c` times `e_{i1} ∧ .. ∧ e_{ik}` for an arbitrary index order.
    pub fn add_basis(&mut self, idx: &[u16], c: S) {
        debug_assert_eq!(idx.len(), self.degree);
        if let Some((key, sign)) = sort_with_sign(idx.to_vec()) {
            let c = if sign > 0 { c } else { -c };
            accumulate(&mut self.terms, key, c);
        }
    }

    /// The single term `c e_i ∧ e_j ∧ ..`.
    pub fn basis(idx: &[u16], c: S) -> Self {
        let mut w = Wedge::zero(idx.len());
        w.add_basis(idx, c);
        w
    }

    /// Wedge of degree one from a dense vector.
    pub fn from_vector(v: &[S]) -> Self {
        let mut w = Wedge::zero(1);
        for (i, c) in v.iter().enumerate() {
            accumulate(&mut w.terms, vec![i as u16], c.clone());
        }
        w
    }

    pub fn coeff(&self, key: &[u16]) -> S {
        match sort_with_sign(key.to_vec()) {
            Some((k, sign)) => {
                let c = self.terms.get(&k).cloned().unwrap_or_else(S::zero);
                if sign > 0 {
                    c
                } else {
                    -c
                }
            }
            None => S::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Wedge<S>) -> Wedge<S> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Wedge<S>) {
        assert_eq!(self.degree, other.degree, "wedge degree mismatch");
        for (k, v) in &other.terms {
            accumulate(&mut self.terms, k.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &Wedge<S>) -> Wedge<S> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Wedge<S> {
        let mut out = Wedge::zero(self.degree);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Wedge<S>) -> Wedge<S> {
        let mut out = Wedge::zero(self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend(b);
                out.add_basis(&idx, x.clone() * y.clone());
            }
        }
        out
    }

    /// Tensor embedding with the signed-sum convention.
    pub fn to_tensor(&self) -> Tensor<S> {
        let perms = permutations(self.degree);
        let mut out = Tensor::zero(self.degree);
        for (k, v) in &self.terms {
            for (perm, sign) in &perms {
                let key: Key = perm.iter().map(|&p| k[p]).collect();
                let c = if *sign > 0 { v.clone() } else { -v.clone() };
                accumulate(&mut out.terms, key, c);
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Keeps only terms whose indices all satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(u16) -> bool) -> Wedge<S> {
        let mut out = Wedge::zero(self.degree);
        for (k, v) in &self.terms {
            if k.iter().all(|&i| keep(i)) {
                accumulate(&mut out.terms, k.clone(), v.clone());
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Wedge<T> {
        let mut out = Wedge::zero(self.degree);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, k.clone(), f(v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        let total: i32 = p.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 0);
        for (perm, sign) in &p {
            let key: Vec<u16> = perm.iter().map(|&x| x as u16).collect();
            assert_eq!(sort_with_sign(key).unwrap().1, *sign);
        }
    }

    #[test]
    fn wedge_embedding_of_two_vectors() {
        let w: Wedge<Rational> = Wedge::basis(&[2, 0], rat(1, 1));
        let t = w.to_tensor();
        assert_eq!(t.coeff(&[0, 2]), rat(-1, 1));
        assert_eq!(t.coeff(&[2, 0]), rat(1, 1));
        assert_eq!(t.to_wedge(), w);
    }

    #[test]
    fn wedge_product_is_graded_commutative() {
        let a: Wedge<Rational> = Wedge::basis(&[1], rat(2, 1));
        let b: Wedge<Rational> = Wedge::basis(&[0, 3], rat(1, 1));
        assert_eq!(a.wedge(&b), b.wedge(&a));
        let c: Wedge<Rational> = Wedge::basis(&[4], rat(1, 1));
        assert_eq!(a.wedge(&c), c.wedge(&a).scale(&rat(-1, 1)));
        assert!(a.wedge(&a).is_empty());
    }

    #[test]
    fn antisymmetrize_matches_wedge_embedding() {
        let mut t: Tensor<Rational> = Tensor::zero(3);
        t.add_term(vec![0, 1, 2], rat(1, 1));
        assert_eq!(
            t.antisymmetrize(),
            Wedge::basis(&[0, 1, 2], rat(1, 1)).to_tensor()
        );
    }
}
