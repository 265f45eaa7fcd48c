//! Weyl groups as permutation groups on root ids, inversion sets and the
//! minimal coset representatives `W^X`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

use super::RootSystem;

/// Default cap on the group order; covers every type of rank at most 6.
pub const DEFAULT_WEYL_LIMIT: usize = 100_000;

type Perm = Vec<u16>;

/// The Weyl group of a root system, enumerated by breadth-first search.
///
/// Elements are indexed `0..order()`, with index 0 the identity; indices
/// grow with length.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    npos: usize,
    rank: usize,
    perms: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    simple_perms: Vec<Perm>,
}

/// Result of splitting `W` along the parabolic subgroup `W_X`.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    /// The subset `X` of simple root ids.
    pub x: Vec<usize>,
    /// Elements of the parabolic subgroup `W_X`.
    pub subgroup: Vec<usize>,
    /// Minimal coset representatives `W^X`, in increasing length.
    pub min_reps: Vec<usize>,
    /// `factor[w] = (w1, w2)` with `w = w1 w2`, `w1` in `W^X`, `w2` in `W_X`.
    pub factor: Vec<(usize, usize)>,
    /// The longest element `w^X` of `W^X`.
    pub longest_min_rep: usize,
}

impl WeylGroup {
    /// Enumerates the Weyl group, failing when the order exceeds [`DEFAULT_WEYL_LIMIT`].
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_limit(rs, DEFAULT_WEYL_LIMIT)
    }

    pub fn with_limit(rs: &RootSystem, limit: usize) -> Result<Self> {
        let n = rs.num_roots();
        let simple_perms: Vec<Perm> = (0..rs.rank())
            .map(|i| (0..n).map(|b| rs.reflect(i, b) as u16).collect())
            .collect();
        let identity: Perm = (0..n as u16).collect();
        let mut perms = vec![identity.clone()];
        let mut words = vec![Vec::new()];
        let mut lookup = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, s) in simple_perms.iter().enumerate() {
                // s_i w
                let p: Perm = perms[w].iter().map(|&b| s[b as usize]).collect();
                if lookup.contains_key(&p) {
                    continue;
                }
                if perms.len() >= limit {
                    return Err(Error::WeylGroupTooLarge { limit });
                }
                let mut word = vec![i];
                word.extend(&words[w]);
                lookup.insert(p.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(p);
                words.push(word);
            }
        }
        let npos = rs.num_positive();
        let lengths = perms
            .iter()
            .map(|p| (0..npos).filter(|&b| (p[b] as usize) >= npos).count())
            .collect();
        Ok(WeylGroup {
            npos,
            rank: rs.rank(),
            perms,
            lookup,
            lengths,
            words,
            simple_perms,
        })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Image `w(beta)` of a root id.
    pub fn act(&self, w: usize, beta: usize) -> usize {
        self.perms[w][beta] as usize
    }

    /// Permutation of root ids representing `w`.
    pub fn permutation(&self, w: usize) -> &[u16] {
        &self.perms[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    /// A reduced word `[i1, .., ik]` with `w = s_{i1} ... s_{ik}`.
    pub fn reduced_word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// Reduced word rendered as `s1s2`, or `e` for the identity.
    pub fn word_label(&self, w: usize) -> String {
        if self.words[w].is_empty() {
            "e".to_string()
        } else {
            self.words[w]
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect()
        }
    }

    /// Element index of a permutation, if it lies in the group.
    pub fn index_of(&self, perm: &[u16]) -> Option<usize> {
        self.lookup.get(perm).copied()
    }

    /// Product `a b` (apply `b` first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p: Perm = self.perms[b]
            .iter()
            .map(|&x| self.perms[a][x as usize])
            .collect();
        self.lookup[&p]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut p = vec![0u16; self.perms[w].len()];
        for (i, &x) in self.perms[w].iter().enumerate() {
            p[x as usize] = i as u16;
        }
        self.lookup[&p]
    }

    /// Element for a word of simple reflection indices.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &i in word.iter().rev() {
            if i >= self.rank {
                return Err(Error::InvalidArgument(format!(
                    "simple reflection s{} out of range",
                    i + 1
                )));
            }
            let p: Perm = self.perms[w]
                .iter()
                .map(|&b| self.simple_perms[i][b as usize])
                .collect();
            w = self.lookup[&p];
        }
        Ok(w)
    }

    /// Inversion set `Phi_w = {alpha > 0 : w^{-1} alpha < 0}`.
    pub fn inversion_set(&self, w: usize) -> Vec<usize> {
        let winv = self.inverse(w);
        (0..self.npos)
            .filter(|&a| self.act(winv, a) >= self.npos)
            .collect()
    }

    /// The longest element `w_0`.
    pub fn longest(&self) -> usize {
        (0..self.order())
            .max_by_key(|&w| self.lengths[w])
            .unwrap_or(0)
    }

    /// Parabolic subgroup generated by the reflections in `x`.
    pub fn parabolic_subgroup(&self, x: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &i in x {
                let p: Perm = self.perms[w]
                    .iter()
                    .map(|&b| self.simple_perms[i][b as usize])
                    .collect();
                let v = self.lookup[&p];
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.sort_by_key(|&w| (self.lengths[w], w));
        out
    }

    /// Splits `W = W^X W_X`.
    pub fn coset_decomposition(&self, rs: &RootSystem, x: &[usize]) -> Result<CosetDecomposition> {
        rs.check_simple_subset(x)?;
        let subgroup = self.parabolic_subgroup(x);
        let span = rs.root_span_subset(x)?;
        // w in W^X iff Phi_{w^{-1}} = {alpha > 0 : w alpha < 0} avoids [X].
        let min_reps: Vec<usize> = (0..self.order())
            .filter(|&w| (0..self.npos).all(|a| self.act(w, a) < self.npos || !span.contains(&a)))
            .collect();
        let is_rep: Vec<bool> = {
            let mut v = vec![false; self.order()];
            for &w in &min_reps {
                v[w] = true;
            }
            v
        };
        let sub_inv: Vec<(usize, usize)> = subgroup.iter().map(|&u| (u, self.inverse(u))).collect();
        let factor = (0..self.order())
            .map(|w| {
                sub_inv
                    .iter()
                    .find_map(|&(u, uinv)| {
                        let w1 = self.mul(w, uinv);
                        is_rep[w1].then_some((w1, u))
                    })
                    .expect("every coset has a minimal representative")
            })
            .collect();
        let longest_min_rep = *min_reps
            .iter()
            .max_by_key(|&&w| self.lengths[w])
            .unwrap_or(&0);
        Ok(CosetDecomposition {
            x: x.to_vec(),
            subgroup,
            min_reps,
            factor,
            longest_min_rep,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn orders() {
        for (f, n, order) in [
            (Family::A, 1, 2),
            (Family::A, 2, 6),
            (Family::A, 3, 24),
            (Family::B, 2, 8),
            (Family::B, 3, 48),
            (Family::G, 2, 12),
            (Family::F, 4, 1152),
        ] {
            let rs = RootSystem::new(f, n).unwrap();
            let w = WeylGroup::new(&rs).unwrap();
            assert_eq!(w.order(), order, "{f}{n}");
            assert_eq!(w.length(w.longest()), rs.num_positive());
        }
    }

    #[test]
    fn order_cap_enforced() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(
            WeylGroup::with_limit(&rs, 10).unwrap_err(),
            Error::WeylGroupTooLarge { limit: 10 }
        );
    }

    #[test]
    fn a2_min_reps_for_first_root() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        let cd = w.coset_decomposition(&rs, &[0]).unwrap();
        let labels: Vec<String> = cd.min_reps.iter().map(|&v| w.word_label(v)).collect();
        assert_eq!(labels, vec!["e", "s2", "s1s2"]);
        assert_eq!(cd.subgroup.len(), 2);
        assert_eq!(w.word_label(cd.longest_min_rep), "s1s2");
    }

    #[test]
    fn words_round_trip() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        for v in 0..w.order() {
            assert_eq!(w.from_word(w.reduced_word(v)).unwrap(), v);
            assert_eq!(w.reduced_word(v).len(), w.length(v));
        }
    }
}
