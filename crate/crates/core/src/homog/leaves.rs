//! Symplectic leaves of `π_{X,∅,λ}` indexed by `W^X`, and the rank of
//! `π_{X,X₁,λ}` at the Weyl group points of `K/T`.

use serde::Serialize;

use super::PoissonHomSpec;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, WeylGroup};
use crate::scalar::C64;

/// One symplectic leaf `⋃_{w₂ ∈ W_X} Σ_{w₁w₂}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Leaf {
    /// Weyl group index of `w₁ ∈ W^X`.
    pub rep: usize,
    /// Reduced word of `w₁` (0-based simple reflection indices).
    pub rep_word: Vec<usize>,
    /// Weyl group indices of the Bruhat cells in the leaf.
    pub cells: Vec<usize>,
    /// Reduced words of the cells.
    pub cell_words: Vec<Vec<usize>>,
    /// `2·l(w₁) + dim_R(k_X/t)`.
    pub dimension: usize,
    pub open_dense: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafAtlas {
    pub x: Vec<usize>,
    pub leaves: Vec<Leaf>,
    /// `dim_R K/T`.
    pub manifold_dimension: usize,
}

impl LeafAtlas {
    /// True when every Weyl element lies in exactly one leaf.
    pub fn cells_partition(&self, order: usize) -> bool {
        let mut seen = vec![0usize; order];
        for l in &self.leaves {
            for &c in &l.cells {
                if c >= order {
                    return false;
                }
                seen[c] += 1;
            }
        }
        seen.iter().all(|&n| n == 1)
    }
}

/// Leaves of `π_{X,∅,λ}`; `x1` must be empty.
pub fn enumerate_leaves(
    rs: &RootSystem,
    weyl: &WeylGroup,
    x: &[usize],
    x1: &[usize],
) -> Result<LeafAtlas> {
    rs.check_simple_subset(x)?;
    if !x1.is_empty() {
        return Err(Error::UnsupportedX1);
    }
    let dec = weyl.coset_decomposition(rs, x)?;
    let fiber = 2 * rs.positive_roots().filter(|&a| rs.in_span(x, a)).count();
    let leaves = dec
        .min_reps
        .iter()
        .map(|&w1| {
            let mut cells: Vec<usize> = dec.subgroup.iter().map(|&w2| weyl.mul(w1, w2)).collect();
            cells.sort_by_key(|&w| (weyl.length(w), w));
            Leaf {
                rep: w1,
                rep_word: weyl.reduced_word(w1).to_vec(),
                cell_words: cells
                    .iter()
                    .map(|&w| weyl.reduced_word(w).to_vec())
                    .collect(),
                cells,
                dimension: 2 * weyl.length(w1) + fiber,
                open_dense: w1 == dec.longest_min_rep,
            }
        })
        .collect();
    Ok(LeafAtlas {
        x: x.to_vec(),
        leaves,
        manifold_dimension: 2 * rs.num_positive(),
    })
}

/// Coefficients `c_α` of `X_α∧Y_α` in `l_{ẇ⁻¹}π(ẇT) = Ad_{ẇ⁻¹}Λ − A`:
/// `c_α = −(iε/4)(±1 − cothᵉ α(λ))` with `+` when `wα > 0`.
pub fn bivector_at_weyl_point(
    rs: &RootSystem,
    weyl: &WeylGroup,
    spec: &PoissonHomSpec,
    w: usize,
) -> Vec<(usize, C64)> {
    let pre = -C64::i() * spec.epsilon / 4.0;
    rs.positive_roots()
        .map(|a| {
            let s = if rs.is_positive(weyl.act(w, a)) {
                1.0
            } else {
                -1.0
            };
            (a, pre * (s - spec.coth_e(rs, a)))
        })
        .collect()
}

/// Rank of `π_{X,X₁,λ}` at the point `ẇT`: twice the number of nonzero `c_α`.
pub fn rank_at_weyl_point(
    rs: &RootSystem,
    weyl: &WeylGroup,
    spec: &PoissonHomSpec,
    w: usize,
    tol: f64,
) -> usize {
    let scale = spec.epsilon.norm();
    2 * bivector_at_weyl_point(rs, weyl, spec, w)
        .iter()
        .filter(|(_, c)| c.norm() > tol * scale)
        .count()
}
