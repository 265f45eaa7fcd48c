//! Root systems of the simple Lie algebras A–G, Killing-normalized inner
//! products and fundamental coweights.
//!
//! Roots are integer vectors in the simple-root basis. Root ids are laid out
//! as `0..npos` for the positive roots (sorted by height, simple roots first
//! in their Bourbaki order) followed by `npos..2*npos` for their negatives,
//! so that `neg(i) = i ± npos`.

mod weyl;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, RatMatrix};
use crate::scalar::{rat, Rational};

pub use weyl::{CosetDecomposition, WeylGroup, DEFAULT_WEYL_LIMIT};

/// Cartan-Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Maximum supported rank.
pub const MAX_RANK: usize = 8;

/// A reduced irreducible root system with a fixed positive system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    /// Killing inner products of simple roots.
    gram: RatMatrix,
    gram_inv: RatMatrix,
    /// Fundamental coweights in the basis `h_i = h_{alpha_i}` of the Cartan.
    coweights: RatMatrix,
}

/// Squared lengths (any consistent scale) and Dynkin edges `(i, j, (alpha_i, alpha_j))`.
type Diagram = (Vec<i64>, Vec<(usize, usize, i64)>);

fn diagram(family: Family, rank: usize) -> Option<Diagram> {
    let chain = |n: usize, w: i64| (0..n.saturating_sub(1)).map(move |i| (i, i + 1, w));
    match (family, rank) {
        (Family::A, n) if n >= 1 => Some((vec![2; n], chain(n, -1).collect())),
        (Family::B, n) if n >= 2 => {
            let mut len = vec![2; n];
            len[n - 1] = 1;
            Some((len, chain(n, -1).collect()))
        }
        (Family::C, n) if n >= 3 => {
            let mut len = vec![2; n];
            len[n - 1] = 4;
            let mut edges: Vec<_> = chain(n - 1, -1).collect();
            edges.push((n - 2, n - 1, -2));
            Some((len, edges))
        }
        (Family::D, n) if n >= 4 => {
            let mut edges: Vec<_> = chain(n - 1, -1).collect();
            edges.push((n - 3, n - 1, -1));
            Some((vec![2; n], edges))
        }
        (Family::E, n) if (6..=8).contains(&n) => {
            let mut edges = vec![(0, 2, -1), (1, 3, -1)];
            edges.extend((2..n - 1).map(|i| (i, i + 1, -1)));
            Some((vec![2; n], edges))
        }
        (Family::F, 4) => Some((vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)])),
        (Family::G, 2) => Some((vec![2, 6], vec![(0, 1, -3)])),
        _ => None,
    }
}

impl RootSystem {
    /// Builds the root system of type `family` and rank `rank`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let unknown = || Error::UnknownType(format!("{family}{rank}"));
        if rank == 0 || rank > MAX_RANK {
            return Err(unknown());
        }
        let (len, edges) = diagram(family, rank).ok_or_else(unknown)?;
        let mut ip = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            ip[i][i] = len[i];
        }
        for &(i, j, w) in &edges {
            ip[i][j] = w;
            ip[j][i] = w;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * ip[i][j] / ip[i][i]).collect())
            .collect();

        let positives = positive_roots(&cartan);
        let npos = positives.len();
        let mut roots = positives.clone();
        roots.extend(
            positives
                .iter()
                .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
        );
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        // Killing form on the Cartan in the coroot basis: K_ij = sum_alpha alpha(h_i) alpha(h_j).
        let values: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| {
                (0..rank)
                    .map(|i| (0..rank).map(|j| cartan[i][j] * r[j]).sum())
                    .collect()
            })
            .collect();
        let kmat: RatMatrix = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| rat(values.iter().map(|v| v[i] * v[j]).sum(), 1))
                    .collect()
            })
            .collect();
        let kinv = exact::inverse(&kmat).ok_or_else(unknown)?;
        // <<alpha_a, alpha_b>> = v_a^T K^{-1} v_b with v_a,i = alpha_a(h_i) = cartan[i][a].
        let v: RatMatrix = (0..rank)
            .map(|i| (0..rank).map(|a| rat(cartan[i][a], 1)).collect())
            .collect();
        let vt: RatMatrix = (0..rank)
            .map(|a| (0..rank).map(|i| v[i][a]).collect())
            .collect();
        let gram = exact::mat_mul(&exact::mat_mul(&vt, &kinv), &v);
        let gram_inv = exact::inverse(&gram).ok_or_else(unknown)?;
        // Coweight gamma in the basis h_i = t_{alpha_i}: columns of gram^{-1}.
        let coweights = (0..rank)
            .map(|g| (0..rank).map(|i| gram_inv[i][g]).collect())
            .collect();

        Ok(RootSystem {
            family,
            rank,
            cartan,
            roots,
            npos,
            index,
            gram,
            gram_inv,
            coweights,
        })
    }

    /// Parses a designator such as `"A2"` or `"g2"`.
    pub fn from_designator(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        RootSystem::new(family, rank).map_err(|_| Error::UnknownType(s.to_string()))
    }

    pub fn designator(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of roots `|Sigma|`.
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Coordinates of a root in the simple-root basis.
    pub fn root(&self, id: usize) -> &[i64] {
        &self.roots[id]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn id_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn neg(&self, id: usize) -> usize {
        if id < self.npos {
            id + self.npos
        } else {
            id - self.npos
        }
    }

    pub fn is_positive(&self, id: usize) -> bool {
        id < self.npos
    }

    pub fn height(&self, id: usize) -> i64 {
        self.roots[id].iter().sum()
    }

    /// Ids of the simple roots (the first `rank` positive roots).
    pub fn simple_roots(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.npos
    }

    /// Sum of two roots when it is a root.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| x + y)
            .collect();
        self.id_of(&s)
    }

    /// Killing inner products of the simple roots.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Inverse of [`RootSystem::gram`]; the Cartan part of the Casimir.
    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inv
    }

    /// Killing inner product of two weights given in simple-root coordinates.
    pub fn ip_coords(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += self.gram[i][j] * rat(a[i] * b[j], 1);
            }
        }
        acc
    }

    /// Killing inner product `<<alpha, beta>>` of two roots.
    pub fn killing_ip(&self, a: usize, b: usize) -> Rational {
        self.ip_coords(&self.roots[a], &self.roots[b])
    }

    /// Fundamental coweight of simple root `gamma` in the basis `h_i = h_{alpha_i}`.
    pub fn coweight(&self, gamma: usize) -> &[Rational] {
        &self.coweights[gamma]
    }

    /// Value `alpha(h)` of a root on a Cartan element given in the basis `h_i = h_{alpha_i}`.
    pub fn root_value(&self, id: usize, h: &[Rational]) -> Rational {
        let r = &self.roots[id];
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += h[i] * self.gram[i][j] * rat(r[j], 1);
            }
        }
        acc
    }

    /// `<alpha_i^vee, beta>` for simple root `i`.
    pub fn coroot_pairing(&self, i: usize, beta: usize) -> i64 {
        (0..self.rank)
            .map(|j| self.cartan[i][j] * self.roots[beta][j])
            .sum()
    }

    /// Image of root `beta` under the simple reflection `s_i`.
    pub fn reflect(&self, i: usize, beta: usize) -> usize {
        let c = self.coroot_pairing(i, beta);
        let mut v = self.roots[beta].clone();
        v[i] -= c;
        self.index[&v]
    }

    /// Image of root `beta` under the reflection `s_alpha` for an arbitrary root.
    pub fn reflect_by(&self, alpha: usize, beta: usize) -> usize {
        let num = self.killing_ip(alpha, beta) * rat(2, 1) / self.killing_ip(alpha, alpha);
        debug_assert!(num.is_integer());
        let c = num.to_integer();
        let v: Vec<i64> = self.roots[beta]
            .iter()
            .zip(&self.roots[alpha])
            .map(|(b, a)| b - c * a)
            .collect();
        self.index[&v]
    }

    /// Validates that every entry of `x` is a simple root id.
    pub fn check_simple_subset(&self, x: &[usize]) -> Result<()> {
        match x.iter().find(|&&g| g >= self.rank) {
            Some(&g) => Err(Error::BadSubset(self.root_label(g))),
            None => Ok(()),
        }
    }

    /// `[X]`: the roots lying in the linear span of the simple roots in `x`.
    pub fn root_span_subset(&self, x: &[usize]) -> Result<Vec<usize>> {
        self.check_simple_subset(x)?;
        Ok((0..self.roots.len())
            .filter(|&id| {
                self.roots[id]
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || x.contains(&j))
            })
            .collect())
    }

    /// Membership test for `[X]`.
    pub fn in_span(&self, x: &[usize], id: usize) -> bool {
        self.roots[id]
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0 || x.contains(&j))
    }

    /// Label of a root as its coordinate vector, e.g. `[1,0]`.
    pub fn root_label(&self, id: usize) -> String {
        match self.roots.get(id) {
            Some(r) => {
                let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            None => format!("#{id}"),
        }
    }

    /// Name of a simple root, `a1..ar`.
    pub fn simple_name(&self, i: usize) -> String {
        format!("a{}", i + 1)
    }

    /// Parses a comma-separated list of simple-root names (`a1,a3`).
    pub fn parse_simple_names(&self, s: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let idx = part
                .strip_prefix('a')
                .or_else(|| part.strip_prefix('A'))
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1 && n <= self.rank)
                .ok_or_else(|| Error::BadSubset(part.to_string()))?;
            if !out.contains(&(idx - 1)) {
                out.push(idx - 1);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Sum over `gamma` in `x1` of the coefficient of `gamma` in root `id`,
    /// i.e. `alpha(rho_vee_{X1})`.
    pub fn coweight_sum_value(&self, x1: &[usize], id: usize) -> i64 {
        x1.iter().map(|&g| self.roots[id][g]).sum()
    }
}

/// Positive roots from the Cartan matrix by root strings, sorted by height
/// and then with simple roots in index order.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let simple: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: Vec<Vec<i64>> = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..rank {
                // p: largest k with beta - k alpha_i a root (or zero when beta = alpha_i).
                let mut p = 0;
                loop {
                    let mut v = beta.clone();
                    v[i] -= p + 1;
                    if all.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut v = beta.clone();
                    v[i] += 1;
                    if !next.contains(&v) && !all.contains(&v) {
                        next.push(v);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
