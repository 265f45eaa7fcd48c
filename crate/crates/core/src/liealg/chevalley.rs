//! Integral Chevalley structure constants from extraspecial pairs.
//!
//! Positive roots are totally ordered by id. For each non-simple positive
//! root `xi` the extraspecial pair `(a1, b1)` has `a1` minimal among pairs
//! `a + b = xi` with `0 < a < b`; its constant is fixed to `+(p + 1)`. All
//! other constants follow from antisymmetry, the three-term rule for
//! `a + b + c = 0`, the rule `N_{-a,-b} = -N_{a,b}` and the four-term
//! relation for `a + b + c + d = 0`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::rootsys::RootSystem;
use crate::scalar::{rat, Rational};

/// Table of `N_{a,b}` keyed by root id pairs whose sum is a root.
pub(crate) fn structure_constants(rs: &RootSystem) -> HashMap<(usize, usize), i64> {
    let mut ctx = Ctx {
        rs,
        memo: HashMap::new(),
        extraspecial: HashMap::new(),
    };
    for xi in rs.positive_roots() {
        let pair = rs
            .positive_roots()
            .filter_map(|a| {
                let b = rs.id_of(&diff(rs.root(xi), rs.root(a)))?;
                (rs.is_positive(b) && a < b).then_some((a, b))
            })
            .min();
        if let Some(p) = pair {
            ctx.extraspecial.insert(xi, p);
        }
    }
    let n = rs.num_roots();
    let mut table = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if rs.add(a, b).is_some() {
                table.insert((a, b), ctx.n(a, b));
            }
        }
    }
    table
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

struct Ctx<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
    extraspecial: HashMap<usize, (usize, usize)>,
}

impl Ctx<'_> {
    fn len2(&self, a: usize) -> Rational {
        self.rs.killing_ip(a, a)
    }

    fn len2_coords(&self, v: &[i64]) -> Rational {
        self.rs.ip_coords(v, v)
    }

    /// Largest `p` with `b - p a` a root.
    fn string_down(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut v = self.rs.root(b).to_vec();
        loop {
            v = diff(&v, self.rs.root(a));
            if self.rs.id_of(&v).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// `N_{a,b}`, zero when `a + b` is not a root.
    fn n(&mut self, a: usize, b: usize) -> i64 {
        if self.rs.add(a, b).is_none() {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let v = self.compute(a, b);
        self.memo.insert((a, b), v);
        v
    }

    fn compute(&mut self, a: usize, b: usize) -> i64 {
        let rs = self.rs;
        let (pa, pb) = (rs.is_positive(a), rs.is_positive(b));
        match (pa, pb) {
            (true, true) => {
                if a > b {
                    return -self.n(b, a);
                }
                let xi = rs.add(a, b).expect("checked by caller");
                let (a1, b1) = self.extraspecial[&xi];
                if (a, b) == (a1, b1) {
                    return self.string_down(a, b) + 1;
                }
                // Four-term relation with (a, b, -a1, -b1).
                let n1 = self.n(a1, b1);
                let mut acc = Rational::zero();
                let bma1 = diff(rs.root(b), rs.root(a1));
                if rs.id_of(&bma1).is_some() {
                    let t = self.n(b, rs.neg(a1)) * self.n(a, rs.neg(b1));
                    acc += rat(t, 1) / self.len2_coords(&bma1);
                }
                let ama1 = diff(rs.root(a), rs.root(a1));
                if rs.id_of(&ama1).is_some() {
                    let t = self.n(rs.neg(a1), a) * self.n(b, rs.neg(b1));
                    acc += rat(t, 1) / self.len2_coords(&ama1);
                }
                let v = self.len2(xi) * acc / rat(n1, 1);
                assert!(v.is_integer(), "non-integral structure constant");
                v.to_integer()
            }
            (false, false) => -self.n(rs.neg(a), rs.neg(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                let s = rs.add(a, b).expect("checked by caller");
                let c = rs.neg(s);
                let v = if rs.is_positive(s) {
                    // (b, c) both negative: N_{a,b} = (c,c)/(a,a) N_{b,c} = -(c,c)/(a,a) N_{-b,-c}.
                    -self.len2(c) / self.len2(a) * rat(self.n(rs.neg(b), rs.neg(c)), 1)
                } else {
                    // (c, a) both positive: N_{a,b} = (c,c)/(b,b) N_{c,a}.
                    self.len2(c) / self.len2(b) * rat(self.n(c, a), 1)
                };
                assert!(v.is_integer(), "non-integral structure constant");
                v.to_integer()
            }
        }
    }
}
