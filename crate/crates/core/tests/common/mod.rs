//! Brute-force reference implementations, written directly from the
//! definitions with no code shared with the library.

#![allow(dead_code)]

use sidcodes::{ProductGraph, Topology, VertexSet};

/// `K_m × P_n` or `K_m × C_n` with at most 64 vertices, as closed
/// neighborhood bitmasks.
pub struct Oracle {
    pub m: usize,
    pub n: usize,
    pub cycle: bool,
    pub nbhd: Vec<u64>,
}

impl Oracle {
    pub fn new(m: usize, n: usize, cycle: bool) -> Self {
        assert!(m * n <= 64);
        let mut nbhd = vec![0u64; m * n];
        for i in 0..m {
            for j in 0..n {
                let mut mask = 1u64 << (i * n + j);
                for i2 in 0..m {
                    for j2 in 0..n {
                        let d = j.abs_diff(j2);
                        let cols = d == 1 || (cycle && n >= 3 && d == n - 1);
                        if i != i2 && cols {
                            mask |= 1 << (i2 * n + j2);
                        }
                    }
                }
                nbhd[i * n + j] = mask;
            }
        }
        Oracle { m, n, cycle, nbhd }
    }

    pub fn of(g: &ProductGraph) -> Self {
        Self::new(g.m(), g.n(), g.topology() == Topology::Cycle)
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn full(&self) -> u64 {
        if self.order() == 64 {
            !0
        } else {
            (1u64 << self.order()) - 1
        }
    }

    pub fn edges(&self) -> usize {
        self.nbhd
            .iter()
            .map(|b| b.count_ones() as usize - 1)
            .sum::<usize>()
            / 2
    }

    /// Closed-neighborhood intersection test, straight from the definition.
    pub fn is_sid(&self, s: u64) -> bool {
        (0..self.order()).all(|v| {
            let cs = self.nbhd[v] & s;
            if cs == 0 {
                return false;
            }
            let mut inter = self.full();
            for c in 0..self.order() {
                if cs >> c & 1 == 1 {
                    inter &= self.nbhd[c];
                }
            }
            inter == 1 << v
        })
    }

    /// `(N[u] ∩ S) \ N[v]` nonempty for every ordered pair `u ≠ v`.
    pub fn is_def2(&self, s: u64) -> bool {
        if s == 0 {
            return false;
        }
        let n = self.order();
        (0..n).all(|u| (0..n).all(|v| u == v || self.nbhd[u] & s & !self.nbhd[v] != 0))
    }

    pub fn is_dominating(&self, s: u64) -> bool {
        self.nbhd.iter().all(|b| b & s != 0)
    }

    pub fn is_id(&self, s: u64) -> bool {
        if !self.is_dominating(s) {
            return false;
        }
        let n = self.order();
        (0..n).all(|u| (u + 1..n).all(|v| self.nbhd[u] & s != self.nbhd[v] & s))
    }

    fn minimum(&self, pred: impl Fn(u64) -> bool) -> Option<usize> {
        assert!(self.order() <= 24, "exhaustive search is for small graphs");
        (0..=self.full())
            .filter(|&s| pred(s))
            .map(|s| s.count_ones() as usize)
            .min()
    }

    pub fn min_sid(&self) -> Option<usize> {
        self.minimum(|s| self.is_sid(s))
    }

    pub fn min_id(&self) -> Option<usize> {
        self.minimum(|s| self.is_id(s))
    }

    /// All minimum self-identifying codes, as masks.
    pub fn all_min_sid(&self) -> Vec<u64> {
        let Some(k) = self.min_sid() else {
            return Vec::new();
        };
        (0..=self.full())
            .filter(|&s| s.count_ones() as usize == k && self.is_sid(s))
            .collect()
    }

    pub fn to_set(&self, s: u64) -> VertexSet {
        VertexSet::from_words(self.m, self.n, &[s])
    }

    pub fn to_mask(&self, s: &VertexSet) -> u64 {
        s.words().first().copied().unwrap_or(0)
    }
}

/// All graph shapes with at most `max_order` vertices.
pub fn small_graphs(max_order: usize) -> Vec<(usize, usize, Topology)> {
    let mut out = Vec::new();
    for m in 1..=max_order {
        for n in 2..=max_order {
            if m * n > max_order {
                continue;
            }
            out.push((m, n, Topology::Path));
            if n >= 3 {
                out.push((m, n, Topology::Cycle));
            }
        }
    }
    out
}
