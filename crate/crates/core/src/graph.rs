//! Direct products `K_m × P_n` and `K_m × C_n`.
//!
//! Vertices are pairs `(row, col)` where `row` indexes the complete factor and
//! `col` the path or cycle factor. Two vertices are adjacent iff their rows
//! differ and their columns are adjacent in the path/cycle. The canonical
//! linear index is row-major: `idx = row * n + col`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Path,
    Cycle,
}

impl Topology {
    pub fn min_columns(self) -> usize {
        match self {
            Topology::Path => 2,
            Topology::Cycle => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Path => "path",
            Topology::Cycle => "cycle",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "path" | "p" => Ok(Topology::Path),
            "cycle" | "c" => Ok(Topology::Cycle),
            other => Err(Error::Parse(format!("unknown topology '{other}'"))),
        }
    }
}

/// A vertex `(v_row, col)`. Serialized as the two-element array `[row, col]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }
}

impl From<[usize; 2]> for Vertex {
    fn from([row, col]: [usize; 2]) -> Self {
        Vertex { row, col }
    }
}

impl From<Vertex> for [usize; 2] {
    fn from(v: Vertex) -> Self {
        [v.row, v.col]
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((row, col): (usize, usize)) -> Self {
        Vertex { row, col }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Fixed-size bit membership over the canonical indices of an `m × n` product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    m: usize,
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(m: usize, n: usize) -> Self {
        VertexSet {
            m,
            n,
            words: vec![0; (m * n).div_ceil(64)],
        }
    }

    pub fn full(m: usize, n: usize) -> Self {
        let mut s = Self::empty(m, n);
        s.words.iter_mut().for_each(|w| *w = !0);
        s.trim();
        s
    }

    pub fn from_vertices<I, V>(m: usize, n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
    {
        let mut s = Self::empty(m, n);
        for v in vertices {
            let v = v.into();
            if v.row >= m || v.col >= n {
                return Err(Error::VertexOutOfRange {
                    row: v.row,
                    col: v.col,
                    m,
                    n,
                });
            }
            s.insert_index(v.row * n + v.col);
        }
        Ok(s)
    }

    /// Builds a set from raw word storage; bits beyond `m * n` are cleared.
    pub fn from_words(m: usize, n: usize, words: &[u64]) -> Self {
        let mut s = Self::empty(m, n);
        for (dst, src) in s.words.iter_mut().zip(words) {
            *dst = *src;
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        let bits = self.m * self.n;
        if !bits.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (bits % 64)) - 1;
            }
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn universe_len(&self) -> usize {
        self.m * self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        idx < self.m * self.n && self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.row < self.m && v.col < self.n && self.contains_index(v.row * self.n + v.col)
    }

    pub fn insert_index(&mut self, idx: usize) -> bool {
        assert!(idx < self.m * self.n, "index {idx} out of range");
        let was = self.contains_index(idx);
        self.words[idx / 64] |= 1 << (idx % 64);
        !was
    }

    pub fn remove_index(&mut self, idx: usize) -> bool {
        let was = self.contains_index(idx);
        if was {
            self.words[idx / 64] &= !(1 << (idx % 64));
        }
        was
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v.row < self.m && v.col < self.n, "vertex {v} out of range");
        self.insert_index(v.row * self.n + v.col)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        v.row < self.m && v.col < self.n && self.remove_index(v.row * self.n + v.col)
    }

    fn check_dims(&self, other: &VertexSet) -> Result<()> {
        if self.dims() == other.dims() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dims(), other.dims()))
        }
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> Result<VertexSet> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a = f(*a, *b);
        }
        Ok(out)
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        out.words.iter_mut().for_each(|w| *w = !*w);
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.dims(), other.dims());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        assert_eq!(self.dims(), other.dims());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.dims() == other.dims()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Canonical indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        let n = self.n;
        self.indices().map(move |i| Vertex::new(i / n, i % n))
    }

    pub fn first(&self) -> Option<Vertex> {
        self.iter().next()
    }

    /// Membership as a `0`/`1` string in canonical index order.
    pub fn bitstring(&self) -> String {
        (0..self.universe_len())
            .map(|i| if self.contains_index(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A vertex permutation given by the image of every canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    pub label: String,
    image: Vec<usize>,
}

impl Permutation {
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_index(&self, idx: usize) -> usize {
        self.image[idx]
    }

    pub fn apply_set(&self, set: &VertexSet) -> VertexSet {
        let (m, n) = set.dims();
        let mut out = VertexSet::empty(m, n);
        for i in set.indices() {
            out.insert_index(self.image[i]);
        }
        out
    }
}

/// An immutable `K_m × P_n` or `K_m × C_n`. Closed neighborhoods are built
/// on first use and cached.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    m: usize,
    n: usize,
    topology: Topology,
    closed_nbhd: Vec<OnceLock<VertexSet>>,
}

impl PartialEq for ProductGraph {
    fn eq(&self, other: &Self) -> bool {
        (self.m, self.n, self.topology) == (other.m, other.n, other.topology)
    }
}

impl Eq for ProductGraph {}

impl ProductGraph {
    pub fn new(m: usize, n: usize, topology: Topology) -> Result<Self> {
        let err = |reason| Error::Dimension {
            m,
            n,
            topology,
            reason,
        };
        if m < 1 {
            return Err(err("the complete factor needs at least one vertex"));
        }
        if n < topology.min_columns() {
            return Err(err(match topology {
                Topology::Path => "a path needs n >= 2",
                Topology::Cycle => "a cycle needs n >= 3",
            }));
        }
        Ok(ProductGraph {
            m,
            n,
            topology,
            closed_nbhd: (0..m * n).map(|_| OnceLock::new()).collect(),
        })
    }

    fn build_nbhd(&self, idx: usize) -> VertexSet {
        let v = self.vertex(idx);
        let mut nb = VertexSet::empty(self.m, self.n);
        nb.insert_index(idx);
        for col in self.adjacent_columns(v.col) {
            for row in (0..self.m).filter(|&r| r != v.row) {
                nb.insert_index(row * self.n + col);
            }
        }
        nb
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn index(&self, v: Vertex) -> usize {
        v.row * self.n + v.col
    }

    pub fn vertex(&self, idx: usize) -> Vertex {
        Vertex::new(idx / self.n, idx % self.n)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.row < self.m && v.col < self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.order()).map(|i| self.vertex(i))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                row: v.row,
                col: v.col,
                m: self.m,
                n: self.n,
            })
        }
    }

    /// Columns adjacent to `col` in the path or cycle factor (deduplicated).
    pub fn adjacent_columns(&self, col: usize) -> Vec<usize> {
        let n = self.n;
        let mut cols = Vec::with_capacity(2);
        match self.topology {
            Topology::Path => {
                if col > 0 {
                    cols.push(col - 1);
                }
                if col + 1 < n {
                    cols.push(col + 1);
                }
            }
            Topology::Cycle => {
                cols.push((col + n - 1) % n);
                let next = (col + 1) % n;
                if !cols.contains(&next) {
                    cols.push(next);
                }
            }
        }
        cols
    }

    pub fn columns_adjacent(&self, a: usize, b: usize) -> bool {
        let d = a.abs_diff(b);
        match self.topology {
            Topology::Path => d == 1,
            Topology::Cycle => d == 1 || d == self.n - 1,
        }
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u.row != v.row && self.columns_adjacent(u.col, v.col)
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<&VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed_nbhd_of(self.index(v)))
    }

    pub fn closed_nbhd_of(&self, idx: usize) -> &VertexSet {
        self.closed_nbhd[idx].get_or_init(|| self.build_nbhd(idx))
    }

    pub fn open_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        let mut s = self.closed_neighborhood(v)?.clone();
        s.remove(v);
        Ok(s)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        (self.m - 1) * self.adjacent_columns(v.col).len()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.m, self.n)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.m, self.n)
    }

    /// Resolves a possibly negative or oversized column index. Cycles wrap
    /// modulo `n`; paths reject anything outside `[0, n)`.
    pub fn resolve_column(&self, j: i64) -> Result<usize> {
        match self.topology {
            Topology::Cycle => Ok(j.rem_euclid(self.n as i64) as usize),
            Topology::Path if (0..self.n as i64).contains(&j) => Ok(j as usize),
            Topology::Path => Err(Error::ColumnOutOfRange { col: j, n: self.n }),
        }
    }

    pub fn column(&self, j: i64) -> Result<VertexSet> {
        let col = self.resolve_column(j)?;
        let mut s = self.empty_set();
        for row in 0..self.m {
            s.insert_index(row * self.n + col);
        }
        Ok(s)
    }

    pub fn row(&self, i: i64) -> Result<VertexSet> {
        if !(0..self.m as i64).contains(&i) {
            return Err(Error::RowOutOfRange { row: i, m: self.m });
        }
        let mut s = self.empty_set();
        for col in 0..self.n {
            s.insert_index(i as usize * self.n + col);
        }
        Ok(s)
    }

    /// Number of members of `set` in column `col` (already resolved).
    pub fn column_count(&self, set: &VertexSet, col: usize) -> usize {
        (0..self.m)
            .filter(|&r| set.contains_index(r * self.n + col))
            .count()
    }

    fn permutation(&self, label: String, f: impl Fn(Vertex) -> Vertex) -> Permutation {
        let image = self.vertices().map(|v| self.index(f(v))).collect();
        Permutation { label, image }
    }

    pub fn preserves_adjacency(&self, p: &Permutation) -> bool {
        let n = self.order();
        if p.image.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &i in &p.image {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        // A bijection that maps every edge to an edge preserves non-edges too,
        // since the edge set is finite.
        (0..n).all(|u| {
            self.closed_nbhd_of(u)
                .indices()
                .filter(|&v| v != u)
                .all(|v| self.closed_nbhd_of(p.image[u]).contains_index(p.image[v]))
        })
    }

    /// Generators of a subgroup of the automorphism group: adjacent row
    /// transpositions, path reversal, and for cycles rotation and reflection.
    /// Every generator is checked against the adjacency relation.
    pub fn automorphism_generators(&self) -> Vec<Permutation> {
        let (m, n) = (self.m, self.n);
        let mut gens = Vec::new();
        for r in 0..m.saturating_sub(1) {
            gens.push(self.permutation(format!("swap-rows-{r}-{}", r + 1), |v| {
                let row = if v.row == r {
                    r + 1
                } else if v.row == r + 1 {
                    r
                } else {
                    v.row
                };
                Vertex::new(row, v.col)
            }));
        }
        match self.topology {
            Topology::Path => {
                gens.push(
                    self.permutation("reverse".into(), |v| Vertex::new(v.row, n - 1 - v.col)),
                );
            }
            Topology::Cycle => {
                gens.push(
                    self.permutation("rotate".into(), |v| Vertex::new(v.row, (v.col + 1) % n)),
                );
                gens.push(
                    self.permutation("reflect".into(), |v| Vertex::new(v.row, (n - v.col) % n)),
                );
            }
        }
        for p in &gens {
            assert!(
                self.preserves_adjacency(p),
                "generator {} is not an automorphism",
                p.label
            );
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &ProductGraph, vs: &[(usize, usize)]) -> VertexSet {
        VertexSet::from_vertices(g.m(), g.n(), vs.iter().copied()).unwrap()
    }

    #[test]
    fn edge_counts() {
        let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
        assert_eq!((g.order(), g.edge_count()), (12, 18));
        let g = ProductGraph::new(1, 5, Topology::Path).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 0));
        let g = ProductGraph::new(3, 3, Topology::Cycle).unwrap();
        assert_eq!((g.order(), g.edge_count()), (9, 18));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(ProductGraph::new(0, 4, Topology::Path).is_err());
        assert!(ProductGraph::new(3, 1, Topology::Path).is_err());
        assert!(ProductGraph::new(3, 2, Topology::Cycle).is_err());
        assert!(ProductGraph::new(3, 2, Topology::Path).is_ok());
    }

    #[test]
    fn closed_neighborhoods() {
        let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
        let nb = g.closed_neighborhood(Vertex::new(0, 0)).unwrap();
        assert_eq!(nb, &set(&g, &[(0, 0), (1, 1), (2, 1)]));
        let nb = g.closed_neighborhood(Vertex::new(0, 1)).unwrap();
        assert_eq!(nb, &set(&g, &[(0, 1), (1, 0), (2, 0), (1, 2), (2, 2)]));
        let c = ProductGraph::new(3, 3, Topology::Cycle).unwrap();
        let nb = c.closed_neighborhood(Vertex::new(0, 0)).unwrap();
        assert_eq!(nb, &set(&c, &[(0, 0), (1, 1), (2, 1), (1, 2), (2, 2)]));
        assert!(g.closed_neighborhood(Vertex::new(3, 0)).is_err());
    }

    #[test]
    fn columns_and_rows() {
        let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
        assert_eq!(g.column(0).unwrap(), set(&g, &[(0, 0), (1, 0), (2, 0)]));
        assert!(g.column(-1).is_err());
        assert!(g.column(4).is_err());
        assert_eq!(
            g.row(0).unwrap(),
            set(&g, &[(0, 0), (0, 1), (0, 2), (0, 3)])
        );
        assert!(g.row(3).is_err());
        let c = ProductGraph::new(3, 6, Topology::Cycle).unwrap();
        assert_eq!(c.column(-1).unwrap(), c.column(5).unwrap());
        let g = ProductGraph::new(4, 5, Topology::Path).unwrap();
        assert_eq!(g.column(2).unwrap().len(), 4);
        let c = ProductGraph::new(5, 3, Topology::Cycle).unwrap();
        assert_eq!(c.row(4).unwrap().len(), 3);
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_vertices(2, 40, [(0, 1), (1, 39)]).unwrap();
        let b = VertexSet::from_vertices(2, 40, [(1, 39), (0, 5)]).unwrap();
        assert_eq!(a.union(&b).unwrap().len(), 3);
        assert_eq!(a.intersection(&b).unwrap().len(), 1);
        assert_eq!(a.difference(&b).unwrap().first(), Some(Vertex::new(0, 1)));
        assert_eq!(a.complement().len(), 78);
        assert_eq!(VertexSet::full(2, 40).complement().len(), 0);
        let other = VertexSet::empty(3, 40);
        assert!(a.union(&other).is_err());
        assert!(VertexSet::from_vertices(2, 40, [(2, 0)]).is_err());
    }

    #[test]
    fn generator_counts() {
        let g = ProductGraph::new(3, 5, Topology::Path).unwrap();
        let gens = g.automorphism_generators();
        assert_eq!(gens.len(), 3);
        assert_eq!(
            gens.iter().filter(|p| p.label.starts_with("swap")).count(),
            2
        );
        let c = ProductGraph::new(3, 6, Topology::Cycle).unwrap();
        let labels: Vec<_> = c
            .automorphism_generators()
            .into_iter()
            .map(|p| p.label)
            .collect();
        assert!(labels.contains(&"rotate".to_string()));
        assert!(labels.contains(&"reflect".to_string()));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
        // shifting columns of a path is not an automorphism
        let p = g.permutation("shift".into(), |v| Vertex::new(v.row, (v.col + 1) % 4));
        assert!(!g.preserves_adjacency(&p));
    }
}
