//! Fixed-width bitset branch-and-bound over a hitting-set model.
//!
//! Both code families reduce to hitting every set of a family: a set `S` is
//! self-identifying iff it meets `N[u] \ N[v]` for all ordered pairs
//! `u ≠ v`, and identifying iff it meets every `N[u]` and every
//! `N[u] Δ N[v]`. The search keeps an include set and an exclude set,
//! propagates constraints with a single remaining candidate, and bounds with
//! a packing of pairwise disjoint open constraints.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

pub(crate) type Bits<const W: usize> = [u64; W];

#[inline]
fn popcnt<const W: usize>(a: &Bits<W>) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

#[inline]
fn meets<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
fn and_not<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> Bits<W> {
    std::array::from_fn(|i| a[i] & !b[i])
}

#[inline]
fn or<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> Bits<W> {
    std::array::from_fn(|i| a[i] | b[i])
}

#[inline]
fn and<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> Bits<W> {
    std::array::from_fn(|i| a[i] & b[i])
}

#[inline]
fn single<const W: usize>(idx: usize) -> Bits<W> {
    let mut b = [0; W];
    b[idx / 64] |= 1 << (idx % 64);
    b
}

fn lowest<const W: usize>(a: &Bits<W>) -> Option<usize> {
    a.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

pub(crate) fn to_bits<const W: usize>(words: &[u64]) -> Bits<W> {
    let mut b = [0; W];
    b[..words.len()].copy_from_slice(words);
    b
}

/// Rule counters, indexed by [`Rule`].
pub(crate) const RULES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    Infeasible = 0,
    Bound = 1,
    TripleColumn = 2,
    DegreeCondition = 3,
    ForcedBoundary = 4,
    Symmetry = 5,
}

impl Rule {
    pub(crate) const ALL: [Rule; RULES] = [
        Rule::Infeasible,
        Rule::Bound,
        Rule::TripleColumn,
        Rule::DegreeCondition,
        Rule::ForcedBoundary,
        Rule::Symmetry,
    ];

    pub(crate) fn name(self) -> &'static str {
        match self {
            Rule::Infeasible => "infeasible",
            Rule::Bound => "bound",
            Rule::TripleColumn => "triple_column",
            Rule::DegreeCondition => "degree_condition",
            Rule::ForcedBoundary => "forced_boundary",
            Rule::Symmetry => "symmetry",
        }
    }
}

const MINIMIZE_LIMIT: usize = 20_000;

pub(crate) struct Model<const W: usize> {
    /// Minimal sets every solution must meet, smallest first.
    pub constraints: Vec<Bits<W>>,
    /// Column windows with a minimum codeword count.
    pub windows: Vec<(Bits<W>, u32)>,
    /// Pairwise disjoint subfamily of `windows` used for bounding.
    pub disjoint_windows: Vec<usize>,
    /// Open neighborhoods, present when the degree rule is active.
    pub open_nbhd: Vec<Bits<W>>,
}

impl<const W: usize> Model<W> {
    /// Drops duplicates and supersets; keeps the survivors sorted by size.
    /// Very large families are only deduplicated.
    pub fn minimize(mut sets: Vec<Bits<W>>) -> Vec<Bits<W>> {
        sets.sort_by_key(|s| (popcnt(s), *s));
        sets.dedup();
        if sets.len() > MINIMIZE_LIMIT {
            return sets;
        }
        let mut kept: Vec<Bits<W>> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| and_not(k, &s).iter().all(|&w| w == 0)) {
                kept.push(s);
            }
        }
        kept
    }

    pub fn has_empty_constraint(&self) -> bool {
        self.constraints.first().is_some_and(|c| popcnt(c) == 0)
    }

    pub fn satisfied_by(&self, set: &Bits<W>) -> bool {
        self.constraints.iter().all(|c| meets(c, set))
    }
}

pub(crate) struct Budget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub start: Instant,
}

pub(crate) struct Shared<const W: usize> {
    pub best: AtomicUsize,
    pub best_set: Mutex<Bits<W>>,
    pub nodes: AtomicU64,
    pub aborted: AtomicBool,
    pub done: AtomicBool,
    pub prunes: [AtomicU64; RULES],
    pub budget: Budget,
}

impl<const W: usize> Shared<W> {
    pub fn new(best: usize, best_set: Bits<W>, budget: Budget) -> Self {
        Shared {
            best: AtomicUsize::new(best),
            best_set: Mutex::new(best_set),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            done: AtomicBool::new(false),
            prunes: Default::default(),
            budget,
        }
    }

    pub fn prune_counts(&self) -> [u64; RULES] {
        std::array::from_fn(|i| self.prunes[i].load(Ordering::Relaxed))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Find a solution strictly smaller than the shared incumbent.
    Optimize,
    /// Collect every solution of exactly `target` vertices.
    Collect { target: usize },
    /// Find the solution of size `target` with the lexicographically
    /// smallest membership string (canonical index order).
    Canonical { target: usize },
}

pub(crate) struct Worker<'a, const W: usize> {
    model: &'a Model<W>,
    shared: &'a Shared<W>,
    mode: Mode,
    pending_nodes: u64,
    flush_every: u64,
    prunes: [u64; RULES],
    pub found: Vec<Bits<W>>,
    /// When set, nodes at this depth are recorded instead of expanded.
    pub split_at: Option<usize>,
    pub frontier: Vec<(Bits<W>, Bits<W>, usize)>,
}

const FLUSH_EVERY: u64 = 256;

impl<'a, const W: usize> Worker<'a, W> {
    pub fn new(model: &'a Model<W>, shared: &'a Shared<W>, mode: Mode) -> Self {
        Worker {
            model,
            shared,
            mode,
            pending_nodes: 0,
            flush_every: FLUSH_EVERY.min(shared.budget.max_nodes.max(1)),
            prunes: [0; RULES],
            found: Vec::new(),
            split_at: None,
            frontier: Vec::new(),
        }
    }

    fn stopped(&self) -> bool {
        self.shared.aborted.load(Ordering::Relaxed) || self.shared.done.load(Ordering::Relaxed)
    }

    /// Counts a node; returns false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= self.flush_every {
            self.flush();
            self.check_budget();
        }
        !self.stopped()
    }

    pub fn flush(&mut self) {
        self.shared
            .nodes
            .fetch_add(self.pending_nodes, Ordering::Relaxed);
        self.pending_nodes = 0;
        for (i, p) in self.prunes.iter_mut().enumerate() {
            if *p > 0 {
                self.shared.prunes[i].fetch_add(*p, Ordering::Relaxed);
                *p = 0;
            }
        }
    }

    fn check_budget(&self) {
        let total = self.shared.nodes.load(Ordering::Relaxed);
        let b = &self.shared.budget;
        if total >= b.max_nodes || b.start.elapsed().as_secs_f64() > b.max_seconds {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
    }

    pub fn count(&mut self, rule: Rule, by: u64) {
        self.prunes[rule as usize] += by;
    }

    fn max_allowed(&self) -> Option<usize> {
        match self.mode {
            Mode::Optimize => self.shared.best.load(Ordering::Relaxed).checked_sub(1),
            Mode::Collect { target } | Mode::Canonical { target } => Some(target),
        }
    }

    pub fn search(&mut self, mut inn: Bits<W>, out: Bits<W>, depth: usize) {
        if !self.tick() {
            return;
        }
        let model = self.model;

        // unit propagation
        loop {
            let mut changed = false;
            for c in &model.constraints {
                if meets(c, &inn) {
                    continue;
                }
                let cand = and_not(c, &out);
                match popcnt(&cand) {
                    0 => {
                        self.count(Rule::Infeasible, 1);
                        return;
                    }
                    1 => {
                        inn = or(&inn, &cand);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        let Some(limit) = self.max_allowed() else {
            self.count(Rule::Bound, 1);
            return;
        };
        let size = popcnt(&inn) as usize;
        if size > limit {
            self.count(Rule::Bound, 1);
            return;
        }

        let avail = and_not(&[!0u64; W], &out);
        if model
            .open_nbhd
            .iter()
            .any(|nb| popcnt(&and(nb, &avail)) < 2)
        {
            self.count(Rule::DegreeCondition, 1);
            return;
        }
        if model
            .windows
            .iter()
            .any(|(w, need)| popcnt(&and(w, &avail)) < *need)
        {
            self.count(Rule::TripleColumn, 1);
            return;
        }

        // packing bound and branching constraint
        let mut used = [0u64; W];
        let mut packing = 0usize;
        let mut branch: Option<(u32, Bits<W>)> = None;
        for c in &model.constraints {
            if meets(c, &inn) {
                continue;
            }
            let cand = and_not(c, &out);
            let cnt = popcnt(&cand);
            if branch.is_none_or(|(best, _)| cnt < best) {
                branch = Some((cnt, cand));
            }
            if !meets(&cand, &used) {
                used = or(&used, &cand);
                packing += 1;
            }
        }
        let windows_lb: usize = model
            .disjoint_windows
            .iter()
            .map(|&i| {
                let (w, need) = &model.windows[i];
                need.saturating_sub(popcnt(&and(w, &inn))) as usize
            })
            .sum();
        if size + packing.max(windows_lb) > limit {
            let rule = if windows_lb > packing {
                Rule::TripleColumn
            } else {
                Rule::Bound
            };
            self.count(rule, 1);
            return;
        }

        if let Some(split) = self.split_at {
            if depth >= split {
                self.frontier.push((inn, out, depth));
                return;
            }
        }

        let Some((_, cand)) = branch else {
            self.leaf(inn, size);
            return;
        };

        match self.mode {
            Mode::Canonical { .. } => {
                // lowest undecided index; exclude before include
                let undecided = and_not(&avail, &inn);
                let x = lowest(&undecided).expect("an open constraint has candidates");
                let bit = single::<W>(x);
                self.search(inn, or(&out, &bit), depth + 1);
                if !self.stopped() {
                    self.search(or(&inn, &bit), out, depth + 1);
                }
            }
            _ => {
                let x = lowest(&cand).expect("nonempty candidate set");
                let bit = single::<W>(x);
                self.search(or(&inn, &bit), out, depth + 1);
                if !self.stopped() {
                    self.search(inn, or(&out, &bit), depth + 1);
                }
            }
        }
    }

    fn leaf(&mut self, inn: Bits<W>, size: usize) {
        match self.mode {
            Mode::Optimize => {
                let mut best = self.shared.best_set.lock().expect("incumbent lock");
                if size < self.shared.best.load(Ordering::Relaxed) {
                    self.shared.best.store(size, Ordering::Relaxed);
                    *best = inn;
                }
            }
            Mode::Collect { target } => {
                if size == target {
                    self.found.push(inn);
                }
            }
            Mode::Canonical { target } => {
                if size == target {
                    self.found.push(inn);
                    self.shared.done.store(true, Ordering::Relaxed);
                }
            }
        }
    }
}

/// Lexicographic comparison of membership strings in canonical index order
/// (`'0' < '1'`).
pub(crate) fn lex_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let bit = diff.trailing_zeros();
            // the set holding the first differing index is larger
            return if x >> bit & 1 == 1 {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            };
        }
    }
    a.len().cmp(&b.len())
}
