//! Exact minimum self-identifying and identifying codes.
//!
//! The search is a branch-and-bound over a hitting-set model (see
//! [`search`]). An incumbent from the direct constructions and a greedy
//! reduction seeds the upper bound; the lower bounds come from disjoint
//! constraint packings and column-window counts. Optional pruning rules and
//! a root-level orbit split under the graph's automorphisms can be switched
//! off individually, which is how their soundness is tested.

mod search;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::atomic::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{construct_direct, greedy_minimal};
use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Topology, VertexSet};
use crate::verify::CodeSet;
use search::{lex_cmp, to_bits, Bits, Budget, Mode, Model, Rule, Shared, Worker};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    SelfIdentifying,
    Identifying,
}

/// Structural pruning rules valid for every self-identifying code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PruningRule {
    /// Both end columns of a path are entirely codewords.
    ForcedBoundary,
    /// Three consecutive columns hold at least a minimum number of codewords.
    TripleColumn,
    /// Every vertex keeps two codeword neighbors.
    DegreeCondition,
}

impl PruningRule {
    pub const ALL: [PruningRule; 3] = [
        PruningRule::ForcedBoundary,
        PruningRule::TripleColumn,
        PruningRule::DegreeCondition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PruningRule::ForcedBoundary => "forced_boundary",
            PruningRule::TripleColumn => "triple_column",
            PruningRule::DegreeCondition => "degree_condition",
        }
    }
}

impl std::str::FromStr for PruningRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").to_ascii_lowercase().as_str() {
            "forced_boundary" | "boundary" => Ok(PruningRule::ForcedBoundary),
            "triple_column" | "triple" => Ok(PruningRule::TripleColumn),
            "degree_condition" | "degree" => Ok(PruningRule::DegreeCondition),
            other => Err(Error::Parse(format!("unknown pruning rule '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// Split the root on automorphism orbits.
    pub allow_symmetry: bool,
    pub pruning: Vec<PruningRule>,
    /// Worker threads; 0 picks the available parallelism, capped by the
    /// `SIDCODES_THREADS` environment variable when set.
    pub threads: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_nodes: 100_000_000,
            max_seconds: 300.0,
            allow_symmetry: true,
            pruning: PruningRule::ALL.to_vec(),
            threads: 0,
        }
    }
}

impl SolveBudget {
    /// Plain branch-and-bound: no pruning rules, no symmetry.
    pub fn unpruned() -> Self {
        SolveBudget {
            allow_symmetry: false,
            pruning: Vec::new(),
            ..SolveBudget::default()
        }
    }

    fn uses(&self, rule: PruningRule) -> bool {
        self.pruning.contains(&rule)
    }

    fn resolved_threads(&self) -> usize {
        if self.threads > 0 {
            return self.threads;
        }
        let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
        let cap = std::env::var("SIDCODES_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&c| c > 0);
        cap.map_or(avail, |c| c.min(avail))
    }
}

#[derive(Debug)]
pub struct SolveResult<'g> {
    pub problem: Problem,
    pub optimum: usize,
    pub witness: CodeSet<'g>,
    /// The search space was exhausted, so `optimum` is the true minimum.
    pub certified: bool,
    /// `witness` is the lexicographically smallest optimal membership string.
    pub canonical: bool,
    pub nodes_explored: u64,
    pub prunes_by_rule: BTreeMap<String, u64>,
    pub elapsed_seconds: f64,
}

pub fn solve_min_sid<'g>(g: &'g ProductGraph, budget: &SolveBudget) -> Result<SolveResult<'g>> {
    solve(g, budget, Problem::SelfIdentifying)
}

pub fn solve_min_id<'g>(g: &'g ProductGraph, budget: &SolveBudget) -> Result<SolveResult<'g>> {
    solve(g, budget, Problem::Identifying)
}

pub fn solve<'g>(
    g: &'g ProductGraph,
    budget: &SolveBudget,
    problem: Problem,
) -> Result<SolveResult<'g>> {
    let start = Instant::now();
    let out = dispatch(g, budget, problem, Task::Optimize)?;
    let witness = CodeSet::new(g, out.best)?;
    let valid = match problem {
        Problem::SelfIdentifying => witness.is_self_identifying_def1().holds,
        Problem::Identifying => witness.is_identifying().holds,
    };
    assert!(valid, "solver returned an invalid {problem:?} code");
    Ok(SolveResult {
        problem,
        optimum: witness.len(),
        witness,
        certified: out.certified,
        canonical: out.canonical,
        nodes_explored: out.nodes,
        prunes_by_rule: out.prunes,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Every minimum self-identifying code. With `allow_symmetry`, one
/// lexicographically smallest representative per automorphism orbit.
/// Fails with [`Error::BudgetExceeded`] unless the enumeration completes.
pub fn enumerate_optimal_codes<'g>(
    g: &'g ProductGraph,
    budget: &SolveBudget,
) -> Result<Vec<CodeSet<'g>>> {
    let out = dispatch(g, budget, Problem::SelfIdentifying, Task::Enumerate)?;
    if !out.certified {
        return Err(Error::BudgetExceeded { nodes: out.nodes });
    }
    let mut sets = out.all;
    if budget.allow_symmetry {
        sets = sets.iter().map(|s| orbit_representative(g, s)).collect();
    }
    sets.sort_by(|a, b| lex_cmp(a.words(), b.words()));
    sets.dedup();
    sets.into_iter().map(|s| CodeSet::new(g, s)).collect()
}

/// Lexicographically smallest image of `set` under the automorphism group
/// generated by [`ProductGraph::automorphism_generators`].
pub fn orbit_representative(g: &ProductGraph, set: &VertexSet) -> VertexSet {
    let gens = g.automorphism_generators();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut queue = VecDeque::from([set.clone()]);
    seen.insert(set.clone());
    while let Some(s) = queue.pop_front() {
        for p in &gens {
            let t = p.apply_set(&s);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter()
        .min_by(|a, b| lex_cmp(a.words(), b.words()))
        .expect("orbit contains the set itself")
}

/// Vertex orbits of the generated automorphism group, each sorted, ordered
/// by smallest member.
pub fn vertex_orbits(g: &ProductGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for perm in g.automorphism_generators() {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, perm.apply_index(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Task {
    Optimize,
    Enumerate,
}

struct Outcome {
    best: VertexSet,
    certified: bool,
    canonical: bool,
    nodes: u64,
    prunes: BTreeMap<String, u64>,
    all: Vec<VertexSet>,
}

fn dispatch(
    g: &ProductGraph,
    budget: &SolveBudget,
    problem: Problem,
    task: Task,
) -> Result<Outcome> {
    match g.order().div_ceil(64) {
        1 => run::<1>(g, budget, problem, task),
        2 => run::<2>(g, budget, problem, task),
        3..=4 => run::<4>(g, budget, problem, task),
        5..=8 => run::<8>(g, budget, problem, task),
        9..=16 => run::<16>(g, budget, problem, task),
        _ => Err(Error::Unsupported {
            m: g.m(),
            n: g.n(),
            topology: g.topology(),
            reason: "the exact solver handles at most 1024 vertices".into(),
        }),
    }
}

fn bits<const W: usize>(s: &VertexSet) -> Bits<W> {
    to_bits::<W>(s.words())
}

fn build_model<const W: usize>(
    g: &ProductGraph,
    budget: &SolveBudget,
    problem: Problem,
) -> Model<W> {
    let order = g.order();
    let nb: Vec<Bits<W>> = (0..order).map(|u| bits(g.closed_nbhd_of(u))).collect();
    let mut sets = Vec::new();
    match problem {
        Problem::SelfIdentifying => {
            for u in 0..order {
                for v in 0..order {
                    if u != v {
                        sets.push(std::array::from_fn(|i| nb[u][i] & !nb[v][i]));
                    }
                }
            }
        }
        Problem::Identifying => {
            for u in 0..order {
                sets.push(nb[u]);
                for v in u + 1..order {
                    sets.push(std::array::from_fn(|i| nb[u][i] ^ nb[v][i]));
                }
            }
        }
    }
    let constraints = Model::minimize(sets);

    let sid = problem == Problem::SelfIdentifying;
    let mut windows = Vec::new();
    if sid && budget.uses(PruningRule::TripleColumn) {
        for (cols, need) in window_rules(g) {
            let mut s = g.empty_set();
            for c in cols {
                s.union_with(&g.column(c as i64).expect("window column in range"));
            }
            windows.push((bits::<W>(&s), need as u32));
        }
    }
    let mut disjoint_windows = Vec::new();
    let mut used = [0u64; W];
    for (i, (w, _)) in windows.iter().enumerate() {
        if w.iter().zip(&used).all(|(a, b)| a & b == 0) {
            disjoint_windows.push(i);
            for k in 0..W {
                used[k] |= w[k];
            }
        }
    }
    let open_nbhd = if sid && budget.uses(PruningRule::DegreeCondition) && g.m() >= 2 {
        (0..order)
            .map(|u| {
                let mut b = nb[u];
                b[u / 64] &= !(1 << (u % 64));
                b
            })
            .collect()
    } else {
        Vec::new()
    };
    Model {
        constraints,
        windows,
        disjoint_windows,
        open_nbhd,
    }
}

/// Column windows with the minimum number of codewords every
/// self-identifying code places in them.
fn window_rules(g: &ProductGraph) -> Vec<(Vec<usize>, usize)> {
    let (m, n) = (g.m(), g.n());
    if m < 3 {
        return Vec::new();
    }
    match g.topology() {
        Topology::Path => match n {
            5 => vec![(vec![1, 2, 3], m)],
            6.. => (2..=n - 3)
                .map(|j| {
                    let need = if n >= 7 && (3..=n - 4).contains(&j) {
                        m + 2
                    } else {
                        m + 1
                    };
                    (vec![j - 1, j, j + 1], need)
                })
                .collect(),
            _ => Vec::new(),
        },
        Topology::Cycle => (0..n)
            .map(|j| {
                let mut cols = vec![(j + n - 1) % n, j, (j + 1) % n];
                cols.sort_unstable();
                cols.dedup();
                (cols, m + 2)
            })
            .collect(),
    }
}

fn forced_set(g: &ProductGraph, budget: &SolveBudget, problem: Problem) -> VertexSet {
    let mut s = g.empty_set();
    if problem == Problem::SelfIdentifying
        && budget.uses(PruningRule::ForcedBoundary)
        && g.topology() == Topology::Path
        && g.m() >= 3
        && g.n() >= 3
    {
        s.union_with(&g.column(0).expect("first column"));
        s.union_with(&g.column(g.n() as i64 - 1).expect("last column"));
    }
    s
}

/// Root subproblems from a chain of orbit splits: for orbits `O1, O2, ...`
/// with representatives `x1, x2, ...`, branch `k` includes `xk` and excludes
/// `O1 ∪ ... ∪ O(k-1)`. The final branch excludes every undecided orbit.
fn symmetry_roots<const W: usize>(g: &ProductGraph, inn: Bits<W>) -> Vec<(Bits<W>, Bits<W>)> {
    let mut roots = Vec::new();
    let mut out = [0u64; W];
    for orbit in vertex_orbits(g) {
        if orbit.iter().any(|&x| inn[x / 64] >> (x % 64) & 1 == 1) {
            continue;
        }
        let x = orbit[0];
        let mut with = inn;
        with[x / 64] |= 1 << (x % 64);
        roots.push((with, out));
        for &y in &orbit {
            out[y / 64] |= 1 << (y % 64);
        }
    }
    roots.push((inn, out));
    roots
}

fn run<const W: usize>(
    g: &ProductGraph,
    budget: &SolveBudget,
    problem: Problem,
    task: Task,
) -> Result<Outcome> {
    let start = Instant::now();
    let model = build_model::<W>(g, budget, problem);
    if model.has_empty_constraint() {
        return Err(Error::Infeasible);
    }

    // upper bound
    let mut candidates: Vec<VertexSet> = Vec::new();
    match problem {
        Problem::SelfIdentifying => {
            candidates.extend(construct_direct(g));
            candidates.push(greedy_minimal(g, g.full_set()));
        }
        Problem::Identifying => candidates.push(g.full_set()),
    }
    let best = candidates
        .into_iter()
        .filter(|s| s.dims() == (g.m(), g.n()) && model.satisfied_by(&bits::<W>(s)))
        .min_by_key(|s| s.len())
        .expect("the full vertex set satisfies a feasible model");

    let forced_vertices = forced_set(g, budget, problem);
    let forced = bits::<W>(&forced_vertices);
    let threads = budget.resolved_threads();
    let mut nodes = 0u64;
    let mut prunes = [0u64; search::RULES];
    prunes[Rule::ForcedBoundary as usize] = forced_vertices.len() as u64;

    let shared = Shared::new(
        best.len(),
        bits::<W>(&best),
        Budget {
            max_nodes: budget.max_nodes,
            max_seconds: budget.max_seconds,
            start,
        },
    );
    let use_symmetry = budget.allow_symmetry && task == Task::Optimize;
    let roots = if use_symmetry {
        let r = symmetry_roots::<W>(g, forced);
        prunes[Rule::Symmetry as usize] += r.len() as u64 - 1;
        r
    } else {
        vec![(forced, [0u64; W])]
    };

    let mode = match task {
        Task::Optimize => Mode::Optimize,
        Task::Enumerate => Mode::Collect { target: 0 },
    };

    let mut all = Vec::new();
    let (certified, optimum) = match mode {
        Mode::Optimize => {
            explore(&model, &shared, Mode::Optimize, &roots, threads);
            for (i, p) in shared.prune_counts().iter().enumerate() {
                prunes[i] += p;
            }
            nodes += shared.nodes.load(Ordering::Relaxed);
            (
                !shared.aborted.load(Ordering::Relaxed),
                shared.best.load(Ordering::Relaxed),
            )
        }
        _ => {
            // first the optimum, then every solution of that size
            explore(&model, &shared, Mode::Optimize, &roots, threads);
            nodes += shared.nodes.load(Ordering::Relaxed);
            let opt = shared.best.load(Ordering::Relaxed);
            let mut ok = !shared.aborted.load(Ordering::Relaxed);
            if ok {
                let collect = Shared::new(opt, [0; W], remaining(budget, nodes, start));
                let found = explore(
                    &model,
                    &collect,
                    Mode::Collect { target: opt },
                    &roots,
                    threads,
                );
                nodes += collect.nodes.load(Ordering::Relaxed);
                ok = !collect.aborted.load(Ordering::Relaxed);
                all = found
                    .iter()
                    .map(|b| VertexSet::from_words(g.m(), g.n(), b))
                    .collect();
            }
            for (i, p) in shared.prune_counts().iter().enumerate() {
                prunes[i] += p;
            }
            (ok, opt)
        }
    };

    let mut best_bits = *shared.best_set.lock().expect("incumbent lock");
    let mut canonical = false;
    if certified && task == Task::Optimize {
        let canon = Shared::new(optimum, [0; W], remaining(budget, nodes, start));
        let mut w = Worker::new(&model, &canon, Mode::Canonical { target: optimum });
        w.search(forced, [0; W], 0);
        w.flush();
        nodes += canon.nodes.load(Ordering::Relaxed);
        if let Some(first) = w.found.first() {
            best_bits = *first;
            canonical = true;
        }
    }

    let prunes = Rule::ALL
        .iter()
        .map(|r| (r.name().to_string(), prunes[*r as usize]))
        .collect();
    Ok(Outcome {
        best: VertexSet::from_words(g.m(), g.n(), &best_bits),
        certified,
        canonical,
        nodes,
        prunes,
        all,
    })
}

fn remaining(budget: &SolveBudget, used: u64, start: Instant) -> Budget {
    Budget {
        max_nodes: budget.max_nodes.saturating_sub(used).max(1),
        max_seconds: budget.max_seconds - start.elapsed().as_secs_f64(),
        start: Instant::now(),
    }
}

/// Searches every root, in parallel over a shallow frontier when more than
/// one thread is requested. Returns solutions collected by the workers.
fn explore<const W: usize>(
    model: &Model<W>,
    shared: &Shared<W>,
    mode: Mode,
    roots: &[(Bits<W>, Bits<W>)],
    threads: usize,
) -> Vec<Bits<W>> {
    if threads <= 1 {
        let mut w = Worker::new(model, shared, mode);
        for (inn, out) in roots {
            w.search(*inn, *out, 0);
        }
        w.flush();
        return w.found;
    }

    let mut splitter = Worker::new(model, shared, mode);
    splitter.split_at = Some(split_depth(threads));
    for (inn, out) in roots {
        splitter.search(*inn, *out, 0);
    }
    splitter.flush();
    let mut found = std::mem::take(&mut splitter.found);
    let frontier = std::mem::take(&mut splitter.frontier);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let more: Vec<Bits<W>> = pool.install(|| {
        frontier
            .par_iter()
            .flat_map_iter(|(inn, out, depth)| {
                let mut w = Worker::new(model, shared, mode);
                w.search(*inn, *out, *depth);
                w.flush();
                w.found
            })
            .collect()
    });
    found.extend(more);
    found
}

fn split_depth(threads: usize) -> usize {
    let target = threads * 16;
    (usize::BITS - target.leading_zeros()) as usize
}
