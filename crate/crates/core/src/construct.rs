//! Explicit self-identifying codes.
//!
//! * `K_m × P_n`, `n ≥ 7`: boundary columns, three near-boundary codewords
//!   on each side, a periodic core built from the `A` patterns and full
//!   columns, and a right-hand closing block chosen by `n mod 3`.
//! * `K_m × C_n`, `n ≥ 6`: periodic `B` blocks with full columns, closed by
//!   `B'`/`B''` depending on the parity of `k = ⌊n/3⌋` and `n mod 3`; one extra
//!   codeword closes the wrap-around when `k` is even and `n ≡ 1 (mod 3)`.
//! * `K_m × P_n`, `3 ≤ n ≤ 6`: the optimal small codes.
//! * `K_m × C_n`, `3 ≤ n ≤ 5`: a greedy code satisfying the local sufficient
//!   condition, improved by the exact solver when it finishes within a small
//!   node budget.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Topology, Vertex, VertexSet};
use crate::solver::{self, SolveBudget};
use crate::verify::CodeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PathGeneral,
    CycleGeneral,
    AppendixSmall,
    CycleFallback,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::PathGeneral => "path_general",
            Family::CycleGeneral => "cycle_general",
            Family::AppendixSmall => "appendix_small",
            Family::CycleFallback => "cycle_fallback",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    KEven,
    KOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Residue {
    R0,
    R1,
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum APattern {
    A,
    APrime,
    ADoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BPattern {
    B,
    BPrime,
    BDoublePrime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub family: Family,
    pub topology: Topology,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub parity_case: Parity,
    pub residue_case: Residue,
    /// Named, pairwise disjoint parts whose union is the code.
    pub parts: Vec<(String, VertexSet)>,
    /// Cardinality of the assembled code.
    pub predicted_size: usize,
}

impl ConstructionPlan {
    fn new(family: Family, g: &ProductGraph) -> Self {
        let (m, n) = (g.m(), g.n());
        let k = n / 3;
        ConstructionPlan {
            family,
            topology: g.topology(),
            m,
            n,
            k,
            parity_case: if k % 2 == 0 {
                Parity::KEven
            } else {
                Parity::KOdd
            },
            residue_case: match n % 3 {
                0 => Residue::R0,
                1 => Residue::R1,
                _ => Residue::R2,
            },
            parts: Vec::new(),
            predicted_size: 0,
        }
    }

    pub fn part(&self, name: &str) -> Option<&VertexSet> {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn parts_disjoint(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, (_, a))| self.parts[i + 1..].iter().all(|(_, b)| a.is_disjoint(b)))
    }

    fn assemble<'g>(mut self, g: &'g ProductGraph) -> (CodeSet<'g>, ConstructionPlan) {
        let mut all = g.empty_set();
        for (_, p) in &self.parts {
            all.union_with(p);
        }
        self.predicted_size = all.len();
        let code = CodeSet::new(g, all).expect("parts share the graph dimensions");
        (code, self)
    }
}

/// Accumulates named parts, resolving path or cycle columns.
struct Parts<'g> {
    g: &'g ProductGraph,
    parts: Vec<(String, VertexSet)>,
}

impl<'g> Parts<'g> {
    fn new(g: &'g ProductGraph) -> Self {
        Parts {
            g,
            parts: Vec::new(),
        }
    }

    fn vertices(&mut self, name: impl Into<String>, vs: &[(usize, i64)]) -> Result<()> {
        let mut s = self.g.empty_set();
        for &(row, col) in vs {
            let col = self.g.resolve_column(col)?;
            s.insert(Vertex::new(row, col));
        }
        self.parts.push((name.into(), s));
        Ok(())
    }

    fn column(&mut self, j: i64) -> Result<()> {
        let col = self.g.resolve_column(j)?;
        let s = self.g.column(j)?;
        self.parts.push((format!("C{col}"), s));
        Ok(())
    }

    fn group(&mut self, name: &str, items: Vec<VertexSet>) {
        let mut s = self.g.empty_set();
        for it in items {
            s.union_with(&it);
        }
        self.parts.push((name.to_string(), s));
    }

    fn into_plan(self, mut plan: ConstructionPlan) -> ConstructionPlan {
        plan.parts = self.parts;
        plan
    }
}

fn range_err(pattern: &'static str, t: i64, k: usize) -> Error {
    Error::PatternRange { pattern, t, k }
}

/// The `A_t`, `A'_t` and `A''` codeword patterns of the path core.
///
/// `A_t` needs odd `t ∈ [1, k-3]`, `A'_t` odd `t ∈ [1, k-4]`; `A''` ignores
/// `t` and needs `k ≥ 3` so that all its columns are nonnegative.
pub fn pattern_a(t: i64, variant: APattern, k: usize) -> Result<Vec<Vertex>> {
    let ki = k as i64;
    let odd_in = |hi: i64| t % 2 != 0 && (1..=hi).contains(&t);
    let c = |x: i64| x as usize;
    let out = match variant {
        APattern::A => {
            if !odd_in(ki - 3) {
                return Err(range_err("A", t, k));
            }
            vec![
                (2, 3 * t - 1),
                (0, 3 * t + 1),
                (1, 3 * t + 1),
                (0, 3 * t + 2),
                (1, 3 * t + 4),
                (2, 3 * t + 4),
            ]
        }
        APattern::APrime => {
            if !odd_in(ki - 4) {
                return Err(range_err("A'", t, k));
            }
            vec![
                (0, 3 * t - 1),
                (1, 3 * t + 1),
                (2, 3 * t + 1),
                (2, 3 * t + 2),
                (0, 3 * t + 4),
                (1, 3 * t + 4),
            ]
        }
        APattern::ADoublePrime => {
            if k < 3 {
                return Err(range_err("A''", t, k));
            }
            vec![(0, 3 * ki - 7), (1, 3 * ki - 5), (2, 3 * ki - 5)]
        }
    };
    Ok(out
        .into_iter()
        .map(|(r, col)| Vertex::new(r, c(col)))
        .collect())
}

/// The `B_t`, `B'` and `B''` codeword patterns of the cycle construction,
/// with columns reduced modulo `n`.
///
/// `B_t` needs even `t` with `0 ≤ t ≤ k-2` (`k-3` when `k` is odd); `B''`
/// needs `k ≥ 1`.
pub fn pattern_b(t: i64, variant: BPattern, k: usize, n: usize) -> Result<Vec<Vertex>> {
    if n < 3 {
        return Err(range_err("B", t, k));
    }
    let ki = k as i64;
    let cols: Vec<(usize, i64)> = match variant {
        BPattern::B => {
            let hi = if k.is_multiple_of(2) { ki - 2 } else { ki - 3 };
            if t % 2 != 0 || !(0..=hi).contains(&t) {
                return Err(range_err("B", t, k));
            }
            vec![
                (0, 3 * t),
                (1, 3 * t + 2),
                (2, 3 * t + 2),
                (2, 3 * t + 3),
                (0, 3 * t + 5),
                (1, 3 * t + 5),
            ]
        }
        BPattern::BPrime => vec![(0, 3 * ki), (1, 3 * ki), (2, 3 * ki)],
        BPattern::BDoublePrime => {
            if k < 1 {
                return Err(range_err("B''", t, k));
            }
            vec![
                (0, 3 * ki - 3),
                (1, 3 * ki - 3),
                (2, 3 * ki - 3),
                (0, 3 * ki - 1),
                (1, 3 * ki - 1),
                (2, 3 * ki - 1),
            ]
        }
    };
    let n = n as i64;
    Ok(cols
        .into_iter()
        .map(|(r, c)| Vertex::new(r, c.rem_euclid(n) as usize))
        .collect())
}

fn require(g: &ProductGraph, topology: Topology, min_n: usize, max_n: Option<usize>) -> Result<()> {
    if g.topology() != topology {
        return Err(Error::WrongTopology {
            expected: topology,
            found: g.topology(),
        });
    }
    let (m, n) = (g.m(), g.n());
    let reason = if m < 3 {
        Some("constructions need m >= 3".to_string())
    } else if n < min_n || max_n.is_some_and(|hi| n > hi) {
        Some(match max_n {
            Some(hi) => format!("this construction covers {min_n} <= n <= {hi}"),
            None => {
                format!("this construction needs n >= {min_n}; use the small-n codes below that")
            }
        })
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::Unsupported {
            m,
            n,
            topology,
            reason,
        }),
        None => Ok(()),
    }
}

fn to_set(g: &ProductGraph, vs: Vec<Vertex>) -> VertexSet {
    VertexSet::from_vertices(g.m(), g.n(), vs).expect("pattern vertices lie inside the graph")
}

/// General path construction for `m ≥ 3`, `n ≥ 7`.
pub fn construct_path_code(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    require(g, Topology::Path, 7, None)?;
    let n = g.n() as i64;
    let k = g.n() / 3;
    let ki = k as i64;
    let col = |j: i64| g.column(j);

    let mut parts = Parts::new(g);
    parts.group("S1", vec![col(0)?, col(n - 1)?]);
    parts.vertices(
        "S2",
        &[(0, 1), (1, 1), (2, 1), (0, n - 2), (1, n - 2), (2, n - 2)],
    )?;

    let mut core = Vec::new();
    if k.is_multiple_of(2) {
        for t in (1..=ki - 3).step_by(2) {
            core.push(to_set(g, pattern_a(t, APattern::A, k)?));
            core.push(col(3 * t)?);
            core.push(col(3 * t + 3)?);
        }
    } else {
        for t in (1..=ki - 4).step_by(2) {
            core.push(to_set(g, pattern_a(t, APattern::APrime, k)?));
            core.push(col(3 * t)?);
            core.push(col(3 * t + 3)?);
        }
        core.push(to_set(g, pattern_a(0, APattern::ADoublePrime, k)?));
        core.push(col(3 * ki - 6)?);
    }
    parts.group("S3", core);

    let closing = match g.n() % 3 {
        0 => vec![
            to_set(
                g,
                vec![
                    Vertex::new(0, g.n() - 3),
                    Vertex::new(1, g.n() - 3),
                    Vertex::new(2, g.n() - 3),
                ],
            ),
            col(n - 4)?,
        ],
        1 => vec![
            to_set(
                g,
                vec![
                    Vertex::new(2, g.n() - 5),
                    Vertex::new(0, g.n() - 3),
                    Vertex::new(1, g.n() - 3),
                ],
            ),
            col(n - 4)?,
        ],
        _ => vec![
            to_set(
                g,
                vec![
                    Vertex::new(2, g.n() - 6),
                    Vertex::new(0, g.n() - 4),
                    Vertex::new(1, g.n() - 4),
                ],
            ),
            col(n - 5)?,
            col(n - 3)?,
        ],
    };
    parts.group("S4", closing);

    let plan = parts.into_plan(ConstructionPlan::new(Family::PathGeneral, g));
    Ok(plan.assemble(g))
}

/// Cycle construction: the periodic `B` blocks for `n ≥ 6`, the fallback
/// for `3 ≤ n ≤ 5`.
pub fn construct_cycle_code(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    if g.topology() == Topology::Cycle && (3..=5).contains(&g.n()) {
        return construct_cycle_fallback(g);
    }
    cycle_general(g)
}

fn cycle_general(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    require(g, Topology::Cycle, 6, None)?;
    let (n, k) = (g.n(), g.n() / 3);
    let ki = k as i64;
    let mut parts = Parts::new(g);

    let last_t = if k % 2 == 0 { ki - 2 } else { ki - 3 };
    for t in (0..=last_t).step_by(2) {
        let b = pattern_b(t, BPattern::B, k, n)?;
        parts.parts.push((format!("B{t}"), to_set(g, b)));
        parts.column(3 * t + 1)?;
        parts.column(3 * t + 4)?;
    }
    if k % 2 == 1 {
        parts.parts.push((
            "B''".into(),
            to_set(g, pattern_b(0, BPattern::BDoublePrime, k, n)?),
        ));
        parts.column(3 * ki - 2)?;
    }
    match n % 3 {
        0 => {}
        1 => {
            parts.column(3 * ki)?;
            if k % 2 == 0 {
                parts.vertices("wrap", &[(2, 3 * ki - 1)])?;
            }
        }
        _ => {
            parts.parts.push((
                "B'".into(),
                to_set(g, pattern_b(0, BPattern::BPrime, k, n)?),
            ));
            parts.column(3 * ki + 1)?;
        }
    }

    let plan = parts.into_plan(ConstructionPlan::new(Family::CycleGeneral, g));
    Ok(plan.assemble(g))
}

/// Optimal codes for `K_m × P_n`, `3 ≤ n ≤ 6`.
pub fn construct_appendix_code(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    require(g, Topology::Path, 3, Some(6))?;
    let (m, n) = (g.m(), g.n());
    let mut parts = Parts::new(g);
    let ni = n as i64;
    let first_three = |col: i64| [(0usize, col), (1, col), (2, col)];

    let full_cols: &[i64];
    let mut extra: Vec<(usize, i64)> = Vec::new();
    match (m, n) {
        (3, 3) => full_cols = &[0, 1, 2],
        (3, 4) => full_cols = &[0, 1, 2, 3],
        (3, 5) => full_cols = &[0, 1, 3, 4],
        (3, 6) => {
            full_cols = &[0, 1, 4, 5];
            extra.extend([(2, 2), (2, 3)]);
        }
        (_, 3) => {
            full_cols = &[0, 2];
            extra.extend(first_three(1));
        }
        (_, 4) => {
            full_cols = &[0, 3];
            extra.extend(first_three(1));
            extra.extend(first_three(2));
        }
        (4 | 5, 5) => {
            full_cols = &[0, 4];
            extra.extend(first_three(1));
            extra.extend((m - 3..m).map(|r| (r, 3)));
        }
        (4 | 5, 6) => {
            full_cols = &[0, 5];
            extra.extend(first_three(1));
            extra.extend(first_three(4));
            for r in 3..m {
                extra.extend([(r, 2), (r, 3)]);
            }
        }
        (_, 5) => {
            full_cols = &[0, 4];
            extra.extend(first_three(1));
            extra.extend((3..m).map(|r| (r, 3)));
        }
        _ => {
            full_cols = &[0, 2, 5];
            extra.extend(first_three(1));
            extra.extend(first_three(4));
        }
    }
    debug_assert!(full_cols.iter().all(|&c| c < ni));
    for &c in full_cols {
        parts.column(c)?;
    }
    if !extra.is_empty() {
        parts.vertices("extra", &extra)?;
    }
    let plan = parts.into_plan(ConstructionPlan::new(Family::AppendixSmall, g));
    Ok(plan.assemble(g))
}

/// Removes vertices in canonical order while the set stays self-identifying.
pub fn greedy_minimal(g: &ProductGraph, start: VertexSet) -> VertexSet {
    greedy_while(g, start, |c| c.is_self_identifying_def1().holds)
}

fn greedy_while(
    g: &ProductGraph,
    start: VertexSet,
    keep: impl Fn(&CodeSet<'_>) -> bool,
) -> VertexSet {
    let mut s = start;
    for idx in 0..g.order() {
        if !s.contains_index(idx) {
            continue;
        }
        s.remove_index(idx);
        let still = CodeSet::new(g, s.clone())
            .map(|c| keep(&c))
            .unwrap_or(false);
        if !still {
            s.insert_index(idx);
        }
    }
    s
}

fn passes_cycle_check(c: &CodeSet<'_>) -> bool {
    c.check_sufficient_cycle().is_ok_and(|v| v.holds) && c.is_self_identifying_def1().holds
}

const FALLBACK_NODE_BUDGET: u64 = 2_000_000;
const FALLBACK_MAX_ORDER: usize = 64;

/// Code for `K_m × C_n` with `n ∈ {3, 4, 5}` that also satisfies the local
/// sufficient condition. Starts from all columns and drops vertices
/// greedily; on graphs of at most 64 vertices, the first minimum code (in
/// canonical order) passing the local condition replaces it when the exact
/// solver enumerates all minimum codes within a fixed node budget.
pub fn construct_cycle_fallback(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    require(g, Topology::Cycle, 3, Some(5))?;
    let mut best = greedy_while(g, g.full_set(), passes_cycle_check);
    if g.order() <= FALLBACK_MAX_ORDER {
        let budget = SolveBudget {
            max_nodes: FALLBACK_NODE_BUDGET,
            max_seconds: f64::INFINITY,
            allow_symmetry: false,
            threads: 1,
            ..SolveBudget::default()
        };
        if let Ok(all) = solver::enumerate_optimal_codes(g, &budget) {
            if let Some(c) = all.into_iter().find(passes_cycle_check) {
                if c.len() < best.len() {
                    best = c.into_members();
                }
            }
        }
    }
    let mut parts = Parts::new(g);
    parts.group("greedy", vec![best]);
    let plan = parts.into_plan(ConstructionPlan::new(Family::CycleFallback, g));
    Ok(plan.assemble(g))
}

/// Dispatches to the construction covering `(m, n, topology)`.
pub fn construct(g: &ProductGraph) -> Result<(CodeSet<'_>, ConstructionPlan)> {
    let (m, n, t) = (g.m(), g.n(), g.topology());
    if m < 3 || n < 3 {
        return Err(Error::Unsupported {
            m,
            n,
            topology: t,
            reason: "constructions need m >= 3 and n >= 3".into(),
        });
    }
    match (t, n) {
        (Topology::Path, 3..=6) => construct_appendix_code(g),
        (Topology::Path, _) => construct_path_code(g),
        (Topology::Cycle, 3..=5) => construct_cycle_fallback(g),
        (Topology::Cycle, _) => construct_cycle_code(g),
    }
}

/// Constructions that need no search. `None` for the cycle fallback range
/// or unsupported parameters.
pub(crate) fn construct_direct(g: &ProductGraph) -> Option<VertexSet> {
    let built = match (g.topology(), g.n()) {
        _ if g.m() < 3 || g.n() < 3 => return None,
        (Topology::Path, 3..=6) => construct_appendix_code(g),
        (Topology::Path, _) => construct_path_code(g),
        (Topology::Cycle, 3..=5) => return None,
        (Topology::Cycle, _) => cycle_general(g),
    };
    built.ok().map(|(c, _)| c.into_members())
}

/// Column indices touched by a set, for diagnostics.
pub fn occupied_columns(s: &VertexSet) -> BTreeSet<usize> {
    s.iter().map(|v| v.col).collect()
}
