//! C ABI over `sidcodes`.
//!
//! Objects cross the boundary as opaque handles created by `sid_*_new` /
//! producer functions and released by the matching `sid_*_free`. Every
//! fallible call returns a [`SidStatus`]; on failure a message is available
//! from [`sid_last_error_message`] until the next failing call on the same
//! thread. Strings returned by the library are freed with
//! [`sid_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sidcodes::bounds;
use sidcodes::io::CodeFile;
use sidcodes::solver::{self, Problem, PruningRule, SolveBudget};
use sidcodes::{CodeSet, Error, ProductGraph, Topology, Vertex, VertexSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    Infeasible = 4,
    BudgetExceeded = 5,
    Parse = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidTopology {
    Path = 0,
    Cycle = 1,
}

impl From<SidTopology> for Topology {
    fn from(t: SidTopology) -> Self {
        match t {
            SidTopology::Path => Topology::Path,
            SidTopology::Cycle => Topology::Cycle,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidProblem {
    SelfIdentifying = 0,
    Identifying = 1,
}

pub const SID_PRUNE_FORCED_BOUNDARY: u32 = 1;
pub const SID_PRUNE_TRIPLE_COLUMN: u32 = 2;
pub const SID_PRUNE_DEGREE_CONDITION: u32 = 4;
pub const SID_PRUNE_ALL: u32 = 7;

/// Search limits. `threads == 0` uses the available parallelism.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SidBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub allow_symmetry: bool,
    /// Bitwise OR of the `SID_PRUNE_*` flags.
    pub pruning: u32,
    pub threads: u32,
}

impl From<&SidBudget> for SolveBudget {
    fn from(b: &SidBudget) -> Self {
        let pruning = [
            (SID_PRUNE_FORCED_BOUNDARY, PruningRule::ForcedBoundary),
            (SID_PRUNE_TRIPLE_COLUMN, PruningRule::TripleColumn),
            (SID_PRUNE_DEGREE_CONDITION, PruningRule::DegreeCondition),
        ]
        .into_iter()
        .filter(|(bit, _)| b.pruning & bit != 0)
        .map(|(_, r)| r)
        .collect();
        SolveBudget {
            max_nodes: b.max_nodes,
            max_seconds: b.max_seconds,
            allow_symmetry: b.allow_symmetry,
            pruning,
            threads: b.threads as usize,
        }
    }
}

/// Opaque graph handle.
pub struct SidGraph {
    graph: ProductGraph,
}

/// Opaque code handle; owns a copy of its graph.
pub struct SidCode {
    graph: ProductGraph,
    members: VertexSet,
}

impl SidCode {
    fn code(&self) -> CodeSet<'_> {
        CodeSet::new(&self.graph, self.members.clone()).expect("members match the graph")
    }
}

/// Opaque solver result handle.
pub struct SidSolveResult {
    optimum: usize,
    certified: bool,
    canonical: bool,
    nodes: u64,
    witness: SidCode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SidStatus {
    match e {
        Error::Dimension { .. }
        | Error::VertexOutOfRange { .. }
        | Error::RowOutOfRange { .. }
        | Error::ColumnOutOfRange { .. }
        | Error::DimensionMismatch(..)
        | Error::PatternRange { .. } => SidStatus::InvalidArgument,
        Error::Unsupported { .. } | Error::WrongTopology { .. } => SidStatus::Unsupported,
        Error::Infeasible => SidStatus::Infeasible,
        Error::BudgetExceeded { .. } => SidStatus::BudgetExceeded,
        Error::Parse(_) | Error::Json(_) => SidStatus::Parse,
        Error::Io(_) => SidStatus::Io,
    }
}

fn fail(e: Error) -> SidStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, turning panics into [`SidStatus::Panic`].
fn guard(f: impl FnOnce() -> SidStatus) -> SidStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SidStatus::Panic
        }
    }
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(r) => r,
            None => {
                set_error(concat!("null pointer: ", stringify!($p)));
                return SidStatus::NullPointer;
            }
        }
    };
}

macro_rules! out {
    ($p:expr) => {
        match $p.as_mut() {
            Some(r) => r,
            None => {
                set_error(concat!("null output pointer: ", stringify!($p)));
                return SidStatus::NullPointer;
            }
        }
    };
}

/// Message for the last failing call on this thread, or NULL. Owned by the
/// library; valid until the next failing call.
#[no_mangle]
pub extern "C" fn sid_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sid_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn sid_budget_default() -> SidBudget {
    let d = SolveBudget::default();
    SidBudget {
        max_nodes: d.max_nodes,
        max_seconds: d.max_seconds,
        allow_symmetry: d.allow_symmetry,
        pruning: SID_PRUNE_ALL,
        threads: 0,
    }
}

/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sid_graph_new(
    m: usize,
    n: usize,
    topology: SidTopology,
    out: *mut *mut SidGraph,
) -> SidStatus {
    guard(|| {
        let out = out!(out);
        match ProductGraph::new(m, n, topology.into()) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(SidGraph { graph }));
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must be NULL or a handle from [`sid_graph_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sid_graph_free(g: *mut SidGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sid_graph_order(g: *const SidGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.order())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sid_graph_edge_count(g: *const SidGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Builds a code from `len` (row, column) pairs.
///
/// # Safety
/// `rows` and `cols` must each point to `len` readable values (or be NULL
/// when `len == 0`); `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sid_code_new(
    g: *const SidGraph,
    rows: *const usize,
    cols: *const usize,
    len: usize,
    out: *mut *mut SidCode,
) -> SidStatus {
    guard(|| {
        let g = deref!(g);
        let out = out!(out);
        let (rows, cols) = if len == 0 {
            (&[][..], &[][..])
        } else {
            if rows.is_null() || cols.is_null() {
                set_error("null coordinate array");
                return SidStatus::NullPointer;
            }
            (
                std::slice::from_raw_parts(rows, len),
                std::slice::from_raw_parts(cols, len),
            )
        };
        let vs = rows.iter().zip(cols).map(|(&r, &c)| Vertex::new(r, c));
        match VertexSet::from_vertices(g.graph.m(), g.graph.n(), vs) {
            Ok(members) => {
                *out = Box::into_raw(Box::new(SidCode {
                    graph: g.graph.clone(),
                    members,
                }));
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The explicit construction for the graph.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_construct(g: *const SidGraph, out: *mut *mut SidCode) -> SidStatus {
    guard(|| {
        let g = deref!(g);
        let out = out!(out);
        match sidcodes::construct(&g.graph) {
            Ok((code, _)) => {
                *out = Box::into_raw(Box::new(SidCode {
                    graph: g.graph.clone(),
                    members: code.into_members(),
                }));
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `c` must be NULL or a live code handle.
#[no_mangle]
pub unsafe extern "C" fn sid_code_free(c: *mut SidCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of codewords, or 0 for NULL.
///
/// # Safety
/// `c` must be NULL or a live code handle.
#[no_mangle]
pub unsafe extern "C" fn sid_code_len(c: *const SidCode) -> usize {
    c.as_ref().map_or(0, |c| c.members.len())
}

/// The `i`-th codeword in canonical order.
///
/// # Safety
/// `c` must be a live code handle; `row` and `col` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_code_get(
    c: *const SidCode,
    i: usize,
    row: *mut usize,
    col: *mut usize,
) -> SidStatus {
    guard(|| {
        let c = deref!(c);
        let row = out!(row);
        let col = out!(col);
        match c.members.iter().nth(i) {
            Some(v) => {
                *row = v.row;
                *col = v.col;
                SidStatus::Ok
            }
            None => {
                set_error(format!(
                    "index {i} out of range for {} codewords",
                    c.members.len()
                ));
                SidStatus::InvalidArgument
            }
        }
    })
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidCheck {
    Dominating = 0,
    Identifying = 1,
    SelfIdentifying = 2,
    SelfIdentifyingDef2 = 3,
    Degree = 4,
    Sufficient = 5,
}

/// Evaluates one predicate on the code.
///
/// # Safety
/// `c` must be a live code handle and `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_code_check(
    c: *const SidCode,
    check: SidCheck,
    holds: *mut bool,
) -> SidStatus {
    guard(|| {
        let c = deref!(c);
        let holds = out!(holds);
        let code = c.code();
        let verdict = match check {
            SidCheck::Dominating => code.is_dominating(),
            SidCheck::Identifying => code.is_identifying(),
            SidCheck::SelfIdentifying => code.is_self_identifying_def1(),
            SidCheck::SelfIdentifyingDef2 => code.is_self_identifying_def2(),
            SidCheck::Degree => code.check_degree_condition(),
            SidCheck::Sufficient => {
                let r = match c.graph.topology() {
                    Topology::Path => code.check_sufficient_path(),
                    Topology::Cycle => code.check_sufficient_cycle(),
                };
                match r {
                    Ok(v) => v,
                    Err(e) => return fail(e),
                }
            }
        };
        *holds = verdict.holds;
        SidStatus::Ok
    })
}

/// Serializes the code to the JSON code-file format. Free the string with
/// [`sid_string_free`].
///
/// # Safety
/// `c` must be a live code handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_code_to_json(c: *const SidCode, out: *mut *mut c_char) -> SidStatus {
    guard(|| {
        let c = deref!(c);
        let out = out!(out);
        let text = CodeFile::from_code(&c.code(), None).to_json();
        match CString::new(text) {
            Ok(s) => {
                *out = s.into_raw();
                SidStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                SidStatus::Parse
            }
        }
    })
}

/// Parses a JSON code file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_code_from_json(
    json: *const c_char,
    out: *mut *mut SidCode,
) -> SidStatus {
    guard(|| {
        if json.is_null() {
            set_error("null json string");
            return SidStatus::NullPointer;
        }
        let out = out!(out);
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => {
                set_error(e.to_string());
                return SidStatus::Parse;
            }
        };
        let parsed = CodeFile::from_json(text).and_then(|f| {
            let graph = f.graph()?;
            let members = f.members()?;
            Ok(SidCode { graph, members })
        });
        match parsed {
            Ok(code) => {
                *out = Box::into_raw(Box::new(code));
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact minimum code. A result is produced even when the budget runs out;
/// check [`sid_result_certified`].
///
/// # Safety
/// `g` must be a live graph handle, `budget` NULL (defaults) or readable,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_solve(
    g: *const SidGraph,
    budget: *const SidBudget,
    problem: SidProblem,
    out: *mut *mut SidSolveResult,
) -> SidStatus {
    guard(|| {
        let g = deref!(g);
        let out = out!(out);
        let budget = match budget.as_ref() {
            Some(b) => SolveBudget::from(b),
            None => SolveBudget::default(),
        };
        if budget.max_nodes == 0 || budget.max_seconds.is_nan() || budget.max_seconds <= 0.0 {
            set_error("budget needs max_nodes >= 1 and max_seconds > 0");
            return SidStatus::InvalidArgument;
        }
        let problem = match problem {
            SidProblem::SelfIdentifying => Problem::SelfIdentifying,
            SidProblem::Identifying => Problem::Identifying,
        };
        match solver::solve(&g.graph, &budget, problem) {
            Ok(r) => {
                let res = SidSolveResult {
                    optimum: r.optimum,
                    certified: r.certified,
                    canonical: r.canonical,
                    nodes: r.nodes_explored,
                    witness: SidCode {
                        graph: g.graph.clone(),
                        members: r.witness.into_members(),
                    },
                };
                *out = Box::into_raw(Box::new(res));
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn sid_result_free(r: *mut SidSolveResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn sid_result_optimum(r: *const SidSolveResult) -> usize {
    r.as_ref().map_or(0, |r| r.optimum)
}

/// # Safety
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn sid_result_certified(r: *const SidSolveResult) -> bool {
    r.as_ref().is_some_and(|r| r.certified)
}

/// # Safety
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn sid_result_canonical(r: *const SidSolveResult) -> bool {
    r.as_ref().is_some_and(|r| r.canonical)
}

/// # Safety
/// `r` must be NULL or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn sid_result_nodes(r: *const SidSolveResult) -> u64 {
    r.as_ref().map_or(0, |r| r.nodes)
}

/// Copies the witness into a new code handle.
///
/// # Safety
/// `r` must be a live result handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sid_result_witness(
    r: *const SidSolveResult,
    out: *mut *mut SidCode,
) -> SidStatus {
    guard(|| {
        let r = deref!(r);
        let out = out!(out);
        *out = Box::into_raw(Box::new(SidCode {
            graph: r.witness.graph.clone(),
            members: r.witness.members.clone(),
        }));
        SidStatus::Ok
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sid_lower_bound(
    m: usize,
    n: usize,
    topology: SidTopology,
    out: *mut usize,
) -> SidStatus {
    guard(|| {
        let out = out!(out);
        match bounds::lower_bound(m, n, topology.into()) {
            Ok(v) => {
                *out = v;
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sid_upper_bound(
    m: usize,
    n: usize,
    topology: SidTopology,
    out: *mut usize,
) -> SidStatus {
    guard(|| {
        let out = out!(out);
        match bounds::upper_bound(m, n, topology.into()) {
            Ok(v) => {
                *out = v;
                SidStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
