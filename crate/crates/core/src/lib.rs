//! Self-identifying codes in direct products `K_m × P_n` and `K_m × C_n`:
//! graph model, code checkers, explicit constructions, closed-form bounds
//! and an exact branch-and-bound solver.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod solver;
pub mod verify;

pub use construct::{construct, ConstructionPlan, Family};
pub use error::{Error, Result};
pub use graph::{ProductGraph, Topology, Vertex, VertexSet};
pub use solver::{Problem, PruningRule, SolveBudget, SolveResult};
pub use verify::{Check, CodeSet, VerificationReport};
