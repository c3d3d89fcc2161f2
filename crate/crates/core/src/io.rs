//! JSON code files, sweep CSV and Graphviz DOT output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bounds::DensityRow;
use crate::construct::{ConstructionPlan, Family};
use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Topology, Vertex, VertexSet};
use crate::solver::SolveResult;
use crate::verify::CodeSet;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk code: dimensions, topology and codewords in canonical order,
/// plus the construction metadata when the code came from one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub format_version: u32,
    pub m: usize,
    pub n: usize,
    pub topology: Topology,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub codewords: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<BTreeMap<String, Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_size: Option<usize>,
}

impl CodeFile {
    pub fn from_code(code: &CodeSet<'_>, plan: Option<&ConstructionPlan>) -> Self {
        let g = code.graph();
        CodeFile {
            format_version: FORMAT_VERSION,
            m: g.m(),
            n: g.n(),
            topology: g.topology(),
            family: plan.map(|p| p.family),
            codewords: code.codewords(),
            parts: plan.map(|p| {
                p.parts
                    .iter()
                    .map(|(name, s)| (name.clone(), s.iter().collect()))
                    .collect()
            }),
            predicted_size: plan.map(|p| p.predicted_size),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("code files always serialize");
        s.push('\n');
        s
    }

    /// Parses and validates: version, dimensions, ranges, no duplicates.
    /// Codewords are returned in canonical order.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut f: CodeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    fn validate(&mut self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let g = self.graph().map_err(|e| Error::Parse(e.to_string()))?;
        for v in &self.codewords {
            if !g.contains(*v) {
                return Err(Error::Parse(format!("codeword {v} is out of range")));
            }
        }
        let n = self.n;
        self.codewords.sort_by_key(|v| v.row * n + v.col);
        if let Some(w) = self.codewords.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("duplicate codeword {}", w[0])));
        }
        for (name, part) in self.parts.iter_mut().flatten() {
            if let Some(v) = part.iter().find(|v| !g.contains(**v)) {
                return Err(Error::Parse(format!(
                    "part {name}: vertex {v} is out of range"
                )));
            }
            part.sort_by_key(|v| v.row * n + v.col);
        }
        Ok(())
    }

    pub fn graph(&self) -> Result<ProductGraph> {
        ProductGraph::new(self.m, self.n, self.topology)
    }

    pub fn members(&self) -> Result<VertexSet> {
        VertexSet::from_vertices(self.m, self.n, self.codewords.iter().copied())
    }

    pub fn to_code<'g>(&self, g: &'g ProductGraph) -> Result<CodeSet<'g>> {
        CodeSet::new(g, self.members()?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// JSON form of a solver run.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub problem: crate::solver::Problem,
    pub optimum: usize,
    pub certified: bool,
    pub canonical: bool,
    pub nodes_explored: u64,
    pub prunes_by_rule: BTreeMap<String, u64>,
    pub witness: CodeFile,
}

impl From<&SolveResult<'_>> for SolveReport {
    fn from(r: &SolveResult<'_>) -> Self {
        SolveReport {
            problem: r.problem,
            optimum: r.optimum,
            certified: r.certified,
            canonical: r.canonical,
            nodes_explored: r.nodes_explored,
            prunes_by_rule: r.prunes_by_rule.clone(),
            witness: CodeFile::from_code(&r.witness, None),
        }
    }
}

pub const CSV_HEADER: &str =
    "m,n,topology,lower,construction,upper,exact,density_lower,density_construction,density_upper";

/// Formats with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn csv_row(r: &DensityRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.m,
        r.n,
        r.topology,
        r.lower,
        r.construction,
        r.upper,
        r.exact.map(|e| e.to_string()).unwrap_or_default(),
        sig12(ratio_f64(&r.density_lower)),
        sig12(ratio_f64(&r.density_construction)),
        sig12(ratio_f64(&r.density_upper)),
    )
}

pub fn density_csv(rows: &[DensityRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

/// Undirected DOT graph; codewords drawn as filled black nodes.
pub fn to_dot(g: &ProductGraph, code: Option<&VertexSet>) -> String {
    let mut s = String::new();
    let factor = match g.topology() {
        Topology::Path => 'P',
        Topology::Cycle => 'C',
    };
    let _ = writeln!(s, "graph K{}x{}{} {{", g.m(), factor, g.n());
    let _ = writeln!(s, "  node [shape=circle];");
    for v in g.vertices() {
        let coded = code.is_some_and(|c| c.contains(v));
        let style = if coded {
            ", style=filled, fillcolor=black, fontcolor=white"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "  v{}_{} [label=\"{},{}\"{}];",
            v.row, v.col, v.row, v.col, style
        );
    }
    for u in 0..g.order() {
        for w in g.closed_nbhd_of(u).indices().filter(|&w| w > u) {
            let (a, b) = (g.vertex(u), g.vertex(w));
            let _ = writeln!(s, "  v{}_{} -- v{}_{};", a.row, a.col, b.row, b.col);
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_digits() {
        assert_eq!(sig12(5.0 / 9.0), "0.555555555556");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn dot_counts() {
        let g = ProductGraph::new(3, 4, Topology::Path).unwrap();
        let dot = to_dot(&g, None);
        assert_eq!(dot.matches(" -- ").count(), 18);
        assert_eq!(dot.matches("[label=").count(), 12);
    }

    #[test]
    fn rejects_duplicates_and_range() {
        let dup = r#"{"format_version":1,"m":3,"n":3,"topology":"path","codewords":[[0,0],[0,0]]}"#;
        assert!(CodeFile::from_json(dup).is_err());
        let far = r#"{"format_version":1,"m":3,"n":3,"topology":"path","codewords":[[3,0]]}"#;
        assert!(CodeFile::from_json(far).is_err());
        let ver = r#"{"format_version":2,"m":3,"n":3,"topology":"path","codewords":[]}"#;
        assert!(CodeFile::from_json(ver).is_err());
    }
}
