//! Closed-form bounds on minimum self-identifying code sizes and the
//! densities they imply.

use num_rational::Ratio;

use crate::construct::construct;
use crate::error::{Error, Result};
use crate::graph::{ProductGraph, Topology};
use crate::solver::{solve_min_id, solve_min_sid, SolveBudget};

fn unsupported(m: usize, n: usize, topology: Topology, reason: &str) -> Error {
    Error::Unsupported {
        m,
        n,
        topology,
        reason: reason.to_string(),
    }
}

fn check_range(m: usize, n: usize, topology: Topology) -> Result<()> {
    if m < 3 {
        return Err(unsupported(m, n, topology, "bounds need m >= 3"));
    }
    if n < 3 {
        return Err(unsupported(m, n, topology, "bounds need n >= 3"));
    }
    Ok(())
}

/// Known minimum for `K_m × P_n` with `3 ≤ n ≤ 6`, `m ≥ 3`.
pub fn exact_small_value(m: usize, n: usize) -> Option<usize> {
    if m < 3 {
        return None;
    }
    match (m, n) {
        (3, 3) => Some(9),
        (3, 4) | (3, 5) => Some(12),
        (3, 6) => Some(14),
        (_, 3) => Some(2 * m + 3),
        (_, 4) => Some(2 * m + 6),
        (4 | 5, 5) => Some(2 * m + 6),
        (4 | 5, 6) => Some(4 * m),
        (_, 5) => Some(3 * m),
        (_, 6) => Some(3 * m + 6),
        _ => None,
    }
}

/// Lower bound on `γ^SID`. Short paths return the known exact value.
pub fn lower_bound(m: usize, n: usize, topology: Topology) -> Result<usize> {
    check_range(m, n, topology)?;
    Ok(match topology {
        Topology::Path if n <= 6 => exact_small_value(m, n).expect("short path value"),
        Topology::Path => (n + 1).div_ceil(3) * (m + 2) - 2,
        Topology::Cycle => n / 3 * (m + 2),
    })
}

/// Upper bound on `γ^SID`. Short paths return the known exact value.
pub fn upper_bound(m: usize, n: usize, topology: Topology) -> Result<usize> {
    check_range(m, n, topology)?;
    Ok(match topology {
        Topology::Path if n <= 6 => exact_small_value(m, n).expect("short path value"),
        Topology::Path => (n + 1).div_ceil(3) * (m + 3) + m,
        Topology::Cycle => n.div_ceil(3) * (m + 3) + 3,
    })
}

/// Size of the general path construction, `n ≥ 7`:
/// `(k+1)(m+3)`, plus `m` when `n ≡ 2 (mod 3)`.
pub fn path_construction_size(m: usize, n: usize) -> usize {
    let k = n / 3;
    (k + 1) * (m + 3) + if n % 3 == 2 { m } else { 0 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRecord {
    pub m: usize,
    pub n: usize,
    pub topology: Topology,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    pub exact_source: Option<&'static str>,
    pub density_lower: Ratio<u64>,
    pub density_upper: Ratio<u64>,
}

fn density(size: usize, m: usize, n: usize) -> Ratio<u64> {
    Ratio::new(size as u64, (m * n) as u64)
}

pub fn bounds_record(m: usize, n: usize, topology: Topology) -> Result<BoundsRecord> {
    let lower = lower_bound(m, n, topology)?;
    let upper = upper_bound(m, n, topology)?;
    let (lower_source, upper_source, exact, exact_source) = match topology {
        Topology::Path if n <= 6 => (
            "short_path_exact",
            "short_path_exact",
            exact_small_value(m, n),
            Some("short_path_exact"),
        ),
        Topology::Path => ("path_lower", "path_upper", None, None),
        Topology::Cycle => ("cycle_lower", "cycle_upper", None, None),
    };
    Ok(BoundsRecord {
        m,
        n,
        topology,
        lower,
        upper,
        exact,
        lower_source,
        upper_source,
        exact_source,
        density_lower: density(lower, m, n),
        density_upper: density(upper, m, n),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub m: usize,
    pub n: usize,
    pub topology: Topology,
    pub lower: usize,
    pub construction: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub density_lower: Ratio<u64>,
    pub density_construction: Ratio<u64>,
    pub density_upper: Ratio<u64>,
}

impl DensityRow {
    pub fn sandwiched(&self) -> bool {
        self.density_lower <= self.density_construction
            && self.density_construction <= self.density_upper
    }
}

/// Bounds and construction size for a single `(m, n)`.
pub fn density_row(m: usize, n: usize, topology: Topology) -> Result<DensityRow> {
    let rec = bounds_record(m, n, topology)?;
    let g = ProductGraph::new(m, n, topology)?;
    let (code, _) = construct(&g)?;
    let size = code.len();
    Ok(DensityRow {
        m,
        n,
        topology,
        lower: rec.lower,
        construction: size,
        upper: rec.upper,
        exact: rec.exact,
        density_lower: rec.density_lower,
        density_construction: density(size, m, n),
        density_upper: rec.density_upper,
    })
}

/// One row per `n` from 3 up to `n_max`.
pub fn density_profile(m: usize, n_max: usize, topology: Topology) -> Result<Vec<DensityRow>> {
    let min_max = match topology {
        Topology::Path => 7,
        Topology::Cycle => 3,
    };
    if n_max < min_max {
        return Err(unsupported(
            m,
            n_max,
            topology,
            &format!("profile needs n_max >= {min_max}"),
        ));
    }
    (3..=n_max).map(|n| density_row(m, n, topology)).collect()
}

/// Limits of the lower and upper bound densities as `n` grows with `m` fixed:
/// `(m+2)/(3m)` and `(m+3)/(3m)`.
pub fn fixed_m_limits(m: usize) -> (Ratio<u64>, Ratio<u64>) {
    let m = m as u64;
    (Ratio::new(m + 2, 3 * m), Ratio::new(m + 3, 3 * m))
}

/// Certified `(γ^ID, γ^SID)`.
pub fn compare_gamma_id(g: &ProductGraph, budget: &SolveBudget) -> Result<(usize, usize)> {
    let id = solve_min_id(g, budget)?;
    if !id.certified {
        return Err(Error::BudgetExceeded {
            nodes: id.nodes_explored,
        });
    }
    let sid = solve_min_sid(g, budget)?;
    if !sid.certified {
        return Err(Error::BudgetExceeded {
            nodes: sid.nodes_explored,
        });
    }
    Ok((id.optimum, sid.optimum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(lower_bound(3, 7, Topology::Path).unwrap(), 13);
        assert_eq!(upper_bound(3, 7, Topology::Path).unwrap(), 21);
        assert_eq!(lower_bound(3, 6, Topology::Cycle).unwrap(), 10);
        assert_eq!(upper_bound(3, 6, Topology::Cycle).unwrap(), 15);
        assert_eq!(lower_bound(4, 9, Topology::Cycle).unwrap(), 18);
        assert_eq!(upper_bound(3, 3, Topology::Path).unwrap(), 9);
    }

    #[test]
    fn small_values() {
        assert_eq!(exact_small_value(3, 4), Some(12));
        assert_eq!(exact_small_value(5, 6), Some(20));
        assert_eq!(exact_small_value(7, 5), Some(21));
        assert_eq!(exact_small_value(3, 7), None);
        assert_eq!(exact_small_value(2, 4), None);
    }

    #[test]
    fn out_of_range() {
        assert!(lower_bound(2, 9, Topology::Path).is_err());
        assert!(upper_bound(3, 2, Topology::Path).is_err());
    }
}
