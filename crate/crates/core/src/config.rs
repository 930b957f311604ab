//! Enumeration caps and solver settings.
//!
//! Every exponential routine checks its input size against a cap from
//! [`Caps`]. Exceeding a cap is an error, never a silent truncation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the environment variable read by [`Caps::from_env`].
pub const CAP_OVERRIDE_ENV: &str = "GENT_CAP_OVERRIDE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximal independent set enumeration (vertices).
    pub mis: usize,
    /// Vertex count of conormal/normal/OR products.
    pub power_vertices: usize,
    /// Exact chromatic number (vertices, hard limit 64).
    pub chromatic: usize,
    /// Grundy number (vertices).
    pub grundy: usize,
    /// Exact minimum-entropy coloring (vertices).
    pub min_entropy_coloring: usize,
    /// Subset enumeration in the bipartite entropy theorem (vertices).
    pub bipartite_entropy: usize,
    /// Columns of an exact LP.
    pub lp_columns: usize,
    /// Odd-set enumeration for matching-polytope questions (vertices).
    pub odd_sets: usize,
    /// Definitional perfection check over all induced subgraphs (vertices).
    pub perfect_exact: usize,
    /// Odd hole / antihole fallback for perfection (vertices).
    pub perfect_holes: usize,
    /// Exact cover by maximum cliques (vertices).
    pub clique_partition: usize,
    /// Side length of bipartite permanents (vertices per part).
    pub matching_count: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            mis: 30,
            power_vertices: 4096,
            chromatic: 64,
            grundy: 12,
            min_entropy_coloring: 14,
            bipartite_entropy: 24,
            lp_columns: 500,
            odd_sets: 22,
            perfect_exact: 12,
            perfect_holes: 16,
            clique_partition: 20,
            matching_count: 14,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `GENT_CAP_OVERRIDE` when set.
    ///
    /// The variable holds a comma separated list of `name=value` pairs, e.g.
    /// `mis=32,min_entropy_coloring=16`.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAP_OVERRIDE_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("cap override `{item}`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("cap override `{item}`")))?;
            if value == 0 {
                return Err(Error::InvalidParameter(format!("cap `{key}` must be >= 1")));
            }
            let slot = match key.trim() {
                "mis" => &mut self.mis,
                "power_vertices" | "power" => &mut self.power_vertices,
                "chromatic" => &mut self.chromatic,
                "grundy" => &mut self.grundy,
                "min_entropy_coloring" | "coloring" => &mut self.min_entropy_coloring,
                "bipartite_entropy" => &mut self.bipartite_entropy,
                "lp_columns" | "lp" => &mut self.lp_columns,
                "odd_sets" => &mut self.odd_sets,
                "perfect_exact" => &mut self.perfect_exact,
                "perfect_holes" => &mut self.perfect_holes,
                "clique_partition" => &mut self.clique_partition,
                "matching_count" => &mut self.matching_count,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown cap `{other}`")));
                }
            };
            *slot = value;
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::CapExceeded {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}

/// Settings shared by the iterative entropy solvers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target optimality gap in bits.
    pub tol: f64,
    /// Iteration budget.
    pub budget: usize,
    pub caps: Caps,
}

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_BUDGET: usize = 100_000;
/// Tolerance for numeric symmetry verdicts, in bits.
pub const SYMMETRY_TOL: f64 = 1e-4;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: DEFAULT_TOL,
            budget: DEFAULT_BUDGET,
            caps: Caps::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidParameter(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default().with_overrides("mis=12, coloring=16").unwrap();
        assert_eq!(caps.mis, 12);
        assert_eq!(caps.min_entropy_coloring, 16);
        assert!(Caps::default().with_overrides("bogus=3").is_err());
        assert!(Caps::default().with_overrides("mis=0").is_err());
        assert!(Caps::default().with_overrides("mis").is_err());
    }

    #[test]
    fn invalid_tol_rejected() {
        assert!(SolverConfig::default().with_tol(0.0).validate().is_err());
        assert!(SolverConfig::default().with_tol(-1.0).validate().is_err());
        assert!(SolverConfig::default().validate().is_ok());
    }
}
