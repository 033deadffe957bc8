//! Named instances: a p-group together with one of the two constructions.

use serde::Serialize;

use crate::construction::LinearAction;
use crate::error::Result;
use crate::pgroup::{catalog::catalog, PGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum Construction {
    /// The regular module modulo its trivial submodule, over GF(q) for a prime q ≠ p.
    Thm1 { q: u64 },
    /// The sum of p+1 one-dimensional modules over the smallest GF(q) with q ≡ 1 mod p.
    Thm2,
}

impl Construction {
    pub fn build(&self, group: &PGroup) -> Result<LinearAction> {
        match *self {
            Construction::Thm1 { q } => LinearAction::regular_quotient(group, q),
            Construction::Thm2 => LinearAction::line_sum(group),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub group: String,
    #[serde(flatten)]
    pub construction: Construction,
}

impl InstanceSpec {
    pub fn thm1(group: &str, q: u64) -> InstanceSpec {
        InstanceSpec { group: group.to_string(), construction: Construction::Thm1 { q } }
    }

    pub fn thm2(group: &str) -> InstanceSpec {
        InstanceSpec { group: group.to_string(), construction: Construction::Thm2 }
    }

    pub fn build(&self) -> Result<LinearAction> {
        self.construction.build(&catalog(&self.group)?)
    }

    pub fn label(&self) -> String {
        match self.construction {
            Construction::Thm1 { q } => format!("thm1 {} q={q}", self.group),
            Construction::Thm2 => format!("thm2 {}", self.group),
        }
    }
}

/// The instances swept by `scan --default-grid` and the acceptance suite.
pub fn default_grid() -> Vec<InstanceSpec> {
    let mut grid: Vec<InstanceSpec> = [
        ("C2^2", 3),
        ("C2^2", 5),
        ("C2^2", 7),
        ("C3^2", 2),
        ("C4xC2", 3),
        ("D8", 3),
        ("Q8", 3),
        ("C2^3", 3),
    ]
    .into_iter()
    .map(|(g, q)| InstanceSpec::thm1(g, q))
    .collect();
    grid.extend(
        ["C2^2", "C4xC2", "D8", "Q8", "C2^3", "M16", "C3^2", "Heis3", "C9xC3", "C5^2"]
            .into_iter()
            .map(InstanceSpec::thm2),
    );
    grid
}
