//! Structural checks on a [`SemidirectGroup`](crate::semidirect::SemidirectGroup)
//! and the report that collects them.

pub mod checks;
pub mod cover;
pub mod matching;
pub mod minimal;
pub mod redundancy;
pub mod report;
pub mod setcover;

use serde::Serialize;

pub use minimal::{ExactLimits, Mode};
pub use report::{analyze, AnalysisReport, Status};

use crate::oracle;
use crate::semidirect::DEFAULT_ENUMERATION_CEILING;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    /// Redundancy, counts, λ, Gheri and the bound suite.
    Basic,
    /// Everything: covers, Casolo, set-cover search and brute-force cross-checks.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisOptions {
    pub depth: Depth,
    /// Largest ν_p, coset count or |N| that is ever enumerated.
    pub ceiling: u64,
    /// Largest ν_p for per-Sylow enumeration checks.
    pub sylow_limit: u64,
    /// Largest |G| for element-by-element checks.
    pub group_limit: u64,
    pub exact: ExactLimits,
    /// Longest vector list written into a report.
    pub list_limit: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            depth: Depth::Full,
            ceiling: DEFAULT_ENUMERATION_CEILING,
            sylow_limit: oracle::SYLOW_LIMIT,
            group_limit: oracle::GROUP_LIMIT,
            exact: ExactLimits::default(),
            list_limit: 4096,
        }
    }
}

impl AnalysisOptions {
    pub fn basic() -> Self {
        AnalysisOptions { depth: Depth::Basic, ..Self::default() }
    }
}

/// Big integers serialize as decimal strings.
pub(crate) mod big {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn serialize_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}
