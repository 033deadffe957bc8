//! Set-cover questions over the Sylow subgroups: minimal covers of G_p, the
//! smallest cover of P by other Sylow subgroups, and the largest union of n of them.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use super::cover::{CoverMethod, SylowCover};
use super::setcover::{BitSet, SetSystem};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::oracle::ElementKeys;
use crate::semidirect::SemidirectGroup;

/// Size ceilings for exact search; above them only greedy runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactLimits {
    pub max_sylows: u64,
    pub max_p_elements: u64,
    pub max_union_n: usize,
    /// Branch-and-bound node budget.
    pub nodes: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_sylows: 64, max_p_elements: 512, max_union_n: 4, nodes: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Greedy,
}

/// Universe G_p (as the union of all Sylow subgroups), one set per Sylow subgroup.
pub struct SylowSystem {
    pub representatives: Vec<Vector>,
    pub system: SetSystem,
}

impl SylowSystem {
    pub fn build(g: &SemidirectGroup, sylow_limit: u64) -> Result<SylowSystem> {
        let nu = g.enumerable("Sylow p-subgroup count", &g.sylow_count())?;
        if nu > sylow_limit {
            return Err(Error::TooLargeToEnumerate {
                what: "Sylow p-subgroup count",
                size: nu.to_string(),
                ceiling: sylow_limit,
            });
        }
        let keys = ElementKeys::new(g)?;
        let representatives = g.enumerate_sylows()?;
        let mut index: HashMap<u64, usize> = HashMap::new();
        let members: Vec<Vec<usize>> = representatives
            .iter()
            .map(|t| {
                g.group()
                    .elements()
                    .map(|x| {
                        let next = index.len();
                        *index.entry(keys.key(&g.sylow_element(t, x))).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let system = SetSystem::from_members(index.len(), &members);
        Ok(SylowSystem { representatives, system })
    }

    pub fn p_element_count(&self) -> usize {
        self.system.universe()
    }

    fn exact_allowed(&self, limits: &ExactLimits) -> bool {
        self.representatives.len() as u64 <= limits.max_sylows || self.p_element_count() as u64 <= limits.max_p_elements
    }

    fn cover(&self, g: &SemidirectGroup, chosen: &[usize], method: CoverMethod) -> Result<SylowCover> {
        SylowCover::new(g, chosen.iter().map(|&i| self.representatives[i].clone()).collect(), method)
    }

    /// Minimum cover of G_p. Exact mode returns `ExactBudgetExceeded` when the
    /// instance is over the size limits or the search exhausts its node budget.
    pub fn minimal_cover(&self, g: &SemidirectGroup, mode: Mode, limits: &ExactLimits) -> Result<SylowCover> {
        match mode {
            Mode::Greedy => {
                let chosen = self.system.greedy_cover().ok_or_else(|| Error::InternalError("Sylow subgroups do not cover their union".into()))?;
                self.cover(g, &chosen, CoverMethod::Greedy)
            }
            Mode::Exact => {
                if !self.exact_allowed(limits) {
                    return Err(Error::ExactBudgetExceeded(limits.nodes));
                }
                let chosen = self
                    .system
                    .exact_cover(limits.nodes)?
                    .ok_or_else(|| Error::InternalError("Sylow subgroups do not cover their union".into()))?;
                self.cover(g, &chosen, CoverMethod::Exact)
            }
        }
    }

    /// max over n-sets of Sylow subgroups of |union| / |G_p|.
    pub fn union_ratio(&self, n: usize, mode: Mode, limits: &ExactLimits) -> UnionRatio {
        let total = self.p_element_count();
        let allowed = n <= limits.max_union_n && self.representatives.len() as u64 <= limits.max_sylows;
        let exact = match mode {
            Mode::Exact if allowed => self.system.max_union(n, limits.nodes).ok(),
            _ => None,
        };
        let fell_back = mode == Mode::Exact && exact.is_none();
        let (size, chosen) = exact.clone().unwrap_or_else(|| {
            let chosen = self.system.greedy(n);
            (self.system.union_size(&chosen), chosen)
        });
        let ratio = Ratio::new(size as u64, total as u64);
        UnionRatio {
            n,
            union_size: size as u64,
            p_elements: total as u64,
            ratio: format!("{}/{}", ratio.numer(), ratio.denom()),
            exact: exact.is_some(),
            fell_back,
            equals_p_elements: size == total,
            chosen: chosen.iter().map(|&i| self.representatives[i].clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionRatio {
    pub n: usize,
    pub union_size: u64,
    pub p_elements: u64,
    /// In lowest terms.
    pub ratio: String,
    pub exact: bool,
    /// Exact search was requested but not run or not finished.
    pub fell_back: bool,
    pub equals_p_elements: bool,
    pub chosen: Vec<Vector>,
}

/// The smallest number of Sylow subgroups other than P whose union contains P.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedundantCover {
    /// Minimum k, or `None` when the other Sylow subgroups do not cover P.
    pub size: Option<usize>,
    pub representatives: Vec<Vector>,
    /// Distinct traces P ∩ tPt⁻¹ considered.
    pub distinct_traces: usize,
}

/// (0, x) ∈ tPt⁻¹ iff t ∈ C_N(x), so each t ∉ C_N(P) contributes the trace
/// {x : t ∈ C_N(x)}. Identical traces are merged, keeping the least t.
pub fn redundant_cover(g: &SemidirectGroup, sylow_limit: u64, nodes: u64) -> Result<RedundantCover> {
    let nu = g.enumerable("Sylow p-subgroup count", &g.sylow_count())?;
    if nu > sylow_limit {
        return Err(Error::TooLargeToEnumerate { what: "Sylow p-subgroup count", size: nu.to_string(), ceiling: sylow_limit });
    }
    let f = g.field();
    let order = g.group().order();
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    let mut traces = Vec::new();
    let mut reps = Vec::new();
    for t in g.enumerate_sylows()?.into_iter().skip(1) {
        let mut trace = BitSet::new(order);
        for x in g.group().elements() {
            if g.centralizer_in_n(x).contains(f, &t) {
                trace.insert(x);
            }
        }
        if seen.insert(trace.clone()) {
            traces.push(trace);
            reps.push(t);
        }
    }
    let distinct_traces = traces.len();
    let system = SetSystem::new(order, traces);
    Ok(match system.exact_cover(nodes)? {
        Some(chosen) => RedundantCover {
            size: Some(chosen.len()),
            representatives: chosen.iter().map(|&i| reps[i].clone()).collect(),
            distinct_traces,
        },
        None => RedundantCover { size: None, representatives: Vec::new(), distinct_traces },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::LinearAction;
    use crate::field::Field;
    use crate::oracle;
    use crate::pgroup::catalog::catalog;

    fn thm1(name: &str, q: u64) -> SemidirectGroup {
        SemidirectGroup::new(LinearAction::regular_quotient(&catalog(name).unwrap(), q).unwrap())
    }

    #[test]
    fn universe_is_the_p_elements() {
        let g = thm1("C2^2", 3);
        let s = SylowSystem::build(&g, 10_000).unwrap();
        assert_eq!(s.p_element_count(), 28);
        assert_eq!(s.p_element_count(), oracle::p_elements(&g, oracle::GROUP_LIMIT).unwrap().len());
    }

    #[test]
    fn exact_cover_of_order_108_group() {
        let g = thm1("C2^2", 3);
        let s = SylowSystem::build(&g, 10_000).unwrap();
        let limits = ExactLimits::default();
        let exact = s.minimal_cover(&g, Mode::Exact, &limits).unwrap();
        let greedy = s.minimal_cover(&g, Mode::Greedy, &limits).unwrap();
        assert!(exact.verified && greedy.verified);
        assert!(oracle::covers(&g, &exact.representatives, oracle::GROUP_LIMIT).unwrap());
        // 27 involutions, 3 per Sylow subgroup
        assert!(exact.size() >= 9 && exact.size() <= 18);
        assert!(exact.size() <= greedy.size());
    }

    #[test]
    fn union_ratios_of_order_108_group() {
        let g = thm1("C2^2", 3);
        let s = SylowSystem::build(&g, 10_000).unwrap();
        let limits = ExactLimits::default();
        let one = s.union_ratio(1, Mode::Exact, &limits);
        assert_eq!(one.ratio, "1/7");
        assert!(one.exact);
        let two = s.union_ratio(2, Mode::Exact, &limits);
        assert!(two.exact);
        assert!(Ratio::new(two.union_size, 28) <= Ratio::new(1, 4));
        assert!(!two.equals_p_elements);
    }

    #[test]
    fn normal_sylow_cover_has_size_one() {
        let a = LinearAction::trivial(&catalog("C2^2").unwrap(), Field::prime(3).unwrap(), 2).unwrap();
        let g = SemidirectGroup::new(a);
        let s = SylowSystem::build(&g, 10_000).unwrap();
        let c = s.minimal_cover(&g, Mode::Exact, &ExactLimits::default()).unwrap();
        assert_eq!(c.size(), 1);
        let r = s.union_ratio(1, Mode::Exact, &ExactLimits::default());
        assert!(r.equals_p_elements);
        assert_eq!(redundant_cover(&g, 10_000, 1000).unwrap().size, None);
    }

    #[test]
    fn exact_refused_over_limits() {
        let g = thm1("C3^2", 2);
        let s = SylowSystem::build(&g, 10_000).unwrap();
        let limits = ExactLimits { max_sylows: 10, max_p_elements: 10, ..ExactLimits::default() };
        assert!(matches!(s.minimal_cover(&g, Mode::Exact, &limits), Err(Error::ExactBudgetExceeded(_))));
        let r = s.union_ratio(2, Mode::Exact, &limits);
        assert!(r.fell_back && !r.exact);
    }

    #[test]
    fn redundant_cover_needs_at_least_p_plus_one() {
        for (name, q) in [("C2^2", 3), ("C2^2", 5), ("C3^2", 2), ("Q8", 3)] {
            let g = thm1(name, q);
            let k = redundant_cover(&g, 10_000, 1_000_000).unwrap();
            assert!(k.size.unwrap() as u64 > g.p(), "{name}: {:?}", k.size);
        }
    }
}
