//! The `report_v1` JSON document for one instance, and the pipeline that fills it.
//!
//! Field order is fixed by the struct definitions and every collection is built
//! in a deterministic order, so identical inputs serialize to identical bytes.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::checks::{self, BoundCheck, BoundInputs, CasoloCheck, GheriCheck, LambdaEntry, Relation};
use super::cover::{self, CoverMethod, SylowCover};
use super::minimal::{redundant_cover, Mode, RedundantCover, SylowSystem, UnionRatio};
use super::redundancy::{self, Witness};
use super::{big, AnalysisOptions, Depth};
use crate::construction::{LinearAction, Provenance};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::oracle;
use crate::semidirect::SemidirectGroup;

pub const SCHEMA: &str = "report_v1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Some check implied by the theory failed.
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub group: String,
    pub p: u64,
    pub group_order: usize,
    pub provenance: &'static str,
    pub q: Option<u64>,
    /// Characteristic of the coordinates of N.
    pub characteristic: u32,
    pub dim: usize,
    #[serde(serialize_with = "big::serialize")]
    pub n_order: BigUint,
    #[serde(serialize_with = "big::serialize")]
    pub order: BigUint,
}

impl InstanceInfo {
    pub fn of(g: &SemidirectGroup) -> InstanceInfo {
        let a = g.action();
        InstanceInfo {
            group: a.group().name().to_string(),
            p: g.p(),
            group_order: a.group().order(),
            provenance: a.provenance().tag(),
            q: a.provenance().q(),
            characteristic: g.field().order(),
            dim: g.dim(),
            n_order: g.n_order(),
            order: g.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub representative: usize,
    pub class_size: usize,
    #[serde(serialize_with = "big::serialize")]
    pub centralizer_order: BigUint,
    #[serde(serialize_with = "big::serialize")]
    pub g_class_size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PElements {
    #[serde(serialize_with = "big::serialize")]
    pub total: BigUint,
    /// |G_p| / |P|.
    #[serde(serialize_with = "big::serialize")]
    pub multiplier: BigUint,
    pub classes: Vec<ClassRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverSubspace {
    /// Members of the maximal subgroup P_i.
    pub subgroup: Vec<usize>,
    /// dim C_N(P_i) over the prime field.
    pub dim: usize,
    #[serde(serialize_with = "big::serialize")]
    pub index: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverSummary {
    pub size: usize,
    pub method: CoverMethod,
    /// The coset criterion holds.
    pub verified: bool,
    /// Element-by-element check against brute-force G_p, when |G| is small enough.
    pub exhaustive: Option<bool>,
    /// Omitted when longer than the configured list limit.
    pub representatives: Option<Vec<Vector>>,
}

impl CoverSummary {
    fn ok(&self) -> bool {
        self.verified && self.exhaustive != Some(false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Covers {
    pub subspaces: Vec<CoverSubspace>,
    pub transversal: Option<CoverSummary>,
    pub improved: Option<CoverSummary>,
    pub greedy: Option<CoverSummary>,
    pub exact: Option<CoverSummary>,
    /// ⌈(|G_p| − 1)/(|P| − 1)⌉: each Sylow subgroup holds |P| − 1 nonidentity p-elements.
    #[serde(serialize_with = "big::serialize_opt")]
    pub counting_lower_bound: Option<BigUint>,
    pub redundant_cover: Option<RedundantCover>,
    pub union_ratios: Vec<UnionRatio>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub computed: String,
    pub brute_force: String,
    pub agree: bool,
}

impl OracleCheck {
    fn new(name: &'static str, computed: impl ToString, brute_force: impl ToString) -> OracleCheck {
        let (computed, brute_force) = (computed.to_string(), brute_force.to_string());
        OracleCheck { name, agree: computed == brute_force, computed, brute_force }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub config: serde_json::Value,
    pub instance: InstanceInfo,
    #[serde(serialize_with = "big::serialize")]
    pub sylow_count: BigUint,
    #[serde(serialize_with = "big::serialize")]
    pub normalizer_order: BigUint,
    pub p_elements: PElements,
    pub redundant: bool,
    pub obstruction: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub lambda: Vec<LambdaEntry>,
    pub gheri: GheriCheck,
    pub casolo: Option<CasoloCheck>,
    pub covers: Option<Covers>,
    pub bounds: Vec<BoundCheck>,
    pub oracle: Vec<OracleCheck>,
    pub skipped: Vec<Skipped>,
    /// Names of failed checks.
    pub failures: Vec<String>,
    pub status: Status,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Pipeline<'a> {
    g: &'a SemidirectGroup,
    opts: &'a AnalysisOptions,
    skipped: Vec<Skipped>,
    failures: Vec<String>,
}

impl Pipeline<'_> {
    fn skip(&mut self, check: &'static str, err: &Error) {
        self.skipped.push(Skipped { check, reason: err.to_string() });
    }

    fn fail(&mut self, name: impl Into<String>) {
        self.failures.push(name.into());
    }

    /// Runs `f`, recording budget errors as skips and other errors as failures.
    fn attempt<T>(&mut self, check: &'static str, f: impl FnOnce() -> Result<T>) -> Option<T> {
        match f() {
            Ok(v) => Some(v),
            Err(e) if e.is_budget() => {
                self.skip(check, &e);
                None
            }
            Err(e) => {
                self.fail(format!("{check}: {e}"));
                None
            }
        }
    }

    fn group_small(&self) -> bool {
        self.g.order().to_u64().is_some_and(|n| n <= self.opts.group_limit)
    }

    fn summarize(&mut self, cover: SylowCover) -> CoverSummary {
        let exhaustive = if self.group_small() {
            oracle::covers(self.g, &cover.representatives, self.opts.group_limit).ok()
        } else {
            None
        };
        let size = cover.size();
        CoverSummary {
            size,
            method: cover.method,
            verified: cover.verified,
            exhaustive,
            representatives: (size <= self.opts.list_limit).then_some(cover.representatives),
        }
    }

    fn covers(&mut self, redundant: bool, p_elements: &BigUint, bounds: &mut Vec<BoundCheck>) -> Covers {
        let g = self.g;
        let mut out = Covers::default();
        let structured = g.action().maximal_cover().is_some();
        if structured {
            if let Some(subs) = self.attempt("cover_subspaces", || cover::cover_subspaces(g)) {
                let members = g.action().maximal_cover().expect("structured");
                out.subspaces = subs
                    .iter()
                    .zip(members)
                    .map(|(s, h)| CoverSubspace { subgroup: h.members().to_vec(), dim: s.dim(), index: g.subspace_index(s) })
                    .collect();
            }
            out.transversal = self.attempt("transversal_cover", || cover::transversal_cover(g)).map(|c| self.summarize(c));
            out.improved = self.attempt("improved_cover", || cover::improved_cover(g)).map(|c| self.summarize(c));
        }

        let system = self.attempt("sylow_set_system", || SylowSystem::build(g, self.opts.sylow_limit));
        if let Some(sys) = &system {
            let exact_limits = self.opts.exact;
            out.greedy = self.attempt("greedy_cover", || sys.minimal_cover(g, Mode::Greedy, &exact_limits)).map(|c| self.summarize(c));
            out.exact = self.attempt("exact_cover", || sys.minimal_cover(g, Mode::Exact, &exact_limits)).map(|c| self.summarize(c));
            let max_n = out.exact.as_ref().or(out.greedy.as_ref()).map_or(1, |c| c.size).min(exact_limits.max_union_n);
            out.union_ratios = (1..=max_n.max(1)).map(|n| sys.union_ratio(n, Mode::Exact, &exact_limits)).collect();
            if sys.p_element_count() as u64 != p_elements.to_u64().unwrap_or(u64::MAX) {
                self.fail("sylow_union_size");
            }
        }
        let order = g.group().order() as u64;
        if order > 1 {
            let nonidentity = p_elements - 1u32;
            out.counting_lower_bound = Some((nonidentity + (order - 2)) / (order - 1));
        }
        if redundant {
            out.redundant_cover =
                self.attempt("redundant_cover", || redundant_cover(g, self.opts.sylow_limit, self.opts.exact.nodes));
            if let Some(k) = out.redundant_cover.as_ref().and_then(|r| r.size) {
                bounds.push(BoundCheck::new("redundant_cover_ge_p_1", BigUint::from(k), Relation::Ge, BigUint::from(g.p() + 1)));
            }
        }

        let regular_q = match g.action().provenance() {
            Provenance::RegularQuotient { q } => Some(*q),
            _ => None,
        };
        let n1_index = out.subspaces.first().map(|s| s.index.clone());
        bounds.extend(checks::cover_bounds(
            g,
            out.transversal.as_ref().map(|c| c.size),
            out.improved.as_ref().map(|c| c.size),
            regular_q,
            n1_index,
        ));
        let size = |c: &Option<CoverSummary>| c.as_ref().map(|c| BigUint::from(c.size));
        if let (Some(e), Some(gr)) = (size(&out.exact), size(&out.greedy)) {
            bounds.push(BoundCheck::new("exact_le_greedy", e, Relation::Le, gr));
        }
        if let (Some(gr), Some(im)) = (size(&out.greedy), size(&out.improved)) {
            bounds.push(BoundCheck::new("greedy_le_improved", gr, Relation::Le, im));
        }
        if let Some(lb) = &out.counting_lower_bound {
            if let Some(e) = size(&out.exact) {
                bounds.push(BoundCheck::new("exact_ge_counting_bound", e, Relation::Ge, lb.clone()));
            }
        }
        for (name, c) in [("transversal", &out.transversal), ("improved", &out.improved), ("greedy", &out.greedy), ("exact", &out.exact)] {
            if c.as_ref().is_some_and(|c| !c.ok()) {
                self.fail(format!("{name}_cover_verification"));
            }
        }
        out
    }

    fn oracles(&mut self, redundant: bool, p_elements: &BigUint, lambda: &[LambdaEntry], witnesses: &[Witness]) -> Vec<OracleCheck> {
        let g = self.g;
        let mut out = Vec::new();
        out.push(OracleCheck::new(
            "redundancy_witnesses",
            true,
            witnesses.iter().all(|w| redundancy::witness_holds(g, w)),
        ));
        if lambda.iter().any(|e| e.enumerated.is_some()) {
            out.push(OracleCheck::new("lambda_enumeration", true, lambda.iter().all(LambdaEntry::agrees)));
        }
        let nu = g.sylow_count();
        let nu_small = nu.to_u64().is_some_and(|n| n <= self.opts.sylow_limit);
        let n_small = g.n_order().to_u64().is_some_and(|n| n <= self.opts.sylow_limit);
        let group_small = self.group_small();
        if group_small {
            if let Some(list) = self.attempt("oracle_p_elements", || oracle::p_elements(g, self.opts.group_limit)) {
                out.push(OracleCheck::new("p_elements_class_formula", p_elements, list.len()));
            }
        } else {
            self.skipped.push(Skipped { check: "oracle_p_elements", reason: format!("|G| = {} exceeds {}", g.order(), self.opts.group_limit) });
        }
        if nu_small {
            if let Some(r) = self.attempt("oracle_redundancy", || oracle::is_redundant(g, self.opts.sylow_limit, self.opts.group_limit)) {
                out.push(OracleCheck::new("redundancy_criterion", redundant, r));
            }
            if group_small {
                if let Some(u) = self.attempt("oracle_sylow_union", || oracle::sylow_union_is_p_elements(g, self.opts.group_limit)) {
                    out.push(OracleCheck::new("sylow_union_is_p_elements", true, u));
                }
            }
        } else {
            self.skipped.push(Skipped { check: "oracle_redundancy", reason: format!("nu_p = {nu} exceeds {}", self.opts.sylow_limit) });
        }
        if n_small {
            if let Some(d) = self.attempt("oracle_sylow_count", || oracle::distinct_conjugates(g, self.opts.sylow_limit)) {
                out.push(OracleCheck::new("sylow_count_distinct_conjugates", &nu, d));
            }
        }
        if g.order().to_u64().is_some_and(|n| n <= 10_000) {
            if let Some(n) = self.attempt("oracle_normalizer", || oracle::normalizer_order(g, 10_000)) {
                out.push(OracleCheck::new("normalizer_order", g.normalizer_order(), n));
            }
        }
        for c in &out {
            if !c.agree {
                self.failures.push(format!("oracle:{}", c.name));
            }
        }
        out
    }
}

/// Builds G from `action` with the configured ceiling and runs the analysis.
pub fn analyze(action: LinearAction, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let g = SemidirectGroup::with_ceiling(action, opts.ceiling);
    analyze_group(&g, opts)
}

pub fn analyze_group(g: &SemidirectGroup, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut pipe = Pipeline { g, opts, skipped: Vec::new(), failures: Vec::new() };
    let provenance = g.action().provenance().clone();

    let counted = g.count_p_elements()?;
    let p_elements = PElements {
        total: counted.total.clone(),
        multiplier: counted.multiplier.clone(),
        classes: counted
            .classes
            .iter()
            .map(|c| ClassRow {
                representative: c.representative,
                class_size: c.class_size,
                centralizer_order: c.centralizer_order.clone(),
                g_class_size: c.g_class_size.clone(),
            })
            .collect(),
    };
    let red = redundancy::is_redundant(g);
    if !red.redundant && provenance != Provenance::Custom {
        pipe.fail("redundant");
    }
    let lambda = checks::lambda_table(g, opts.sylow_limit);
    let gheri = checks::check_gheri(g, &lambda);
    if !gheri.satisfied {
        pipe.fail("gheri");
    }
    let min_lambda = lambda.iter().map(|e| e.linear.clone()).min();
    let mut bounds = checks::check_bounds(
        g,
        &BoundInputs {
            redundant: red.redundant,
            p_elements: counted.total.clone(),
            gheri_satisfied: gheri.satisfied,
            regular_q: match provenance {
                Provenance::RegularQuotient { q } => Some(q),
                _ => None,
            },
            line_sum: matches!(provenance, Provenance::LineSum { .. }),
            min_lambda,
        },
    );

    let (casolo, covers, oracle) = match opts.depth {
        Depth::Basic => (None, None, Vec::new()),
        Depth::Full => {
            let casolo = checks::check_casolo(g, opts.sylow_limit);
            if !casolo.verified {
                pipe.fail("casolo");
            }
            let covers = pipe.covers(red.redundant, &counted.total, &mut bounds);
            let oracle = pipe.oracles(red.redundant, &counted.total, &lambda, &red.witnesses);
            (Some(casolo), Some(covers), oracle)
        }
    };
    for b in &bounds {
        if !b.satisfied() {
            pipe.fail(format!("bound:{}", b.name));
        }
    }

    let Pipeline { skipped, failures, .. } = pipe;
    let status = if failures.is_empty() { Status::Ok } else { Status::Counterexample };
    Ok(AnalysisReport {
        schema: SCHEMA,
        version: VERSION,
        config: serde_json::to_value(opts).expect("options serialize"),
        instance: InstanceInfo::of(g),
        sylow_count: g.sylow_count(),
        normalizer_order: g.normalizer_order(),
        p_elements,
        redundant: red.redundant,
        obstruction: red.obstruction,
        witnesses: red.witnesses,
        lambda,
        gheri,
        casolo,
        covers,
        bounds,
        oracle,
        skipped,
        failures,
        status,
    })
}
