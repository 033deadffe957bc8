//! Counting identities and numerical bounds on ν_p(G), |G_p| and λ_G.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::big;
use crate::arith::{big_pow, is_prime_big, smallest_prime_power_1modp};
use crate::linalg::Vector;
use crate::semidirect::{GElement, SemidirectGroup};

/// λ_G(x) for one class representative, by linear algebra and by enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaEntry {
    pub representative: usize,
    pub class_size: usize,
    #[serde(serialize_with = "big::serialize")]
    pub linear: BigUint,
    pub enumerated: Option<u64>,
}

impl LambdaEntry {
    pub fn agrees(&self) -> bool {
        self.enumerated.is_none_or(|e| BigUint::from(e) == self.linear)
    }
}

/// Representatives t ≤ `limit` in number, or `None` when there are more.
fn sylow_representatives(g: &SemidirectGroup, limit: u64) -> Option<Vec<Vector>> {
    let nu = g.sylow_count().to_u64()?;
    (nu <= limit && nu <= g.ceiling()).then(|| g.enumerate_sylows().ok()).flatten()
}

/// Number of representatives t with t⁻¹ h t ∈ P, by the group law.
fn count_containing(g: &SemidirectGroup, reps: &[Vector], h: usize) -> u64 {
    let ph = GElement::new(vec![0; g.dim()], h);
    reps.iter()
        .filter(|t| g.conjugate_by_vector_inverse(&ph, t).n.iter().all(|&c| c == 0))
        .count() as u64
}

/// λ_G(x) = |C_N(x) : C_N(P)| per class, with enumeration when ν_p ≤ `limit`.
pub fn lambda_table(g: &SemidirectGroup, limit: u64) -> Vec<LambdaEntry> {
    let reps = sylow_representatives(g, limit);
    let cp = g.subspace_order(g.fixed_by_group());
    g.group()
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let x = c.representative;
            LambdaEntry {
                representative: x,
                class_size: c.members.len(),
                linear: g.subspace_order(g.centralizer_in_n(x)) / &cp,
                enumerated: reps.as_ref().map(|r| count_containing(g, r, x)),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaMethod {
    Enumeration,
    Linear,
}

/// λ_G(H) · |N_G(P) : P| against |C_N(H)| for one cyclic H ≤ P.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasoloEntry {
    pub members: Vec<usize>,
    #[serde(serialize_with = "big::serialize")]
    pub lambda: BigUint,
    pub lambda_method: LambdaMethod,
    #[serde(serialize_with = "big::serialize")]
    pub normalizer_index: BigUint,
    #[serde(serialize_with = "big::serialize")]
    pub centralizer_order: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasoloCheck {
    pub verified: bool,
    pub entries: Vec<CasoloEntry>,
}

/// For every cyclic H ≤ P: λ_G(H)·|N_G(P):P| = |C_N(H)|, with |N_G(P):P| = |C_N(P)|.
/// λ_G(H) is counted over the enumerated Sylow subgroups when ν_p ≤ `limit` and
/// taken as |C_N(H) : C_N(P)| otherwise.
pub fn check_casolo(g: &SemidirectGroup, limit: u64) -> CasoloCheck {
    let reps = sylow_representatives(g, limit);
    let normalizer_index = g.subspace_order(g.fixed_by_group());
    let p = g.group();
    let entries: Vec<CasoloEntry> = p
        .cyclic_subgroups()
        .into_iter()
        .map(|h| {
            let generator = *h
                .members()
                .iter()
                .find(|&&x| p.element_order(x) == h.order())
                .expect("cyclic subgroups have a generator");
            let centralizer_order = g.subspace_order(g.centralizer_in_n(generator));
            let (lambda, lambda_method) = match &reps {
                Some(r) => (BigUint::from(count_containing(g, r, generator)), LambdaMethod::Enumeration),
                None => (&centralizer_order / &normalizer_index, LambdaMethod::Linear),
            };
            let holds = &lambda * &normalizer_index == centralizer_order;
            CasoloEntry { members: h.members().to_vec(), lambda, lambda_method, normalizer_index: normalizer_index.clone(), centralizer_order, holds }
        })
        .collect();
    CasoloCheck { verified: entries.iter().all(|e| e.holds), entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GheriCheck {
    #[serde(serialize_with = "big::serialize")]
    pub lhs: BigUint,
    #[serde(serialize_with = "big::serialize")]
    pub rhs: BigUint,
    pub satisfied: bool,
}

/// ν_p^{|P|/p} against ∏_{x∈P} λ_G(x).
pub fn check_gheri(g: &SemidirectGroup, lambda: &[LambdaEntry]) -> GheriCheck {
    let exponent = (g.group().order() as u64 / g.p()) as u32;
    let lhs = g.sylow_count().pow(exponent);
    let rhs = lambda
        .iter()
        .fold(BigUint::one(), |acc, e| acc * e.linear.pow(e.class_size as u32));
    GheriCheck { satisfied: lhs >= rhs, lhs, rhs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    NotPrime,
}

/// One inequality between exact integers; `satisfied` is evaluated on serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub lhs: BigUint,
    pub rhs: Option<BigUint>,
}

impl BoundCheck {
    pub fn new(name: &'static str, lhs: BigUint, relation: Relation, rhs: BigUint) -> BoundCheck {
        BoundCheck { name, relation, lhs, rhs: Some(rhs) }
    }

    pub fn satisfied(&self) -> bool {
        let l = &self.lhs;
        match (self.relation, &self.rhs) {
            (Relation::NotPrime, _) => !is_prime_big(l),
            (Relation::Eq, Some(r)) => l == r,
            (Relation::Le, Some(r)) => l <= r,
            (Relation::Lt, Some(r)) => l < r,
            (Relation::Ge, Some(r)) => l >= r,
            (Relation::Gt, Some(r)) => l > r,
            (_, None) => false,
        }
    }
}

impl Serialize for BoundCheck {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundCheck", 5)?;
        st.serialize_field("name", self.name)?;
        st.serialize_field("relation", &self.relation)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.as_ref().map(BigUint::to_string))?;
        st.serialize_field("satisfied", &self.satisfied())?;
        st.end()
    }
}

/// Inputs to [`check_bounds`] that come from other checks.
#[derive(Clone, Debug, Default)]
pub struct BoundInputs {
    pub redundant: bool,
    pub p_elements: BigUint,
    pub gheri_satisfied: bool,
    /// Thm1 field order, for the |G_p| < ν_p condition.
    pub regular_q: Option<u64>,
    /// Thm2 provenance: ν_p should equal q_min^{p+1}.
    pub line_sum: bool,
    pub min_lambda: Option<BigUint>,
}

pub fn check_bounds(g: &SemidirectGroup, input: &BoundInputs) -> Vec<BoundCheck> {
    let p = g.p();
    let nu = g.sylow_count();
    let int = BigUint::from;
    let p_order = int(g.group().order() as u64);
    let mut out = vec![
        BoundCheck::new("sylow_count_mod_p", &nu % p, Relation::Eq, BigUint::one()),
        BoundCheck::new("p_elements_mod_order_p", &input.p_elements % &p_order, Relation::Eq, BigUint::zero()),
    ];
    let q_min = smallest_prime_power_1modp(p);
    let psolv = big_pow(q_min, p + 1);
    if input.redundant {
        out.push(BoundCheck::new("sylow_count_ge_p2_p_1", nu.clone(), Relation::Ge, int(p * p + p + 1)));
        out.push(BoundCheck::new("sylow_count_ge_qmin_pow", nu.clone(), Relation::Ge, psolv.clone()));
        if input.gheri_satisfied {
            out.push(BoundCheck::new("sylow_count_gt_p1_pow_p", nu.clone(), Relation::Gt, big_pow(p + 1, p)));
        }
        out.push(BoundCheck { name: "sylow_count_not_prime", relation: Relation::NotPrime, lhs: nu.clone(), rhs: None });
        if let Some(m) = &input.min_lambda {
            out.push(BoundCheck::new("min_lambda_ge_p_1", m.clone(), Relation::Ge, int(p + 1)));
        }
    }
    if let Some(q) = input.regular_q {
        if big_pow(q, p - 1) > p_order {
            out.push(BoundCheck::new("p_elements_lt_sylow_count", input.p_elements.clone(), Relation::Lt, nu.clone()));
        }
    }
    if input.line_sum {
        out.push(BoundCheck::new("sylow_count_eq_qmin_pow", nu, Relation::Eq, psolv));
    }
    out
}

/// Bounds on cover sizes, as integer inequalities.
pub fn cover_bounds(
    g: &SemidirectGroup,
    transversal: Option<usize>,
    improved: Option<usize>,
    regular_q: Option<u64>,
    n1_index: Option<BigUint>,
) -> Vec<BoundCheck> {
    let p = g.p();
    let nu = g.sylow_count();
    let int = |v: usize| BigUint::from(v as u64);
    let mut out = Vec::new();
    if let (Some(t), Some(idx)) = (transversal, &n1_index) {
        out.push(BoundCheck::new("transversal_le_p1_index", int(t), Relation::Le, idx * (p + 1)));
    }
    if let (Some(t), Some(q)) = (transversal, regular_q) {
        // |T| ≤ (p+1)/q^{p−1} · ν_p
        out.push(BoundCheck::new("transversal_scaled_le_p1_nu", int(t) * big_pow(q, p - 1), Relation::Le, &nu * (p + 1)));
    }
    if let Some(t) = improved {
        if let Some(idx) = &n1_index {
            out.push(BoundCheck::new("improved_le_half_p1_index", int(t), Relation::Le, idx * (p + 1).div_ceil(2)));
        }
        out.push(BoundCheck::new("improved_triple_le_double_nu", int(t) * 3u32, Relation::Le, &nu * 2u32));
    }
    out
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
    fn lambda_matches_oracle() {
        let g = thm1("C2^2", 3);
        for e in lambda_table(&g, 10_000) {
            assert!(e.agrees());
            let brute = oracle::lambda(&g, e.representative, 10_000).unwrap();
            assert_eq!(e.enumerated, Some(brute));
        }
    }

    #[test]
    fn casolo_on_small_instances() {
        for (name, q) in [("C2^2", 3), ("C3^2", 2), ("Q8", 3)] {
            let c = check_casolo(&thm1(name, q), 10_000);
            assert!(c.verified);
            assert!(c.entries.iter().all(|e| e.lambda_method == LambdaMethod::Enumeration));
        }
        let c = check_casolo(&thm1("C2^2", 3), 10_000);
        let trivial = &c.entries[0];
        assert_eq!(trivial.lambda, BigUint::from(27u32));
        let inv = &c.entries[1];
        assert_eq!(inv.lambda, BigUint::from(3u32));
        assert_eq!(inv.centralizer_order, BigUint::from(3u32));
    }

    #[test]
    fn casolo_linear_fallback() {
        let c = check_casolo(&thm1("C2^2", 3), 1);
        assert!(c.verified);
        assert!(c.entries.iter().all(|e| e.lambda_method == LambdaMethod::Linear));
    }

    #[test]
    fn gheri_equality_cases() {
        for (q, value) in [(3u32, 729u32), (5, 15625)] {
            let g = thm1("C2^2", q as u64);
            let gh = check_gheri(&g, &lambda_table(&g, 10_000));
            assert_eq!(gh.lhs, BigUint::from(value));
            assert_eq!(gh.rhs, BigUint::from(value));
            assert!(gh.satisfied);
        }
        let a = LinearAction::trivial(&catalog("C2^2").unwrap(), Field::prime(3).unwrap(), 1).unwrap();
        let g = SemidirectGroup::new(a);
        let gh = check_gheri(&g, &lambda_table(&g, 10_000));
        assert_eq!((gh.lhs, gh.rhs), (BigUint::one(), BigUint::one()));
    }

    #[test]
    fn bound_checks_of_order_108_group() {
        let g = thm1("C2^2", 3);
        let input = BoundInputs {
            redundant: true,
            p_elements: BigUint::from(28u32),
            gheri_satisfied: true,
            regular_q: Some(3),
            line_sum: false,
            min_lambda: Some(BigUint::from(3u32)),
        };
        let checks = check_bounds(&g, &input);
        assert!(checks.iter().all(BoundCheck::satisfied));
        let names: Vec<_> = checks.iter().map(|c| c.name).collect();
        assert!(names.contains(&"sylow_count_ge_qmin_pow"));
        // 3^{p-1} = 3 is not larger than |P| = 4
        assert!(!names.contains(&"p_elements_lt_sylow_count"));
    }

    #[test]
    fn relations() {
        let b = |v: u32| BigUint::from(v);
        assert!(BoundCheck::new("t", b(27), Relation::Ge, b(27)).satisfied());
        assert!(!BoundCheck::new("t", b(27), Relation::Gt, b(27)).satisfied());
        assert!(!BoundCheck { name: "t", relation: Relation::NotPrime, lhs: b(31), rhs: None }.satisfied());
        let json = serde_json::to_value(BoundCheck::new("t", b(76), Relation::Lt, b(125))).unwrap();
        assert_eq!(json["satisfied"], true);
        assert_eq!(json["lhs"], "76");
    }
}
