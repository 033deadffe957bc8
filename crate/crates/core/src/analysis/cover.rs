//! Covers of G_p by conjugates tPt⁻¹, given as lists of conjugating vectors t.
//!
//! A p-element with P-part x has the form ((I − ρ(x))s, x), and it lies in tPt⁻¹
//! exactly when s − t ∈ C_N(x). So T covers G_p iff for every x ∈ P the set T
//! meets every coset of C_N(x). Transversal covers use the subspaces
//! N_i = C_N(P_i) for a cover P = P_1 ∪ … ∪ P_{p+1} by maximal subgroups: every
//! x lies in some P_i, hence C_N(x) ⊇ N_i, and a transversal of N_i meets every
//! coset of C_N(x).

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::matching::hopcroft_karp;
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector, VectorCodec};
use crate::semidirect::SemidirectGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    Transversal,
    CommonTransversal,
    Greedy,
    Exact,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowCover {
    pub representatives: Vec<Vector>,
    pub method: CoverMethod,
    pub verified: bool,
}

impl SylowCover {
    /// Sorts and deduplicates the representatives, then checks the coset criterion.
    pub fn new(g: &SemidirectGroup, representatives: Vec<Vector>, method: CoverMethod) -> Result<SylowCover> {
        let representatives: Vec<Vector> = representatives.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let verified = covers_by_cosets(g, &representatives)?;
        Ok(SylowCover { representatives, method, verified })
    }

    pub fn size(&self) -> usize {
        self.representatives.len()
    }
}

/// The coset criterion, checked once per distinct subspace C_N(x).
pub fn covers_by_cosets(g: &SemidirectGroup, reps: &[Vector]) -> Result<bool> {
    let f = g.field();
    let mut distinct: Vec<&Subspace> = Vec::new();
    for x in g.group().elements() {
        let s = g.centralizer_in_n(x);
        if !distinct.contains(&s) {
            distinct.push(s);
        }
    }
    for s in distinct {
        let index = g.enumerable("coset count of C_N(x)", &g.subspace_index(s))?;
        if (reps.len() as u64) < index {
            return Ok(false);
        }
        let hit: BTreeSet<Vector> = reps.iter().map(|t| s.reduce(f, t)).collect();
        if (hit.len() as u64) != index {
            return Ok(false);
        }
    }
    Ok(true)
}

/// N_i = C_N(P_i) for the maximal subgroups P_1, …, P_{p+1} of the construction.
pub fn cover_subspaces(g: &SemidirectGroup) -> Result<Vec<Subspace>> {
    let cover = g.action().maximal_cover().ok_or(Error::WrongProvenance { expected: "thm1 or thm2" })?;
    Ok(cover.iter().map(|h| g.action().fixed_space_of_subgroup(h)).collect())
}

/// The lexicographically least vector of each coset of `s`, in lexicographic order.
pub fn transversal(g: &SemidirectGroup, s: &Subspace) -> Result<Vec<Vector>> {
    g.enumerable("coset count of N_i", &g.subspace_index(s))?;
    Ok(s.coset_representatives(g.field()).collect())
}

/// T = T_1 ∪ … ∪ T_{p+1} with T_i a transversal of N_i.
pub fn transversal_cover(g: &SemidirectGroup) -> Result<SylowCover> {
    let mut reps = Vec::new();
    for s in cover_subspaces(g)? {
        reps.extend(transversal(g, &s)?);
    }
    SylowCover::new(g, reps, CoverMethod::Transversal)
}

/// A common transversal of the cosets of `a` and of `b`, from a perfect matching
/// between the two coset families in which cosets are adjacent when they meet.
///
/// Left vertices are the cosets of `a` and right vertices the cosets of `b`, both
/// in lexicographic order of their least elements. The coset u + a meets exactly
/// the cosets of b containing some u + w with w ∈ a, and u + w is then a point
/// of the intersection; the first such w in enumeration order is used.
pub fn common_transversal(g: &SemidirectGroup, a: &Subspace, b: &Subspace) -> Result<Vec<Vector>> {
    let f = g.field();
    if a.codim() != b.codim() {
        return Err(Error::IndexMismatch(g.subspace_index(a).to_string(), g.subspace_index(b).to_string()));
    }
    let left = transversal(g, a)?;
    let right = transversal(g, b)?;
    let right_index: HashMap<&Vector, usize> = right.iter().enumerate().map(|(i, v)| (v, i)).collect();
    g.enumerable("common transversal graph", &(g.subspace_index(a) * g.subspace_order(a)))?;
    let members = span_elements(g, a);

    let mut adj = Vec::with_capacity(left.len());
    let mut points: Vec<HashMap<usize, Vector>> = Vec::with_capacity(left.len());
    for u in &left {
        let mut edges = Vec::new();
        let mut at = HashMap::new();
        for w in &members {
            let point: Vector = u.iter().zip(w).map(|(&x, &y)| f.add(x, y)).collect();
            let j = right_index[&b.reduce(f, &point)];
            if let std::collections::hash_map::Entry::Vacant(e) = at.entry(j) {
                e.insert(point);
                edges.push(j);
            }
        }
        adj.push(edges);
        points.push(at);
    }

    let m = hopcroft_karp(right.len(), &adj);
    if !m.is_perfect() {
        return Err(Error::MatchingFailed(format!(
            "maximum matching has {} of {} coset pairs",
            m.size,
            left.len()
        )));
    }
    Ok(m.left
        .iter()
        .enumerate()
        .map(|(u, v)| points[u].remove(&v.expect("perfect")).expect("matched along an edge"))
        .collect())
}

/// All elements of `s`, as combinations of its basis with coefficients in
/// lexicographic order.
fn span_elements(g: &SemidirectGroup, s: &Subspace) -> Vec<Vector> {
    let f = g.field();
    let codec = VectorCodec::new(f.order(), s.dim()).expect("size checked by the caller");
    (0..codec.size())
        .map(|c| {
            let coeffs = codec.decode(c);
            let mut v = vec![0; g.dim()];
            for (&k, basis) in coeffs.iter().zip(s.basis()) {
                for (vi, &bi) in v.iter_mut().zip(basis) {
                    *vi = f.add(*vi, f.mul(k, bi));
                }
            }
            v
        })
        .collect()
}

/// Common transversals for (N_1, N_2), (N_3, N_4), …, and a plain transversal
/// for a leftover N_{p+1} when p + 1 is odd.
pub fn improved_cover(g: &SemidirectGroup) -> Result<SylowCover> {
    let subspaces = cover_subspaces(g)?;
    let mut reps = Vec::new();
    for pair in subspaces.chunks(2) {
        match pair {
            [a, b] => reps.extend(common_transversal(g, a, b)?),
            [a] => reps.extend(transversal(g, a)?),
            _ => unreachable!(),
        }
    }
    SylowCover::new(g, reps, CoverMethod::CommonTransversal)
}

/// Every Sylow subgroup.
pub fn all_sylows(g: &SemidirectGroup) -> Result<SylowCover> {
    SylowCover::new(g, g.enumerate_sylows()?, CoverMethod::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::LinearAction;
    use crate::linalg::Matrix;
    use crate::oracle;
    use crate::pgroup::catalog::catalog;

    fn thm1(name: &str, q: u64) -> SemidirectGroup {
        SemidirectGroup::new(LinearAction::regular_quotient(&catalog(name).unwrap(), q).unwrap())
    }

    fn thm2(name: &str) -> SemidirectGroup {
        SemidirectGroup::new(LinearAction::line_sum(&catalog(name).unwrap()).unwrap())
    }

    /// Each transversal vector hits a distinct coset, and every coset is hit.
    fn is_transversal(g: &SemidirectGroup, s: &Subspace, reps: &[Vector]) -> bool {
        let f = g.field();
        let hit: BTreeSet<Vector> = reps.iter().map(|t| s.reduce(f, t)).collect();
        hit.len() == reps.len() && hit.len() as u64 == s.index(f).unwrap()
    }

    /// Brute-force intersection test of two cosets, by enumerating u + a.
    fn cosets_meet(g: &SemidirectGroup, a: &Subspace, b: &Subspace, u: &[u32], v: &[u32]) -> bool {
        let f = g.field();
        let target = b.reduce(f, v);
        let codec = crate::linalg::VectorCodec::new(f.order(), a.dim()).unwrap();
        (0..codec.size()).any(|c| {
            let coeffs = codec.decode(c);
            let mut w = u.to_vec();
            for (k, basis) in coeffs.iter().zip(a.basis()) {
                for (wi, &bi) in w.iter_mut().zip(basis) {
                    *wi = f.add(*wi, f.mul(*k, bi));
                }
            }
            b.reduce(f, &w) == target
        })
    }

    #[test]
    fn transversal_covers_meet_their_bounds() {
        for (g, bound) in [(thm1("C2^2", 3), 27), (thm1("C2^2", 5), 75), (thm2("C2^2"), 27)] {
            let c = transversal_cover(&g).unwrap();
            assert!(c.verified);
            assert!(c.size() <= bound, "{} > {bound}", c.size());
            assert!(oracle::covers(&g, &c.representatives, oracle::GROUP_LIMIT).unwrap());
        }
    }

    #[test]
    fn common_transversals_hit_every_coset_once() {
        for (g, size) in [(thm1("C2^2", 3), 9), (thm1("C2^2", 5), 25), (thm2("C3^2"), 64)] {
            let n = cover_subspaces(&g).unwrap();
            let t = common_transversal(&g, &n[0], &n[1]).unwrap();
            assert_eq!(t.len(), size);
            assert!(is_transversal(&g, &n[0], &t));
            assert!(is_transversal(&g, &n[1], &t));
        }
    }

    #[test]
    fn common_transversal_of_equal_subspaces() {
        let g = thm1("C2^2", 3);
        let n = cover_subspaces(&g).unwrap();
        let t = common_transversal(&g, &n[0], &n[0]).unwrap();
        assert!(is_transversal(&g, &n[0], &t));
    }

    /// Whether u + a meets v + b, by solving [a | b]·c = v − u.
    fn meet_by_solving(g: &SemidirectGroup, a: &Subspace, b: &Subspace, u: &[u32], v: &[u32]) -> bool {
        let f = g.field();
        let mut system = Matrix::zeros(g.dim(), a.dim() + b.dim());
        for (j, col) in a.basis().iter().chain(b.basis()).enumerate() {
            for (i, &c) in col.iter().enumerate() {
                system.set(i, j, c);
            }
        }
        let diff: Vector = v.iter().zip(u).map(|(&x, &y)| f.sub(x, y)).collect();
        system.solve_right(f, &diff).unwrap().is_some()
    }

    #[test]
    fn matched_points_lie_in_both_cosets() {
        for g in [thm1("C2^2", 5), thm2("C3^2")] {
            let f = g.field();
            let n = cover_subspaces(&g).unwrap();
            let (a, b) = (&n[0], &n[1]);
            let left = transversal(&g, a).unwrap();
            let t = common_transversal(&g, a, b).unwrap();
            for (u, point) in left.iter().zip(&t) {
                assert_eq!(&a.reduce(f, point), u);
                assert!(meet_by_solving(&g, a, b, u, &b.reduce(f, point)));
            }
        }
    }

    #[test]
    fn coset_adjacency_agrees_with_solving() {
        let g = thm1("C2^2", 5);
        let n = cover_subspaces(&g).unwrap();
        let (a, b) = (&n[0], &n[2]);
        let left = transversal(&g, a).unwrap();
        let right = transversal(&g, b).unwrap();
        for u in left.iter().take(5) {
            for v in &right {
                assert_eq!(meet_by_solving(&g, a, b, u, v), cosets_meet(&g, a, b, u, v));
            }
        }
    }

    #[test]
    fn index_mismatch() {
        let g = thm1("C2^2", 3);
        let full = Subspace::full(g.dim());
        let zero = Subspace::zero(g.dim());
        assert!(matches!(common_transversal(&g, &full, &zero), Err(Error::IndexMismatch(_, _))));
    }

    #[test]
    fn improved_covers_meet_two_thirds() {
        for (g, bound) in [(thm1("C2^2", 3), 18), (thm1("C2^2", 5), 50), (thm2("C3^2"), 128)] {
            let c = improved_cover(&g).unwrap();
            assert!(c.verified);
            assert!(c.size() <= bound);
            assert!(3 * c.size() as u64 <= 2 * num_traits::ToPrimitive::to_u64(&g.sylow_count()).unwrap());
        }
        let g = thm1("C2^2", 3);
        assert!(oracle::covers(&g, &improved_cover(&g).unwrap().representatives, oracle::GROUP_LIMIT).unwrap());
    }

    #[test]
    fn criterion_rejects_a_non_cover() {
        let g = thm1("C2^2", 3);
        let mut reps = improved_cover(&g).unwrap().representatives;
        reps.pop();
        let c = SylowCover::new(&g, reps, CoverMethod::Greedy).unwrap();
        assert_eq!(c.verified, oracle::covers(&g, &c.representatives, oracle::GROUP_LIMIT).unwrap());
    }

    #[test]
    fn custom_action_has_no_cover_structure() {
        let a = LinearAction::trivial(&catalog("C2^2").unwrap(), crate::field::Field::prime(3).unwrap(), 1).unwrap();
        let g = SemidirectGroup::new(a);
        assert!(matches!(transversal_cover(&g), Err(Error::WrongProvenance { .. })));
        let all = all_sylows(&g).unwrap();
        assert_eq!(all.size(), 1);
        assert!(all.verified);
    }
}
