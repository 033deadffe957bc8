//! Brute-force enumeration over G = N ⋊ P.
//!
//! Everything here uses only the group law: element orders by repeated
//! multiplication, Sylow subgroups as explicit conjugates of P, covers as explicit
//! unions. These are the cross-checks for the linear-algebra shortcuts in
//! [`crate::semidirect`] and [`crate::analysis`].

use std::collections::{BTreeMap, HashSet};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::linalg::{Vector, VectorCodec};
use crate::semidirect::{GElement, SemidirectGroup};

/// Default bound on |G| for element-by-element checks.
pub const GROUP_LIMIT: u64 = 100_000;
/// Default bound on ν_p(G) for checks that enumerate Sylow subgroups per query.
pub const SYLOW_LIMIT: u64 = 10_000;

/// Packs an element into a u64 key: `code(n)·|P| + x`.
#[derive(Clone, Copy, Debug)]
pub struct ElementKeys {
    codec: VectorCodec,
    p_order: u64,
}

impl ElementKeys {
    pub fn new(g: &SemidirectGroup) -> Result<ElementKeys> {
        let codec = g.codec().ok_or_else(|| Error::TooLargeToEnumerate {
            what: "N",
            size: g.n_order().to_string(),
            ceiling: u64::MAX,
        })?;
        let p_order = g.group().order() as u64;
        codec
            .size()
            .checked_mul(p_order)
            .ok_or_else(|| Error::TooLargeToEnumerate {
                what: "G",
                size: g.order().to_string(),
                ceiling: u64::MAX,
            })?;
        Ok(ElementKeys { codec, p_order })
    }

    #[inline]
    pub fn key(&self, a: &GElement) -> u64 {
        self.codec.encode(&a.n) * self.p_order + a.x as u64
    }

    pub fn element(&self, key: u64) -> GElement {
        GElement::new(self.codec.decode(key / self.p_order), (key % self.p_order) as usize)
    }
}

fn group_size(g: &SemidirectGroup, limit: u64) -> Result<u64> {
    match g.order().to_u64() {
        Some(n) if n <= limit => Ok(n),
        _ => Err(Error::TooLargeToEnumerate { what: "G", size: g.order().to_string(), ceiling: limit }),
    }
}

pub fn all_elements(g: &SemidirectGroup, limit: u64) -> Result<Vec<GElement>> {
    let size = group_size(g, limit)?;
    let keys = ElementKeys::new(g)?;
    Ok((0..size).map(|k| keys.element(k)).collect())
}

/// Order by multiplying until the identity is reached.
pub fn order_by_powering(g: &SemidirectGroup, a: &GElement) -> u64 {
    let e = g.identity();
    let mut acc = a.clone();
    let mut k = 1;
    while acc != e {
        acc = g.mul_unchecked(&acc, a);
        k += 1;
    }
    k
}

pub fn p_elements(g: &SemidirectGroup, limit: u64) -> Result<Vec<GElement>> {
    let p = g.p();
    Ok(all_elements(g, limit)?
        .into_iter()
        .filter(|a| {
            let o = order_by_powering(g, a);
            o == 1 || prime_power(o).is_some_and(|(l, _)| l == p)
        })
        .collect())
}

/// Elements of tPt⁻¹ obtained by conjugating each (0, x) with (t, 1).
pub fn sylow_elements(g: &SemidirectGroup, t: &[u32]) -> Vec<GElement> {
    let te = GElement::new(t.to_vec(), 0);
    let ti = g.inv_unchecked(&te);
    g.group()
        .elements()
        .map(|x| {
            let px = GElement::new(vec![0; g.dim()], x);
            g.mul_unchecked(&g.mul_unchecked(&te, &px), &ti)
        })
        .collect()
}

/// Number of distinct subgroups nPn⁻¹ over all n ∈ N, compared as element sets.
pub fn distinct_conjugates(g: &SemidirectGroup, limit: u64) -> Result<u64> {
    let keys = ElementKeys::new(g)?;
    let n = g.n_order().to_u64().filter(|&n| n <= limit).ok_or_else(|| Error::TooLargeToEnumerate {
        what: "N",
        size: g.n_order().to_string(),
        ceiling: limit,
    })?;
    let codec = g.codec().expect("checked by ElementKeys");
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for c in 0..n {
        let mut set: Vec<u64> = sylow_elements(g, &codec.decode(c)).iter().map(|a| keys.key(a)).collect();
        set.sort_unstable();
        seen.insert(set);
    }
    Ok(seen.len() as u64)
}

/// |N_G(P)| by testing gPg⁻¹ = P for every g ∈ G.
pub fn normalizer_order(g: &SemidirectGroup, limit: u64) -> Result<u64> {
    let elements = all_elements(g, limit)?;
    let p_elems: Vec<GElement> = g
        .group()
        .elements()
        .map(|x| GElement::new(vec![0; g.dim()], x))
        .collect();
    let count = elements
        .iter()
        .filter(|h| {
            let hi = g.inv_unchecked(h);
            p_elems.iter().all(|a| {
                let c = g.mul_unchecked(&g.mul_unchecked(h, a), &hi);
                c.n.iter().all(|&v| v == 0)
            })
        })
        .count();
    Ok(count as u64)
}

fn sylow_reps(g: &SemidirectGroup, limit: u64) -> Result<Vec<Vector>> {
    g.enumerable("Sylow p-subgroup count", &g.sylow_count())
        .and_then(|n| {
            if n > limit {
                Err(Error::TooLargeToEnumerate { what: "Sylow p-subgroup count", size: n.to_string(), ceiling: limit })
            } else {
                Ok(())
            }
        })?;
    g.enumerate_sylows()
}

/// The literal definition: every p-element lies in a Sylow subgroup other than P.
///
/// G_p is taken from the brute-force order computation when |G| ≤ `group_limit`,
/// and otherwise as the union of all Sylow subgroups.
pub fn is_redundant(g: &SemidirectGroup, sylow_limit: u64, group_limit: u64) -> Result<bool> {
    let keys = ElementKeys::new(g)?;
    let reps = sylow_reps(g, sylow_limit)?;
    let mut others: HashSet<u64> = HashSet::new();
    let mut all: HashSet<u64> = HashSet::new();
    for (i, t) in reps.iter().enumerate() {
        for a in sylow_elements(g, t) {
            let k = keys.key(&a);
            all.insert(k);
            if i > 0 {
                others.insert(k);
            }
        }
    }
    let gp: Vec<u64> = match p_elements(g, group_limit) {
        Ok(list) => list.iter().map(|a| keys.key(a)).collect(),
        Err(_) => all.into_iter().collect(),
    };
    Ok(gp.iter().all(|k| others.contains(k)))
}

/// λ_G(x): number of enumerated Sylow subgroups whose element set contains (0, x).
pub fn lambda(g: &SemidirectGroup, x: usize, sylow_limit: u64) -> Result<u64> {
    let reps = sylow_reps(g, sylow_limit)?;
    let target = GElement::new(vec![0; g.dim()], x);
    Ok(reps.iter().filter(|t| sylow_elements(g, t).contains(&target)).count() as u64)
}

/// λ_G(H) for H given by its members.
pub fn lambda_of_subgroup(g: &SemidirectGroup, members: &[usize], sylow_limit: u64) -> Result<u64> {
    let reps = sylow_reps(g, sylow_limit)?;
    Ok(reps
        .iter()
        .filter(|t| {
            let elems = sylow_elements(g, t);
            members.iter().all(|&x| {
                let target = GElement::new(vec![0; g.dim()], x);
                elems.contains(&target)
            })
        })
        .count() as u64)
}

/// True iff the union of the subgroups tPt⁻¹, t ∈ `reps`, contains every p-element
/// of G, with G_p found by brute force.
pub fn covers(g: &SemidirectGroup, reps: &[Vector], group_limit: u64) -> Result<bool> {
    let keys = ElementKeys::new(g)?;
    let gp = p_elements(g, group_limit)?;
    let mut union: HashSet<u64> = HashSet::with_capacity(reps.len() * g.group().order());
    for t in reps {
        for a in sylow_elements(g, t) {
            union.insert(keys.key(&a));
        }
    }
    Ok(gp.iter().all(|a| union.contains(&keys.key(a))))
}

/// True iff the union of all Sylow subgroups is exactly the brute-force G_p.
pub fn sylow_union_is_p_elements(g: &SemidirectGroup, group_limit: u64) -> Result<bool> {
    let keys = ElementKeys::new(g)?;
    let gp: HashSet<u64> = p_elements(g, group_limit)?.iter().map(|a| keys.key(a)).collect();
    let mut union = HashSet::new();
    for t in g.enumerate_sylows()? {
        for a in sylow_elements(g, &t) {
            union.insert(keys.key(&a));
        }
    }
    Ok(union == gp)
}

/// Order and class statistics of G, by brute force.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub class_sizes: BTreeMap<u64, u64>,
    pub element_orders: BTreeMap<u64, u64>,
}

pub fn fingerprint(g: &SemidirectGroup, limit: u64) -> Result<GroupFingerprint> {
    let elements = all_elements(g, limit)?;
    let keys = ElementKeys::new(g)?;
    let mut element_orders = BTreeMap::new();
    for a in &elements {
        *element_orders.entry(order_by_powering(g, a)).or_insert(0) += 1;
    }
    let inverses: Vec<GElement> = elements.iter().map(|h| g.inv_unchecked(h)).collect();
    let mut seen = vec![false; elements.len()];
    let mut class_sizes = BTreeMap::new();
    for (i, a) in elements.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut class = HashSet::new();
        for (h, hi) in elements.iter().zip(&inverses) {
            let c = g.mul_unchecked(&g.mul_unchecked(h, a), hi);
            class.insert(keys.key(&c));
        }
        for &k in &class {
            seen[k as usize] = true;
        }
        *class_sizes.entry(class.len() as u64).or_insert(0) += 1;
    }
    Ok(GroupFingerprint { order: elements.len() as u64, class_sizes, element_orders })
}
