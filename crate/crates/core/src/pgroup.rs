//! Finite p-groups given by multiplication tables.
//!
//! Elements are indices `0..order` with the identity at index 0. All
//! structural queries are exhaustive over the table.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};

pub mod catalog;

/// Largest order accepted for a table-defined group.
pub const MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGroup {
    p: u32,
    order: usize,
    table: Vec<u16>,
    inverses: Vec<usize>,
    name: String,
}

/// A subgroup of a [`PGroup`], as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest index in the class.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// On-disk format of a custom group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub p: u64,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default = "custom_name")]
    pub name: String,
}

fn custom_name() -> String {
    "custom".to_string()
}

/// Isomorphism invariants; equal fingerprints are necessary for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub class_sizes: BTreeMap<usize, usize>,
    pub element_orders: BTreeMap<usize, usize>,
    pub cyclic_subgroups: BTreeMap<usize, usize>,
}

impl PGroup {
    /// Validates a multiplication table and wraps it as a p-group.
    pub fn from_table(p: u64, table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<PGroup> {
        if !is_prime(p) {
            return Err(Error::InvalidGroup(format!("p = {p} is not prime")));
        }
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if n > 1 && prime_power(n as u64).map(|(l, _)| l) != Some(p) {
            return Err(Error::InvalidGroup(format!("order {n} is not a power of {p}")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            if row.iter().any(|&c| c >= n) {
                return Err(Error::InvalidGroup(format!("row {a} has an entry out of range")));
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        // Latin square: every row and column is a permutation
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row_seen[table[a][b]], true) {
                    return Err(Error::InvalidGroup(format!("row {a} repeats an entry")));
                }
                if std::mem::replace(&mut col_seen[table[b][a]], true) {
                    return Err(Error::InvalidGroup(format!("column {a} repeats an entry")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("latin square row contains 0"))
            .collect();
        let flat = table.iter().flatten().map(|&c| c as u16).collect();
        let group = PGroup { p: p as u32, order: n, table: flat, inverses, name: name.into() };
        for x in 0..n {
            let o = group.element_order(x);
            if prime_power(o as u64).map_or(o != 1, |(l, _)| l != p) {
                return Err(Error::InvalidGroup(format!("element {x} has order {o}")));
            }
        }
        Ok(group)
    }

    /// Builds and validates the table `table[a][b] = mul(a, b)`.
    pub fn from_fn(p: u64, order: usize, name: impl Into<String>, mul: impl Fn(usize, usize) -> usize) -> Result<PGroup> {
        let table = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        PGroup::from_table(p, table, name)
    }

    pub fn from_file(file: GroupFile) -> Result<PGroup> {
        if file.order != file.table.len() {
            return Err(Error::InvalidGroup(format!(
                "declared order {} but the table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        PGroup::from_table(file.p, file.table, file.name)
    }

    pub fn from_json(text: &str) -> Result<PGroup> {
        let file: GroupFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        PGroup::from_file(file)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            p: self.p as u64,
            order: self.order,
            table: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
                .collect(),
            name: self.name.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub(crate) fn rename(mut self, name: impl Into<String>) -> PGroup {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Smallest subgroup containing `generators`.
    pub fn generated(&self, generators: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { members: (0..self.order).filter(|&i| seen[i]).collect() }
    }

    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        self.generated(&[x])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Checks closure under multiplication and returns the subgroup.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if !set.contains(&0) || set.iter().any(|&x| x >= self.order) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::InvalidGroup("member list is not closed".into()));
                }
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members
            .iter()
            .all(|&x| (0..self.order).all(|g| h.contains(self.conjugate(x, g))))
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned[x] {
                continue;
            }
            let members: BTreeSet<usize> = (0..self.order).map(|g| self.conjugate(x, g)).collect();
            for &m in &members {
                assigned[m] = true;
            }
            classes.push(ConjugacyClass { representative: x, members: members.into_iter().collect() });
        }
        classes
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        Subgroup {
            members: (0..self.order).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect(),
        }
    }

    /// Φ(P): generated by all p-th powers and commutators.
    pub fn frattini(&self) -> Subgroup {
        let mut gens = BTreeSet::new();
        for a in 0..self.order {
            gens.insert(self.pow(a, self.p as u64));
            for b in 0..self.order {
                gens.insert(self.commutator(a, b));
            }
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        self.generated(&gens)
    }

    /// Coordinates of every element in P/Φ(P) ≅ C_p^r with respect to the basis
    /// chosen greedily by smallest index. Returns the rank and the coordinates.
    pub fn frattini_coordinates(&self) -> (usize, Vec<Vec<u32>>) {
        let phi = self.frattini();
        let mut basis = Vec::new();
        let mut span = phi.clone();
        while span.order() < self.order {
            let g = (0..self.order).find(|&g| !span.contains(g)).expect("span is proper");
            basis.push(g);
            let mut gens = phi.members.clone();
            gens.extend(&basis);
            span = self.generated(&gens);
        }
        let r = basis.len();
        let p = self.p as u64;
        let mut coords = vec![Vec::new(); self.order];
        let total = p.pow(r as u32);
        for code in 0..total {
            let mut digits = vec![0u32; r];
            let mut c = code;
            for d in digits.iter_mut() {
                *d = (c % p) as u32;
                c /= p;
            }
            let mut g = 0;
            for (i, &d) in digits.iter().enumerate() {
                g = self.mul(g, self.pow(basis[i], d as u64));
            }
            for &f in &phi.members {
                coords[self.mul(g, f)] = digits.clone();
            }
        }
        (r, coords)
    }

    pub fn frattini_rank(&self) -> usize {
        self.frattini_coordinates().0
    }

    /// p+1 maximal subgroups whose union is P: preimages of the p+1 lines of the
    /// plane spanned by the first two Frattini-quotient coordinates. The lines are
    /// the kernels of the functionals (0,1), (1,0), (1,1), …, (1,p−1), in that order.
    pub fn maximal_cover(&self) -> Result<Vec<Subgroup>> {
        let (rank, coords) = self.frattini_coordinates();
        if rank < 2 {
            return Err(Error::CyclicGroup(self.name.clone()));
        }
        let p = self.p;
        let mut functionals = vec![(0u32, 1u32)];
        functionals.extend((0..p).map(|t| (1, t)));
        Ok(functionals
            .into_iter()
            .map(|(c1, c2)| Subgroup {
                members: (0..self.order)
                    .filter(|&g| (c1 * coords[g][0] + c2 * coords[g][1]) % p == 0)
                    .collect(),
            })
            .collect())
    }

    /// The homomorphism P → Z/p with kernel `maximal`: φ(g) = i for g ∈ x^i·kernel
    /// where x is the smallest index outside the kernel.
    pub fn hom_to_cp(&self, maximal: &Subgroup) -> Result<Vec<u32>> {
        let not_maximal = Error::NotMaximal { sub: maximal.order(), order: self.order };
        if maximal.order() * self.p as usize != self.order || !self.is_normal(maximal) {
            return Err(not_maximal);
        }
        let x = (0..self.order).find(|&g| !maximal.contains(g)).ok_or(not_maximal)?;
        let mut values = vec![u32::MAX; self.order];
        let mut xi = 0;
        for i in 0..self.p {
            for &k in &maximal.members {
                values[self.mul(xi, k)] = i;
            }
            xi = self.mul(xi, x);
        }
        Ok(values)
    }

    /// All distinct cyclic subgroups, sorted by (order, members).
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let set: BTreeSet<(usize, Vec<usize>)> = (0..self.order)
            .map(|x| {
                let h = self.cyclic_subgroup(x);
                (h.order(), h.members)
            })
            .collect();
        set.into_iter().map(|(_, members)| Subgroup { members }).collect()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut class_sizes = BTreeMap::new();
        for c in self.conjugacy_classes() {
            *class_sizes.entry(c.members.len()).or_insert(0) += 1;
        }
        let mut element_orders = BTreeMap::new();
        for x in 0..self.order {
            *element_orders.entry(self.element_order(x)).or_insert(0) += 1;
        }
        let mut cyclic_subgroups = BTreeMap::new();
        for h in self.cyclic_subgroups() {
            *cyclic_subgroups.entry(h.order()).or_insert(0) += 1;
        }
        Fingerprint { order: self.order, class_sizes, element_orders, cyclic_subgroups }
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::catalog;
    use super::*;

    fn sizes(g: &PGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.members.len()).collect();
        s.sort();
        s
    }

    /// Classes by brute force: x ~ y iff some g has g x g⁻¹ = y.
    fn brute_class_sizes(g: &PGroup) -> Vec<usize> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut size = 0;
            for y in 0..n {
                let related = (0..n).any(|h| g.mul(g.mul(h, x), g.inv(h)) == y);
                if related {
                    seen[y] = true;
                    size += 1;
                }
            }
            out.push(size);
        }
        out.sort();
        out
    }

    #[test]
    fn class_examples() {
        assert_eq!(sizes(&catalog("C2^2").unwrap()), vec![1, 1, 1, 1]);
        let d8 = catalog("D8").unwrap();
        let q8 = catalog("Q8").unwrap();
        assert_eq!(brute_class_sizes(&d8), vec![1, 1, 2, 2, 2]);
        assert_eq!(brute_class_sizes(&q8), vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes(&d8), brute_class_sizes(&d8));
        assert_eq!(sizes(&q8), brute_class_sizes(&q8));
        for c in d8.conjugacy_classes() {
            assert_eq!(c.representative, c.members[0]);
        }
    }

    /// Closure of all p-th powers and commutators, computed by repeated products.
    fn brute_frattini(g: &PGroup) -> BTreeSet<usize> {
        let n = g.order();
        let mut set: BTreeSet<usize> = (0..n).map(|a| g.pow(a, g.p() as u64)).collect();
        for a in 0..n {
            for b in 0..n {
                set.insert(g.commutator(a, b));
            }
        }
        loop {
            let before = set.len();
            let items: Vec<usize> = set.iter().copied().collect();
            for &a in &items {
                for &b in &items {
                    set.insert(g.mul(a, b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn frattini_examples() {
        let v4 = catalog("C2^2").unwrap();
        assert!(v4.frattini().is_trivial());
        let c4c2 = catalog("C4xC2").unwrap();
        let phi = c4c2.frattini();
        assert_eq!(phi.order(), 2);
        assert_eq!(phi.members().iter().copied().collect::<BTreeSet<_>>(), brute_frattini(&c4c2));
        // the squares are {1, x^2}
        let squares: BTreeSet<usize> = (0..8).map(|a| c4c2.mul(a, a)).collect();
        assert_eq!(squares, phi.members().iter().copied().collect());
        let q8 = catalog("Q8").unwrap();
        let phi = q8.frattini();
        assert_eq!(phi.order(), 2);
        let center: Vec<usize> =
            (0..8).filter(|&z| (0..8).all(|g| q8.mul(g, z) == q8.mul(z, g))).collect();
        assert_eq!(phi.members(), &center[..]);
    }

    #[test]
    fn maximal_cover_examples() {
        let v4 = catalog("C2^2").unwrap();
        let cover = v4.maximal_cover().unwrap();
        assert_eq!(cover.len(), 3);
        let mut all: Vec<Vec<usize>> = cover.iter().map(|s| s.members().to_vec()).collect();
        all.sort();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);

        let q8 = catalog("Q8").unwrap();
        let cover = q8.maximal_cover().unwrap();
        assert_eq!(cover.len(), 3);
        let union: BTreeSet<usize> = cover.iter().flat_map(|s| s.members().to_vec()).collect();
        assert_eq!(union.len(), 8);
        for s in &cover {
            assert_eq!(s.order(), 4);
            assert!(q8.is_cyclic_subgroup(s));
        }

        let c3 = catalog("C3^2").unwrap();
        let cover = c3.maximal_cover().unwrap();
        assert_eq!(cover.len(), 4);
        let union: BTreeSet<usize> = cover.iter().flat_map(|s| s.members().to_vec()).collect();
        assert_eq!(union.len(), 9);

        assert!(matches!(catalog("C8").unwrap().maximal_cover(), Err(Error::CyclicGroup(_))));
    }

    impl PGroup {
        fn is_cyclic_subgroup(&self, h: &Subgroup) -> bool {
            h.members().iter().any(|&x| self.element_order(x) == h.order())
        }
    }

    #[test]
    fn hom_examples() {
        let v4 = catalog("C2^2").unwrap();
        // a = 1, b = 2, ab = 3
        let a = v4.cyclic_subgroup(1);
        assert_eq!(v4.hom_to_cp(&a).unwrap(), vec![0, 0, 1, 1]);
        let q8 = catalog("Q8").unwrap();
        let i = q8.cyclic_subgroup(catalog::Q8_I);
        let phi = q8.hom_to_cp(&i).unwrap();
        for g in 0..8 {
            assert_eq!(phi[g] == 0, i.contains(g));
        }
        let c3 = catalog("C3^2").unwrap();
        for line in c3.maximal_cover().unwrap() {
            let phi = c3.hom_to_cp(&line).unwrap();
            for g in 0..9 {
                for h in 0..9 {
                    assert_eq!(phi[c3.mul(g, h)], (phi[g] + phi[h]) % 3);
                }
            }
            assert!((0..9).all(|g| (phi[g] == 0) == line.contains(g)));
        }
        assert!(matches!(v4.hom_to_cp(&v4.trivial()), Err(Error::NotMaximal { .. })));
    }

    #[test]
    fn cyclic_subgroup_examples() {
        let v4 = catalog("C2^2").unwrap();
        let cs = v4.cyclic_subgroups();
        assert_eq!(cs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
        let q8 = catalog("Q8").unwrap();
        let orders: Vec<usize> = q8.cyclic_subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4]);
        let g = catalog("C9xC3").unwrap();
        let generated: BTreeSet<Vec<usize>> = (0..27)
            .map(|x| {
                let mut v: Vec<usize> = (0..9).map(|e| g.pow(x, e)).collect();
                v.sort();
                v.dedup();
                v
            })
            .collect();
        assert_eq!(g.cyclic_subgroups().len(), generated.len());
        // 1 trivial, 4 of order 3, 3 of order 9
        assert_eq!(generated.len(), 8);
    }

    #[test]
    fn table_validation_rejects_bad_input() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(PGroup::from_table(2, bad, "x").is_err());
        let not_p = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(PGroup::from_table(2, not_p.clone(), "x").is_err());
        assert!(PGroup::from_table(3, not_p, "x").is_ok());
        // identity not at index 0
        let shifted = vec![vec![1, 0], vec![0, 1]];
        assert!(PGroup::from_table(2, shifted, "x").is_err());
        // a latin square with identity 0 in which every element is an involution;
        // no group of order 5 looks like that, so associativity must fail
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = PGroup::from_table(5, loop5, "x").unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let q8 = catalog("Q8").unwrap();
        let text = serde_json::to_string(&q8.to_file()).unwrap();
        let back = PGroup::from_json(&text).unwrap();
        assert_eq!(back, q8);
        let mut file = q8.to_file();
        file.table[3][3] = 0;
        assert!(PGroup::from_file(file).is_err());
    }
}
