//! Set cover and maximum n-union over small universes, greedy and exact.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> BitSet {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// |other \ self|
    pub fn gain(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (b & !a).count_ones() as usize).sum()
    }
}

/// A family of subsets of `0..universe`.
#[derive(Clone, Debug)]
pub struct SetSystem {
    universe: usize,
    sets: Vec<BitSet>,
}

impl SetSystem {
    pub fn new(universe: usize, sets: Vec<BitSet>) -> SetSystem {
        SetSystem { universe, sets }
    }

    pub fn from_members(universe: usize, members: &[Vec<usize>]) -> SetSystem {
        let sets = members
            .iter()
            .map(|m| {
                let mut b = BitSet::new(universe);
                for &i in m {
                    b.insert(i);
                }
                b
            })
            .collect();
        SetSystem { universe, sets }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
    pub fn len(&self) -> usize {
        self.sets.len()
    }
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
    pub fn set(&self, i: usize) -> &BitSet {
        &self.sets[i]
    }

    pub fn union_size(&self, chosen: &[usize]) -> usize {
        let mut u = BitSet::new(self.universe);
        for &i in chosen {
            u.union_with(&self.sets[i]);
        }
        u.count()
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        self.union_size(chosen) == self.universe
    }

    /// Repeatedly takes the set with the largest marginal gain, smallest index on ties.
    /// Stops after `limit` sets or when nothing new can be covered.
    pub fn greedy(&self, limit: usize) -> Vec<usize> {
        let mut covered = BitSet::new(self.universe);
        let mut chosen = Vec::new();
        while chosen.len() < limit && covered.count() < self.universe {
            let best = (0..self.sets.len())
                .map(|i| (covered.gain(&self.sets[i]), i))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            match best {
                Some((gain, i)) if gain > 0 => {
                    covered.union_with(&self.sets[i]);
                    chosen.push(i);
                }
                _ => break,
            }
        }
        chosen
    }

    pub fn greedy_cover(&self) -> Option<Vec<usize>> {
        let chosen = self.greedy(usize::MAX);
        self.is_cover(&chosen).then_some(chosen)
    }

    /// Minimum-cardinality cover by branch and bound; `None` if no cover exists.
    ///
    /// The incumbent starts at the greedy cover. At each node the uncovered element
    /// lying in the fewest sets is branched on. Nodes are pruned with the larger of
    /// `⌈uncovered / max gain⌉` and `⌈Σ_e 1/best(e)⌉`, where best(e) is the largest
    /// gain of a set containing the uncovered element e.
    pub fn exact_cover(&self, budget: u64) -> Result<Option<Vec<usize>>> {
        let Some(greedy) = self.greedy_cover() else {
            return Ok(None);
        };
        let containing: Vec<Vec<usize>> = (0..self.universe)
            .map(|e| (0..self.sets.len()).filter(|&i| self.sets[i].contains(e)).collect())
            .collect();
        let mut search = CoverSearch { system: self, containing, best: greedy, nodes: 0, budget };
        let mut chosen = Vec::new();
        search.descend(&BitSet::new(self.universe), &mut chosen)?;
        let mut best = search.best;
        best.sort_unstable();
        Ok(Some(best))
    }

    /// The largest union of `n` sets, by exhaustive branch and bound over
    /// index-ordered n-subsets. Returns the union size and the chosen sets.
    pub fn max_union(&self, n: usize, budget: u64) -> Result<(usize, Vec<usize>)> {
        let greedy = self.greedy(n);
        let mut best = (self.union_size(&greedy), greedy);
        let max_set = self.sets.iter().map(BitSet::count).max().unwrap_or(0);
        let mut nodes = 0u64;
        let mut chosen = Vec::new();
        self.union_descend(n, 0, &BitSet::new(self.universe), &mut chosen, max_set, &mut best, &mut nodes, budget)?;
        Ok(best)
    }

    #[allow(clippy::too_many_arguments)]
    fn union_descend(
        &self,
        n: usize,
        start: usize,
        covered: &BitSet,
        chosen: &mut Vec<usize>,
        max_set: usize,
        best: &mut (usize, Vec<usize>),
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::ExactBudgetExceeded(budget));
        }
        let have = covered.count();
        if have > best.0 {
            *best = (have, chosen.clone());
        }
        if chosen.len() == n || best.0 == self.universe {
            return Ok(());
        }
        let remaining = n - chosen.len();
        if have + remaining * max_set <= best.0 {
            return Ok(());
        }
        for i in start..self.sets.len() {
            if self.sets.len() - i < remaining && have + (self.sets.len() - i) * max_set <= best.0 {
                break;
            }
            let mut next = covered.clone();
            next.union_with(&self.sets[i]);
            chosen.push(i);
            self.union_descend(n, i + 1, &next, chosen, max_set, best, nodes, budget)?;
            chosen.pop();
            if best.0 == self.universe {
                break;
            }
        }
        Ok(())
    }
}

struct CoverSearch<'a> {
    system: &'a SetSystem,
    containing: Vec<Vec<usize>>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    fn descend(&mut self, covered: &BitSet, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ExactBudgetExceeded(self.budget));
        }
        let universe = self.system.universe;
        let uncovered = universe - covered.count();
        if uncovered == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        let gains: Vec<usize> = self.system.sets.iter().map(|s| covered.gain(s)).collect();
        let max_gain = gains.iter().copied().max().unwrap_or(0);
        if max_gain == 0 {
            return Ok(());
        }
        // a chosen set S covers gain(S) new elements, each with best gain ≥ gain(S),
        // so Σ_e 1/best(e) over uncovered e is at most the number of sets still needed
        let mut fractional = 0.0f64;
        for e in (0..universe).filter(|&e| !covered.contains(e)) {
            let best = self.containing[e].iter().map(|&i| gains[i]).max().unwrap_or(0);
            if best == 0 {
                return Ok(());
            }
            fractional += 1.0 / best as f64;
        }
        let needed = uncovered.div_ceil(max_gain).max((fractional - 1e-6).ceil() as usize);
        if chosen.len() + needed >= self.best.len() {
            return Ok(());
        }
        let pivot = (0..universe)
            .filter(|&e| !covered.contains(e))
            .min_by_key(|&e| self.containing[e].len())
            .expect("something is uncovered");
        let mut options: Vec<(usize, usize)> = self.containing[pivot]
            .iter()
            .map(|&i| (covered.gain(&self.system.sets[i]), i))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in options {
            let mut next = covered.clone();
            next.union_with(&self.system.sets[i]);
            chosen.push(i);
            self.descend(&next, chosen)?;
            chosen.pop();
            if chosen.len() + 1 >= self.best.len() {
                break;
            }
        }
        Ok(())
    }
}
