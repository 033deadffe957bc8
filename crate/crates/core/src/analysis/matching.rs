//! Maximum bipartite matching by Hopcroft–Karp.
//!
//! Alternates a BFS that layers the graph from the free left vertices with a DFS
//! that augments along vertex-disjoint shortest paths, until no augmenting path
//! remains. Adjacency lists are scanned in order, so the result is deterministic.

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;
const INF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `left[u]` is the right vertex matched to `u`.
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.left.len() && self.size == self.right.len()
    }
}

pub fn hopcroft_karp(n_right: usize, adj: &[Vec<usize>]) -> Matching {
    let n_left = adj.len();
    let mut match_l = vec![UNMATCHED; n_left];
    let mut match_r = vec![UNMATCHED; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;
    loop {
        // BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == UNMATCHED {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == UNMATCHED {
                    found = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; n_left];
        for u in 0..n_left {
            if match_l[u] == UNMATCHED && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut cursor) {
                size += 1;
            }
        }
    }
    let wrap = |v: usize| (v != UNMATCHED).then_some(v);
    Matching {
        left: match_l.into_iter().map(wrap).collect(),
        right: match_r.into_iter().map(wrap).collect(),
        size,
    }
}

/// Iterative DFS along the BFS layering; returns whether `start` got matched.
fn augment(
    start: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [u32],
    cursor: &mut [usize],
) -> bool {
    let mut stack = vec![start];
    while let Some(&u) = stack.last() {
        if cursor[u] == adj[u].len() {
            dist[u] = INF;
            stack.pop();
            continue;
        }
        let v = adj[u][cursor[u]];
        cursor[u] += 1;
        let w = match_r[v];
        if w == UNMATCHED {
            // flip the path: each stacked left vertex takes the edge it just tried
            for &l in stack.iter().rev() {
                let r = adj[l][cursor[l] - 1];
                match_r[r] = l;
                match_l[l] = r;
            }
            return true;
        }
        if dist[w] == dist[u] + 1 {
            stack.push(w);
        }
    }
    false
}
