//! Simple undirected graphs over dense vertex ids, plus the set primitives
//! every other module is written against.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

/// A set of vertex ids stored as a bitset.
///
/// Trailing zero words are always trimmed, so equality and hashing are
/// canonical. Ordering is lexicographic on the ascending member list.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if !n.is_multiple_of(64) {
            words.push((1u64 << (n % 64)) - 1);
        }
        VertexSet { words }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        VertexSet { words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Members<'a>;
    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePair {
    pub u: usize,
    pub v: usize,
}

impl EdgePair {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge pair needs two distinct endpoints");
        EdgePair {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b).then(|| EdgePair::new(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Values are immutable once built; every modifying operation returns a new
/// graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(); n],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.link(a, b);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = VertexSet::full(n);
            g.adj[v].remove(v);
        }
        g
    }

    /// Path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.link(v - 1, v);
        }
        g
    }

    /// Cycle `0 - 1 - .. - (n-1) - 0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.link(0, n - 1);
        g
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    /// Attach external names to the vertices (one per vertex).
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Closed neighborhood `N[v]`.
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// All edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| EdgePair { u, v })
        })
    }

    /// All vertex pairs that are not edges, ascending.
    pub fn non_edges(&self) -> impl Iterator<Item = EdgePair> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| EdgePair { u, v })
        })
    }

    /// A new graph with the given pairs added (pairs already present are
    /// ignored).
    pub fn with_edges<I: IntoIterator<Item = EdgePair>>(&self, edges: I) -> Graph {
        let mut g = self.clone();
        for e in edges {
            g.link(e.u, e.v);
        }
        g
    }

    /// A new graph with the given pairs removed.
    pub fn without_edges<I: IntoIterator<Item = EdgePair>>(&self, edges: I) -> Graph {
        let mut g = self.clone();
        for e in edges {
            g.adj[e.u].remove(e.v);
            g.adj[e.v].remove(e.u);
        }
        g
    }

    /// Connected components of `G[V \ removed]`, each sorted, listed by
    /// ascending minimum member.
    pub fn components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !seen.contains(s) {
                let comp = self.component_of(s, &seen);
                seen.union_with(&comp);
                out.push(comp);
            }
        }
        out
    }

    /// The component of `G[V \ removed]` containing `start`.
    pub fn component_of(&self, start: usize, removed: &VertexSet) -> VertexSet {
        debug_assert!(!removed.contains(start));
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for x in frontier.iter() {
                next.union_with(&self.adj[x]);
            }
            next.difference_with(&comp);
            next.difference_with(removed);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    /// `N(W)`: vertices outside `w` with a neighbor in `w`.
    pub fn neighborhood(&self, w: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in w.iter() {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(w);
        out
    }

    /// Number of non-adjacent pairs inside `w`.
    pub fn fill_count(&self, w: &VertexSet) -> usize {
        let k = w.len();
        let present: usize = w.iter().map(|v| self.adj[v].intersection_len(w)).sum();
        k * k.saturating_sub(1) / 2 - present / 2
    }

    /// Non-adjacent pairs inside `w`, ascending.
    pub fn missing_pairs(&self, w: &VertexSet) -> Vec<EdgePair> {
        let members = w.to_vec();
        let mut out = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !self.has_edge(a, b) {
                    out.push(EdgePair { u: a, v: b });
                }
            }
        }
        out
    }

    /// `G_W`: the graph with `w` turned into a clique.
    pub fn complete_set(&self, w: &VertexSet) -> Graph {
        let mut g = self.clone();
        for v in w.iter() {
            g.adj[v].union_with(w);
            g.adj[v].remove(v);
        }
        g
    }

    pub fn is_clique(&self, w: &VertexSet) -> bool {
        w.iter().all(|v| {
            let mut rest = w.difference(&self.adj[v]);
            rest.remove(v);
            rest.is_empty()
        })
    }

    /// Induced subgraph on `keep`, renumbered densely in ascending order.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map = keep.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .intersection(keep)
                .iter()
                .map(|u| index[u])
                .collect();
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, map)
    }

    /// Components `C` of `G \ s` with `N(C) = s`.
    pub fn full_components(&self, s: &VertexSet) -> Vec<VertexSet> {
        self.components(s)
            .into_iter()
            .filter(|c| self.neighborhood(c) == *s)
            .collect()
    }

    /// Shortest path from any vertex of `sources` to any vertex of
    /// `targets`, using only vertices of `within` (sources and targets
    /// included). Breadth-first with ascending-id exploration, so ties
    /// resolve towards the smallest ids. Returns the vertex sequence.
    pub fn shortest_path(
        &self,
        sources: &VertexSet,
        targets: &VertexSet,
        within: &VertexSet,
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        let mut seen = VertexSet::new();
        let mut queue = std::collections::VecDeque::new();
        for s in sources.intersection(within).iter() {
            if targets.contains(s) {
                return Some(vec![s]);
            }
            seen.insert(s);
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            let mut next = self.adj[x].intersection(within);
            next.difference_with(&seen);
            for y in next.iter() {
                seen.insert(y);
                parent[y] = x;
                if targets.contains(y) {
                    let mut path = vec![y];
                    let mut cur = y;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.components(&VertexSet::new()).len() <= 1
    }

    /// Stable 64-bit digest of the edge structure (labels ignored).
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n().hash(&mut h);
        for a in &self.adj {
            a.hash(&mut h);
        }
        h.finish()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = self.edges().map(|e| (e.u, e.v)).collect();
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &edges)
            .finish()
    }
}
