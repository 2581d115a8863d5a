//! Chordality recognition, the elimination game, minimal triangulation via
//! MCS-M, and clique / separator extraction from chordal graphs.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::graph::{EdgePair, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("graph is not chordal")]
    NotChordal,
    #[error("ordering is not a permutation of 0..{0}")]
    InvalidOrdering(usize),
}

/// A vertex elimination ordering: `order[i]` is eliminated at step `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EliminationOrdering(Vec<usize>);

impl EliminationOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self, ChordalError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(ChordalError::InvalidOrdering(n));
            }
        }
        Ok(EliminationOrdering(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `positions()[v]` is the step at which `v` is eliminated.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// A chordal supergraph `result = base + fill`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub base: Graph,
    pub fill: BTreeSet<EdgePair>,
    pub result: Graph,
    pub ordering: Option<EliminationOrdering>,
}

impl Triangulation {
    /// Builds `base + fill`. Pairs that are already edges of `base` are
    /// dropped from the fill set.
    pub fn from_fill(base: &Graph, fill: impl IntoIterator<Item = EdgePair>) -> Self {
        let fill: BTreeSet<EdgePair> = fill
            .into_iter()
            .filter(|e| !base.has_edge(e.u, e.v))
            .collect();
        Triangulation {
            result: base.with_edges(fill.iter().copied()),
            base: base.clone(),
            fill,
            ordering: None,
        }
    }
}

/// Maximum cardinality search. Returns vertices in visiting order; the
/// reverse is a perfect elimination ordering whenever the graph is chordal.
/// Ties go to the smallest id.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], Reverse(v)))
            .expect("an unvisited vertex remains");
        done[v] = true;
        order.push(v);
        for u in g.neighbors(v).iter() {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

fn later_neighbors(g: &Graph, order: &[usize]) -> Vec<VertexSet> {
    let mut eliminated = VertexSet::new();
    let mut later = vec![VertexSet::new(); g.n()];
    for &v in order {
        eliminated.insert(v);
        later[v] = g.neighbors(v).difference(&eliminated);
    }
    later
}

/// Perfect elimination check: every vertex's later neighbors form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let later = later_neighbors(g, order);
    order.iter().all(|&v| {
        let Some(parent) = later[v].iter().min_by_key(|&u| pos[u]) else {
            return true;
        };
        let mut rest = later[v].difference(g.neighbors(parent));
        rest.remove(parent);
        rest.is_empty()
    })
}

fn peo(g: &Graph) -> Vec<usize> {
    let mut order = mcs_order(g);
    order.reverse();
    order
}

pub fn is_chordal(g: &Graph) -> bool {
    g.n() <= 3 || is_perfect_elimination_ordering(g, &peo(g))
}

/// A chordless cycle of length at least four, or `None` if `g` is chordal.
///
/// Scans centre vertices `v` and non-adjacent neighbor pairs `a < b` in
/// ascending order and closes the first pair joined by a path avoiding
/// `N[v]`; that path is taken shortest, hence induced.
pub fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    if is_chordal(g) {
        return None;
    }
    let all = g.vertices();
    for v in 0..g.n() {
        let nbrs = g.neighbors(v).to_vec();
        let outside = all.difference(&g.closed_neighbors(v));
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut within = outside.clone();
                within.insert(a);
                within.insert(b);
                let path =
                    g.shortest_path(&VertexSet::singleton(a), &VertexSet::singleton(b), &within);
                if let Some(path) = path {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    unreachable!("a non-chordal graph has a chordless cycle through some vertex")
}

/// Eliminates vertices in `order`, completing each vertex's not yet
/// eliminated neighborhood. The accumulated graph is chordal.
pub fn elimination_game(g: &Graph, order: &EliminationOrdering) -> Triangulation {
    assert_eq!(order.as_slice().len(), g.n(), "ordering size mismatch");
    let mut h = g.clone();
    let mut eliminated = VertexSet::new();
    let mut fill = BTreeSet::new();
    for &v in order.as_slice() {
        eliminated.insert(v);
        let later = h.neighbors(v).difference(&eliminated);
        let missing = h.missing_pairs(&later);
        if !missing.is_empty() {
            fill.extend(missing.iter().copied());
            h = h.with_edges(missing);
        }
    }
    Triangulation {
        base: g.clone(),
        fill,
        result: h,
        ordering: Some(order.clone()),
    }
}

/// True iff removing any single fill edge breaks chordality (and the
/// result is chordal in the first place).
pub fn is_minimal_triangulation(t: &Triangulation) -> bool {
    is_chordal(&t.result)
        && t.fill
            .iter()
            .all(|&e| !is_chordal(&t.result.without_edges([e])))
}

/// Minimal triangulation by MCS-M: vertices are numbered from `n` down to
/// `1` by maximum weight; the chosen vertex raises the weight of every
/// unnumbered vertex it reaches through strictly lighter unnumbered
/// vertices, and those pairs become fill.
pub fn minimal_triangulation(g: &Graph) -> Triangulation {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut fill = BTreeSet::new();
    let mut picked = Vec::with_capacity(n);
    // Bottleneck distance: smallest possible max internal weight on a path
    // from the picked vertex. `0` encodes "adjacent" (no internal vertex),
    // larger values are weight + 1.
    let mut reach = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], Reverse(v)))
            .expect("an unnumbered vertex remains");
        numbered[v] = true;
        picked.push(v);

        reach.iter_mut().for_each(|r| *r = usize::MAX);
        for u in g.neighbors(v).iter().filter(|&u| !numbered[u]) {
            reach[u] = 0;
            heap.push(Reverse((0, u)));
        }
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > reach[x] {
                continue;
            }
            let through = d.max(weight[x] + 1);
            for y in g.neighbors(x).iter() {
                if !numbered[y] && through < reach[y] {
                    reach[y] = through;
                    heap.push(Reverse((through, y)));
                }
            }
        }
        let raised: Vec<usize> = (0..n)
            .filter(|&u| !numbered[u] && reach[u] != usize::MAX && reach[u] <= weight[u])
            .collect();
        for u in raised {
            weight[u] += 1;
            if !g.has_edge(u, v) {
                fill.insert(EdgePair::new(u, v));
            }
        }
    }
    picked.reverse();
    let mut t = Triangulation::from_fill(g, fill);
    t.ordering = Some(EliminationOrdering(picked));
    t
}

/// All maximal cliques of a chordal graph, in ascending canonical order.
pub fn maximal_cliques_chordal(h: &Graph) -> Result<Vec<VertexSet>, ChordalError> {
    let order = peo(h);
    if !is_perfect_elimination_ordering(h, &order) {
        return Err(ChordalError::NotChordal);
    }
    let later = later_neighbors(h, &order);
    let candidates: BTreeSet<VertexSet> = order
        .iter()
        .map(|&v| {
            let mut c = later[v].clone();
            c.insert(v);
            c
        })
        .collect();
    Ok(candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d != *c && c.is_subset(d)))
        .cloned()
        .collect())
}

/// All minimal separators of a chordal graph, in ascending canonical order.
/// Every one of them is the later neighborhood of some vertex in a perfect
/// elimination ordering; candidates are confirmed by the two-full-component
/// test.
pub fn minimal_separators_chordal(h: &Graph) -> Result<Vec<VertexSet>, ChordalError> {
    let order = peo(h);
    if !is_perfect_elimination_ordering(h, &order) {
        return Err(ChordalError::NotChordal);
    }
    let candidates: BTreeSet<VertexSet> = later_neighbors(h, &order).into_iter().collect();
    Ok(candidates
        .into_iter()
        .filter(|s| h.full_components(s).len() >= 2)
        .collect())
}
