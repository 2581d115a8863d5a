//! Branching on chordless paths with obscured visibility, down to
//! non-reducible instances.

use std::collections::{BTreeSet, HashSet};

use crate::chordal::is_chordal;
use crate::graph::{EdgePair, Graph, VertexSet};
use crate::pmc::sqrt_threshold;

/// A fill-in instance along a branch: `graph` already contains the
/// `forced` edges, and `k` is what remains of the budget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FillInInstance {
    pub graph: Graph,
    pub k: usize,
    pub forced: BTreeSet<EdgePair>,
}

impl FillInInstance {
    pub fn new(graph: Graph, k: usize) -> Self {
        FillInInstance {
            graph,
            k,
            forced: BTreeSet::new(),
        }
    }

    fn child(&self, added: &[EdgePair]) -> Option<FillInInstance> {
        let k = self.k.checked_sub(added.len())?;
        let mut forced = self.forced.clone();
        forced.extend(added.iter().copied());
        Some(FillInInstance {
            graph: self.graph.with_edges(added.iter().copied()),
            k,
            forced,
        })
    }
}

/// Nonadjacent `u, v` joined by a chordless path whose every internal
/// vertex misses at least the threshold number of `x = N(u) ∩ N(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObscuredWitness {
    pub u: usize,
    pub v: usize,
    /// Full path `u, w_1, .., w_l, v`.
    pub path: Vec<usize>,
    pub x: VertexSet,
}

impl ObscuredWitness {
    pub fn internal(&self) -> &[usize] {
        &self.path[1..self.path.len() - 1]
    }
}

/// Minimum number of common neighbors an internal path vertex must miss.
/// This is `⌈√k⌉`, raised to one at `k = 0` so every branch makes progress.
pub fn obscurity_threshold(k: usize) -> usize {
    sqrt_threshold(k).max(1)
}

/// Scans nonadjacent pairs lexicographically. For each pair, `W` holds the
/// vertices `w` with `|X \ N[w]|` at or above the threshold, where
/// `X = N(u) ∩ N(v)`; a vertex of `X` never counts itself. A breadth-first
/// shortest `u`-`v` path through `W` is chordless and obscured.
pub fn find_obscured_path(inst: &FillInInstance) -> Option<ObscuredWitness> {
    let g = &inst.graph;
    let t = obscurity_threshold(inst.k);
    for pair in g.non_edges() {
        let (u, v) = (pair.u, pair.v);
        let x = g.neighbors(u).intersection(g.neighbors(v));
        if x.len() < t {
            continue;
        }
        let mut within: VertexSet = (0..g.n())
            .filter(|&w| w != u && w != v && x.difference(&g.closed_neighbors(w)).len() >= t)
            .collect();
        within.insert(u);
        within.insert(v);
        if let Some(path) =
            g.shortest_path(&VertexSet::singleton(u), &VertexSet::singleton(v), &within)
        {
            return Some(ObscuredWitness { u, v, path, x });
        }
    }
    None
}

/// The edge sets added by each branch of the rule: `uv` first, then for
/// each internal vertex the pairs joining it to the common neighbors it
/// misses.
pub fn branch_edge_sets(inst: &FillInInstance, w: &ObscuredWitness) -> Vec<Vec<EdgePair>> {
    let mut out = vec![vec![EdgePair::new(w.u, w.v)]];
    for &wi in w.internal() {
        out.push(
            w.x.difference(&inst.graph.closed_neighbors(wi))
                .iter()
                .map(|x| EdgePair::new(wi, x))
                .collect(),
        );
    }
    out
}

/// Children of one application of the branching rule. Children whose
/// budget would go negative are dropped.
pub fn apply_branch(inst: &FillInInstance, w: &ObscuredWitness) -> Vec<FillInInstance> {
    apply_branch_filtered(inst, w, &|_| true)
}

/// As [`apply_branch`], additionally dropping every child that would add a
/// pair rejected by `admissible`.
pub fn apply_branch_filtered(
    inst: &FillInInstance,
    w: &ObscuredWitness,
    admissible: &dyn Fn(&EdgePair) -> bool,
) -> Vec<FillInInstance> {
    branch_edge_sets(inst, w)
        .iter()
        .filter(|added| added.iter().all(admissible))
        .filter_map(|added| inst.child(added))
        .collect()
}

/// Outcome of exhaustive branching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub leaves: Vec<FillInInstance>,
    /// Set when branching stopped early at a chordal child.
    pub chordal_leaf: bool,
}

/// All non-reducible leaves below `inst`, depth first, deduplicated on
/// graph and budget. If a chordal instance turns up, the search stops and
/// returns just that leaf.
pub fn reduce_to_nonreducible(inst: &FillInInstance) -> Vec<FillInInstance> {
    reduce_with(inst, &|_| true, true).leaves
}

/// Exhaustive branching with an admissibility filter on added pairs.
/// With `stop_at_chordal`, the first chordal instance short-circuits.
pub fn reduce_with(
    inst: &FillInInstance,
    admissible: &dyn Fn(&EdgePair) -> bool,
    stop_at_chordal: bool,
) -> Reduction {
    let mut leaves = Vec::new();
    let mut seen: HashSet<(Graph, usize)> = HashSet::new();
    let mut stack = vec![inst.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert((cur.graph.clone(), cur.k)) {
            continue;
        }
        if stop_at_chordal && is_chordal(&cur.graph) {
            return Reduction {
                leaves: vec![cur],
                chordal_leaf: true,
            };
        }
        match find_obscured_path(&cur) {
            None => leaves.push(cur),
            Some(w) => {
                let mut children = apply_branch_filtered(&cur, &w, admissible);
                children.reverse();
                stack.extend(children);
            }
        }
    }
    Reduction {
        leaves,
        chordal_leaf: false,
    }
}
