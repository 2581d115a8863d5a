//! Brute-force reference implementations. Slow on purpose; every entry
//! point refuses inputs above a hard size limit.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use thiserror::Error;

use crate::chordal::{
    elimination_game, find_chordless_cycle, is_chordal, is_minimal_triangulation,
    maximal_cliques_chordal, EliminationOrdering,
};
use crate::graph::{EdgePair, Graph, VertexSet};
use crate::kernel::SandwichInstance;
use crate::reductions::{is_chain_graph, BipartiteGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {size}, oracle limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

pub const MFI_LIMIT: usize = 16;
pub const ORDERING_LIMIT: usize = 8;
pub const SUBSET_LIMIT: usize = 24;

/// Some triangulation adds at most `budget` edges. Any triangulation puts
/// a chord on every chordless cycle, so branching over the chords of one
/// cycle is exhaustive.
fn fits(g: &Graph, budget: usize, dead: &mut HashSet<(Graph, usize)>) -> bool {
    let Some(cycle) = find_chordless_cycle(g) else {
        return true;
    };
    if budget == 0 || dead.contains(&(g.clone(), budget)) {
        return false;
    }
    for (i, &a) in cycle.iter().enumerate() {
        for &b in &cycle[i + 1..] {
            if !g.has_edge(a, b) && fits(&g.with_edges([EdgePair::new(a, b)]), budget - 1, dead) {
                return true;
            }
        }
    }
    dead.insert((g.clone(), budget));
    false
}

/// Exact minimum fill-in by chord branching with iterative deepening.
pub fn oracle_mfi(g: &Graph) -> Result<usize, OracleError> {
    guard("vertex count", g.n(), MFI_LIMIT)?;
    let mut dead = HashSet::new();
    Ok((0..)
        .find(|&b| fits(g, b, &mut dead))
        .expect("complete graph is chordal"))
}

/// Minimum fill-in if it is at most `cap`, otherwise `None`.
pub fn oracle_mfi_bounded(g: &Graph, cap: usize) -> Result<Option<usize>, OracleError> {
    guard("vertex count", g.n(), MFI_LIMIT)?;
    let mut dead = HashSet::new();
    Ok((0..=cap).find(|&b| fits(g, b, &mut dead)))
}

/// Minimum fill over all elimination orderings.
pub fn mfi_by_orderings(g: &Graph) -> Result<usize, OracleError> {
    guard("vertex count", g.n(), ORDERING_LIMIT)?;
    let n = g.n();
    Ok((0..n)
        .permutations(n)
        .map(|p| {
            elimination_game(g, &EliminationOrdering::new(p).unwrap())
                .fill
                .len()
        })
        .min()
        .unwrap_or(0))
}

/// Union of the maximal cliques of all minimal triangulations, found by
/// running the elimination game on every ordering.
pub fn oracle_pmcs(g: &Graph) -> Result<BTreeSet<VertexSet>, OracleError> {
    guard("vertex count", g.n(), ORDERING_LIMIT)?;
    let n = g.n();
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    for p in (0..n).permutations(n) {
        let t = elimination_game(g, &EliminationOrdering::new(p).unwrap());
        if !seen.insert(t.fill.clone()) || !is_minimal_triangulation(&t) {
            continue;
        }
        out.extend(maximal_cliques_chordal(&t.result).expect("elimination game is chordal"));
    }
    Ok(out)
}

/// Fill of the elimination game read off paths: `uv` is filled iff it is
/// a non-edge and some `u`-`v` path has all internal vertices eliminated
/// before both ends.
pub fn fill_by_paths(g: &Graph, order: &EliminationOrdering) -> BTreeSet<EdgePair> {
    let pos = order.positions();
    let mut out = BTreeSet::new();
    for e in g.non_edges() {
        let first = pos[e.u].min(pos[e.v]);
        let mut within: VertexSet = (0..g.n()).filter(|&w| pos[w] < first).collect();
        within.insert(e.u);
        within.insert(e.v);
        if g.shortest_path(
            &VertexSet::singleton(e.u),
            &VertexSet::singleton(e.v),
            &within,
        )
        .is_some()
        {
            out.insert(e);
        }
    }
    out
}

/// Whether at most `k` allowed pairs make the graph chordal.
pub fn oracle_sandwich(inst: &SandwichInstance) -> Result<bool, OracleError> {
    guard("allowed pair count", inst.allowed.len(), SUBSET_LIMIT)?;
    let pool: Vec<EdgePair> = inst.allowed.iter().copied().collect();
    for size in 0..=inst.k.min(pool.len()) {
        for pick in pool.iter().copied().combinations(size) {
            if is_chordal(&inst.graph.with_edges(pick)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Minimum number of cross pairs completing a chain graph.
pub fn oracle_chain(b: &BipartiteGraph) -> Result<usize, OracleError> {
    let pool = b.cross_non_edges();
    guard("cross non-edge count", pool.len(), SUBSET_LIMIT)?;
    for size in 0..=pool.len() {
        for pick in pool.iter().copied().combinations(size) {
            if is_chain_graph(&b.with_edges(pick)) {
                return Ok(size);
            }
        }
    }
    unreachable!("complete bipartite graphs are chain graphs")
}
