//! Polynomial kernel for Chordal Graph Sandwich, and its specialisation to
//! Minimum Fill-in (every non-edge allowed).
//!
//! The kernel grows a vertex set `A` out of chordless cycles and paths,
//! adds the common neighbors that witness each missing pair inside `A`
//! (or forces the pair as a safe edge once there are more than `2k` such
//! witnesses), and deletes whatever is left outside `A`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::chordal::find_chordless_cycle;
use crate::graph::{EdgePair, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("allowed pair {0} is already an edge")]
    AllowedIsEdge(EdgePair),
    #[error("allowed pair {0} is out of range")]
    AllowedOutOfRange(EdgePair),
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(usize, usize),
}

/// Graph `G = (V, E)`, allowed fill pairs `E'` (disjoint from `E`), budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichInstance {
    pub graph: Graph,
    pub allowed: BTreeSet<EdgePair>,
    pub k: usize,
}

impl SandwichInstance {
    pub fn new(graph: Graph, allowed: BTreeSet<EdgePair>, k: usize) -> Result<Self, KernelError> {
        for &e in &allowed {
            if e.v >= graph.n() {
                return Err(KernelError::AllowedOutOfRange(e));
            }
            if graph.has_edge(e.u, e.v) {
                return Err(KernelError::AllowedIsEdge(e));
            }
        }
        Ok(SandwichInstance { graph, allowed, k })
    }

    /// Fill-in as a sandwich instance: every non-edge is allowed.
    pub fn unrestricted(graph: Graph, k: usize) -> Self {
        let allowed = graph.non_edges().collect();
        SandwichInstance { graph, allowed, k }
    }

    /// `G₂ = G + E'`.
    pub fn upper_graph(&self) -> Graph {
        self.graph.with_edges(self.allowed.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelStatus {
    Reduced,
    No,
    TrivialYes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub status: KernelStatus,
    /// The reduced instance; present unless the status is `No`. Empty for
    /// `TrivialYes`.
    pub instance: Option<SandwichInstance>,
    /// Kernel vertex id to original vertex id.
    pub vertex_map: Vec<usize>,
    /// Safe edges, in original ids.
    pub forced_fill: BTreeSet<EdgePair>,
}

impl KernelResult {
    fn no() -> Self {
        KernelResult {
            status: KernelStatus::No,
            instance: None,
            vertex_map: Vec::new(),
            forced_fill: BTreeSet::new(),
        }
    }
}

/// Size bound on a reduced kernel for the original budget `k`.
pub fn kernel_size_bound(k: usize) -> usize {
    32 * k.pow(3) + 4 * k
}

/// `w` with `x, y ∈ N(w)` such that `x` and `y` stay connected once
/// `N[w] \ {x, y}` is removed, restricted to `candidates`.
fn witnesses_within(g: &Graph, x: usize, y: usize, candidates: &VertexSet) -> VertexSet {
    let common = g.neighbors(x).intersection(g.neighbors(y));
    let all = g.vertices();
    common
        .intersection(candidates)
        .iter()
        .filter(|&w| {
            let mut within = all.difference(&g.closed_neighbors(w));
            within.insert(x);
            within.insert(y);
            g.shortest_path(&VertexSet::singleton(x), &VertexSet::singleton(y), &within)
                .is_some()
        })
        .collect()
}

/// `A_{x,y}` over all vertices of the instance graph.
pub fn a_xy(inst: &SandwichInstance, x: usize, y: usize) -> Result<VertexSet, KernelError> {
    if inst.graph.has_edge(x, y) || x == y {
        return Err(KernelError::Adjacent(x, y));
    }
    Ok(witnesses_within(&inst.graph, x, y, &inst.graph.vertices()))
}

fn no_cycle_vertex(g: &Graph, u: usize, removed: &VertexSet) -> bool {
    let mut gone = g.closed_neighbors(u);
    gone.union_with(removed);
    g.components(&gone).iter().all(|c| {
        let mut s = g.neighborhood(c);
        s.difference_with(removed);
        g.is_clique(&s)
    })
}

/// Every component `C` of `G \ N[u]` has `N(C)` a clique.
pub fn no_cycle_vertex_applies(inst: &SandwichInstance, u: usize) -> bool {
    no_cycle_vertex(&inst.graph, u, &VertexSet::new())
}

/// A chordless path inside `b`, of at least two vertices, lying on a
/// chordless cycle of `g`: starts at some `u ∈ b` next to `x ∈ a` on the
/// cycle and runs along it while the vertices stay in `b`.
fn chordless_path_in_b(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    let all = g.vertices();
    for u in b.iter() {
        for x in g.neighbors(u).intersection(a).iter() {
            let nx = g.closed_neighbors(x);
            let nu = g.closed_neighbors(u);
            let sources = g.neighbors(u).intersection(b).difference(&nx);
            if sources.is_empty() {
                continue;
            }
            let targets = g.neighbors(x).difference(&nu);
            let mut within = all.difference(&nu);
            within.remove(x);
            within.union_with(&sources);
            if let Some(path) = g.shortest_path(&sources, &targets, &within) {
                let mut run = vec![u];
                run.extend(path.into_iter().take_while(|&p| b.contains(p)));
                return Some(run);
            }
        }
    }
    None
}

/// Kernelizes a sandwich instance.
///
/// Vertices left outside `A` are deleted one at a time, each only after
/// re-checking the no-cycle-vertex condition on the current graph; a vertex
/// that fails the check stays in the kernel.
pub fn kernelize(inst: &SandwichInstance) -> KernelResult {
    let mut g = inst.graph.clone();
    let mut allowed = inst.allowed.clone();
    let mut k = inst.k;
    let mut a = VertexSet::new();
    let mut b = g.vertices();
    let mut forced = BTreeSet::new();

    // P1: vertex-disjoint chordless cycles of G[B].
    loop {
        if 4 * k < a.len() {
            return KernelResult::no();
        }
        let (sub, map) = g.induced(&b);
        let Some(cycle) = find_chordless_cycle(&sub) else {
            break;
        };
        for i in cycle {
            a.insert(map[i]);
            b.remove(map[i]);
        }
    }

    // P2: chordless paths of G[B] on chordless cycles of G.
    loop {
        if 4 * k < a.len() {
            return KernelResult::no();
        }
        let Some(path) = chordless_path_in_b(&g, &a, &b) else {
            break;
        };
        for v in path {
            a.insert(v);
            b.remove(v);
        }
    }

    // P3 + P4: witnesses of each missing pair inside A.
    let core = a.to_vec();
    for (i, &x) in core.iter().enumerate() {
        for &y in &core[i + 1..] {
            if g.has_edge(x, y) {
                continue;
            }
            let axy = witnesses_within(&g, x, y, &b);
            if axy.len() <= 2 * k {
                a.union_with(&axy);
                b.difference_with(&axy);
                continue;
            }
            let xy = EdgePair::new(x, y);
            if !allowed.remove(&xy) || k == 0 {
                return KernelResult::no();
            }
            forced.insert(xy);
            k -= 1;
            g = g.with_edges([xy]);
        }
    }

    // P5: delete what is left of B.
    let mut removed = VertexSet::new();
    loop {
        let mut progress = false;
        for u in b.iter() {
            if !removed.contains(u) && no_cycle_vertex(&g, u, &removed) {
                removed.insert(u);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let keep = g.vertices().difference(&removed);

    let (kernel, vertex_map) = g.induced(&keep);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in vertex_map.iter().enumerate() {
        index[v] = i;
    }
    let kernel_allowed = allowed
        .iter()
        .filter(|e| keep.contains(e.u) && keep.contains(e.v))
        .map(|e| EdgePair::new(index[e.u], index[e.v]))
        .collect();
    let status = if keep.is_empty() {
        KernelStatus::TrivialYes
    } else {
        KernelStatus::Reduced
    };
    KernelResult {
        status,
        instance: Some(SandwichInstance {
            graph: kernel,
            allowed: kernel_allowed,
            k,
        }),
        vertex_map,
        forced_fill: forced,
    }
}

/// Fill-in kernel: [`kernelize`] with every non-edge allowed.
pub fn fillin_kernel(g: &Graph, k: usize) -> KernelResult {
    kernelize(&SandwichInstance::unrestricted(g.clone(), k))
}
