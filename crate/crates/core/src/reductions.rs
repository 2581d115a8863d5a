//! Chain completion, triangulating colored graphs and chordal sandwich,
//! all solved through the fill-in machinery.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::branch::FillInInstance;
use crate::dp::FillSolution;
use crate::graph::{EdgePair, Graph, VertexSet};
use crate::kernel::SandwichInstance;
use crate::solver::{solve, solve_sandwich_with_stats, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("sides overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} is on neither side")]
    Unassigned(usize),
    #[error("edge {0} does not cross the bipartition")]
    NotCrossing(EdgePair),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringSize { got: usize, expected: usize },
}

/// Bipartite graph on `0..n` with sides `left` and `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: VertexSet,
    pub right: VertexSet,
    pub edges: BTreeSet<EdgePair>,
}

impl BipartiteGraph {
    pub fn new(
        left: VertexSet,
        right: VertexSet,
        edges: impl IntoIterator<Item = EdgePair>,
    ) -> Result<Self, ReductionError> {
        if let Some(v) = left.intersection(&right).first() {
            return Err(ReductionError::Overlap(v));
        }
        let all = left.union(&right);
        let n = all.len();
        if let Some(v) = VertexSet::full(n).difference(&all).first() {
            return Err(ReductionError::Unassigned(v));
        }
        let edges: BTreeSet<EdgePair> = edges.into_iter().collect();
        for &e in &edges {
            if left.contains(e.u) == left.contains(e.v) || e.v >= n {
                return Err(ReductionError::NotCrossing(e));
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn n(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn graph(&self) -> Graph {
        Graph::empty(self.n()).with_edges(self.edges.iter().copied())
    }

    /// Cross pairs that are not edges.
    pub fn cross_non_edges(&self) -> Vec<EdgePair> {
        let mut out = Vec::new();
        for a in self.left.iter() {
            for b in self.right.iter() {
                let e = EdgePair::new(a, b);
                if !self.edges.contains(&e) {
                    out.push(e);
                }
            }
        }
        out.sort();
        out
    }

    pub fn with_edges(&self, extra: impl IntoIterator<Item = EdgePair>) -> BipartiteGraph {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        BipartiteGraph {
            left: self.left.clone(),
            right: self.right.clone(),
            edges,
        }
    }
}

/// Left neighborhoods are totally ordered by inclusion.
pub fn is_chain_graph(b: &BipartiteGraph) -> bool {
    let g = b.graph();
    let mut hoods: Vec<&VertexSet> = b.left.iter().map(|v| g.neighbors(v)).collect();
    hoods.sort_by_key(|h| h.len());
    hoods.windows(2).all(|w| w[0].is_subset(w[1]))
}

/// Both sides turned into cliques; chain completions of `b` are exactly
/// the fill-ins of the result.
pub fn chain_to_fillin(b: &BipartiteGraph, k: usize) -> FillInInstance {
    let g = b.graph().complete_set(&b.left).complete_set(&b.right);
    FillInInstance::new(g, k)
}

/// Minimum chain completion of size at most `k`.
pub fn solve_chain(b: &BipartiteGraph, k: usize) -> Result<Option<BTreeSet<EdgePair>>, SolveError> {
    let inst = chain_to_fillin(b, k);
    let Some(sol) = solve(&inst.graph, k)? else {
        return Ok(None);
    };
    let fill = sol.fill;
    if let Some(e) = fill
        .iter()
        .find(|e| b.left.contains(e.u) == b.left.contains(e.v))
    {
        return Err(SolveError::Verification(format!("{e} does not cross")));
    }
    if !is_chain_graph(&b.with_edges(fill.iter().copied())) {
        return Err(SolveError::Verification(
            "result is not a chain graph".into(),
        ));
    }
    Ok(Some(fill))
}

/// One color per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color classes, ordered by color.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut by_color: std::collections::BTreeMap<usize, VertexSet> = Default::default();
        for (v, &c) in self.colors.iter().enumerate() {
            by_color.entry(c).or_default().insert(v);
        }
        by_color.into_values().collect()
    }
}

/// Allowed pairs are the bichromatic non-edges.
pub fn colored_to_sandwich(
    g: &Graph,
    col: &Coloring,
    k: usize,
) -> Result<SandwichInstance, ReductionError> {
    if col.len() != g.n() {
        return Err(ReductionError::ColoringSize {
            got: col.len(),
            expected: g.n(),
        });
    }
    let allowed = g
        .non_edges()
        .filter(|e| col.color(e.u) != col.color(e.v))
        .collect();
    Ok(SandwichInstance {
        graph: g.clone(),
        allowed,
        k,
    })
}

/// Minimum chordal sandwich within budget.
pub fn solve_sandwich(inst: &SandwichInstance) -> Result<Option<FillSolution>, SolveError> {
    solve_sandwich_with_stats(inst).map(|(s, _)| s)
}

/// Minimum triangulation of a colored graph without monochromatic fill.
pub fn solve_colored(
    g: &Graph,
    col: &Coloring,
    k: usize,
) -> Result<Option<FillSolution>, SolveError> {
    let inst =
        colored_to_sandwich(g, col, k).map_err(|e| SolveError::Verification(e.to_string()))?;
    let sol = solve_sandwich(&inst)?;
    if let Some(s) = &sol {
        if let Some(e) = s.fill.iter().find(|e| col.color(e.u) == col.color(e.v)) {
            return Err(SolveError::Verification(format!("{e} is monochromatic")));
        }
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_k2() -> BipartiteGraph {
        // left a1 = 0, a2 = 1; right b1 = 2, b2 = 3
        BipartiteGraph::new(
            VertexSet::from([0, 1]),
            VertexSet::from([2, 3]),
            [EdgePair::new(0, 2), EdgePair::new(1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn bipartite_validation() {
        let l = VertexSet::from([0, 1]);
        let r = VertexSet::from([1, 2]);
        assert_eq!(
            BipartiteGraph::new(l.clone(), r, []),
            Err(ReductionError::Overlap(1))
        );
        assert_eq!(
            BipartiteGraph::new(l.clone(), VertexSet::from([3]), []),
            Err(ReductionError::Unassigned(2))
        );
        assert_eq!(
            BipartiteGraph::new(l, VertexSet::from([2]), [EdgePair::new(0, 1)]),
            Err(ReductionError::NotCrossing(EdgePair::new(0, 1)))
        );
    }

    #[test]
    fn chain_graph_examples() {
        let star = BipartiteGraph::new(
            VertexSet::from([0]),
            VertexSet::from([1, 2, 3]),
            [
                EdgePair::new(0, 1),
                EdgePair::new(0, 2),
                EdgePair::new(0, 3),
            ],
        )
        .unwrap();
        assert!(is_chain_graph(&star));
        assert!(!is_chain_graph(&two_k2()));
        let k22 = two_k2().with_edges([EdgePair::new(0, 3), EdgePair::new(1, 2)]);
        assert!(is_chain_graph(&k22));
    }

    #[test]
    fn chain_reduction() {
        let inst = chain_to_fillin(&two_k2(), 1);
        assert_eq!(inst.graph.m(), 4);
        assert!(inst.graph.has_edge(0, 1) && inst.graph.has_edge(2, 3));
        let k22 = two_k2().with_edges([EdgePair::new(0, 3), EdgePair::new(1, 2)]);
        assert_eq!(chain_to_fillin(&k22, 0).graph, Graph::complete(4));

        let fill = solve_chain(&two_k2(), 1).unwrap().unwrap();
        assert_eq!(fill.len(), 1);
        assert_eq!(solve_chain(&two_k2(), 0).unwrap(), None);
        assert_eq!(solve_chain(&k22, 0).unwrap(), Some(BTreeSet::new()));
    }

    #[test]
    fn colored_examples() {
        let c4 = Graph::cycle(4);
        let two = Coloring::new(vec![0, 1, 0, 1]);
        assert!(colored_to_sandwich(&c4, &two, 3)
            .unwrap()
            .allowed
            .is_empty());
        for k in 0..4 {
            assert_eq!(solve_colored(&c4, &two, k).unwrap(), None);
        }
        let distinct = Coloring::new(vec![0, 1, 2, 3]);
        let inst = colored_to_sandwich(&c4, &distinct, 1).unwrap();
        assert_eq!(inst.allowed.len(), 2);
        assert_eq!(solve_colored(&c4, &distinct, 1).unwrap().unwrap().size(), 1);
        assert_eq!(
            two.classes(),
            vec![VertexSet::from([0, 2]), VertexSet::from([1, 3])]
        );
        assert!(colored_to_sandwich(&c4, &Coloring::new(vec![0]), 1).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let c4 = Graph::cycle(4);
        let both = SandwichInstance::new(
            c4.clone(),
            BTreeSet::from([EdgePair::new(0, 2), EdgePair::new(1, 3)]),
            1,
        )
        .unwrap();
        assert_eq!(solve_sandwich(&both).unwrap().unwrap().size(), 1);
        let one = SandwichInstance::new(c4, BTreeSet::from([EdgePair::new(1, 3)]), 1).unwrap();
        assert_eq!(
            solve_sandwich(&one).unwrap().unwrap().fill,
            BTreeSet::from([EdgePair::new(1, 3)])
        );
    }
}
