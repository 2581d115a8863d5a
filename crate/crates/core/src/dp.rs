//! Dynamic programming over potential maximal cliques.
//!
//! A block `(S, C)` is a component `C` together with its neighborhood `S`.
//! Its value is the cheapest way to triangulate `G[S ∪ C]` once `S` is a
//! clique, using only catalog PMCs `Ω` with `S ⊊ Ω ⊆ S ∪ C`. Pairs inside
//! `S` were paid for one level up and are not charged again.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::chordal::is_chordal;
use crate::graph::{EdgePair, Graph, VertexSet};
use crate::pmc::PmcCatalog;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("catalog was built for a different graph")]
    CatalogMismatch,
    #[error("catalog budget {catalog} is below the requested budget {requested}")]
    CatalogBudget { catalog: usize, requested: usize },
    #[error("reconstruction is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub s: VertexSet,
    pub c: VertexSet,
}

impl Block {
    /// The block of a component `c`.
    pub fn of_component(g: &Graph, c: VertexSet) -> Block {
        Block {
            s: g.neighborhood(&c),
            c,
        }
    }
}

/// Memoized block values for one budget. A value of `k + 1` means "more
/// than `k`"; `choice` is set exactly when the value is within budget.
#[derive(Debug, Clone)]
pub struct DpTable {
    k: usize,
    memo: HashMap<Block, (usize, Option<VertexSet>)>,
    root: Option<(usize, Option<VertexSet>)>,
}

impl DpTable {
    pub fn new(k: usize) -> Self {
        DpTable {
            k,
            memo: HashMap::new(),
            root: None,
        }
    }

    pub fn budget(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn get(&self, b: &Block) -> Option<(usize, Option<&VertexSet>)> {
        self.memo.get(b).map(|(v, c)| (*v, c.as_ref()))
    }

    /// Value and argmin recorded by the last [`mfi_root`] call.
    pub fn root(&self) -> Option<(usize, Option<&VertexSet>)> {
        self.root.as_ref().map(|(v, c)| (*v, c.as_ref()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillSolution {
    pub fill: BTreeSet<EdgePair>,
}

impl FillSolution {
    pub fn size(&self) -> usize {
        self.fill.len()
    }
}

fn check(g: &Graph, catalog: &PmcCatalog, table: &DpTable) -> Result<(), DpError> {
    if catalog.fingerprint() != g.fingerprint() {
        return Err(DpError::CatalogMismatch);
    }
    if catalog.budget() < table.k {
        return Err(DpError::CatalogBudget {
            catalog: catalog.budget(),
            requested: table.k,
        });
    }
    Ok(())
}

/// Missing pairs inside `omega` that are not both in `s`.
pub fn relative_fill(g: &Graph, omega: &VertexSet, s: &VertexSet) -> usize {
    g.fill_count(omega) - g.fill_count(s)
}

/// Sums `base` and the values of the blocks hanging off `omega` inside
/// `scope`, saturating at `k + 1`.
fn with_children(
    g: &Graph,
    omega: &VertexSet,
    scope: &VertexSet,
    base: usize,
    catalog: &PmcCatalog,
    table: &mut DpTable,
) -> usize {
    let cap = table.k + 1;
    let mut total = base;
    let outside = g.vertices().difference(scope).union(omega);
    for c in g.components(&outside) {
        if total >= cap {
            break;
        }
        total += block_value(g, Block::of_component(g, c), catalog, table);
    }
    total.min(cap)
}

fn block_value(g: &Graph, b: Block, catalog: &PmcCatalog, table: &mut DpTable) -> usize {
    if let Some(&(v, _)) = table.memo.get(&b) {
        return v;
    }
    let cap = table.k + 1;
    let scope = b.s.union(&b.c);
    let inner = g.fill_count(&b.s);
    let mut best = (cap, None);
    for omega in catalog.omegas() {
        if omega.len() <= b.s.len() || !b.s.is_subset(omega) || !omega.is_subset(&scope) {
            continue;
        }
        let rel = g.fill_count(omega) - inner;
        if rel >= best.0 {
            continue;
        }
        let v = with_children(g, omega, &scope, rel, catalog, table);
        if v < best.0 {
            best = (v, Some(omega.clone()));
        }
    }
    let value = best.0;
    table.memo.insert(b, best);
    value
}

/// Value of one block, saturated at `k + 1`.
pub fn mfi_block(
    g: &Graph,
    b: &Block,
    catalog: &PmcCatalog,
    table: &mut DpTable,
) -> Result<usize, DpError> {
    check(g, catalog, table)?;
    Ok(block_value(g, b.clone(), catalog, table))
}

/// Minimum fill of a connected graph over triangulations whose maximal
/// cliques all come from `catalog`, saturated at `k + 1`.
pub fn mfi_root(g: &Graph, catalog: &PmcCatalog, table: &mut DpTable) -> Result<usize, DpError> {
    check(g, catalog, table)?;
    let cap = table.k + 1;
    let all = g.vertices();
    let mut best = (cap, None);
    for omega in catalog.omegas() {
        let fill = g.fill_count(omega);
        if fill >= best.0 {
            continue;
        }
        let v = with_children(g, omega, &all, fill, catalog, table);
        if v < best.0 {
            best = (v, Some(omega.clone()));
        }
    }
    let value = best.0;
    table.root = Some(best);
    Ok(value)
}

/// Follows the recorded argmins from the root and collects the fill.
/// Returns `None` when the root value is over budget.
pub fn reconstruct(
    g: &Graph,
    catalog: &PmcCatalog,
    table: &mut DpTable,
) -> Result<Option<FillSolution>, DpError> {
    check(g, catalog, table)?;
    let (value, root) = match &table.root {
        Some((v, Some(omega))) => (*v, omega.clone()),
        Some((_, None)) => return Ok(None),
        None => {
            mfi_root(g, catalog, table)?;
            return reconstruct(g, catalog, table);
        }
    };

    let mut fill: BTreeSet<EdgePair> = g.missing_pairs(&root).into_iter().collect();
    let mut pending: Vec<Block> = g
        .components(&root)
        .into_iter()
        .map(|c| Block::of_component(g, c))
        .collect();
    while let Some(b) = pending.pop() {
        let Some((_, Some(omega))) = table.get(&b) else {
            return Err(DpError::Inconsistent(format!(
                "no choice recorded for block {:?}",
                b.c
            )));
        };
        let omega = omega.clone();
        for e in g.missing_pairs(&omega) {
            if b.s.contains(e.u) && b.s.contains(e.v) {
                continue;
            }
            if !fill.insert(e) {
                return Err(DpError::Inconsistent(format!("pair {e} charged twice")));
            }
        }
        let outside = g.vertices().difference(&b.c).union(&omega);
        for c in g.components(&outside) {
            pending.push(Block::of_component(g, c));
        }
    }

    if fill.len() != value {
        return Err(DpError::Inconsistent(format!(
            "fill has {} pairs, table says {value}",
            fill.len()
        )));
    }
    if !is_chordal(&g.with_edges(fill.iter().copied())) {
        return Err(DpError::Inconsistent("result is not chordal".into()));
    }
    Ok(Some(FillSolution { fill }))
}
