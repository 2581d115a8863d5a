//! End-to-end pipeline: kernel, branching, vital PMCs, DP.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::branch::{reduce_with, FillInInstance};
use crate::chordal::is_chordal;
use crate::dp::{mfi_root, reconstruct, DpError, DpTable, FillSolution};
use crate::graph::{EdgePair, Graph, VertexSet};
use crate::kernel::{kernelize, KernelStatus, SandwichInstance};
use crate::pmc::enumerate_vital_pmcs;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error("solution failed verification: {0}")]
    Verification(String),
}

/// Counters collected along the pipeline. Not part of the answer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub kernel_vertices: usize,
    pub kernel_forced: usize,
    pub leaves: usize,
    pub pmcs: usize,
    pub dp_states: usize,
}

/// Exact minimum fill-in if it is at most `k`.
pub fn solve(g: &Graph, k: usize) -> Result<Option<FillSolution>, SolveError> {
    solve_with_stats(g, k).map(|(s, _)| s)
}

pub fn solve_with_stats(
    g: &Graph,
    k: usize,
) -> Result<(Option<FillSolution>, SolveStats), SolveError> {
    let inst = SandwichInstance::unrestricted(g.clone(), k);
    run(&inst, false)
}

/// Minimum chordal sandwich: at most `k` pairs from `allowed` making the
/// graph chordal, as few as possible.
pub fn solve_sandwich_with_stats(
    inst: &SandwichInstance,
) -> Result<(Option<FillSolution>, SolveStats), SolveError> {
    run(inst, true)
}

fn run(
    inst: &SandwichInstance,
    restricted: bool,
) -> Result<(Option<FillSolution>, SolveStats), SolveError> {
    let mut stats = SolveStats::default();
    let kr = kernelize(inst);
    let mut fill = kr.forced_fill.clone();
    stats.kernel_forced = fill.len();
    match kr.status {
        KernelStatus::No => return Ok((None, stats)),
        KernelStatus::TrivialYes => {}
        KernelStatus::Reduced => {
            let kinst = kr
                .instance
                .as_ref()
                .expect("reduced kernel has an instance");
            stats.kernel_vertices = kinst.graph.n();
            let mut remaining = kinst.k;
            for comp in kinst.graph.components(&VertexSet::new()) {
                let (cg, cmap) = kinst.graph.induced(&comp);
                if is_chordal(&cg) {
                    continue;
                }
                let mut index = vec![usize::MAX; kinst.graph.n()];
                for (i, &v) in cmap.iter().enumerate() {
                    index[v] = i;
                }
                let allowed: BTreeSet<EdgePair> = kinst
                    .allowed
                    .iter()
                    .filter(|e| comp.contains(e.u) && comp.contains(e.v))
                    .map(|e| EdgePair::new(index[e.u], index[e.v]))
                    .collect();
                let allowed = restricted.then_some(&allowed);
                let mut found = None;
                for budget in 0..=remaining {
                    found = solve_component(&cg, allowed, budget, &mut stats)?;
                    if found.is_some() {
                        break;
                    }
                }
                let Some(part) = found else {
                    return Ok((None, stats));
                };
                remaining -= part.len();
                fill.extend(
                    part.into_iter()
                        .map(|e| EdgePair::new(kr.vertex_map[cmap[e.u]], kr.vertex_map[cmap[e.v]])),
                );
            }
        }
    }
    verify(inst, restricted, &fill)?;
    Ok((Some(FillSolution { fill }), stats))
}

fn verify(
    inst: &SandwichInstance,
    restricted: bool,
    fill: &BTreeSet<EdgePair>,
) -> Result<(), SolveError> {
    let g = &inst.graph;
    if fill.len() > inst.k {
        return Err(SolveError::Verification(format!(
            "{} fill edges exceed budget {}",
            fill.len(),
            inst.k
        )));
    }
    for e in fill {
        if e.v >= g.n() || g.has_edge(e.u, e.v) {
            return Err(SolveError::Verification(format!("{e} is not a non-edge")));
        }
        if restricted && !inst.allowed.contains(e) {
            return Err(SolveError::Verification(format!("{e} is not allowed")));
        }
    }
    if !is_chordal(&g.with_edges(fill.iter().copied())) {
        return Err(SolveError::Verification("result is not chordal".into()));
    }
    Ok(())
}

/// A fill of size at most `budget` for a connected graph, or `None`.
fn solve_component(
    g: &Graph,
    allowed: Option<&BTreeSet<EdgePair>>,
    budget: usize,
    stats: &mut SolveStats,
) -> Result<Option<BTreeSet<EdgePair>>, SolveError> {
    let admissible = |e: &EdgePair| allowed.is_none_or(|a| a.contains(e));
    let red = reduce_with(&FillInInstance::new(g.clone(), budget), &admissible, true);
    stats.leaves += red.leaves.len();
    for leaf in red.leaves {
        if is_chordal(&leaf.graph) {
            return Ok(Some(leaf.forced));
        }
        let mut catalog = enumerate_vital_pmcs(&leaf.graph, leaf.k);
        if let Some(a) = allowed {
            let upper = leaf.graph.with_edges(a.iter().copied());
            catalog.retain(|p| upper.is_clique(&p.omega));
        }
        stats.pmcs += catalog.len();
        let mut table = DpTable::new(leaf.k);
        let value = mfi_root(&leaf.graph, &catalog, &mut table)?;
        stats.dp_states += table.len();
        if value > leaf.k {
            continue;
        }
        if let Some(sol) = reconstruct(&leaf.graph, &catalog, &mut table)? {
            let mut fill = leaf.forced;
            fill.extend(sol.fill);
            return Ok(Some(fill));
        }
    }
    Ok(None)
}
