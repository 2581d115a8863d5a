//! Potential maximal cliques: recognition, quasi-clique enumeration, and
//! enumeration of the vital ones (those missing at most `k` edges).

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt::Write as _;

use thiserror::Error;

use crate::chordal::{maximal_cliques_chordal, minimal_separators_chordal, minimal_triangulation};
use crate::graph::{Graph, VertexSet};

/// `⌈√k⌉`, the single rounding of the square-root thresholds used by both
/// branching and enumeration.
pub fn sqrt_threshold(k: usize) -> usize {
    let mut t = (k as f64).sqrt() as usize;
    while t * t < k {
        t += 1;
    }
    while t > 0 && (t - 1) * (t - 1) >= k {
        t -= 1;
    }
    t
}

pub fn full_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    g.full_components(s)
}

pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    g.full_components(s).len() >= 2
}

/// A verified potential maximal clique together with the minimal
/// separators it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmc {
    pub omega: VertexSet,
    /// Distinct neighborhoods of the components of `G \ omega`, ascending.
    pub separators: Vec<VertexSet>,
    pub fill: usize,
}

/// Returns the PMC certificate for `omega` iff no component of
/// `G \ omega` is full for `omega` and completing every component
/// neighborhood turns `G[omega]` into a clique.
pub fn verify_pmc(g: &Graph, omega: &VertexSet) -> Option<Pmc> {
    if omega.is_empty() {
        return None;
    }
    let mut separators = Vec::new();
    for c in g.components(omega) {
        let s = g.neighborhood(&c);
        if s == *omega {
            return None;
        }
        separators.push(s);
    }
    separators.sort();
    separators.dedup();

    for x in omega.iter() {
        let mut covered = g.neighbors(x).intersection(omega);
        for s in separators.iter().filter(|s| s.contains(x)) {
            covered.union_with(s);
        }
        covered.insert(x);
        if !omega.is_subset(&covered) {
            return None;
        }
    }
    Some(Pmc {
        omega: omega.clone(),
        separators,
        fill: g.fill_count(omega),
    })
}

pub fn is_vital(g: &Graph, omega: &VertexSet, k: usize) -> bool {
    g.fill_count(omega) <= k
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {set:?} is not a potential maximal clique")]
    NotPmc { line: usize, set: Vec<usize> },
    #[error("line {line}: {set:?} needs more than {budget} fill edges")]
    NotVital {
        line: usize,
        set: Vec<usize>,
        budget: usize,
    },
}

/// Deduplicated set of PMCs of one graph, keyed by canonical vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmcCatalog {
    entries: BTreeMap<VertexSet, Pmc>,
    budget: usize,
    fingerprint: u64,
}

impl PmcCatalog {
    pub fn new(g: &Graph, budget: usize) -> Self {
        PmcCatalog {
            entries: BTreeMap::new(),
            budget,
            fingerprint: g.fingerprint(),
        }
    }

    /// Idempotent insert. Returns whether the entry was new.
    pub fn insert(&mut self, pmc: Pmc) -> bool {
        match self.entries.entry(pmc.omega.clone()) {
            Entry::Vacant(e) => {
                e.insert(pmc);
                true
            }
            Entry::Occupied(_) => false,
        }
    }

    pub fn contains(&self, omega: &VertexSet) -> bool {
        self.entries.contains_key(omega)
    }

    pub fn get(&self, omega: &VertexSet) -> Option<&Pmc> {
        self.entries.get(omega)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Entries in ascending canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Pmc> {
        self.entries.values()
    }

    pub fn omegas(&self) -> impl Iterator<Item = &VertexSet> {
        self.entries.keys()
    }

    /// Keeps only the entries satisfying `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&Pmc) -> bool) {
        self.entries.retain(|_, p| keep(p));
    }

    /// One PMC per line, ascending vertex ids separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for omega in self.entries.keys() {
            let ids: Vec<String> = omega.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", ids.join(" "));
        }
        out
    }

    /// Parses the line format of [`PmcCatalog::to_text`], re-verifying every
    /// line against `g` and the vitality budget. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_text(g: &Graph, budget: usize, text: &str) -> Result<Self, CatalogError> {
        let mut catalog = PmcCatalog::new(g, budget);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut ids = Vec::new();
            for tok in trimmed.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| CatalogError::Parse {
                    line,
                    msg: format!("invalid vertex id {tok:?}"),
                })?;
                if v >= g.n() {
                    return Err(CatalogError::Parse {
                        line,
                        msg: format!("vertex {v} out of range"),
                    });
                }
                if ids.last().is_some_and(|&last| last >= v) {
                    return Err(CatalogError::Parse {
                        line,
                        msg: "vertex ids must be strictly increasing".into(),
                    });
                }
                ids.push(v);
            }
            let omega: VertexSet = ids.iter().copied().collect();
            let pmc = verify_pmc(g, &omega).ok_or(CatalogError::NotPmc {
                line,
                set: ids.clone(),
            })?;
            if pmc.fill > budget {
                return Err(CatalogError::NotVital {
                    line,
                    set: ids,
                    budget,
                });
            }
            catalog.insert(pmc);
        }
        Ok(catalog)
    }
}

/// Calls `visit` on every subset of `pool` of size at most `max_size`, in
/// lexicographic order of ascending member lists, without materialising
/// the family. `prune(set)` returning true skips `set` and all supersets
/// reached from it.
fn for_each_subset(
    pool: &[usize],
    max_size: usize,
    prune: &mut dyn FnMut(&VertexSet) -> bool,
    visit: &mut dyn FnMut(&VertexSet),
) {
    fn walk(
        pool: &[usize],
        start: usize,
        max_size: usize,
        current: &mut VertexSet,
        depth: usize,
        prune: &mut dyn FnMut(&VertexSet) -> bool,
        visit: &mut dyn FnMut(&VertexSet),
    ) {
        if prune(current) {
            return;
        }
        visit(current);
        if depth == max_size {
            return;
        }
        for i in start..pool.len() {
            current.insert(pool[i]);
            walk(pool, i + 1, max_size, current, depth + 1, prune, visit);
            current.remove(pool[i]);
        }
    }
    walk(pool, 0, max_size, &mut VertexSet::new(), 0, prune, visit);
}

/// Quasi-clique candidates of `g` for one removal set `z`, reported through
/// `emit` before verification.
fn quasi_clique_candidates(g: &Graph, z: &VertexSet, emit: &mut dyn FnMut(VertexSet)) {
    // X = Ω \ Z empty: Ω = Z itself.
    if !z.is_empty() {
        emit(z.clone());
    }
    let rest = g.vertices().difference(z);
    if rest.is_empty() {
        return;
    }
    let (sub, map) = g.induced(&rest);
    let h = minimal_triangulation(&sub).result;
    let lift = |s: &VertexSet| -> VertexSet { s.iter().map(|i| map[i]).collect() };

    // At least two full components: X is a clique minimal separator of G \ Z.
    for s in minimal_separators_chordal(&h).expect("triangulation is chordal") {
        let s = lift(&s);
        if !s.is_empty() && g.is_clique(&s) {
            emit(s.union(z));
        }
    }
    let cliques: Vec<VertexSet> = maximal_cliques_chordal(&h)
        .expect("triangulation is chordal")
        .iter()
        .map(lift)
        .collect();
    for k in &cliques {
        // No full component: X is a maximal clique of the triangulation.
        if g.is_clique(k) {
            emit(k.union(z));
        }
        // Exactly one full component: Ω = N(Y) ∪ {y}.
        let kz = k.union(z);
        let comps = g.components(&kz);
        for y in z.iter() {
            let mut big_y = VertexSet::singleton(y);
            for b in comps.iter().filter(|b| b.iter().any(|x| g.has_edge(x, y))) {
                big_y.union_with(b);
            }
            let mut omega = g.neighborhood(&big_y);
            omega.insert(y);
            emit(omega);
        }
    }
}

fn quasi_cliques_into(
    g: &Graph,
    k: usize,
    z_filter: &mut dyn FnMut(&VertexSet) -> bool,
    accept: &mut dyn FnMut(VertexSet),
) {
    let t = sqrt_threshold(k);
    let pool: Vec<usize> = (0..g.n()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut prune = |z: &VertexSet| !z_filter(z);
    let mut visit = |z: &VertexSet| {
        quasi_clique_candidates(g, z, &mut |cand| {
            if seen.insert(cand.clone()) {
                accept(cand);
            }
        });
    };
    for_each_subset(&pool, 5 * t, &mut prune, &mut visit);
}

/// Every PMC `Ω` of `g` for which some `Z ⊆ Ω` with `|Z| ≤ 5⌈√k⌉` leaves
/// `Ω \ Z` a clique. The catalog budget is `k`, but entries are not
/// filtered by vitality.
pub fn enumerate_quasi_cliques(g: &Graph, k: usize) -> PmcCatalog {
    let mut catalog = PmcCatalog::new(g, k);
    quasi_cliques_into(g, k, &mut |_| true, &mut |cand| {
        if let Some(p) = verify_pmc(g, &cand) {
            catalog.insert(p);
        }
    });
    catalog
}

/// All vital PMCs of a non-reducible instance `(g, k)`.
///
/// Union of three sources: small vertex subsets (size `≤ 5t + 2`),
/// quasi-cliques of `g`, and for each vertex `w` the quasi-cliques of `g`
/// with `N(w)` completed. Every candidate is re-verified on `g`. Removal
/// sets `Z` are only expanded while `fill_G(Z) ≤ k`, since `Z ⊆ Ω` and
/// fill is monotone under inclusion.
pub fn enumerate_vital_pmcs(g: &Graph, k: usize) -> PmcCatalog {
    let mut catalog = PmcCatalog::new(g, k);
    if k == 0 {
        // A vital PMC for k = 0 is a clique, and non-reducible k = 0
        // instances are chordal.
        if let Ok(cliques) = maximal_cliques_chordal(g) {
            for c in cliques {
                if let Some(p) = verify_pmc(g, &c) {
                    catalog.insert(p);
                }
            }
        }
        return catalog;
    }
    let t = sqrt_threshold(k);
    let small = 5 * t + 2;
    let pool: Vec<usize> = (0..g.n()).collect();

    for_each_subset(&pool, small, &mut |s| g.fill_count(s) > k, &mut |s| {
        if let Some(p) = verify_pmc(g, s) {
            catalog.insert(p);
        }
    });
    if g.n() <= small {
        // every vertex subset has been tried
        return catalog;
    }

    let mut z_filter = |z: &VertexSet| g.fill_count(z) <= k;
    let try_insert = |cand: VertexSet, catalog: &mut PmcCatalog| {
        if !catalog.contains(&cand) && is_vital(g, &cand, k) {
            if let Some(p) = verify_pmc(g, &cand) {
                catalog.insert(p);
            }
        }
    };
    quasi_cliques_into(g, k, &mut z_filter, &mut |cand| {
        try_insert(cand, &mut catalog)
    });
    for w in 0..g.n() {
        let h = g.complete_set(g.neighbors(w));
        quasi_cliques_into(&h, k, &mut z_filter, &mut |cand| {
            try_insert(cand, &mut catalog)
        });
    }
    catalog
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgePair;

    fn set<const N: usize>(vs: [usize; N]) -> VertexSet {
        VertexSet::from(vs)
    }

    fn omegas(c: &PmcCatalog) -> Vec<VertexSet> {
        c.omegas().cloned().collect()
    }

    fn c4_triples() -> Vec<VertexSet> {
        vec![
            set([0, 1, 2]),
            set([0, 1, 3]),
            set([0, 2, 3]),
            set([1, 2, 3]),
        ]
    }

    #[test]
    fn threshold_rounding() {
        let got: Vec<usize> = (0..=10).map(sqrt_threshold).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn full_component_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(full_components(&c4, &set([0, 2])), vec![set([1]), set([3])]);
        assert_eq!(full_components(&c4, &set([0])), vec![set([1, 2, 3])]);
        let k4 = Graph::complete(4);
        assert_eq!(full_components(&k4, &set([0, 1])), vec![set([2, 3])]);
    }

    #[test]
    fn minimal_separator_examples() {
        let c4 = Graph::cycle(4);
        assert!(is_minimal_separator(&c4, &set([0, 2])));
        assert!(!is_minimal_separator(&c4, &set([0])));
        let k4 = Graph::complete(4);
        assert!(!is_minimal_separator(&k4, &set([0, 1])));
        assert!(!is_minimal_separator(&k4, &set([3])));
    }

    #[test]
    fn verify_pmc_examples() {
        let c4 = Graph::cycle(4);
        let p = verify_pmc(&c4, &set([0, 1, 2])).unwrap();
        assert_eq!(p.separators, vec![set([0, 2])]);
        assert_eq!(p.fill, 1);
        assert_eq!(verify_pmc(&c4, &set([0, 2])), None);
        let k4 = Graph::complete(4);
        let p = verify_pmc(&k4, &k4.vertices()).unwrap();
        assert!(p.separators.is_empty());
        // whole vertex set of a non-complete graph
        assert_eq!(verify_pmc(&c4, &c4.vertices()), None);
        assert_eq!(verify_pmc(&c4, &VertexSet::new()), None);
    }

    #[test]
    fn vitality_examples() {
        let k4 = Graph::complete(4);
        assert!(is_vital(&k4, &k4.vertices(), 0));
        let c4 = Graph::cycle(4);
        assert!(!is_vital(&c4, &set([0, 1, 2]), 0));
        assert!(is_vital(&c4, &set([0, 1, 2]), 1));
    }

    #[test]
    fn quasi_clique_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(omegas(&enumerate_quasi_cliques(&c4, 1)), c4_triples());
        let k4 = Graph::complete(4);
        for k in 0..4 {
            assert_eq!(
                omegas(&enumerate_quasi_cliques(&k4, k)),
                vec![k4.vertices()]
            );
        }
        assert_eq!(
            omegas(&enumerate_quasi_cliques(&Graph::path(3), 0)),
            vec![set([0, 1]), set([1, 2])]
        );
    }

    #[test]
    fn vital_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(omegas(&enumerate_vital_pmcs(&c4, 1)), c4_triples());
        assert!(enumerate_vital_pmcs(&c4, 0).is_empty());
        let g = Graph::cycle(4).with_edges([EdgePair::new(0, 2)]);
        assert_eq!(
            omegas(&enumerate_vital_pmcs(&g, 0)),
            vec![set([0, 1, 2]), set([0, 2, 3])]
        );
    }

    #[test]
    fn catalog_text_round_trip() {
        let c4 = Graph::cycle(4);
        let cat = enumerate_vital_pmcs(&c4, 1);
        let text = cat.to_text();
        assert_eq!(text, "0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
        assert_eq!(PmcCatalog::from_text(&c4, 1, &text).unwrap(), cat);
    }

    #[test]
    fn catalog_import_errors() {
        let c4 = Graph::cycle(4);
        assert!(matches!(
            PmcCatalog::from_text(&c4, 1, "0 2\n"),
            Err(CatalogError::NotPmc { line: 1, .. })
        ));
        assert!(matches!(
            PmcCatalog::from_text(&c4, 0, "# c\n0 1 2\n"),
            Err(CatalogError::NotVital { line: 2, .. })
        ));
        assert!(matches!(
            PmcCatalog::from_text(&c4, 1, "2 1 0\n"),
            Err(CatalogError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            PmcCatalog::from_text(&c4, 1, "0 1 9\n"),
            Err(CatalogError::Parse { .. })
        ));
        assert!(matches!(
            PmcCatalog::from_text(&c4, 1, "0 x\n"),
            Err(CatalogError::Parse { .. })
        ));
    }
}
