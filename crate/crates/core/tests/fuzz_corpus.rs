//! Runs the fuzz seed corpus through the parsers with the fuzz targets'
//! assertions, so the seeds stay meaningful on stable.

use std::fs;
use std::path::PathBuf;

use fillin::graph::Graph;
use fillin::io::{parse_graph, parse_input, write_dimacs, write_edge_list};
use fillin::pmc::{verify_pmc, PmcCatalog};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_graph") {
        if let Ok(g) = parse_graph(&text) {
            accepted += 1;
            assert_eq!(parse_graph(&write_edge_list(&g)).unwrap(), g, "{name}");
            assert_eq!(parse_graph(&write_dimacs(&g)).unwrap(), g, "{name}");
        }
    }
    assert_eq!(accepted, 5);
}

#[test]
fn section_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_sections") {
        let input = parse_input(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Ok(allowed) = input.allowed_pairs() {
            parsed += 1;
            assert!(
                allowed.iter().all(|e| !input.graph.has_edge(e.u, e.v)),
                "{name}"
            );
        }
        if let Ok(col) = input.coloring() {
            parsed += 1;
            assert_eq!(col.len(), input.graph.n(), "{name}");
        }
        if let Ok(b) = input.bipartite() {
            parsed += 1;
            assert_eq!(b.n(), input.graph.n(), "{name}");
        }
    }
    assert_eq!(parsed, 4);
}

#[test]
fn catalog_seeds() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    let mut accepted = 0;
    for (name, text) in seeds("parse_catalog") {
        if let Ok(cat) = PmcCatalog::from_text(&g, 3, &text) {
            accepted += 1;
            assert!(cat.omegas().all(|o| verify_pmc(&g, o).is_some()), "{name}");
            let again = PmcCatalog::from_text(&g, 3, &cat.to_text()).unwrap();
            assert_eq!(again.len(), cat.len(), "{name}");
        }
    }
    assert_eq!(accepted, 2);
}
