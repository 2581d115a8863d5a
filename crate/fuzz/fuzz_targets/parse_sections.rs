#![no_main]
use libfuzzer_sys::fuzz_target;

use fillin::io::parse_input;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(input) = parse_input(text) else {
        return;
    };
    if let Ok(allowed) = input.allowed_pairs() {
        for e in allowed {
            assert!(e.v < input.graph.n());
            assert!(!input.graph.has_edge(e.u, e.v));
        }
    }
    if let Ok(col) = input.coloring() {
        assert_eq!(col.len(), input.graph.n());
    }
    if let Ok(b) = input.bipartite() {
        assert_eq!(b.n(), input.graph.n());
    }
});
