#![no_main]
use libfuzzer_sys::fuzz_target;

use fillin::io::{parse_graph, write_dimacs, write_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph(text) {
        // anything accepted must survive a round trip
        assert_eq!(parse_graph(&write_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_graph(&write_dimacs(&g)).unwrap(), g);
    }
});
