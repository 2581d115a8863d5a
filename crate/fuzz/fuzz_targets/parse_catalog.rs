#![no_main]
use libfuzzer_sys::fuzz_target;

use fillin::graph::Graph;
use fillin::pmc::{verify_pmc, PmcCatalog};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // C6 with one chord: has PMCs of several sizes
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    if let Ok(cat) = PmcCatalog::from_text(&g, 3, text) {
        for omega in cat.omegas() {
            assert!(verify_pmc(&g, omega).is_some());
        }
        let again = PmcCatalog::from_text(&g, 3, &cat.to_text()).unwrap();
        assert_eq!(again.len(), cat.len());
    }
});
