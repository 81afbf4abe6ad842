//! Fuzz the graph file parser. Accepted inputs must survive a write/parse
//! round trip unchanged; nothing may panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

use scfvc::graph::{parse_graph, write_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph(text) {
        let canonical = write_graph(&g);
        assert_eq!(parse_graph(&canonical).as_ref(), Ok(&g));
    }
});
