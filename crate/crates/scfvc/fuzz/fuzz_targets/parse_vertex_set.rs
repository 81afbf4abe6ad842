#![no_main]

use libfuzzer_sys::fuzz_target;

use scfvc::graph::parse_vertex_set;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_vertex_set(text, 100) {
        assert!(set.windows(2).all(|w| w[0] < w[1]));
        assert!(set.iter().all(|&v| v < 100));
    }
});
