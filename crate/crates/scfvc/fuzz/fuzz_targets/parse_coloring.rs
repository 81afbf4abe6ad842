#![no_main]

use libfuzzer_sys::fuzz_target;

use scfvc::verify::{parse_coloring, write_coloring};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_coloring(text) {
        assert!(f.assignment.iter().all(|&c| c < f.k));
        let canonical = write_coloring(&f);
        assert_eq!(parse_coloring(&canonical).as_ref(), Ok(&f));
    }
});
