#![no_main]

use libfuzzer_sys::fuzz_target;

use scfvc::reduce::{parse_cnf, write_cnf};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cnf) = parse_cnf(text) {
        // Parsed formulas satisfy the type invariants ...
        for clause in &cnf.clauses {
            assert!(!clause.is_empty());
            assert!(clause.windows(2).all(|w| w[0] < w[1]));
            assert!(clause.iter().all(|&v| v < cnf.num_vars));
        }
        // ... and survive a round trip.
        assert_eq!(parse_cnf(&write_cnf(&cnf)).as_ref(), Ok(&cnf));
    }
});
