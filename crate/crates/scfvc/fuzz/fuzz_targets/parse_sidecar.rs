//! Fuzz the reduction sidecar path: JSON deserialization plus the structural
//! validation that ties a sidecar to a graph.

#![no_main]

use libfuzzer_sys::fuzz_target;

use scfvc::fixtures::sample_formula;
use scfvc::reduce::{build_reduction_vc, ReductionArtifact, ReductionSidecar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(sidecar) = serde_json::from_str::<ReductionSidecar>(text) else { return };
    let graph = build_reduction_vc(&sample_formula()).unwrap().graph;
    // Must reject or accept cleanly, never panic.
    let _ = ReductionArtifact::from_graph_and_sidecar(graph, &sidecar);
});
