#![no_main]

use chamberscope::CodeLine;
use libfuzzer_sys::fuzz_target;

// one line of `enumerate` output
fuzz_target!(|data: &[u8]| {
    if let Ok(line) = serde_json::from_slice::<CodeLine>(data) {
        let _ = chamberscope::GeneticCode::parse(&line.code, line.m);
    }
});
