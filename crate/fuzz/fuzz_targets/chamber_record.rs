#![no_main]

use chamberscope::realize::ChamberRecord;
use libfuzzer_sys::fuzz_target;

// one line of `realize` or `invariants` output
fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<ChamberRecord>(data) {
        let text = serde_json::to_string(&r).unwrap();
        let back: ChamberRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
});
