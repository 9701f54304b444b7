#![no_main]

use chamberscope::GeneticCode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else { return };
    let m = 3 + m % 14;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(c) = GeneticCode::parse(text, m) {
        assert_eq!(GeneticCode::parse(&c.to_string(), m).unwrap(), c);
        let _ = c.short_family();
    }
});
