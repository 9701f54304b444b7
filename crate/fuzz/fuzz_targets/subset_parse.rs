#![no_main]

use chamberscope::Subset;
use libfuzzer_sys::fuzz_target;

// first byte picks m, the rest is the text
fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else { return };
    let m = 3 + m % 14;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(s) = Subset::parse(text, m) {
        assert_eq!(Subset::parse(&s.to_string(), m).unwrap(), s);
    }
});
