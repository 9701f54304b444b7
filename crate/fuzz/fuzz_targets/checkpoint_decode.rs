#![no_main]

use chamberscope::pipeline::Checkpoint;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = Checkpoint::decode(data);
});
