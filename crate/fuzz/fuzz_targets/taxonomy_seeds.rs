#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::embed::read_taxonomy_seeds;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = read_taxonomy_seeds(text);
});
