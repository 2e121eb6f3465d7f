#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::features::read_feature_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = read_feature_csv(text);
});
