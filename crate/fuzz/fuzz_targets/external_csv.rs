#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::prevalence::read_external_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = read_external_csv(text);
});
