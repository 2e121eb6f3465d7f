#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::embed::{read_model_tsv, write_model_tsv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = read_model_tsv(text) {
        let again = read_model_tsv(&write_model_tsv(&model)).expect("written model parses");
        assert_eq!(model, again);
    }
});
