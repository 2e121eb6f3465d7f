#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::similarity::read_auc_matrix_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = read_auc_matrix_csv(text);
});
