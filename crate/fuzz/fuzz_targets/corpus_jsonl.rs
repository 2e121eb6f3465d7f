#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::embed::read_corpus_jsonl;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = read_corpus_jsonl(text);
});
