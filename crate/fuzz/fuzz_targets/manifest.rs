#![no_main]

use libfuzzer_sys::fuzz_target;
use placenet::manifest::{read_manifest, write_manifest};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = read_manifest(text) {
        let again = read_manifest(&write_manifest(&entries)).expect("written manifest parses");
        assert_eq!(entries, again);
    }
});
