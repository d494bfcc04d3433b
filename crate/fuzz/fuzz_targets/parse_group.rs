#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 256 {
        if let Ok(text) = std::str::from_utf8(data) {
            let _ = oag_core::dsl::parse_group(text);
        }
    }
});
