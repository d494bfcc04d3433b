#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = oag_core::dsl::parse_set_literal(text);
});
