#![no_main]

use libfuzzer_sys::fuzz_target;
use oag_core::dsl::{parse, print};

// Anything that parses must survive print then parse unchanged.
fuzz_target!(|text: &str| {
    if let Ok(script) = parse(text) {
        let printed = print(&script);
        let again = parse(&printed).expect("printed script reparses");
        assert_eq!(script, again);
    }
});
