//! Scalar-set parser: arbitrary bytes must never panic, and anything that
//! parses must survive an emit/reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_scalar_set, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_scalar_set(text) {
        let back = parse_scalar_set(&to_json(&set)).expect("emitted JSON reparses");
        assert_eq!(set, back);
    }
});
