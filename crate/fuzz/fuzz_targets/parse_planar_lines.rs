//! Planar line-set parser, which accepts coefficient triples and affine
//! objects in the same array. The all-zero triple must be rejected and the
//! normalized emission must reparse to the same sorted set.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_planar_lines, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_planar_lines(text) {
        let back = parse_planar_lines(&to_json(&lines)).expect("emitted JSON reparses");
        assert_eq!(lines, back);
    }
});
