//! Affine line-set parser: slopes must come back nonzero, duplicates must
//! collapse, and emitted JSON must reparse to the same set.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_affine_lines, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_affine_lines(text) {
        assert!(lines.iter().all(|l| !l.slope().is_zero()));
        let back = parse_affine_lines(&to_json(&lines)).expect("emitted JSON reparses");
        assert_eq!(lines, back);
    }
});
