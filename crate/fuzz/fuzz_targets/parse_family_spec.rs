//! Family-spec parser: the recipe must round-trip through emission. The
//! family itself is not built here; construction cost scales with |c|*|d|
//! and belongs to the library tests, not the parser harness.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_family_spec, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_family_spec(text) {
        let back = parse_family_spec(&to_json(&spec)).expect("emitted JSON reparses");
        assert_eq!(spec.kind, back.kind);
        assert_eq!(spec.c, back.c);
        assert_eq!(spec.d, back.d);
        assert_eq!(spec.lambda, back.lambda);
        assert_eq!(spec.mu, back.mu);
    }
});
