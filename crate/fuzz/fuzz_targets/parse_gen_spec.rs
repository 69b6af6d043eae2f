//! Generator-spec parser: recipes must round-trip through emission. The
//! generator is not executed; a parsed `n` can be arbitrarily large and
//! running it is the caller's decision, not the parser's.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_gen_spec, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_gen_spec(text) {
        let back = parse_gen_spec(&to_json(&spec)).expect("emitted JSON reparses");
        assert_eq!(spec.kind, back.kind);
        assert_eq!(spec.start, back.start);
        assert_eq!(spec.step, back.step);
        assert_eq!(spec.ratio, back.ratio);
        assert_eq!(spec.n, back.n);
        assert_eq!(spec.seed, back.seed);
        assert_eq!(spec.range, back.range);
        assert_eq!(spec.values, back.values);
    }
});
