//! Point-set parser, both accepted shapes (grid object and point list).
//! Grid inputs multiply out to |a|*|b| points, so the harness caps the
//! input size to keep materialization inside the runner's memory limits.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_point_set, to_json};

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_point_set(text) {
        if let Some((a, b)) = set.grid() {
            assert_eq!(set.len(), a.len() * b.len());
        }
        let points = set.points().to_vec();
        let back = parse_point_set(&to_json(&points)).expect("emitted JSON reparses");
        assert_eq!(set.points(), back.points());
    }
});
