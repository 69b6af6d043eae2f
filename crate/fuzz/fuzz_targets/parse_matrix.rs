//! Projective-transform parser: only invertible 3x3 rational matrices may
//! come back, and accepted ones must round-trip through emission and act
//! invertibly on points.

#![no_main]

use libfuzzer_sys::fuzz_target;

use affine_lab_core::codec::{parse_matrix, to_json};
use affine_lab_core::geometry::ProjPoint;
use affine_lab_core::rational::Rational;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = parse_matrix(text) {
        assert!(!t.det().is_zero());
        let back = parse_matrix(&to_json(&t)).expect("emitted JSON reparses");
        assert_eq!(t, back);

        let one = Rational::one();
        let p = ProjPoint::from_rationals(&one, &one, &one).unwrap();
        assert_eq!(t.inverse().apply_point(&t.apply_point(&p)), p);
    }
});
