#![no_main]

use frobsat::{parse_polynomial, PolyRing};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ring = match selector % 3 {
        0 => PolyRing::standard(2, &["x", "y", "z"]).unwrap(),
        1 => PolyRing::new(7, [("x", 1), ("y", 2)]).unwrap(),
        _ => PolyRing::standard(65521, &["a", "b", "ab", "c_1"]).unwrap(),
    };
    if let Ok(f) = parse_polynomial(&ring, text) {
        // printed polynomials parse back to themselves
        let again = parse_polynomial(&ring, &f.to_text()).expect("printed polynomial must parse");
        assert_eq!(again, f);
    }
});
