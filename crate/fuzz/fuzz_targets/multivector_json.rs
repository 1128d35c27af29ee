#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::clifford::{multivector_to_json, parse_multivector_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_multivector_json(text) {
        assert_eq!(parse_multivector_json(&multivector_to_json(&x).to_string()).unwrap(), x);
    }
});
