#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::linalg::{parse_complex_matrix, parse_exact_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_complex_matrix(text);
    let _ = parse_exact_matrix(text);
});
