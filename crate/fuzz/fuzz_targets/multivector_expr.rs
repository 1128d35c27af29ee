#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::clifford::{parse_multivector, Signature};

// The first two bytes pick `p` and `q`; the rest is the expression.
fuzz_target!(|data: &[u8]| {
    let [p, q, rest @ ..] = data else { return };
    let Ok(input) = std::str::from_utf8(rest) else { return };
    let Ok(sig) = Signature::new(usize::from(p % 7), usize::from(q % 7)) else { return };
    if let Ok(x) = parse_multivector(sig, input) {
        // Display output is valid parser input.
        assert_eq!(parse_multivector(sig, &x.to_string()).unwrap(), x);
    }
});
