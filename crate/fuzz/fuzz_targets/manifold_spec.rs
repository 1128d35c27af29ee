#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::genus::ManifoldSpec;

fuzz_target!(|input: &str| {
    if let Ok(m) = ManifoldSpec::parse(input) {
        assert_eq!(ManifoldSpec::parse(&m.to_string()).unwrap(), m);
        let _ = m.data();
    }
});
