#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::mackey::fixed_point_obstruction;
use realspin_core::scalar::parse_rational;
use realspin_core::scalar::rational::to_fraction_string;

fuzz_target!(|input: &str| {
    if let Ok(q) = parse_rational(input) {
        assert_eq!(parse_rational(&to_fraction_string(&q)).unwrap(), q);
        // Large denominators are refused, never looped over.
        let _ = fixed_point_obstruction(&q);
    }
});
