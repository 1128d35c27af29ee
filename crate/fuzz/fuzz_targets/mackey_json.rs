#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::mackey::{check_mackey_axioms, MackeyPresentation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = MackeyPresentation::from_json(text) {
        let report = check_mackey_axioms(&m);
        let again = MackeyPresentation::from_json(&m.to_json()).unwrap();
        assert_eq!(check_mackey_axioms(&again).pattern(), report.pattern());
    }
});
