#![no_main]

use libfuzzer_sys::fuzz_target;
use realspin_core::genus::{ahat_genus, CharClassData};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = CharClassData::from_json(text) {
        assert_eq!(CharClassData::from_json(&d.to_json().to_string()).unwrap(), d);
        let _ = ahat_genus(&d);
    }
});
