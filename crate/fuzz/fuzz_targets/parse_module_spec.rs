#![no_main]

use libfuzzer_sys::fuzz_target;
use workbench_core::spec::parse_module_spec;
use workbench_core::Guards;

fuzz_target!(|data: &[u8]| {
    // The JSON module-spec parser must reject bad input with an error,
    // never panic or overflow.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_module_spec(text, &Guards::default());
    }
});
