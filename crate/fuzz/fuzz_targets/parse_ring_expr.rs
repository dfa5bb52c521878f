#![no_main]

use libfuzzer_sys::fuzz_target;
use workbench_core::spec::parse_ring_expr;
use workbench_core::Guards;

fuzz_target!(|data: &[u8]| {
    // The builtin-name expression parser must reject bad input with an
    // error, never panic.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_ring_expr(text, &Guards::default());
    }
});
