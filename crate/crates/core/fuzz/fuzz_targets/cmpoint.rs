#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = cmlval::numerics::CMPoint::parse(s) {
            let _ = p.value(64);
        }
    }
});
