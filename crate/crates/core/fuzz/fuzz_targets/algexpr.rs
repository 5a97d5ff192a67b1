#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = cmlval::numerics::algexpr::parse(s) {
            let _ = cmlval::numerics::algexpr::eval_complex(&e, 64);
            let _ = cmlval::numerics::algexpr::eval_rational(&e);
        }
    }
});
