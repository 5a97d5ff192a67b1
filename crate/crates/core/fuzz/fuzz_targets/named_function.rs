#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = s.parse::<cmlval::modforms::NamedFunction>() {
            assert_eq!(f.to_string().parse::<cmlval::modforms::NamedFunction>().ok(), Some(f));
        }
    }
});
