#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = cmlval::modforms::QSeries::from_golden(s) {
            let again = cmlval::modforms::QSeries::from_golden(&q.to_golden()).expect("rendered golden file parses");
            assert_eq!(again.to_golden(), q.to_golden());
        }
    }
});
