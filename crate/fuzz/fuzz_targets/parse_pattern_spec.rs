#![no_main]

use libfuzzer_sys::fuzz_target;
use setramsey::patterns::{classify, generate};
use setramsey::PatternKind;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(kind) = spec.parse::<PatternKind>() {
        assert_eq!(kind.to_string().parse::<PatternKind>(), Ok(kind));
        if kind.order() <= 8 {
            let p = generate(kind);
            if !kind.is_template() {
                assert!(classify(&p).unwrap().contains(&kind));
            }
        }
    }
});
