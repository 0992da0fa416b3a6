#![no_main]

use libfuzzer_sys::fuzz_target;
use setramsey::SetFamily;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(family) = SetFamily::parse(text) {
        let again = SetFamily::parse(&family.render()).expect("rendered family parses");
        assert_eq!(again, family);
        assert_eq!(family.complement().complement(), family);
    }
});
