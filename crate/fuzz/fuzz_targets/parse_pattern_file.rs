#![no_main]

use libfuzzer_sys::fuzz_target;
use setramsey::embed::find_embedding;
use setramsey::{PatternMatrix, SetFamily};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = PatternMatrix::parse(text) else {
        return;
    };
    let again = PatternMatrix::parse(&p.lines().join("\n")).expect("printed pattern parses");
    assert_eq!(again, p);
    // any occurrence in the full power set of [4] must check out
    if p.rows() <= 4 && p.cols() <= 3 {
        let all = SetFamily::new(4, (0..16).collect()).unwrap();
        if let Some(e) = find_embedding(&all, &p) {
            assert!(e.verify(&all, &p));
        }
    }
});
