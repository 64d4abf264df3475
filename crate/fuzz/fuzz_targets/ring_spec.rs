#![no_main]

use chevfq::ffring::RingHandle;
use libfuzzer_sys::fuzz_target;

// A spec, optionally followed by `|` and an element in coefficient-list form.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (spec, elem) = s.split_once('|').unwrap_or((s, ""));
    if let Ok(r) = RingHandle::parse(spec) {
        let again = RingHandle::parse(&r.spec()).expect("canonical spec parses");
        assert_eq!(again.spec(), r.spec());
        if let Ok(x) = r.parse_elem(elem) {
            assert_eq!(r.reduce(x.poly()), *x.poly());
        }
    }
});
