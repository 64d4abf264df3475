#![no_main]

use chevfq::wordnorm::NormCache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = NormCache::decode(data) {
        assert_eq!(c.encode(), data);
    }
});
