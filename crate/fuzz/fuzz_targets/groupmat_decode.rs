#![no_main]

use chevfq::chevmat::GroupMat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = GroupMat::decode(data) {
        let again = GroupMat::decode(&g.encode()).expect("re-encoding decodes");
        assert_eq!(again, g);
    }
});
