//! The fuzz targets' checks, run on the checked-in corpus and on random
//! inputs so they are exercised on stable toolchains too.

use std::fs;
use std::path::PathBuf;

use chevfq::chevmat::GroupMat;
use chevfq::ffring::RingHandle;
use chevfq::rootdata::parse_sign_table;
use chevfq::wordnorm::NormCache;
use proptest::prelude::*;

fn ring_spec(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (spec, elem) = s.split_once('|').unwrap_or((s, ""));
    if let Ok(r) = RingHandle::parse(spec) {
        let again = RingHandle::parse(&r.spec()).expect("canonical spec parses");
        assert_eq!(again.spec(), r.spec());
        if let Ok(x) = r.parse_elem(elem) {
            assert_eq!(r.reduce(x.poly()), *x.poly());
        }
    }
}

fn groupmat(data: &[u8]) {
    if let Ok(g) = GroupMat::decode(data) {
        assert_eq!(GroupMat::decode(&g.encode()).expect("re-encoding decodes"), g);
    }
}

fn sign_table(data: &[u8]) {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_sign_table(s);
    }
}

fn norm_cache(data: &[u8]) {
    if let Ok(c) = NormCache::decode(data) {
        assert_eq!(c.encode(), data);
    }
}

fn corpus(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn corpus_seeds() {
    for (_, d) in corpus("ring_spec") {
        ring_spec(&d);
    }
    for (_, d) in corpus("sign_table") {
        sign_table(&d);
    }
    for (name, d) in corpus("groupmat_decode") {
        assert!(GroupMat::decode(&d).is_ok(), "seed {name} should decode");
        groupmat(&d);
    }
    for (name, d) in corpus("norm_cache") {
        assert!(NormCache::decode(&d).is_ok(), "seed {name} should decode");
        norm_cache(&d);
    }
    let golden = corpus("sign_table").into_iter().find(|(n, _)| n == "golden").unwrap().1;
    assert!(parse_sign_table(std::str::from_utf8(&golden).unwrap()).is_ok());
}

#[test]
fn corrupted_seeds_are_rejected() {
    for (_, mut d) in corpus("norm_cache") {
        let last = d.len() - 1;
        d[last] ^= 1;
        assert!(NormCache::decode(&d).is_err());
    }
    for (_, d) in corpus("groupmat_decode") {
        for cut in 0..d.len() {
            groupmat(&d[..cut]);
        }
    }
}

proptest! {
    #[test]
    fn arbitrary_bytes_never_panic(data in proptest::collection::vec(any::<u8>(), 0..256)) {
        ring_spec(&data);
        groupmat(&data);
        sign_table(&data);
        norm_cache(&data);
    }

    #[test]
    fn mutated_seeds_never_panic(i in 0usize..3, pos in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let seeds = corpus("groupmat_decode");
        let mut d = seeds[i % seeds.len()].1.clone();
        let p = pos.index(d.len());
        d[p] = byte;
        groupmat(&d);
    }

    #[test]
    fn spec_like_strings_never_panic(s in r"GF\([0-9]{1,3}\)(\[T\](/\(([0-9:]{1,3},){0,4}[0-9]{1,2}\))?)?\|([0-9:]{1,3},){0,4}[0-9]{0,2}") {
        ring_spec(s.as_bytes());
    }
}
