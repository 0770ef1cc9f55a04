//! Serialization round trips on random planted bicomplexes.

mod common;

use proptest::prelude::*;
use simptot::io::{parse_document, to_canonical_string, Document};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bicomplexes_round_trip(seed in any::<u64>()) {
        let planted = common::random_planted(seed, 3, 4);
        let doc = Document::Bicomplex(planted.bicomplex.clone());
        let text = to_canonical_string(&doc);
        let again = parse_document(&text).unwrap();
        prop_assert_eq!(to_canonical_string(&again), text);
        let Document::Bicomplex(b) = again else { panic!("kind changed") };
        prop_assert_eq!(b.totalize().total().betti_numbers(), planted.bicomplex.totalize().total().betti_numbers());
    }
}
