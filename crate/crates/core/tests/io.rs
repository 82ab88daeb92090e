use proptest::prelude::*;

use skewper::classify::{instance, InstanceKey};
use skewper::io::{parse_any, parse_json, parse_psts, write_dot, write_json, write_psts};
use skewper::{Config, Error};

/// Random partial Steiner triple systems: greedy insertion of random triples.
fn random_psts() -> impl Strategy<Value = Config> {
    (3usize..16, prop::collection::vec(prop::array::uniform3(0usize..16), 0..40)).prop_map(|(nu, triples)| {
        let mut kept: Vec<[usize; 3]> = Vec::new();
        for t in triples.into_iter().map(|t| t.map(|x| x % nu)) {
            let mut cand = kept.clone();
            cand.push(t);
            if Config::from_triples(nu, &cand).validate().is_ok() {
                kept = cand;
            }
        }
        Config::from_triples(nu, &kept)
    })
}

fn labelled(c: Config, names: Vec<String>) -> Config {
    let labels = (0..c.num_points()).map(|k| format!("{}#{k}", names[k % names.len()])).collect();
    c.with_labels(labels)
}

fn names() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-z{}^0-9,]([a-z {}^0-9,]{0,6}[a-z{}^0-9,])?", 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn psts_round_trip(c in random_psts(), names in names(), with_labels: bool) {
        let c = if with_labels { labelled(c, names) } else { c };
        let text = write_psts(&c);
        let back = parse_psts(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_psts(&back), text);
    }

    #[test]
    fn json_round_trip(c in random_psts(), names in names()) {
        let c = labelled(c, names);
        let text = write_json(&c);
        prop_assert_eq!(parse_json(&text).unwrap(), c.clone());
        prop_assert_eq!(write_json(&parse_any(&text).unwrap()), text);
    }

    #[test]
    fn parser_never_panics(text in "[psts0-9 #\\n]{0,80}") {
        let _ = parse_psts(&text);
    }
}

#[test]
fn exports_are_deterministic() {
    for key in [InstanceKey::new(4, 5, 3).unwrap(), InstanceKey::new(8, 6, 15).unwrap()] {
        let c = &instance(key).config;
        assert_eq!(write_dot(c), write_dot(&c.clone()));
        assert_eq!(write_psts(c), write_psts(&parse_psts(&write_psts(c)).unwrap()));
        assert_eq!(write_dot(c).matches(" -- ").count(), 60);
    }
}

#[test]
fn header_mismatch_is_reported() {
    let err = parse_psts("psts 4 2\n0 1 2\n").unwrap_err();
    assert!(matches!(err, Error::Parse { .. }), "{err}");
}
