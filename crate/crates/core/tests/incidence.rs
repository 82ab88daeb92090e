use proptest::prelude::*;

use skewper::constructions::{grassmannian, veronesian};
use skewper::{Config, Line, PointId};

fn brute_force_valid(nu: usize, triples: &[[usize; 3]]) -> bool {
    let distinct = |t: &[usize; 3]| t[0] != t[1] && t[0] != t[2] && t[1] != t[2];
    if triples.iter().any(|t| !distinct(t) || t.iter().any(|&x| x >= nu)) {
        return false;
    }
    for (k, s) in triples.iter().enumerate() {
        for t in &triples[k + 1..] {
            if s.iter().filter(|x| t.contains(x)).count() > 1 {
                return false;
            }
        }
    }
    true
}

fn random_triples(nu: usize, max_lines: usize) -> impl Strategy<Value = Vec<[usize; 3]>> {
    prop::collection::vec(prop::array::uniform3(0..nu + 1), 0..max_lines)
}

fn shuffled(nu: usize) -> impl Strategy<Value = Vec<PointId>> {
    Just((0..nu).map(PointId::from).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, ..ProptestConfig::default() })]

    #[test]
    fn validator_matches_pairwise_check(triples in random_triples(9, 14)) {
        let c = Config::from_triples(9, &triples);
        prop_assert_eq!(c.validate().is_ok(), brute_force_valid(9, &triples));
    }

    #[test]
    fn relabelling_keeps_parameters(f in shuffled(15), h in shuffled(21)) {
        let g = grassmannian(6).unwrap();
        prop_assert_eq!(g.relabel(&f).unwrap().parameters().unwrap(), g.parameters().unwrap());
        let v = veronesian(5).unwrap();
        prop_assert_eq!(v.relabel(&h).unwrap().parameters().unwrap(), v.parameters().unwrap());
    }

    #[test]
    fn join_is_symmetric_and_on_a_line(n in 3usize..8, x in 0usize..28, y in 0usize..28) {
        let g = grassmannian(n).unwrap();
        let (x, y) = (PointId::from(x % g.num_points()), PointId::from(y % g.num_points()));
        prop_assert_eq!(g.join(x, y), g.join(y, x));
        if let Some(z) = g.join(x, y).filter(|_| x != y) {
            prop_assert!(g.lines().contains(&Line::new(x, y, z)));
        }
    }
}

#[test]
fn grassmannians_are_recognized_as_binomial() {
    for n in [4, 5, 6] {
        let p = grassmannian(n).unwrap().parameters().unwrap();
        assert_eq!(p.binomial_n, Some(n));
        assert_eq!(p.rank(), Some(n - 2));
    }
}

#[test]
fn all_violations_are_reported_together() {
    let c = Config::from_triples(5, &[[0, 1, 2], [0, 1, 3], [0, 0, 4], [1, 2, 7]]);
    let report = c.validate();
    assert!(report.violations.len() >= 3, "{report}");
}
