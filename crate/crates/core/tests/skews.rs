use proptest::prelude::*;

use skewper::perm::Perm;
use skewper::skews::{conjugate_skew, gamma_between, recognize_bar, BarCase};
use skewper::{Error, Pair, PhiSequence, Skew};

fn perm(images: Vec<usize>) -> Perm {
    Perm::from_images(&images).unwrap()
}

fn random_perm(k: usize) -> impl Strategy<Value = Perm> {
    Just((1..=k).collect::<Vec<_>>()).prop_shuffle().prop_map(perm)
}

/// A random Φ for some `n` in `3..=max`.
fn random_phi(max: usize) -> impl Strategy<Value = PhiSequence> {
    (3..=max).prop_flat_map(|n| {
        let levels: Vec<_> = (3..=n).rev().map(|j| random_perm(j - 1)).collect();
        levels.prop_map(move |phis| PhiSequence::new(n, phis).unwrap())
    })
}

/// Φ together with a level-wise conjugate of it.
fn conjugate_pair(max: usize) -> impl Strategy<Value = (PhiSequence, PhiSequence)> {
    random_phi(max).prop_flat_map(|phi| {
        let conj: Vec<_> = (3..=phi.n()).rev().map(|j| random_perm(j - 1)).collect();
        (Just(phi), conj).prop_map(|(phi, gammas)| {
            let phis = (3..=phi.n())
                .rev()
                .zip(&gammas)
                .map(|(j, g)| phi.phi(j).conjugate_by(g))
                .collect();
            let other = PhiSequence::new(phi.n(), phis).unwrap();
            (phi, other)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn skews_are_bijections(phi in random_phi(8)) {
        let s = phi.skew();
        let mut hit = vec![false; Pair::count(phi.n())];
        for u in Pair::all(phi.n()) {
            let v = s.apply(u);
            prop_assert!(v.hi <= phi.n());
            prop_assert!(!hit[v.index(phi.n())], "{} hit twice", v);
            hit[v.index(phi.n())] = true;
        }
    }

    #[test]
    fn inverse_sequence_gives_inverse_skew(phi in random_phi(8)) {
        prop_assert_eq!(phi.inverse().skew(), phi.skew().inverse());
        prop_assert!(phi.skew().compose(&phi.inverse().skew()).is_identity());
    }

    #[test]
    fn gamma_conjugates_level_wise_conjugates((p1, p2) in conjugate_pair(8)) {
        let gamma = gamma_between(&p1, &p2).unwrap();
        prop_assert_eq!(conjugate_skew(&p1.skew(), &gamma).unwrap(), p2.skew());
    }

    #[test]
    fn display_parse_round_trip(phi in random_phi(7)) {
        prop_assert_eq!(PhiSequence::parse(&phi.to_string()).unwrap(), phi);
    }
}

#[test]
fn zeta_is_an_involution() {
    for n in 2..=8 {
        let z = Skew::zeta(n).unwrap();
        assert!(z.compose(&z).is_identity(), "n = {n}");
        assert_eq!(z, PhiSequence::symmetric(n).unwrap().skew());
    }
}

#[test]
fn conjugation_by_id_and_transposition() {
    for n in [4, 5] {
        let id = Perm::identity(n);
        let t = Perm::parse_cycles("(1,2)", Some(n)).unwrap();
        for phi in PhiSequence::all(n) {
            for alpha in [&id, &t] {
                let lhs = phi.conjugate_by(alpha).unwrap().skew();
                let rhs = phi.skew().conjugate_by(&Skew::bar(alpha));
                assert_eq!(lhs, rhs, "Φ = {phi}, α = {alpha}");
            }
        }
        let c = Perm::parse_cycles("(1,3)", Some(n)).unwrap();
        assert!(PhiSequence::identity(n).unwrap().conjugate_by(&c).is_err());
    }
}

#[test]
fn gamma_rejects_different_cycle_types() {
    let p1 = PhiSequence::parse("[(1,2,3),(1,2)]").unwrap();
    let p2 = PhiSequence::parse("[(1,2)(3),(1,2)]").unwrap();
    assert!(matches!(gamma_between(&p1, &p2), Err(Error::CycleTypeMismatch { level: 4 })));
}

/// Which Φ give a lift `σ_Φ = ᾱ`, exhaustively: the identity, and the
/// sequence with `φ_j = (1,2)` at every level `j ≥ 3` (then `α = (1,2)`).
/// Only at `n = 3` is the latter of the shape "`φ_3 = (1,2)`, all else fixed".
#[test]
fn lifts_among_all_sequences() {
    for n in [3, 4, 5] {
        let found: Vec<_> = PhiSequence::all(n).into_iter().filter_map(|phi| recognize_bar(&phi).map(|r| (phi, r))).collect();
        assert_eq!(found.len(), 2, "n = {n}");
        let swap = Perm::parse_cycles("(1,2)", Some(n)).unwrap();
        let all_swaps = PhiSequence::from_fn(n, |j, i| if j == 2 { i } else { swap.apply(i) }).unwrap();
        assert!(found.iter().any(|(phi, r)| phi.is_identity() && r.case == BarCase::A));
        let (phi, r) = found.iter().find(|(phi, _)| !phi.is_identity()).unwrap();
        assert_eq!(phi, &all_swaps);
        assert_eq!(r.alpha, swap);
        assert_eq!(r.case, if n == 3 { BarCase::B } else { BarCase::Other }, "n = {n}");
    }
}
