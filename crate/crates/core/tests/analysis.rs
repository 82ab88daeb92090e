use skewper::analysis::{
    cross_criterion, cross_predicate, enumerate_free_cliques, freely_contains, reperspective, star_clique_indices,
    star_clique_indices_brute, stp_diagram,
};
use skewper::classify::{instance, InstanceKey};
use skewper::constructions::{grassmannian, perspective, Perspective};
use skewper::isomorphism::is_isomorphism;
use skewper::{Config, Line, Pair, PhiSequence, PointId, Skew};

fn zeta_grass(n: usize) -> Perspective {
    perspective(n, &Skew::zeta(n).unwrap(), &grassmannian(n).unwrap()).unwrap()
}

#[test]
fn star_formula_matches_search_on_every_instance() {
    for key in InstanceKey::all() {
        let m = instance(key);
        assert_eq!(star_clique_indices(m, &key.phi()).unwrap(), star_clique_indices_brute(m), "{key}");
    }
}

#[test]
fn both_centre_cliques_are_always_free() {
    for key in InstanceKey::all() {
        let m = instance(key);
        let lab = &m.labeling;
        for side in [&lab.a, &lab.b] {
            let mut k = side.clone();
            k.push(lab.center);
            assert!(freely_contains(&m.config, &k).is_some(), "{key}");
        }
        let found = enumerate_free_cliques(&m.config, 5).len();
        assert!(found >= 2, "{key}");
        assert_eq!(found, 2 + star_clique_indices_brute(m).len(), "{key}");
    }
}

#[test]
fn three_free_k5_only_with_switch_five() {
    for key in InstanceKey::all().into_iter().filter(|k| k.s == 6) {
        assert!(star_clique_indices_brute(instance(key)).is_empty(), "{key}");
    }
}

#[test]
fn cross_predicate_matches_its_algebraic_form() {
    for n in [4, 5] {
        let g = grassmannian(n).unwrap();
        for phi in PhiSequence::all(n) {
            let m = perspective(n, &phi.skew(), &g).unwrap();
            for k in 4..=n {
                assert_eq!(cross_predicate(&m, k).unwrap(), cross_criterion(&phi, k), "Φ = {phi}, k = {k}");
            }
            assert!(cross_predicate(&m, 3).is_err());
        }
    }
}

#[test]
fn reperspective_witnesses_verify() {
    for n in 4..=6 {
        let m = zeta_grass(n);
        let r = reperspective(&m).unwrap();
        assert!(is_isomorphism(&m.config, &r.target, &r.witness), "n = {n}");
        assert!(r.rho0.is_identity(), "n = {n}");
        for i in 1..n {
            assert_eq!(r.rho.inverse().apply(Pair::new(i, n)), Pair::new(n - i, n));
        }
    }
    let mut produced = 0;
    for key in InstanceKey::all() {
        let m = instance(key);
        if let Ok(r) = reperspective(m) {
            assert!(is_isomorphism(&m.config, &r.target, &r.witness), "{key}");
            produced += 1;
        } else {
            assert!(!star_clique_indices_brute(m).contains(&4), "{key}");
        }
    }
    assert!(produced > 0);
}

fn has_line(c: &Config, n: usize, u: (usize, usize), v: (usize, usize), w: (usize, usize)) -> bool {
    let id = |(i, j): (usize, usize)| PointId::from(Pair::new(i, j).index(n));
    c.lines().contains(&Line::new(id(u), id(v), id(w)))
}

/// The joins drawn for the new axis when the old one is `G(I_5, 2)`, with
/// `i = 1`, `j = 2`, `n = 5`.
#[test]
fn new_axis_pattern_for_five() {
    let n = 5;
    let k = reperspective(&zeta_grass(n)).unwrap().axis;
    let (i, j) = (1, 2);
    assert!(has_line(&k, n, (i, n), (j, n), (j - i, j)));
    assert!(has_line(&k, n, (i, n), (n - j, n), (n - j - i, n - j)));
    assert!(has_line(&k, n, (i, n), (n - i, n), (n - 2 * i, n - i)));
    assert!(has_line(&k, n, (j, n), (n - j, n), (n - 2 * j, n - j)));
    assert!(has_line(&k, n, (j, n), (n - i, n), (n - i - j, n - i)));
    assert!(has_line(&k, n, (n - j, n), (n - i, n), (j - i, n - i)));
    assert!(has_line(&k, n, (j - i, j), (j - i, n - i), (j, n - i)));
    assert!(has_line(&k, n, (n - j, n - i), (n - j - i, n - j), (n - i - j, n - i)));
    // and in general: e_{a,n} ⊕ e_{b,n} = e_{b−a,b}, Grassmannian lines below n
    for a in 1..n {
        for b in a + 1..n {
            assert!(has_line(&k, n, (a, n), (b, n), (b - a, b)));
            for c in b + 1..n {
                assert!(has_line(&k, n, (a, b), (a, c), (b, c)));
            }
        }
    }
}

#[test]
fn stp_diagrams_exist_exactly_with_a_third_clique() {
    for key in InstanceKey::all() {
        let m = instance(key);
        let third = !star_clique_indices_brute(m).is_empty();
        assert_eq!(stp_diagram(m).is_ok(), third, "{key}");
    }
}
