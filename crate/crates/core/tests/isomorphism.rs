use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use skewper::analysis::star_clique_indices_brute;
use skewper::classify::{instance, InstanceKey};
use skewper::constructions::{kappa, perspective, skew_image, veblen, VeblenLabel};
use skewper::isomorphism::{
    are_isomorphic, automorphism_group, automorphisms, canonical_form, canonical_form_cached, is_automorphism,
    is_isomorphism, perspective_iso, perspective_isos, s_map,
};
use skewper::perm::Perm;
use skewper::{PointId, Skew};

fn two_k5(key: InstanceKey) -> bool {
    star_clique_indices_brute(instance(key)).is_empty()
}

/// Instances grouped by certificate.
fn classes() -> Vec<Vec<InstanceKey>> {
    let mut by_cert: BTreeMap<Vec<[u32; 3]>, Vec<InstanceKey>> = BTreeMap::new();
    for key in InstanceKey::all() {
        let cert = canonical_form_cached(&instance(key).config).unwrap();
        by_cert.entry(cert.canonical_line_list).or_default().push(key);
    }
    by_cert.into_values().collect()
}

#[test]
fn certificates_agree_with_backtracking_search() {
    let classes = classes();
    for class in &classes {
        let first = &instance(class[0]).config;
        for &k in &class[1..] {
            let other = &instance(k).config;
            let f = are_isomorphic(first, other).unwrap_or_else(|| panic!("{} vs {k}: no witness", class[0]));
            assert!(is_isomorphism(first, other, &f));
        }
    }
    for (x, cx) in classes.iter().enumerate() {
        for cy in &classes[x + 1..] {
            let (a, b) = (&instance(cx[0]).config, &instance(cy[0]).config);
            assert!(are_isomorphic(a, b).is_none(), "{} and {} are isomorphic", cx[0], cy[0]);
        }
    }
}

#[test]
fn random_relabellings_keep_certificates() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let keys = InstanceKey::all();
    for _ in 0..100 {
        let key = keys[rng.gen_range(0..keys.len())];
        let c = &instance(key).config;
        let mut f: Vec<PointId> = c.points().collect();
        f.shuffle(&mut rng);
        let d = c.relabel(&f).unwrap().without_labels();
        assert_eq!(canonical_form(c).unwrap(), canonical_form(&d).unwrap(), "{key}");
        let w = are_isomorphic(c, &d).unwrap();
        assert!(is_isomorphism(c, &d, &w));
    }
}

#[test]
fn centre_fixing_maps_decide_two_k5_isomorphism() {
    let keys: Vec<InstanceKey> = InstanceKey::all().into_iter().filter(|&k| two_k5(k)).collect();
    for (x, &k1) in keys.iter().enumerate() {
        let c1 = canonical_form_cached(&instance(k1).config).unwrap();
        for &k2 in &keys[x + 1..] {
            let c2 = canonical_form_cached(&instance(k2).config).unwrap();
            let algebraic = perspective_iso(instance(k1), instance(k2));
            assert_eq!(algebraic.is_some(), c1 == c2, "{k1} vs {k2}");
            if let Some(w) = algebraic {
                assert!(is_isomorphism(&instance(k1).config, &instance(k2).config, &w.map));
            }
        }
    }
}

#[test]
fn group_orders_match_centre_fixing_count() {
    for key in InstanceKey::all() {
        let m = instance(key);
        let g = automorphism_group(&m.config).unwrap();
        let all = automorphisms(&m.config).unwrap();
        assert_eq!(all.len(), g.order, "{key}");
        assert!(all.iter().all(|f| is_automorphism(&m.config, f)), "{key}");
        if two_k5(key) {
            assert_eq!(perspective_isos(m, m).len(), g.order, "{key}");
        }
    }
}

/// With `σ = ζ` every automorphism fixing the centre is the identity or the
/// swap. The same fails for other skews that fix no index at higher levels,
/// `[(1,2,3),(1)(2)]` among them.
#[test]
fn rigidity_under_zeta() {
    for key in InstanceKey::all().into_iter().filter(|k| k.f == 4 && two_k5(*k)) {
        let m = instance(key);
        let (swap, _) = s_map(m).unwrap();
        let id: Vec<PointId> = m.config.points().collect();
        for f in automorphisms(&m.config).unwrap() {
            assert_eq!(f[m.labeling.center.index()], m.labeling.center);
            assert!(f == id || f == swap, "{key}");
        }
    }
    let m = instance(InstanceKey::new(7, 6, 1).unwrap());
    assert!(two_k5(InstanceKey::new(7, 6, 1).unwrap()));
    assert_eq!(automorphism_group(&m.config).unwrap().order, 3);
}

#[test]
fn swap_map_on_every_instance() {
    for key in InstanceKey::all() {
        let m = instance(key);
        let (f, target) = s_map(m).unwrap();
        let sigma = &m.skew;
        let expected = perspective(4, &sigma.inverse(), &skew_image(sigma, &m.axis).unwrap()).unwrap();
        assert!(target.config.same_lines(&expected.config), "{key}");
        assert!(is_isomorphism(&m.config, &target.config, &f), "{key}");
        let (g, back) = s_map(&target).unwrap();
        assert!(back.config.same_lines(&m.config), "{key}");
        assert!(f.iter().enumerate().all(|(x, y)| g[y.index()].index() == x), "{key}: not an involution");
    }
}

#[test]
fn kappa_dual_instances_coincide() {
    for key in InstanceKey::all() {
        let dual = kappa(&instance(key).axis).unwrap();
        let m = perspective(4, &key.phi().skew(), &dual).unwrap();
        let other = InstanceKey::new(key.f, 11 - key.s, key.i).unwrap();
        assert!(m.config.same_lines(&instance(other).config), "{key}");
    }
}

#[test]
fn transposition_relabelling_keeps_class() {
    let swap = Perm::parse_cycles("(1,2)", Some(4)).unwrap();
    for key in InstanceKey::all() {
        let phi = key.phi().conjugate_by(&swap).unwrap();
        let axis = veblen(&VeblenLabel::new(key.s, key.mu().conjugate_by(&swap)).unwrap());
        let moved = perspective(4, &phi.skew(), &axis).unwrap();
        assert_eq!(
            canonical_form(&moved.config).unwrap(),
            canonical_form_cached(&instance(key).config).unwrap(),
            "{key}"
        );
    }
}

#[test]
fn desargues_is_not_kantor() {
    let g5 = skewper::constructions::grassmannian(5).unwrap();
    let k = perspective(3, &Skew::zeta(3).unwrap(), &skewper::constructions::grassmannian(3).unwrap()).unwrap();
    assert_ne!(canonical_form(&g5).unwrap(), canonical_form(&k.config).unwrap());
    assert!(are_isomorphic(&g5, &k.config).is_none());
}
