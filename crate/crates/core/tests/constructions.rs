use skewper::classify::{instance, mu_catalog, InstanceKey};
use skewper::constructions::{
    grassmannian, kappa, perspective, skew_image, veblen, veronesian, PerspectiveLabeling, VeblenLabel,
};
use skewper::incidence::binomial;
use skewper::perm::Perm;
use skewper::{Config, Pair, PointId, Skew};

fn v(s: u8, mu: &Perm) -> Config {
    veblen(&VeblenLabel::new(s, mu.clone()).unwrap())
}

#[test]
fn every_instance_is_binomial_with_n_plus_two() {
    for key in InstanceKey::all() {
        let p = instance(key).config.parameters().unwrap();
        assert_eq!(p.binomial_n, Some(6), "{key}: {p}");
        assert_eq!((p.nu, p.b), (15, 20));
    }
}

#[test]
fn veronesian_line_counts() {
    for k in 1..=8 {
        let c = veronesian(k).unwrap();
        assert_eq!(c.lines().len(), binomial(k + 2, 3), "k = {k}");
        assert_eq!(c.num_points(), binomial(k + 2, 2), "k = {k}");
        c.ensure_valid().unwrap();
    }
}

#[test]
fn pair_relabelling_moves_the_veblen_parameter() {
    for alpha in Perm::all(4) {
        let bar = Skew::bar(&alpha);
        for mu in mu_catalog() {
            for s in [5, 6] {
                let moved = skew_image(&bar, &v(s, &mu)).unwrap();
                let direct = v(s, &mu.conjugate_by(&alpha));
                assert!(moved.same_lines(&direct), "s = {s}, mu = {mu}, alpha = {alpha}");
            }
        }
    }
}

#[test]
fn relabelling_by_id_or_transposition_moves_instances() {
    let swap = Perm::parse_cycles("(1,2)", Some(4)).unwrap();
    for alpha in [Perm::identity(4), swap] {
        let bar = Skew::bar(&alpha);
        let lab = PerspectiveLabeling::standard(4);
        let mut f = vec![PointId(0); lab.num_points()];
        f[lab.center.index()] = lab.center;
        for i in 1..=4 {
            f[lab.a(i).index()] = lab.a(alpha.apply(i));
            f[lab.b(i).index()] = lab.b(alpha.apply(i));
        }
        for u in Pair::all(4) {
            f[lab.c(u).index()] = lab.c(bar.apply(u));
        }
        for key in InstanceKey::all() {
            let moved = instance(key).config.relabel(&f).unwrap();
            let phi = key.phi().conjugate_by(&alpha).unwrap();
            let direct = perspective(4, &phi.skew(), &v(key.s, &key.mu().conjugate_by(&alpha))).unwrap();
            assert!(moved.same_lines(&direct.config), "{key}, alpha = {alpha}");
        }
    }
}

#[test]
fn choice_of_fixed_point_does_not_matter() {
    let mut checked = 0;
    for mu in mu_catalog().into_iter().filter(|m| m.fixed_points().len() >= 2) {
        for s in [5, 6] {
            let lines: Vec<Config> = mu
                .fixed_points()
                .into_iter()
                .map(|i0| veblen(&VeblenLabel::with_i0(s, mu.clone(), i0).unwrap()))
                .collect();
            assert!(lines.windows(2).all(|w| w[0].same_lines(&w[1])), "s = {s}, mu = {mu}");
            checked += 1;
        }
    }
    // the identity and the six transpositions
    assert_eq!(checked, 14);
}

#[test]
fn thirty_distinct_labellings() {
    let mut all: Vec<Config> = Vec::new();
    for mu in mu_catalog() {
        for s in [5, 6] {
            let c = v(s, &mu);
            assert!(all.iter().all(|d| !d.same_lines(&c)), "s = {s}, mu = {mu} repeats");
            all.push(c);
        }
    }
    assert_eq!(all.len(), 30);
}

#[test]
fn kappa_swaps_the_switch() {
    for mu in mu_catalog() {
        for s in [5u8, 6] {
            assert!(kappa(&v(s, &mu)).unwrap().same_lines(&v(11 - s, &mu)), "s = {s}, mu = {mu}");
        }
    }
}

#[test]
fn identity_lift_over_grassmannian_is_the_next_grassmannian() {
    for n in 3..=6 {
        let m = perspective(n, &Skew::identity(n), &grassmannian(n).unwrap()).unwrap();
        assert_eq!(m.config.parameters().unwrap(), grassmannian(n + 2).unwrap().parameters().unwrap());
    }
}
