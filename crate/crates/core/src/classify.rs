//! The exhaustive run over `ℳ(f, s, i) = Π(4, σ_{PHI[f]}, 𝒱_s(MU[i]))`:
//! free `K_5` counts, canonical certificates, automorphism groups, the
//! resulting isomorphism classes, and a checklist of the published claims.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{enumerate_free_cliques, star_clique_indices, star_clique_indices_brute};
use crate::constructions::{perspective, veblen, Perspective, VeblenLabel};
use crate::error::{Error, Result};
use crate::isomorphism::{
    automorphism_group, canonical_form_cached, is_automorphism, perspective_iso, s_map, CanonicalCertificate,
};
use crate::perm::Perm;
use crate::skews::{recognize_bar, PhiSequence};

pub const PHI: [&str; 8] = [
    "[(1)(2)(3),(1)(2)]",
    "[(1)(2)(3),(1,2)]",
    "[(1)(2,3),(1)(2)]",
    "[(2)(1,3),(1,2)]",
    "[(1,2)(3),(1)(2)]",
    "[(1,2)(3),(1,2)]",
    "[(1,2,3),(1)(2)]",
    "[(1,2,3),(1,2)]",
];

pub const MU: [&str; 15] = [
    "(1)(2)(3)(4)",
    "(1,2,3)(4)",
    "(1,3,2)(4)",
    "(1,2,4)(3)",
    "(1,4,2)(3)",
    "(1,3,4)(2)",
    "(1,4,3)(2)",
    "(1)(2,3,4)",
    "(1)(2,4,3)",
    "(1)(2)(3,4)",
    "(1)(2,4)(3)",
    "(1)(4)(2,3)",
    "(1,4)(2)(3)",
    "(1,3)(2)(4)",
    "(1,2)(3)(4)",
];

/// The published `(f, i)` with `s = 5` and at least three free `K_5`.
pub const THREE_CLIQUE_LIST: [(usize, usize); 36] = [
    (2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (3, 8), (3, 9), (3, 15), (4, 1), (4, 2),
    (4, 12), (4, 14), (5, 1), (5, 2), (5, 3), (5, 4), (6, 1), (6, 2), (6, 4), (6, 11), (6, 12), (6, 15),
    (7, 1), (7, 2), (7, 12), (7, 14), (7, 15), (8, 1), (8, 2), (8, 3), (8, 12), (8, 14), (8, 15),
];

/// Published representatives of the two-clique classes, per `f`, as `(s, i)`.
/// For `f = 7, 8` the list is every `s = 6` entry plus the `s = 5` entries
/// outside [`THREE_CLIQUE_LIST`].
pub fn published_representatives(f: usize) -> Vec<(u8, usize)> {
    let with = |s: u8, is: &[usize]| is.iter().map(|&i| (s, i)).collect::<Vec<_>>();
    match f {
        2 | 5 => with(6, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
        3 => with(6, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 13]),
        4 => [with(5, &[4, 5, 6, 8, 9, 10, 11, 13]), with(6, &[1, 3, 5, 9, 12, 14])].concat(),
        6 => [with(5, &[6, 7, 10]), with(6, &[1, 2, 4, 6, 7, 10, 11, 12, 15])].concat(),
        7 | 8 => {
            let s5: Vec<usize> = (1..=15).filter(|&i| !THREE_CLIQUE_LIST.contains(&(f, i))).collect();
            [with(5, &s5), with(6, &(1..=15).collect::<Vec<_>>())].concat()
        }
        _ => Vec::new(),
    }
}

/// The published `(f, s, μ)` with exactly two free `K_5` and a nontrivial
/// automorphism group (claimed to be `{id, 𝒮}`).
pub const AUT_FAMILIES: [(usize, u8, &[&str]); 4] = [
    (4, 5, &["(4)(1,2,3)", "(1)(2,3,4)", "(1)(4)(2,3)"]),
    (4, 6, &["(4)(1,3,2)", "(1)(2,4,3)", "(1)(4)(2,3)"]),
    (6, 5, &["(1)(2)(3,4)"]),
    (6, 6, &["(1)(2)(3)(4)", "(1)(2)(3,4)", "(1,2)(3)(4)"]),
];

pub fn phi_catalog() -> Vec<PhiSequence> {
    PHI.iter().map(|s| PhiSequence::parse(s).expect("catalog entries parse")).collect()
}

pub fn mu_catalog() -> Vec<Perm> {
    MU.iter().map(|s| Perm::parse_cycles(s, Some(4)).expect("catalog entries parse")).collect()
}

/// 1-based position of `mu` in the catalog.
pub fn mu_index(mu: &Perm) -> Option<usize> {
    mu_catalog().iter().position(|m| m == mu).map(|k| k + 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct InstanceKey {
    pub f: usize,
    pub s: u8,
    pub i: usize,
}

impl InstanceKey {
    pub fn new(f: usize, s: u8, i: usize) -> Result<InstanceKey> {
        if !(1..=8).contains(&f) || !(5..=6).contains(&s) || !(1..=15).contains(&i) {
            return Err(Error::OutOfRange(format!("instance ({f},{s},{i}) outside 1..8 x 5..6 x 1..15")));
        }
        Ok(InstanceKey { f, s, i })
    }

    /// All 240 keys, ordered by `(f, s, i)`.
    pub fn all() -> Vec<InstanceKey> {
        let mut out = Vec::with_capacity(240);
        for f in 1..=8 {
            for s in [5, 6] {
                for i in 1..=15 {
                    out.push(InstanceKey { f, s, i });
                }
            }
        }
        out
    }

    pub fn position(&self) -> usize {
        (self.f - 1) * 30 + (self.s as usize - 5) * 15 + (self.i - 1)
    }

    pub fn phi(&self) -> PhiSequence {
        phi_catalog().swap_remove(self.f - 1)
    }

    pub fn mu(&self) -> Perm {
        mu_catalog().swap_remove(self.i - 1)
    }

    pub fn veblen_label(&self) -> VeblenLabel {
        VeblenLabel::new(self.s, self.mu()).expect("catalog permutations have fixed points")
    }
}

impl fmt::Display for InstanceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{},{})", self.f, self.s, self.i)
    }
}

pub fn build_instance(key: InstanceKey) -> Result<Perspective> {
    perspective(4, &key.phi().skew(), &veblen(&key.veblen_label()))
}

/// The cached instance for `key`.
pub fn instance(key: InstanceKey) -> &'static Perspective {
    static CACHE: OnceLock<Vec<Perspective>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        InstanceKey::all()
            .into_iter()
            .map(|k| build_instance(k).expect("catalog instances build"))
            .collect()
    });
    &all[key.position()]
}

/// Caps rayon's global pool at `SKEWPER_THREADS` when set. Harmless when the
/// pool already exists.
pub fn init_threads_from_env() {
    if let Some(n) = std::env::var("SKEWPER_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub key: InstanceKey,
    pub free_k5: usize,
    /// indices `i0` with a free `G_(i0)`, from the criterion
    pub star_indices: Vec<usize>,
    /// the same, by direct search in the host
    pub star_indices_brute: Vec<usize>,
    pub aut_order: usize,
    /// whether the swap `𝒮` is an automorphism
    pub s_is_automorphism: bool,
    pub class_id: usize,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub id: usize,
    pub members: Vec<InstanceKey>,
    pub free_k5: usize,
    pub aut_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub per_instance: Vec<InstanceRecord>,
    pub classes: Vec<ClassInfo>,
    /// classes of instances with exactly two free `K_5` and `f ≥ 2`
    pub class_count_two_k5: usize,
    /// classes of instances with at least three free `K_5` and `f ≥ 2`
    pub class_count_three_plus: usize,
    pub class_count_two_k5_all_f: usize,
    pub class_count_three_plus_all_f: usize,
    /// the two counts above restricted to `σ_Φ ≠ ᾱ` for every `α`
    pub class_count_two_k5_non_lift: usize,
    pub class_count_three_plus_non_lift: usize,
    /// catalog indices `f` whose skew is a lift `ᾱ`
    pub lift_indices: Vec<usize>,
    /// `(f, i)` with `s = 5` and at least three free `K_5`, all `f`
    pub listaaa_check: BTreeSet<(usize, usize)>,
    /// instances with exactly two free `K_5`, `f ≥ 2`, and nontrivial automorphisms
    pub aut_nontrivial: Vec<InstanceKey>,
    /// breaches of "equal certificates imply equal invariants"
    pub consistency_violations: Vec<String>,
}

impl ClassificationReport {
    pub fn record(&self, key: InstanceKey) -> &InstanceRecord {
        &self.per_instance[key.position()]
    }

    fn count_classes(&self, pred: impl Fn(&InstanceRecord) -> bool) -> usize {
        self.per_instance
            .iter()
            .filter(|r| pred(r))
            .map(|r| r.class_id)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Text table: one row per class.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str("class  K5  |Aut|  members\n");
        for c in &self.classes {
            let members: Vec<String> = c.members.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("{:>5}  {:>2}  {:>5}  {}\n", c.id, c.free_k5, c.aut_order, members.join(" ")));
        }
        out.push_str(&format!(
            "two free K5, f>=2: {} classes; three or more, f>=2: {} classes\n",
            self.class_count_two_k5, self.class_count_three_plus
        ));
        out.push_str(&format!(
            "two free K5, all f: {} classes; three or more, all f: {} classes\n",
            self.class_count_two_k5_all_f, self.class_count_three_plus_all_f
        ));
        out.push_str(&format!(
            "two free K5, skew not a lift (f not in {:?}): {} classes; three or more: {} classes\n",
            self.lift_indices, self.class_count_two_k5_non_lift, self.class_count_three_plus_non_lift
        ));
        out
    }
}

struct Computed {
    key: InstanceKey,
    free_k5: usize,
    star: Vec<usize>,
    star_brute: Vec<usize>,
    aut_order: usize,
    s_aut: bool,
    cert: CanonicalCertificate,
}

fn compute(key: InstanceKey) -> Result<Computed> {
    let m = instance(key);
    let (f, _) = s_map(m)?;
    Ok(Computed {
        key,
        free_k5: enumerate_free_cliques(&m.config, 5).len(),
        star: star_clique_indices(m, &key.phi())?,
        star_brute: star_clique_indices_brute(m),
        aut_order: automorphism_group(&m.config)?.order,
        s_aut: is_automorphism(&m.config, &f),
        cert: canonical_form_cached(&m.config)?,
    })
}

/// Builds all 240 instances in parallel and assembles the report in key order.
pub fn classify_all() -> ClassificationReport {
    let computed: Vec<Computed> = InstanceKey::all()
        .into_par_iter()
        .map(|k| compute(k).expect("catalog instances are valid"))
        .collect();

    let mut class_of: HashMap<&CanonicalCertificate, usize> = HashMap::new();
    let mut classes: Vec<ClassInfo> = Vec::new();
    let mut consistency_violations = Vec::new();
    let mut per_instance = Vec::with_capacity(computed.len());
    for c in &computed {
        let id = *class_of.entry(&c.cert).or_insert_with(|| {
            classes.push(ClassInfo {
                id: classes.len(),
                members: Vec::new(),
                free_k5: c.free_k5,
                aut_order: c.aut_order,
            });
            classes.len() - 1
        });
        let class = &mut classes[id];
        if class.free_k5 != c.free_k5 || class.aut_order != c.aut_order {
            consistency_violations.push(format!(
                "{} shares a certificate with {} but has (K5, |Aut|) = ({}, {}) vs ({}, {})",
                c.key, class.members[0], c.free_k5, c.aut_order, class.free_k5, class.aut_order
            ));
        }
        class.members.push(c.key);
        per_instance.push(InstanceRecord {
            key: c.key,
            free_k5: c.free_k5,
            star_indices: c.star.clone(),
            star_indices_brute: c.star_brute.clone(),
            aut_order: c.aut_order,
            s_is_automorphism: c.s_aut,
            class_id: id,
            digest: c.cert.digest(),
        });
    }

    let mut report = ClassificationReport {
        per_instance,
        classes,
        class_count_two_k5: 0,
        class_count_three_plus: 0,
        class_count_two_k5_all_f: 0,
        class_count_three_plus_all_f: 0,
        class_count_two_k5_non_lift: 0,
        class_count_three_plus_non_lift: 0,
        lift_indices: (1..=PHI.len()).filter(|&f| recognize_bar(&phi_catalog()[f - 1]).is_some()).collect(),
        listaaa_check: BTreeSet::new(),
        aut_nontrivial: Vec::new(),
        consistency_violations,
    };
    report.class_count_two_k5 = report.count_classes(|r| r.key.f >= 2 && r.free_k5 == 2);
    report.class_count_three_plus = report.count_classes(|r| r.key.f >= 2 && r.free_k5 >= 3);
    report.class_count_two_k5_all_f = report.count_classes(|r| r.free_k5 == 2);
    report.class_count_three_plus_all_f = report.count_classes(|r| r.free_k5 >= 3);
    let lifts = report.lift_indices.clone();
    report.class_count_two_k5_non_lift = report.count_classes(|r| !lifts.contains(&r.key.f) && r.free_k5 == 2);
    report.class_count_three_plus_non_lift = report.count_classes(|r| !lifts.contains(&r.key.f) && r.free_k5 >= 3);
    report.listaaa_check = report
        .per_instance
        .iter()
        .filter(|r| r.key.s == 5 && r.free_k5 >= 3)
        .map(|r| (r.key.f, r.key.i))
        .collect();
    report.aut_nontrivial = report
        .per_instance
        .iter()
        .filter(|r| r.key.f >= 2 && r.free_k5 == 2 && r.aut_order > 1)
        .map(|r| r.key)
        .collect();
    report
}

/// One machine-checked claim.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub pass: bool,
    pub expected: String,
    pub computed: String,
    pub diagnostic: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {}: expected {}, computed {}", self.claim, self.expected, self.computed)?;
        for d in &self.diagnostic {
            write!(f, "\n      {d}")?;
        }
        Ok(())
    }
}

fn verdict(claim: &str, expected: String, computed: String, pass: bool, diagnostic: Vec<String>) -> Verdict {
    Verdict {
        claim: claim.to_string(),
        pass,
        expected,
        computed,
        diagnostic: if pass { Vec::new() } else { diagnostic },
    }
}

fn class_lines(report: &ClassificationReport, pred: impl Fn(&InstanceRecord) -> bool) -> Vec<String> {
    let mut by_class: BTreeMap<usize, Vec<InstanceKey>> = BTreeMap::new();
    for r in report.per_instance.iter().filter(|r| pred(r)) {
        by_class.entry(r.class_id).or_default().push(r.key);
    }
    by_class
        .into_iter()
        .filter(|(_, ks)| ks.len() > 1)
        .flat_map(|(id, ks)| {
            let names: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
            let mut out = vec![format!("class {id} ({}) merges {}", report.record(ks[0]).digest, names.join(" "))];
            // each collision with the centre-fixing map that explains it
            out.extend(ks[1..].iter().map(|&k| match perspective_iso(instance(ks[0]), instance(k)) {
                Some(w) => format!("  {} -> {}: {:?} with phi = {}", ks[0], k, w.kind, w.phi),
                None => format!("  {} -> {}: no centre-fixing isomorphism", ks[0], k),
            }));
            out
        })
        .collect()
}

fn fmt_pairs(set: &BTreeSet<(usize, usize)>) -> String {
    set.iter().map(|(f, i)| format!("({f},{i})")).collect::<Vec<_>>().join(" ")
}

/// Compares the report with every published claim it can check.
pub fn verify_published(report: &ClassificationReport) -> Vec<Verdict> {
    let mut out = Vec::new();
    let two = |r: &InstanceRecord| r.key.f >= 2 && r.free_k5 == 2;
    let three = |r: &InstanceRecord| r.key.f >= 2 && r.free_k5 >= 3;

    let lift_note = |two: usize, three: usize| {
        format!(
            "excluding the lifts sigma_Phi = bar(alpha), f in {:?}: {two} two-K5 classes, {three} classes with >=3",
            report.lift_indices
        )
    };
    let mut diag = vec![
        format!(
            "{} instances with exactly two free K5 (f>=2) fall into {} classes",
            report.per_instance.iter().filter(|r| two(r)).count(),
            report.class_count_two_k5
        ),
        lift_note(report.class_count_two_k5_non_lift, report.class_count_three_plus_non_lift),
    ];
    diag.extend(class_lines(report, two));
    out.push(verdict(
        "two-K5 isomorphism classes, f>=2",
        "104".into(),
        report.class_count_two_k5.to_string(),
        report.class_count_two_k5 == 104,
        diag,
    ));

    let mut diag = vec![
        format!(
            "{} instances with three or more free K5 (f>=2)",
            report.per_instance.iter().filter(|r| three(r)).count()
        ),
        lift_note(report.class_count_two_k5_non_lift, report.class_count_three_plus_non_lift),
    ];
    diag.extend(class_lines(report, three));
    out.push(verdict(
        ">=3-K5 isomorphism classes, f>=2",
        "11".into(),
        report.class_count_three_plus.to_string(),
        report.class_count_three_plus == 11,
        diag,
    ));

    let published: BTreeSet<(usize, usize)> = THREE_CLIQUE_LIST.iter().copied().collect();
    let computed: BTreeSet<(usize, usize)> = report.listaaa_check.iter().copied().filter(|&(f, _)| f >= 2).collect();
    let missing: BTreeSet<_> = computed.difference(&published).copied().collect();
    let spurious: BTreeSet<_> = published.difference(&computed).copied().collect();
    out.push(verdict(
        "(f,i) with s=5 and >=3 free K5",
        format!("{} pairs", published.len()),
        format!("{} pairs", computed.len()),
        missing.is_empty() && spurious.is_empty(),
        vec![
            format!("computed but not listed: {}", fmt_pairs(&missing)),
            format!("listed but not computed: {}", fmt_pairs(&spurious)),
        ],
    ));

    let mut list_total = 0;
    for f in 2..=8 {
        let reps = published_representatives(f);
        list_total += reps.len();
        let keys: Vec<InstanceKey> = reps.iter().map(|&(s, i)| InstanceKey { f, s, i }).collect();
        let mut diag = Vec::new();
        for k in &keys {
            let r = report.record(*k);
            if r.free_k5 != 2 {
                diag.push(format!("{k} has {} free K5", r.free_k5));
            }
        }
        let mut seen: BTreeMap<usize, InstanceKey> = BTreeMap::new();
        for k in &keys {
            if let Some(prev) = seen.insert(report.record(*k).class_id, *k) {
                diag.push(format!("{prev} and {k} are isomorphic"));
            }
        }
        let own: BTreeSet<usize> = report
            .per_instance
            .iter()
            .filter(|r| r.key.f == f && r.free_k5 == 2)
            .map(|r| r.class_id)
            .collect();
        for id in own.difference(&seen.keys().copied().collect()) {
            diag.push(format!("class of {} has no listed representative", report.classes[*id].members[0]));
        }
        out.push(verdict(
            &format!("two-K5 representatives for f={f}"),
            format!("{} pairwise non-isomorphic, covering f={f}", keys.len()),
            format!("{} classes among f={f} two-K5 instances", own.len()),
            diag.is_empty(),
            diag,
        ));
    }
    out.push(verdict(
        "published per-f lists, total length vs computed two-K5 classes",
        list_total.to_string(),
        report.class_count_two_k5.to_string(),
        list_total == report.class_count_two_k5,
        vec![format!("the lists total {list_total}, while the stated class count is 104")],
    ));

    let mut expected_aut: BTreeSet<InstanceKey> = BTreeSet::new();
    for (f, s, mus) in AUT_FAMILIES {
        for mu in mus {
            let i = mu_index(&Perm::parse_cycles(mu, Some(4)).expect("valid")).expect("listed mu is in the catalog");
            let k = InstanceKey { f, s, i };
            if report.record(k).free_k5 == 2 {
                expected_aut.insert(k);
            }
        }
    }
    let actual: BTreeSet<InstanceKey> = report.aut_nontrivial.iter().copied().collect();
    let mut diag = Vec::new();
    for k in actual.difference(&expected_aut) {
        diag.push(format!("unexpected nontrivial: {k} |Aut| = {}", report.record(*k).aut_order));
    }
    for k in expected_aut.difference(&actual) {
        diag.push(format!("expected nontrivial but trivial: {k}"));
    }
    for k in actual.intersection(&expected_aut) {
        let r = report.record(*k);
        if r.aut_order != 2 || !r.s_is_automorphism {
            diag.push(format!("{k}: |Aut| = {}, swap is automorphism: {}", r.aut_order, r.s_is_automorphism));
        }
    }
    let skipped: Vec<String> = AUT_FAMILIES
        .iter()
        .flat_map(|(f, s, mus)| {
            mus.iter().filter_map(move |mu| {
                let i = mu_index(&Perm::parse_cycles(mu, Some(4)).ok()?)?;
                let k = InstanceKey { f: *f, s: *s, i };
                (report.record(k).free_k5 != 2).then(|| format!("{k} (listed) has {} free K5", report.record(k).free_k5))
            })
        })
        .collect();
    diag.extend(skipped);
    out.push(verdict(
        "nontrivial Aut among two-K5 instances, f>=2, each {id, S}",
        format!("{} instances of order 2", expected_aut.len()),
        format!("{} instances", actual.len()),
        actual == expected_aut && actual.iter().all(|k| report.record(*k).aut_order == 2 && report.record(*k).s_is_automorphism),
        diag,
    ));

    let zeta_v5 = report.record(InstanceKey { f: 4, s: 5, i: 2 });
    out.push(verdict(
        "|Aut M(4,5,2)|",
        "2".into(),
        zeta_v5.aut_order.to_string(),
        zeta_v5.aut_order == 2,
        vec![format!("M(4,5,2) has {} free K5", zeta_v5.free_k5)],
    ));
    let rigid = report.record(InstanceKey { f: 4, s: 5, i: 1 });
    out.push(verdict(
        "|Aut M(4,5,1)|",
        "1".into(),
        rigid.aut_order.to_string(),
        rigid.aut_order == 1,
        Vec::new(),
    ));
    out.push(verdict(
        "equal certificates imply equal (K5 count, |Aut|)",
        "no violations".into(),
        format!("{} violations", report.consistency_violations.len()),
        report.consistency_violations.is_empty(),
        report.consistency_violations.clone(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skews::Skew;

    #[test]
    fn catalog_shapes() {
        let phis = phi_catalog();
        assert_eq!(phis.len(), 8);
        assert!(phis[0].skew().is_identity());
        assert_eq!(phis[3].skew(), Skew::zeta(4).unwrap());
        assert_eq!(phis[6].skew().order(), 3);
        assert_eq!(phis[7].skew().order(), 6);
        for p in &phis[1..6] {
            assert_eq!(&p.inverse(), p);
        }
        let mus = mu_catalog();
        assert_eq!(mus.len(), 15);
        assert!(mus[0].is_identity());
        assert!(mus.iter().all(|m| !m.is_derangement()));
        assert_eq!(mus.iter().collect::<BTreeSet<_>>().len(), 15);
    }

    #[test]
    fn representative_lists_sum_to_105() {
        let total: usize = (2..=8).map(|f| published_representatives(f).len()).sum();
        assert_eq!(total, 105);
    }

    #[test]
    fn keys_round_trip_positions() {
        for (k, key) in InstanceKey::all().into_iter().enumerate() {
            assert_eq!(key.position(), k);
        }
        assert!(InstanceKey::new(9, 5, 1).is_err());
        assert_eq!(InstanceKey::new(4, 5, 1).unwrap().to_string(), "M(4,5,1)");
    }
}
