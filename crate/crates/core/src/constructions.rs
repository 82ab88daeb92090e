//! Named configurations: combinatorial Grassmannians and Veronesians, skew
//! perspectives `Π(n, σ, N)`, the labelled Veblen configurations `𝒱_s(μ)` and
//! the complement map κ.
//!
//! Configurations "on ℘₂(I_n)" use the pair index of [`Pair::index`] as point
//! id and carry labels `{i,j}`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{Config, Line, PointId};
use crate::perm::Perm;
use crate::skews::{Pair, Skew};

pub fn pair_labels(n: usize) -> Vec<String> {
    Pair::all(n).map(|u| u.to_string()).collect()
}

/// A labelled configuration on `℘₂(I_n)` from lines given as pair triples.
pub fn pair_config(n: usize, lines: &[[Pair; 3]]) -> Config {
    let lines = lines
        .iter()
        .map(|[u, v, w]| Line::new(u.index(n), v.index(n), w.index(n)))
        .collect();
    Config::new(Pair::count(n), lines).with_labels(pair_labels(n))
}

/// The pair carried by each point of a configuration on `℘₂(I_n)`, read from
/// labels when present and from the index order otherwise.
pub fn axis_pairs(c: &Config, n: usize) -> Result<Vec<Pair>> {
    let mismatch = |reason: String| Error::LabelMismatch { n, reason };
    if c.num_points() != Pair::count(n) {
        return Err(mismatch(format!(
            "{} points where ℘₂(I_{n}) has {}",
            c.num_points(),
            Pair::count(n)
        )));
    }
    let Some(labels) = c.labels() else {
        return Ok(Pair::all(n).collect());
    };
    let mut seen = vec![false; Pair::count(n)];
    labels
        .iter()
        .map(|l| {
            let u = Pair::parse(l)
                .filter(|u| u.hi <= n)
                .ok_or_else(|| mismatch(format!("label {l:?} is not a pair of I_{n}")))?;
            if std::mem::replace(&mut seen[u.index(n)], true) {
                return Err(mismatch(format!("pair {u} labels two points")));
            }
            Ok(u)
        })
        .collect()
}

/// Rewrites a configuration on `℘₂(I_n)` so that point ids are pair indices.
pub fn normalize_axis(c: &Config, n: usize) -> Result<Config> {
    let pairs = axis_pairs(c, n)?;
    let lines = c.lines().iter().map(|l| l.map(|p| PointId::from(pairs[p.index()].index(n)))).collect();
    Ok(Config::new(Pair::count(n), lines).with_labels(pair_labels(n)))
}

/// `G(I_n, 2)`: points `℘₂(I_n)`, lines `℘₂(Y)` for `Y ∈ ℘₃(I_n)`.
pub fn grassmannian(n: usize) -> Result<Config> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("grassmannian needs n >= 3, got {n}")));
    }
    let lines: Vec<[Pair; 3]> = (1..=n)
        .tuple_combinations()
        .map(|(i, j, k)| [Pair::new(i, j), Pair::new(i, k), Pair::new(j, k)])
        .collect();
    Ok(pair_config(n, &lines))
}

/// A `k`-multiset over `{a, b, c}` by its exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Multiset3 {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Multiset3 {
    pub fn weight(&self) -> usize {
        self.a + self.b + self.c
    }

    /// All multisets of weight `k`, lexicographic in `(a, b, c)`.
    pub fn all(k: usize) -> Vec<Multiset3> {
        (0..=k)
            .flat_map(|a| (0..=k - a).map(move |b| Multiset3 { a, b, c: k - a - b }))
            .collect()
    }

    fn index_in(&self, k: usize) -> usize {
        // rows a' < a contribute (k - a' + 1) entries each
        (0..self.a).map(|x| k - x + 1).sum::<usize>() + self.b
    }

    pub fn parse(s: &str) -> Option<Multiset3> {
        let mut m = Multiset3 { a: 0, b: 0, c: 0 };
        for tok in s.split_whitespace() {
            let (letter, exp) = tok.split_once('^')?;
            let e: usize = exp.parse().ok()?;
            match letter {
                "a" => m.a = e,
                "b" => m.b = e,
                "c" => m.c = e,
                _ => return None,
            }
        }
        Some(m)
    }
}

impl fmt::Display for Multiset3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{} c^{}", self.a, self.b, self.c)
    }
}

/// `V(X, k)`: points are the `k`-multisets over a 3-letter alphabet; for
/// every `s ≥ 1` and `e` of weight `k − s` the set `{e·aˢ, e·bˢ, e·cˢ}` is a line.
pub fn veronesian(k: usize) -> Result<Config> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("veronesian needs k >= 1, got {k}")));
    }
    let points = Multiset3::all(k);
    let mut lines = Vec::new();
    for s in 1..=k {
        for e in Multiset3::all(k - s) {
            let pa = Multiset3 { a: e.a + s, ..e };
            let pb = Multiset3 { b: e.b + s, ..e };
            let pc = Multiset3 { c: e.c + s, ..e };
            lines.push(Line::new(pa.index_in(k), pb.index_in(k), pc.index_in(k)));
        }
    }
    Ok(Config::new(points.len(), lines).with_labels(points.iter().map(|m| m.to_string()).collect()))
}

/// `V(X, k−2)` placed on `℘₂(I_k)` so that `Π(k, ζ_k, ·)` reproduces
/// `V(X, k)`: the pair `{i,j}`, `i < j`, carries `a^{k−j} b^{i−1} c^{j−i−1}`.
pub fn veronesian_axis(k: usize) -> Result<Config> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("veronesian axis needs k >= 3, got {k}")));
    }
    let v = veronesian(k - 2)?;
    let to_pair = |m: Multiset3| Pair::new(m.b + 1, k - m.a);
    let multisets = Multiset3::all(k - 2);
    let lines = v
        .lines()
        .iter()
        .map(|l| l.map(|p| PointId::from(to_pair(multisets[p.index()]).index(k))))
        .collect();
    Ok(Config::new(Pair::count(k), lines).with_labels(pair_labels(k)))
}

/// The roles of the points of `Π(n, σ, N)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PerspectiveLabeling {
    pub n: usize,
    pub center: PointId,
    pub a: Vec<PointId>,
    pub b: Vec<PointId>,
    /// `c[index(u)]` is `c_u`
    pub c: Vec<PointId>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Center,
    A(usize),
    B(usize),
    C(Pair),
}

impl PerspectiveLabeling {
    /// The standard layout: `a_1..a_n`, `b_1..b_n`, `p`, then `c_u` by pair index.
    pub fn standard(n: usize) -> PerspectiveLabeling {
        PerspectiveLabeling {
            n,
            a: (0..n).map(PointId::from).collect(),
            b: (n..2 * n).map(PointId::from).collect(),
            center: PointId::from(2 * n),
            c: (0..Pair::count(n)).map(|k| PointId::from(2 * n + 1 + k)).collect(),
        }
    }

    pub fn num_points(&self) -> usize {
        2 * self.n + 1 + Pair::count(self.n)
    }

    pub fn a(&self, i: usize) -> PointId {
        self.a[i - 1]
    }

    pub fn b(&self, i: usize) -> PointId {
        self.b[i - 1]
    }

    pub fn c(&self, u: Pair) -> PointId {
        self.c[u.index(self.n)]
    }

    pub fn star(&self, i: usize) -> Vec<PointId> {
        (1..=self.n).filter(|&x| x != i).map(|x| self.c(Pair::new(x, i))).collect()
    }

    pub fn roles(&self) -> Vec<Role> {
        let mut roles = vec![Role::Center; self.num_points()];
        for i in 1..=self.n {
            roles[self.a(i).index()] = Role::A(i);
            roles[self.b(i).index()] = Role::B(i);
        }
        for u in Pair::all(self.n) {
            roles[self.c(u).index()] = Role::C(u);
        }
        roles
    }

    pub fn labels(&self) -> Vec<String> {
        self.roles()
            .into_iter()
            .map(|r| match r {
                Role::Center => "p".to_string(),
                Role::A(i) => format!("a{i}"),
                Role::B(i) => format!("b{i}"),
                Role::C(u) => format!("c{u}"),
            })
            .collect()
    }

    /// Recovers the roles from labels `p`, `a<i>`, `b<i>`, `c{i,j}`.
    pub fn from_labels(c: &Config) -> Result<PerspectiveLabeling> {
        let labels = c
            .labels()
            .ok_or_else(|| Error::Precondition("configuration has no labels".into()))?;
        let total = labels.len();
        let n = (1..total).find(|&n| 2 * n + 1 + Pair::count(n) == total).ok_or_else(|| {
            Error::Precondition(format!("{total} points do not fit a perspective layout"))
        })?;
        let missing = |what: String| Error::Precondition(format!("no point labelled {what}"));
        let find = |name: String| c.point_by_label(&name).ok_or_else(|| missing(name));
        Ok(PerspectiveLabeling {
            n,
            center: find("p".into())?,
            a: (1..=n).map(|i| find(format!("a{i}"))).collect::<Result<_>>()?,
            b: (1..=n).map(|i| find(format!("b{i}"))).collect::<Result<_>>()?,
            c: Pair::all(n).map(|u| find(format!("c{u}"))).collect::<Result<_>>()?,
        })
    }

    /// The axial configuration, read back from a host.
    pub fn axis_of(&self, host: &Config) -> Config {
        let mut back = vec![usize::MAX; host.num_points()];
        for (k, p) in self.c.iter().enumerate() {
            back[p.index()] = k;
        }
        let lines = host
            .lines()
            .iter()
            .filter(|l| l.points().iter().all(|p| back[p.index()] != usize::MAX))
            .map(|l| l.map(|p| PointId::from(back[p.index()])))
            .collect();
        Config::new(Pair::count(self.n), lines).with_labels(pair_labels(self.n))
    }
}

/// `Π(n, σ, N)` together with its ingredients.
#[derive(Clone, Debug)]
pub struct Perspective {
    pub config: Config,
    pub labeling: PerspectiveLabeling,
    pub skew: Skew,
    /// the axis in pair-index coordinates
    pub axis: Config,
}

impl Perspective {
    pub fn n(&self) -> usize {
        self.labeling.n
    }
}

/// The skew perspective: lines `{p,a_i,b_i}`,
/// `{a_i,a_j,c_{ij}}`, `{b_i,b_j,c_{σ⁻¹(ij)}}` and the lines of `N` on the `c`s.
/// `N` must be a binomial configuration on `℘₂(I_n)`.
pub fn perspective(n: usize, sigma: &Skew, axis: &Config) -> Result<Perspective> {
    build_perspective(n, sigma, axis, true)
}

/// As [`perspective`], accepting any PSTS on `℘₂(I_n)` as axis.
pub fn perspective_unchecked(n: usize, sigma: &Skew, axis: &Config) -> Result<Perspective> {
    build_perspective(n, sigma, axis, false)
}

fn build_perspective(n: usize, sigma: &Skew, axis: &Config, binomial: bool) -> Result<Perspective> {
    if sigma.n() != n {
        return Err(Error::Arity {
            expected: n,
            skew: sigma.n(),
        });
    }
    let axis = normalize_axis(axis, n)?;
    axis.ensure_valid()?;
    if binomial && axis.parameters()?.binomial_n != Some(n) {
        return Err(Error::Precondition(format!(
            "axis {} is not binomial with n = {n}",
            axis.parameters()?
        )));
    }
    let lab = PerspectiveLabeling::standard(n);
    let inv = sigma.inverse();
    let mut lines = Vec::new();
    for i in 1..=n {
        lines.push(Line::new(lab.center, lab.a(i), lab.b(i)));
    }
    for u in Pair::all(n) {
        lines.push(Line::new(lab.a(u.lo), lab.a(u.hi), lab.c(u)));
        lines.push(Line::new(lab.b(u.lo), lab.b(u.hi), lab.c(inv.apply(u))));
    }
    for l in axis.lines() {
        lines.push(l.map(|p| lab.c[p.index()]));
    }
    let config = Config::new(lab.num_points(), lines).with_labels(lab.labels());
    Ok(Perspective {
        config,
        labeling: lab,
        skew: sigma.clone(),
        axis,
    })
}

/// Reads `Π(n, σ, N)` back from a configuration labelled `p`, `a<i>`, `b<i>`,
/// `c{i,j}`. The skew comes from the `b`-lines, the axis from the lines on
/// the `c`s; the result is rebuilt in the standard layout and compared.
pub fn recover_perspective(c: &Config) -> Result<Perspective> {
    c.ensure_valid()?;
    let lab = PerspectiveLabeling::from_labels(c)?;
    let n = lab.n;
    let std = PerspectiveLabeling::standard(n);
    let mut to_std = vec![PointId(0); c.num_points()];
    let (from, onto) = (lab.roles(), std.roles());
    for (x, r) in from.iter().enumerate() {
        let y = onto.iter().position(|s| s == r).expect("same role set");
        to_std[x] = PointId::from(y);
    }
    let host = c.relabel(&to_std)?;
    let back = |p: PointId| onto[p.index()];
    let mut image = vec![None; Pair::count(n)];
    for l in host.lines() {
        let roles = l.points().map(back);
        let bs: Vec<usize> = roles.iter().filter_map(|r| if let Role::B(i) = r { Some(*i) } else { None }).collect();
        let cs: Vec<Pair> = roles.iter().filter_map(|r| if let Role::C(u) = r { Some(*u) } else { None }).collect();
        if let ([i, j], [v]) = (bs.as_slice(), cs.as_slice()) {
            image[v.index(n)] = Some(Pair::new(*i, *j));
        }
    }
    let image: Vec<Pair> = image
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("some c_u lies on no b-line".into()))?;
    let sigma = Skew::from_fn(n, |v| image[v.index(n)])?;
    let m = perspective_unchecked(n, &sigma, &std.axis_of(&host))?;
    if !m.config.same_lines(&host) {
        return Err(Error::Precondition("lines do not follow the perspective pattern".into()));
    }
    Ok(m)
}

/// Names a labelled Veblen configuration `𝒱_s(μ)` on `℘₂(I_4)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct VeblenLabel {
    pub s: u8,
    pub mu: Perm,
    pub i0: usize,
}

impl VeblenLabel {
    /// `i0` defaults to the largest fixed point of `μ`.
    pub fn new(s: u8, mu: Perm) -> Result<VeblenLabel> {
        let i0 = *mu
            .fixed_points()
            .last()
            .ok_or_else(|| Error::Precondition(format!("{mu} has no fixed point")))?;
        VeblenLabel::with_i0(s, mu, i0)
    }

    pub fn with_i0(s: u8, mu: Perm, i0: usize) -> Result<VeblenLabel> {
        if s != 5 && s != 6 {
            return Err(Error::OutOfRange(format!("switch s must be 5 or 6, got {s}")));
        }
        if mu.degree() != 4 {
            return Err(Error::OutOfRange(format!("mu must permute I_4, got {mu}")));
        }
        if mu.is_derangement() {
            return Err(Error::Precondition(format!("{mu} has no fixed point")));
        }
        if !(1..=4).contains(&i0) || mu.apply(i0) != i0 {
            return Err(Error::Precondition(format!("{i0} is not a fixed point of {mu}")));
        }
        Ok(VeblenLabel { s, mu, i0 })
    }

    /// Parses `v5:(1)(2)(3)(4)` or `v6:(4)(1,2,3)`.
    pub fn parse(s: &str) -> Result<VeblenLabel> {
        let bad = || Error::Precondition(format!("expected v5:<perm> or v6:<perm>, got {s:?}"));
        let (head, perm) = s.trim().split_once(':').ok_or_else(bad)?;
        let sw = match head.trim() {
            "v5" | "5" => 5,
            "v6" | "6" => 6,
            _ => return Err(bad()),
        };
        VeblenLabel::new(sw, Perm::parse_cycles(perm, Some(4))?)
    }
}

impl fmt::Display for VeblenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:{}", self.s, self.mu)
    }
}

/// Materialises `𝒱_s(μ)`. With `R = I_4 ∖ {i0}`: for `s = 5` the lines are
/// `T(i0) = ℘₂(R)` and, for each `k ∈ R` with `{i,j} = R ∖ {k}`,
/// `{c_{i,i0}, c_{j,i0}, c_w}` where `w = R ∖ {μ(k)}`; for `s = 6` they are
/// `S(i0)` and `{c_{i,k}, c_{j,k}, c_{μ(k),i0}}`.
pub fn veblen(label: &VeblenLabel) -> Config {
    let i0 = label.i0;
    let r: Vec<usize> = (1..=4).filter(|&x| x != i0).collect();
    let rest = |excluded: usize| -> (usize, usize) {
        let v: Vec<usize> = r.iter().copied().filter(|&x| x != excluded).collect();
        (v[0], v[1])
    };
    let mut lines = Vec::new();
    if label.s == 5 {
        lines.push([Pair::new(r[0], r[1]), Pair::new(r[0], r[2]), Pair::new(r[1], r[2])]);
        for &k in &r {
            let (i, j) = rest(k);
            let (x, y) = rest(label.mu.apply(k));
            lines.push([Pair::new(i, i0), Pair::new(j, i0), Pair::new(x, y)]);
        }
    } else {
        lines.push([Pair::new(r[0], i0), Pair::new(r[1], i0), Pair::new(r[2], i0)]);
        for &k in &r {
            let (i, j) = rest(k);
            lines.push([Pair::new(i, k), Pair::new(j, k), Pair::new(label.mu.apply(k), i0)]);
        }
    }
    pair_config(4, &lines)
}

/// κ: relabels every point `u` of a configuration on `℘₂(I_4)` by `I_4 ∖ u`.
pub fn kappa(c: &Config) -> Result<Config> {
    let pairs = axis_pairs(c, 4)?;
    let complement = |u: Pair| {
        let v: Vec<usize> = (1..=4).filter(|&x| !u.contains(x)).collect();
        Pair::new(v[0], v[1])
    };
    let lines = c
        .lines()
        .iter()
        .map(|l| l.map(|p| PointId::from(complement(pairs[p.index()]).index(4))))
        .collect();
    Ok(Config::new(Pair::count(4), lines).with_labels(pair_labels(4)))
}

/// The image `ᾱ(N)` of a configuration on `℘₂(I_n)` under a pair permutation.
pub fn skew_image(sigma: &Skew, axis: &Config) -> Result<Config> {
    let axis = normalize_axis(axis, sigma.n())?;
    let mut out = axis.relabel(&sigma.as_point_map())?;
    out = out.with_labels(pair_labels(sigma.n()));
    Ok(out)
}
