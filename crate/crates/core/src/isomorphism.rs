//! Canonical forms, isomorphism witnesses and automorphism groups.
//!
//! The canonizer works on the Levi graph (points, then lines). Colourings are
//! refined by neighbour-colour multisets until stable; the search tree
//! individualizes points of the first non-singleton point cell. Every node
//! carries a relabelling-invariant trace, and the canonical leaf is the one
//! with the least (trace sequence, relabelled line list). Automorphisms found
//! on the way prune sibling subtrees by orbits.
//!
//! `are_isomorphic` is a separate backtracking search over point maps and
//! serves as an independent oracle for the canonizer.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::constructions::{perspective, skew_image, Perspective};
use crate::error::{Error, Result};
use crate::incidence::{Config, Incidence, Line, PointId};
use crate::perm::Perm;
use crate::skews::{Pair, Skew};

/// A relabelling-invariant normal form. Equality and hashing look at the
/// point count and the canonical line list only.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalCertificate {
    pub num_points: usize,
    pub canonical_line_list: Vec<[u32; 3]>,
    /// `relabeling[x]` is the canonical id of point `x`
    pub relabeling: Vec<PointId>,
}

impl PartialEq for CanonicalCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.num_points == other.num_points && self.canonical_line_list == other.canonical_line_list
    }
}

impl Eq for CanonicalCertificate {}

impl Hash for CanonicalCertificate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num_points.hash(state);
        self.canonical_line_list.hash(state);
    }
}

impl CanonicalCertificate {
    /// The canonical configuration itself.
    pub fn to_config(&self) -> Config {
        Config::from_triples(
            self.num_points,
            &self
                .canonical_line_list
                .iter()
                .map(|l| [l[0] as usize, l[1] as usize, l[2] as usize])
                .collect::<Vec<_>>(),
        )
    }

    /// Short stable digest, handy for reports.
    pub fn digest(&self) -> String {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        format!("{:016x}", h.finish())
    }
}

struct Levi {
    points: usize,
    adj: Vec<Vec<u32>>,
}

impl Levi {
    fn new(c: &Config) -> Levi {
        let points = c.num_points();
        let mut adj = vec![Vec::new(); points + c.lines().len()];
        for (k, line) in c.lines().iter().enumerate() {
            let lv = (points + k) as u32;
            for p in line.points() {
                adj[p.index()].push(lv);
                adj[lv as usize].push(p.0);
            }
        }
        Levi { points, adj }
    }

    fn initial_colors(&self) -> Vec<u32> {
        (0..self.adj.len()).map(|v| (v >= self.points) as u32).collect()
    }

    /// Refines to the coarsest equitable partition below `colors`. Colours are
    /// dense ranks and the old colour order is kept. Returns the trace.
    fn refine(&self, colors: &mut Vec<u32>) -> u64 {
        let mut hasher = DefaultHasher::new();
        let mut count = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = self
                .adj
                .iter()
                .enumerate()
                .map(|(v, nb)| {
                    let mut s: Vec<u32> = nb.iter().map(|&w| colors[w as usize]).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            uniq.sort_unstable();
            uniq.dedup();
            for s in &uniq {
                s.hash(&mut hasher);
            }
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| uniq.binary_search(&s).expect("present") as u32)
                .collect();
            *colors = next;
            if uniq.len() == count {
                break;
            }
            count = uniq.len();
        }
        hasher.finish()
    }

    /// The first non-singleton cell among points, as sorted vertex list.
    fn target_cell(&self, colors: &[u32]) -> Option<Vec<u32>> {
        let mut size = vec![0usize; self.adj.len()];
        for &c in &colors[..self.points] {
            size[c as usize] += 1;
        }
        let cell = (0..self.adj.len()).find(|&c| size[c] > 1)? as u32;
        Some((0..self.points as u32).filter(|&v| colors[v as usize] == cell).collect())
    }

    fn individualize(colors: &[u32], v: u32) -> Vec<u32> {
        let c = colors[v as usize];
        colors
            .iter()
            .enumerate()
            .map(|(w, &x)| if x > c || (x == c && w as u32 != v) { x + 1 } else { x })
            .collect()
    }

    fn certificate(&self, c: &Config, colors: &[u32]) -> Vec<[u32; 3]> {
        let mut lines: Vec<[u32; 3]> = c
            .lines()
            .iter()
            .map(|l| {
                let mut t = l.points().map(|p| colors[p.index()]);
                t.sort_unstable();
                t
            })
            .collect();
        lines.sort_unstable();
        lines
    }
}

#[derive(Clone)]
struct Leaf {
    trace: Vec<u64>,
    cert: Vec<[u32; 3]>,
    labeling: Vec<u32>,
}

fn cmp_traces(node: &[u64], best: &[u64]) -> Ordering {
    for (a, b) in node.iter().zip(best) {
        match a.cmp(b) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    if best.len() < node.len() {
        // the best path ended earlier and is a proper prefix: it is smaller
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

#[derive(PartialEq)]
enum Mode {
    Canonical,
    Automorphisms,
}

struct Search<'a> {
    levi: &'a Levi,
    config: &'a Config,
    mode: Mode,
    best: Option<Leaf>,
    first: Option<Leaf>,
    // point permutations, image of x at [x]
    autos: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn run(&mut self) {
        let mut colors = self.levi.initial_colors();
        let t = self.levi.refine(&mut colors);
        self.dfs(colors, vec![t], Vec::new());
    }

    fn dfs(&mut self, colors: Vec<u32>, trace: Vec<u64>, prefix: Vec<u32>) {
        let reference = match self.mode {
            Mode::Canonical => self.best.as_ref(),
            Mode::Automorphisms => self.first.as_ref(),
        };
        if let Some(r) = reference {
            let o = cmp_traces(&trace, &r.trace);
            let prune = match self.mode {
                Mode::Canonical => o == Ordering::Greater,
                Mode::Automorphisms => o != Ordering::Equal || trace.len() > r.trace.len(),
            };
            if prune {
                return;
            }
        }
        let Some(cell) = self.levi.target_cell(&colors) else {
            self.leaf(&colors, trace);
            return;
        };
        let mut tried: Vec<u32> = Vec::new();
        for &v in &cell {
            if self.mode == Mode::Canonical && self.same_orbit(&prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut next = Levi::individualize(&colors, v);
            let t = self.levi.refine(&mut next);
            let mut trace2 = trace.clone();
            trace2.push(t);
            let mut prefix2 = prefix.clone();
            prefix2.push(v);
            self.dfs(next, trace2, prefix2);
        }
    }

    fn same_orbit(&self, prefix: &[u32], tried: &[u32], v: u32) -> bool {
        if tried.is_empty() || self.autos.is_empty() {
            return false;
        }
        let n = self.levi.points;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut y = x;
            while parent[y as usize] != r {
                let nx = parent[y as usize];
                parent[y as usize] = r;
                y = nx;
            }
            r
        }
        for g in &self.autos {
            if prefix.iter().all(|&x| g[x as usize] == x) {
                for x in 0..n as u32 {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, g[x as usize]));
                    if a != b {
                        parent[a as usize] = b;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn leaf(&mut self, colors: &[u32], trace: Vec<u64>) {
        let cert = self.levi.certificate(self.config, colors);
        let labeling = colors[..self.levi.points].to_vec();
        let leaf = Leaf { trace, cert, labeling };
        match self.mode {
            Mode::Automorphisms => match &self.first {
                None => {
                    self.autos.push((0..self.levi.points as u32).collect());
                    self.first = Some(leaf);
                }
                Some(first) => {
                    if first.trace == leaf.trace && first.cert == leaf.cert {
                        self.autos.push(automorphism_between(first, &leaf));
                    }
                }
            },
            Mode::Canonical => {
                if self.first.is_none() {
                    self.first = Some(leaf.clone());
                }
                let first = self.first.as_ref().expect("set above");
                if leaf.trace == first.trace && leaf.cert == first.cert && leaf.labeling != first.labeling {
                    self.autos.push(automorphism_between(first, &leaf));
                }
                match &self.best {
                    None => self.best = Some(leaf),
                    Some(best) => {
                        let o = cmp_traces(&leaf.trace, &best.trace)
                            .then(leaf.trace.len().cmp(&best.trace.len()))
                            .then_with(|| leaf.cert.cmp(&best.cert));
                        match o {
                            Ordering::Less => self.best = Some(leaf),
                            Ordering::Equal if leaf.labeling != best.labeling => {
                                let g = automorphism_between(best, &leaf);
                                self.autos.push(g);
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
}

/// The point map sending `leaf`'s vertices onto `reference`'s with the same
/// canonical label. An automorphism when both leaves have equal certificates.
fn automorphism_between(reference: &Leaf, leaf: &Leaf) -> Vec<u32> {
    let mut inv = vec![0u32; reference.labeling.len()];
    for (x, &l) in reference.labeling.iter().enumerate() {
        inv[l as usize] = x as u32;
    }
    leaf.labeling.iter().map(|&l| inv[l as usize]).collect()
}

pub fn canonical_form(c: &Config) -> Result<CanonicalCertificate> {
    c.ensure_valid()?;
    let levi = Levi::new(c);
    let mut search = Search {
        levi: &levi,
        config: c,
        mode: Mode::Canonical,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    search.run();
    let best = search.best.expect("the search reaches at least one leaf");
    Ok(CanonicalCertificate {
        num_points: c.num_points(),
        canonical_line_list: best.cert,
        relabeling: best.labeling.into_iter().map(PointId).collect(),
    })
}

type CacheKey = (usize, Vec<Line>);

fn cache() -> &'static Mutex<HashMap<CacheKey, CanonicalCertificate>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, CanonicalCertificate>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`canonical_form`] memoised on the exact line set. Safe to call from many
/// threads; concurrent misses compute the same value.
pub fn canonical_form_cached(c: &Config) -> Result<CanonicalCertificate> {
    let key = (c.num_points(), c.lines().to_vec());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let cert = canonical_form(c)?;
    cache().lock().expect("cache lock").insert(key, cert.clone());
    Ok(cert)
}

/// Whether `f` maps the line set of `c1` exactly onto that of `c2`.
pub fn is_isomorphism(c1: &Config, c2: &Config, f: &[PointId]) -> bool {
    c1.num_points() == c2.num_points() && c1.relabel(f).is_ok_and(|img| img.same_lines(c2))
}

pub fn is_automorphism(c: &Config, f: &[PointId]) -> bool {
    is_isomorphism(c, c, f)
}

/// Label-invariant colours from iterated neighbour hashing on the Levi graph;
/// comparable across configurations.
fn hashed_colors(c: &Config, rounds: usize) -> Vec<u64> {
    let levi = Levi::new(c);
    let mut colors: Vec<u64> = levi.initial_colors().into_iter().map(u64::from).collect();
    for _ in 0..rounds {
        colors = levi
            .adj
            .iter()
            .enumerate()
            .map(|(v, nb)| {
                let mut s: Vec<u64> = nb.iter().map(|&w| colors[w as usize]).collect();
                s.sort_unstable();
                let mut h = DefaultHasher::new();
                (colors[v], s).hash(&mut h);
                h.finish()
            })
            .collect();
    }
    colors.truncate(c.num_points());
    colors
}

/// Some isomorphism `c1 → c2`, by direct backtracking.
pub fn are_isomorphic(c1: &Config, c2: &Config) -> Option<Vec<PointId>> {
    are_isomorphic_pinned(c1, c2, &[])
}

/// As [`are_isomorphic`], restricted to maps with `f(x) = y` for every pin `(x, y)`.
pub fn are_isomorphic_pinned(c1: &Config, c2: &Config, pins: &[(PointId, PointId)]) -> Option<Vec<PointId>> {
    let n = c1.num_points();
    if n != c2.num_points() || c1.lines().len() != c2.lines().len() {
        return None;
    }
    if !c1.validate().is_ok() || !c2.validate().is_ok() {
        return None;
    }
    let (r1, r2) = (c1.ranks(), c2.ranks());
    let (mut s1, mut s2) = (r1.clone(), r2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let rounds = 4;
    let (h1, h2) = (hashed_colors(c1, rounds), hashed_colors(c2, rounds));
    let (mut t1, mut t2) = (h1.clone(), h2.clone());
    t1.sort_unstable();
    t2.sort_unstable();
    if t1 != t2 {
        return None;
    }
    let (i1, i2) = (Incidence::new(c1), Incidence::new(c2));

    // placement order: pins first, then greedily the point most tied to the placed ones
    let mut order: Vec<PointId> = Vec::new();
    let mut placed = vec![false; n];
    for &(x, _) in pins {
        if x.index() >= n || placed[x.index()] {
            return None;
        }
        placed[x.index()] = true;
        order.push(x);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let ties = order.iter().filter(|&&y| i1.collinear(PointId::from(x), y)).count();
                (ties, r1[x], std::cmp::Reverse(x))
            })
            .expect("an unplaced point remains");
        placed[next] = true;
        order.push(PointId::from(next));
    }

    struct State<'a> {
        i1: &'a Incidence,
        i2: &'a Incidence,
        h1: &'a [u64],
        h2: &'a [u64],
        order: &'a [PointId],
        pins: &'a [(PointId, PointId)],
        f: Vec<Option<PointId>>,
        g: Vec<Option<PointId>>,
    }

    impl State<'_> {
        fn consistent(&self, x: PointId, y: PointId) -> bool {
            if self.h1[x.index()] != self.h2[y.index()] || self.g[y.index()].is_some() {
                return false;
            }
            for (x2, y2) in self.f.iter().enumerate().filter_map(|(a, b)| b.map(|b| (PointId::from(a), b))) {
                let j1 = self.i1.join(x, x2);
                let j2 = self.i2.join(y, y2);
                if j1.is_some() != j2.is_some() {
                    return false;
                }
                if let (Some(z1), Some(z2)) = (j1, j2) {
                    if let Some(fz) = self.f[z1.index()] {
                        if fz != z2 {
                            return false;
                        }
                    }
                    if let Some(gz) = self.g[z2.index()] {
                        if gz != z1 {
                            return false;
                        }
                    }
                }
            }
            true
        }

        fn search(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let x = self.order[depth];
            let candidates: Vec<PointId> = match self.pins.get(depth) {
                Some(&(_, y)) => vec![y],
                // trying x itself first makes self-comparisons return the identity
                None => std::iter::once(x)
                    .chain((0..self.i2.num_points()).map(PointId::from).filter(|&y| y != x))
                    .collect(),
            };
            for y in candidates {
                if y.index() >= self.i2.num_points() || !self.consistent(x, y) {
                    continue;
                }
                self.f[x.index()] = Some(y);
                self.g[y.index()] = Some(x);
                if self.search(depth + 1) {
                    return true;
                }
                self.f[x.index()] = None;
                self.g[y.index()] = None;
            }
            false
        }
    }

    let mut st = State {
        i1: &i1,
        i2: &i2,
        h1: &h1,
        h2: &h2,
        order: &order,
        pins,
        f: vec![None; n],
        g: vec![None; n],
    };
    if !st.search(0) {
        return None;
    }
    let f: Vec<PointId> = st.f.into_iter().map(|y| y.expect("total")).collect();
    is_isomorphism(c1, c2, &f).then_some(f)
}

/// The full automorphism group: generators and order.
#[derive(Clone, Debug, Serialize)]
pub struct AutGroup {
    pub generators: Vec<Vec<PointId>>,
    pub order: usize,
}

fn closure_size(gens: &[Vec<u32>], n: usize) -> usize {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&p| g[p as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// Enumerates every automorphism as a leaf of the search tree equivalent to
/// the first leaf, then extracts a generating set by closure.
pub fn automorphism_group(c: &Config) -> Result<AutGroup> {
    c.ensure_valid()?;
    let levi = Levi::new(c);
    let mut search = Search {
        levi: &levi,
        config: c,
        mode: Mode::Automorphisms,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    search.run();
    let all = search.autos;
    let n = c.num_points();
    for g in &all {
        let f: Vec<PointId> = g.iter().map(|&x| PointId(x)).collect();
        if !is_automorphism(c, &f) {
            return Err(Error::Precondition("canonizer produced a non-automorphism".into()));
        }
    }
    let order = all.len();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut size = 1;
    for g in &all {
        if size == order {
            break;
        }
        let mut trial = gens.clone();
        trial.push(g.clone());
        let s = closure_size(&trial, n);
        if s > size {
            gens = trial;
            size = s;
        }
    }
    Ok(AutGroup {
        generators: gens.into_iter().map(|g| g.into_iter().map(PointId).collect()).collect(),
        order,
    })
}

/// All automorphisms, as point maps (identity first).
pub fn automorphisms(c: &Config) -> Result<Vec<Vec<PointId>>> {
    c.ensure_valid()?;
    let levi = Levi::new(c);
    let mut search = Search {
        levi: &levi,
        config: c,
        mode: Mode::Automorphisms,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    search.run();
    Ok(search
        .autos
        .into_iter()
        .map(|g| g.into_iter().map(PointId).collect())
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum IsoType {
    /// `φ̄σ₁ = σ₂φ̄`, `N₂ = φ̄(N₁)`; `a_i ↦ a_{φ(i)}`, `b_i ↦ b_{φ(i)}`
    One,
    /// `φ̄σ₁⁻¹ = σ₂φ̄`, `N₂ = φ̄σ₁(N₁)`; `a_i ↦ b_{φ(i)}`, `b_i ↦ a_{φ(i)}`
    Two,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerspectiveIso {
    pub kind: IsoType,
    pub phi: Perm,
    pub map: Vec<PointId>,
}

fn phi_map(m1: &Perspective, m2: &Perspective, kind: IsoType, phi: &Perm) -> Vec<PointId> {
    let (l1, l2) = (&m1.labeling, &m2.labeling);
    let n = m1.n();
    let bar = Skew::bar(phi);
    let mut f = vec![PointId(0); m1.config.num_points()];
    f[l1.center.index()] = l2.center;
    for i in 1..=n {
        let j = phi.apply(i);
        let (ta, tb) = match kind {
            IsoType::One => (l2.a(j), l2.b(j)),
            IsoType::Two => (l2.b(j), l2.a(j)),
        };
        f[l1.a(i).index()] = ta;
        f[l1.b(i).index()] = tb;
    }
    let sigma2_inv = m2.skew.inverse();
    for u in Pair::all(n) {
        let v = match kind {
            IsoType::One => bar.apply(u),
            IsoType::Two => sigma2_inv.apply(bar.apply(u)),
        };
        f[l1.c(u).index()] = l2.c(v);
    }
    f
}

/// Every isomorphism `Π(n,σ₁,N₁) → Π(n,σ₂,N₂)` fixing the centre, found by
/// testing the two algebraic conditions for each `φ ∈ S_n`. Each hit is
/// converted to a point map and verified.
pub fn perspective_isos(m1: &Perspective, m2: &Perspective) -> Vec<PerspectiveIso> {
    let n = m1.n();
    if n != m2.n() {
        return Vec::new();
    }
    let (s1, s2) = (&m1.skew, &m2.skew);
    let s1_inv = s1.inverse();
    let mut out = Vec::new();
    for phi in Perm::all(n) {
        let bar = Skew::bar(&phi);
        for kind in [IsoType::One, IsoType::Two] {
            let (lhs, moved) = match kind {
                IsoType::One => (bar.compose(s1), bar.clone()),
                IsoType::Two => (bar.compose(&s1_inv), bar.compose(s1)),
            };
            if lhs != s2.compose(&bar) {
                continue;
            }
            let Ok(image) = skew_image(&moved, &m1.axis) else { continue };
            if !image.same_lines(&m2.axis) {
                continue;
            }
            let map = phi_map(m1, m2, kind, &phi);
            if is_isomorphism(&m1.config, &m2.config, &map) {
                out.push(PerspectiveIso {
                    kind,
                    phi: phi.clone(),
                    map,
                });
            }
        }
    }
    out
}

pub fn perspective_iso(m1: &Perspective, m2: &Perspective) -> Option<PerspectiveIso> {
    perspective_isos(m1, m2).into_iter().next()
}

/// The involution `𝒮`: `a_i ↦ b_i`, `b_i ↦ a_i`, `c_u ↦ c_{σ(u)}`, together
/// with its verified target `Π(n, σ⁻¹, σ(N))`.
pub fn s_map(m: &Perspective) -> Result<(Vec<PointId>, Perspective)> {
    let n = m.n();
    let target = perspective(n, &m.skew.inverse(), &skew_image(&m.skew, &m.axis)?)?;
    let (l1, l2) = (&m.labeling, &target.labeling);
    let mut f = vec![PointId(0); m.config.num_points()];
    f[l1.center.index()] = l2.center;
    for i in 1..=n {
        f[l1.a(i).index()] = l2.b(i);
        f[l1.b(i).index()] = l2.a(i);
    }
    for u in Pair::all(n) {
        f[l1.c(u).index()] = l2.c(m.skew.apply(u));
    }
    if !is_isomorphism(&m.config, &target.config, &f) {
        return Err(Error::Precondition("the swap map is not an isomorphism".into()));
    }
    Ok((f, target))
}
