//! Free complete subgraphs, the star cliques `G_(i)`, the `Cross(k)`
//! predicate, re-presentation of a perspective from a second centre, and STP
//! diagrams of three-clique `(15₄ 20₃)` configurations.

use itertools::Itertools;
use serde::Serialize;

use crate::constructions::{pair_labels, perspective, Perspective};
use crate::error::{Error, Result};
use crate::incidence::{Config, Incidence, Line, PointId};
use crate::isomorphism::is_isomorphism;
use crate::perm::Perm;
use crate::skews::{Pair, PhiSequence, Skew};

/// A complete graph freely contained in a configuration, with the line
/// extending each edge.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FreeClique {
    pub vertices: Vec<PointId>,
    pub edge_lines: Vec<((PointId, PointId), Line)>,
}

fn lines_meet(a: &Line, b: &Line) -> bool {
    a.points().iter().any(|p| b.contains(*p))
}

/// Edge `(x, y)` of a candidate clique may join the vertices in `placed`:
/// collinear with each, extending to fresh lines, and those lines missing the
/// lines of all disjoint edges.
fn extends(c: &Config, inc: &Incidence, placed: &[PointId], v: PointId) -> bool {
    if placed.contains(&v) {
        return false;
    }
    let mut new_lines = Vec::with_capacity(placed.len());
    for &s in placed {
        match inc.line_of(v, s) {
            Some(k) => new_lines.push((s, c.lines()[k])),
            None => return false,
        }
    }
    for (i, &x) in placed.iter().enumerate() {
        for &y in &placed[i + 1..] {
            let old = c.lines()[inc.line_of(x, y).expect("placed vertices are collinear")];
            if old.contains(v) {
                return false;
            }
            for (s, l) in &new_lines {
                if *s != x && *s != y && lines_meet(l, &old) {
                    return false;
                }
            }
        }
    }
    true
}

fn clique_of(c: &Config, inc: &Incidence, vertices: Vec<PointId>) -> FreeClique {
    let edge_lines = vertices
        .iter()
        .tuple_combinations()
        .map(|(&x, &y)| ((x, y), c.lines()[inc.line_of(x, y).expect("edge")]))
        .collect();
    FreeClique { vertices, edge_lines }
}

/// The complete graph on `vertices`, if `c` contains it freely.
pub fn freely_contains(c: &Config, vertices: &[PointId]) -> Option<FreeClique> {
    if vertices.iter().any(|p| p.index() >= c.num_points()) {
        return None;
    }
    let inc = Incidence::new(c);
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut placed = Vec::new();
    for &v in &sorted {
        if !extends(c, &inc, &placed, v) {
            return None;
        }
        placed.push(v);
    }
    Some(clique_of(c, &inc, placed))
}

/// Every free `K_m`, in lexicographic order of sorted vertex lists.
pub fn enumerate_free_cliques(c: &Config, m: usize) -> Vec<FreeClique> {
    let inc = Incidence::new(c);
    let mut out = Vec::new();
    let mut placed = Vec::new();
    fn grow(c: &Config, inc: &Incidence, m: usize, start: usize, placed: &mut Vec<PointId>, out: &mut Vec<Vec<PointId>>) {
        if placed.len() == m {
            out.push(placed.clone());
            return;
        }
        let need = m - placed.len();
        for v in start..c.num_points() {
            if c.num_points() - v < need {
                break;
            }
            let v = PointId::from(v);
            if extends(c, inc, placed, v) {
                placed.push(v);
                grow(c, inc, m, v.index() + 1, placed, out);
                placed.pop();
            }
        }
    }
    if m == 0 {
        return vec![FreeClique {
            vertices: vec![],
            edge_lines: vec![],
        }];
    }
    grow(c, &inc, m, 0, &mut placed, &mut out);
    out.into_iter().map(|v| clique_of(c, &inc, v)).collect()
}

fn check_phi(m: &Perspective, phi: &PhiSequence) -> Result<()> {
    if phi.n() != m.n() || phi.skew() != m.skew {
        return Err(Error::Precondition(format!(
            "the perspective's skew is not generated by {phi}"
        )));
    }
    Ok(())
}

/// Whether `Φ` fixes `i` at every level above it.
pub fn phi_fixes_above(phi: &PhiSequence, i: usize) -> bool {
    (i + 1..=phi.n()).all(|j| phi.phi(j).apply(i) == i)
}

/// The indices `i0` whose `G_(i0) = {a_i0, b_i0} ∪ S(i0)` is an extra free
/// `K_{n+1}`, from the criterion: `S(i0)` free in the axis and `Φ` fixing `i0`
/// above it.
pub fn star_clique_indices(m: &Perspective, phi: &PhiSequence) -> Result<Vec<usize>> {
    check_phi(m, phi)?;
    let n = m.n();
    let axis_inc = Incidence::new(&m.axis);
    Ok((1..=n)
        .filter(|&i| phi_fixes_above(phi, i))
        .filter(|&i| {
            let star: Vec<PointId> = (1..=n)
                .filter(|&x| x != i)
                .map(|x| PointId::from(Pair::new(x, i).index(n)))
                .collect();
            let mut placed = Vec::new();
            star.iter().all(|&v| {
                let ok = extends(&m.axis, &axis_inc, &placed, v);
                placed.push(v);
                ok
            })
        })
        .collect())
}

/// The same indices by testing each `G_(i)` directly in the host.
pub fn star_clique_indices_brute(m: &Perspective) -> Vec<usize> {
    let lab = &m.labeling;
    (1..=m.n())
        .filter(|&i| {
            let mut g = lab.star(i);
            g.push(lab.a(i));
            g.push(lab.b(i));
            freely_contains(&m.config, &g).is_some()
        })
        .collect()
}

/// `Cross(k)`: every line `L(a_k, a_i)` meets some line `L(b_k, b_j)`, by a
/// direct scan of the host.
pub fn cross_predicate(m: &Perspective, k: usize) -> Result<bool> {
    let n = m.n();
    if k <= 3 {
        return Err(Error::Precondition(format!("the cross criterion needs k > 3, got k = {k}")));
    }
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let inc = Incidence::new(&m.config);
    let lab = &m.labeling;
    let line = |x, y| m.config.lines()[inc.line_of(x, y).expect("perspective lines")];
    Ok((1..=n).filter(|&i| i != k).all(|i| {
        let la = line(lab.a(k), lab.a(i));
        (1..=n).filter(|&j| j != k).any(|j| lines_meet(&la, &line(lab.b(k), lab.b(j))))
    }))
}

/// The algebraic form of `Cross(k)`: `k = n`, or `φ_j(k) = k` for all `j > k`.
pub fn cross_criterion(phi: &PhiSequence, k: usize) -> bool {
    k == phi.n() || phi_fixes_above(phi, k)
}

/// The host re-presented as `Π(n, ϱ, K)` with centre `q = a_n`.
#[derive(Clone, Debug, Serialize)]
pub struct Reperspective {
    pub rho: Skew,
    /// `ϱ` restricted to `℘₂(I_{n−1})`
    pub rho0: Skew,
    /// the axis on the points `e_u`, in pair-index coordinates
    pub axis: Config,
    /// host point ↦ point of the standard layout of `Π(n, ϱ, K)`
    pub witness: Vec<PointId>,
    #[serde(skip)]
    pub target: Config,
}

/// Relabels `a'_i = a_i (i<n)`, `a'_n = p`, `d_i = c_{i,n} (i<n)`, `d_n = b_n`,
/// `e_u = c_u (u ⊆ I_{n−1})`, `e_{i,n} = b_i`, reads `ϱ` off the joins
/// `d_i ⊕ d_j = e_{ϱ⁻¹(ij)}`, collects the remaining lines as `K`, and checks
/// the result against a freshly built `Π(n, ϱ, K)`.
pub fn reperspective(m: &Perspective) -> Result<Reperspective> {
    let n = m.n();
    let lab = &m.labeling;
    let star = lab.star(n);
    if n < 3 || freely_contains(&m.config, &star).is_none() {
        return Err(Error::Precondition(format!("S({n}) is not a free clique of the axis")));
    }
    let mut role_a = Vec::new();
    let mut role_d = Vec::new();
    for i in 1..n {
        role_a.push(lab.a(i));
        role_d.push(lab.c(Pair::new(i, n)));
    }
    role_a.push(lab.center);
    role_d.push(lab.b(n));
    let e = |u: Pair| if u.hi == n { lab.b(u.lo) } else { lab.c(u) };
    let q = lab.a(n);

    let mut e_index = vec![usize::MAX; m.config.num_points()];
    for u in Pair::all(n) {
        e_index[e(u).index()] = u.index(n);
    }
    let mut rho_inv = vec![Pair::new(1, 2); Pair::count(n)];
    for u in Pair::all(n) {
        let x = m.config.join(role_d[u.lo - 1], role_d[u.hi - 1]);
        let idx = x.map(|p| e_index[p.index()]).filter(|&k| k != usize::MAX).ok_or_else(|| {
            Error::Precondition(format!("d_{} and d_{} do not meet in an e point", u.lo, u.hi))
        })?;
        rho_inv[u.index(n)] = Pair::from_index(idx, n);
    }
    let rho = Skew::from_fn(n, |u| rho_inv[u.index(n)])?.inverse();

    let mut witness = vec![PointId(0); m.config.num_points()];
    let layout = crate::constructions::PerspectiveLabeling::standard(n);
    witness[q.index()] = layout.center;
    for i in 1..=n {
        witness[role_a[i - 1].index()] = layout.a(i);
        witness[role_d[i - 1].index()] = layout.b(i);
    }
    for u in Pair::all(n) {
        witness[e(u).index()] = layout.c(u);
    }

    let is_e = |p: PointId| e_index[p.index()] != usize::MAX;
    let axis_lines: Vec<Line> = m
        .config
        .lines()
        .iter()
        .filter(|l| l.points().iter().all(|&p| is_e(p)))
        .map(|l| l.map(|p| PointId::from(e_index[p.index()])))
        .collect();
    let axis = Config::new(Pair::count(n), axis_lines).with_labels(pair_labels(n));
    let target = perspective(n, &rho, &axis)?;
    if !is_isomorphism(&m.config, &target.config, &witness) {
        return Err(Error::Precondition("re-perspective witness fails to transport lines".into()));
    }
    let rho0 = Skew::from_fn(n - 1, |u| rho.apply(u))?;
    Ok(Reperspective {
        rho,
        rho0,
        axis,
        witness,
        target: target.config,
    })
}

/// Three mutually perspective triangles in a 3×3 arrangement. Row 0 holds
/// the `a`s, row 1 the `b`s, row 2 the star `S(i0)`; the joins of any two
/// columns agree in all rows and lie on `T(i0)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StpDiagram {
    pub i0: usize,
    pub rows: [[PointId; 3]; 3],
    pub row_labels: [[String; 3]; 3],
    /// `matching[k]` for row pairs (0,1), (0,2), (1,2): column `c` of the first
    /// row lies on a line through the pair's centre with column
    /// `matching[k][c]` of the second row
    pub matching: [[usize; 3]; 3],
    pub centers: [PointId; 3],
}

impl StpDiagram {
    fn edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut out = Vec::new();
        for (k, &(r, s)) in pairs.iter().enumerate() {
            for c in 0..3 {
                out.push(((r, c), (s, self.matching[k][c])));
            }
        }
        out
    }

    /// Same matching pattern up to permuting rows and columns.
    pub fn equivalent(&self, other: &StpDiagram) -> bool {
        let norm = |e: Vec<((usize, usize), (usize, usize))>| {
            let mut v: Vec<_> = e.into_iter().map(|(x, y)| if x <= y { (x, y) } else { (y, x) }).collect();
            v.sort_unstable();
            v
        };
        let target = norm(other.edges());
        let mine = self.edges();
        Perm::all(3).cartesian_product(Perm::all(3).collect::<Vec<_>>()).any(|(rp, cp)| {
            let moved = mine
                .iter()
                .map(|&((r1, c1), (r2, c2))| {
                    (
                        (rp.apply(r1 + 1) - 1, cp.apply(c1 + 1) - 1),
                        (rp.apply(r2 + 1) - 1, cp.apply(c2 + 1) - 1),
                    )
                })
                .collect();
            norm(moved) == target
        })
    }
}

/// Builds the diagram of a `Π(4, ·, ·)` with a third free `K_5`, using the
/// largest `i0` whose `G_(i0)` is free.
pub fn stp_diagram(m: &Perspective) -> Result<StpDiagram> {
    if m.n() != 4 {
        return Err(Error::Precondition(format!("STP diagrams need n = 4, got {}", m.n())));
    }
    let i0 = *star_clique_indices_brute(m)
        .last()
        .ok_or_else(|| Error::Precondition("fewer than 3 free K5: no G_(i) is free".into()))?;
    let lab = &m.labeling;
    let c = &m.config;
    let r: Vec<usize> = (1..=4).filter(|&x| x != i0).collect();
    let row0 = [lab.a(r[0]), lab.a(r[1]), lab.a(r[2])];
    let top = |k: usize, l: usize| c.join(row0[k], row0[l]);
    let arrange = |cands: &dyn Fn(usize) -> PointId| -> Result<[PointId; 3]> {
        Perm::all(3)
            .map(|p| [cands(r[p.apply(1) - 1]), cands(r[p.apply(2) - 1]), cands(r[p.apply(3) - 1])])
            .find(|row| (0..3).tuple_combinations().all(|(k, l)| c.join(row[k], row[l]) == top(k, l)))
            .ok_or_else(|| Error::Precondition("no column arrangement makes the joins concur".into()))
    };
    let row1 = arrange(&|x| lab.b(x))?;
    let row2 = arrange(&|x| lab.c(Pair::new(x, i0)))?;
    let rows = [row0, row1, row2];
    let centers = [lab.center, lab.a(i0), lab.b(i0)];
    let mut matching = [[0usize; 3]; 3];
    for (k, &(ra, rb)) in [(0, 1), (0, 2), (1, 2)].iter().enumerate() {
        for col in 0..3 {
            matching[k][col] = (0..3)
                .find(|&d| c.join(rows[ra][col], rows[rb][d]) == Some(centers[k]))
                .ok_or_else(|| Error::Precondition(format!("row {ra} column {col} has no partner in row {rb}")))?;
        }
    }
    let name = |p: PointId| c.display_point(p);
    let row_labels = rows.map(|row| row.map(name));
    Ok(StpDiagram {
        i0,
        rows,
        row_labels,
        matching,
        centers,
    })
}
