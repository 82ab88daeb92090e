//! Partial Steiner triple systems: points, lines, validation and the partial
//! join operation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense point index, `0..num_points` within one configuration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PointId(pub u32);

impl PointId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> PointId {
        PointId(i as u32)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A block of three point ids, kept sorted. Repeated ids are representable so
/// that validation can report them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Line([PointId; 3]);

impl Line {
    pub fn new(a: impl Into<PointId>, b: impl Into<PointId>, c: impl Into<PointId>) -> Line {
        let mut pts = [a.into(), b.into(), c.into()];
        pts.sort_unstable();
        Line(pts)
    }

    pub fn points(&self) -> [PointId; 3] {
        self.0
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.0.contains(&p)
    }

    pub fn distinct_count(&self) -> usize {
        1 + (self.0[0] != self.0[1]) as usize + (self.0[1] != self.0[2]) as usize
    }

    /// Number of points shared with `other`.
    pub fn meet_count(&self, other: &Line) -> usize {
        let a: BTreeSet<_> = self.0.iter().collect();
        other.0.iter().collect::<BTreeSet<_>>().intersection(&a).count()
    }

    /// The point of the line other than `x` and `y`.
    pub fn third(&self, x: PointId, y: PointId) -> Option<PointId> {
        if !(self.contains(x) && self.contains(y)) || x == y {
            return None;
        }
        self.0.iter().copied().find(|&p| p != x && p != y)
    }

    pub fn map(&self, f: impl Fn(PointId) -> PointId) -> Line {
        Line::new(f(self.0[0]), f(self.0[1]), f(self.0[2]))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// A finite point set with a family of 3-element lines and optional labels.
///
/// Lines are kept sorted. Nothing here enforces the partial-linear-space
/// axiom; [`Config::validate`] reports violations and the operations that
/// need a valid structure refuse invalid input.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Config {
    num_points: usize,
    lines: Vec<Line>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Violation {
    PointOutOfRange { line: usize, point: PointId },
    LineSize { line: usize, distinct: usize },
    SharedPoints { first: usize, second: usize, common: usize },
    LabelCount { expected: usize, found: usize },
    DuplicateLabel { label: String, first: PointId, second: PointId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PointOutOfRange { line, point } => {
                write!(f, "line {line} uses point {point} outside the point set")
            }
            Violation::LineSize { line, distinct } => {
                write!(f, "line {line} has {distinct} distinct points, not 3")
            }
            Violation::SharedPoints { first, second, common } => {
                write!(f, "lines {first} and {second} share {common} points")
            }
            Violation::LabelCount { expected, found } => {
                write!(f, "label table has {found} entries for {expected} points")
            }
            Violation::DuplicateLabel { label, first, second } => {
                write!(f, "label {label:?} names both {first} and {second}")
            }
        }
    }
}

/// Every violated condition of a candidate configuration. Empty iff the
/// structure is a partial Steiner triple system.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConfigParams {
    pub nu: usize,
    /// rank -> number of points with that rank
    pub rank_multiset: BTreeMap<usize, usize>,
    pub b: usize,
    pub kappa: usize,
    pub binomial_n: Option<usize>,
}

impl ConfigParams {
    /// The common rank, when all points have the same rank.
    pub fn rank(&self) -> Option<usize> {
        match self.rank_multiset.len() {
            1 => self.rank_multiset.keys().next().copied(),
            _ => None,
        }
    }
}

impl fmt::Display for ConfigParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank() {
            Some(r) => write!(f, "({}_{} {}_{})", self.nu, r, self.b, self.kappa),
            None => write!(f, "({} points, ranks {:?}, {}_{})", self.nu, self.rank_multiset, self.b, self.kappa),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Config {
    pub fn new(num_points: usize, mut lines: Vec<Line>) -> Config {
        lines.sort_unstable();
        Config {
            num_points,
            lines,
            labels: None,
        }
    }

    pub fn from_triples(num_points: usize, triples: &[[usize; 3]]) -> Config {
        Config::new(num_points, triples.iter().map(|t| Line::new(t[0], t[1], t[2])).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Config {
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Config {
        self.labels = None;
        self
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, p: PointId) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(p.index())).map(String::as_str)
    }

    /// Label of `p`, or its numeric id when unlabelled.
    pub fn display_point(&self, p: PointId) -> String {
        self.label(p).map(str::to_string).unwrap_or_else(|| p.to_string())
    }

    pub fn point_by_label(&self, name: &str) -> Option<PointId> {
        self.labels.as_ref()?.iter().position(|l| l == name).map(PointId::from)
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.num_points).map(PointId::from)
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.num_points];
        for line in &self.lines {
            for p in line.points() {
                if p.index() < self.num_points {
                    r[p.index()] += 1;
                }
            }
        }
        r
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (k, line) in self.lines.iter().enumerate() {
            for p in line.points() {
                if p.index() >= self.num_points {
                    violations.push(Violation::PointOutOfRange { line: k, point: p });
                }
            }
            if line.distinct_count() != 3 {
                violations.push(Violation::LineSize {
                    line: k,
                    distinct: line.distinct_count(),
                });
            }
        }
        let mut owner: HashMap<(PointId, PointId), usize> = HashMap::new();
        let mut clashes: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (k, line) in self.lines.iter().enumerate() {
            let [a, b, c] = line.points();
            for pair in [(a, b), (a, c), (b, c)] {
                if pair.0 == pair.1 {
                    continue;
                }
                if let Some(&other) = owner.get(&pair) {
                    clashes.insert((other, k));
                } else {
                    owner.insert(pair, k);
                }
            }
        }
        for (first, second) in clashes {
            violations.push(Violation::SharedPoints {
                first,
                second,
                common: self.lines[first].meet_count(&self.lines[second]),
            });
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.num_points {
                violations.push(Violation::LabelCount {
                    expected: self.num_points,
                    found: labels.len(),
                });
            }
            let mut seen: HashMap<&str, usize> = HashMap::new();
            for (i, l) in labels.iter().enumerate() {
                if let Some(&j) = seen.get(l.as_str()) {
                    violations.push(Violation::DuplicateLabel {
                        label: l.clone(),
                        first: PointId::from(j),
                        second: PointId::from(i),
                    });
                } else {
                    seen.insert(l, i);
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(report))
        }
    }

    pub fn parameters(&self) -> Result<ConfigParams> {
        self.ensure_valid()?;
        let ranks = self.ranks();
        let mut rank_multiset = BTreeMap::new();
        for &r in &ranks {
            *rank_multiset.entry(r).or_insert(0) += 1;
        }
        let nu = self.num_points;
        let b = self.lines.len();
        let binomial_n = (2..=nu + 1).find(|&n| {
            binomial(n, 2) == nu && binomial(n, 3) == b && ranks.iter().all(|&r| r == n - 2)
        });
        Ok(ConfigParams {
            nu,
            rank_multiset,
            b,
            kappa: 3,
            binomial_n,
        })
    }

    /// The partial operation `x ⊕ y`: `x` when `x == y`, the third point of the
    /// line through `x` and `y` when there is one, otherwise `None`.
    pub fn join(&self, x: PointId, y: PointId) -> Option<PointId> {
        if x == y {
            return Some(x);
        }
        self.lines.iter().find_map(|l| l.third(x, y))
    }

    /// Transports the structure along `f`, where `f[x]` is the image of `x`.
    pub fn relabel(&self, f: &[PointId]) -> Result<Config> {
        check_bijection(f, self.num_points)?;
        let lines = self
            .lines
            .iter()
            .map(|l| l.map(|p| f.get(p.index()).copied().unwrap_or(p)))
            .collect();
        let mut out = Config::new(self.num_points, lines);
        if let Some(labels) = &self.labels {
            let mut moved = vec![String::new(); labels.len()];
            for (x, label) in labels.iter().enumerate() {
                if let Some(target) = f.get(x) {
                    moved[target.index()] = label.clone();
                }
            }
            out.labels = Some(moved);
        }
        Ok(out)
    }

    /// Line sets agree (labels ignored).
    pub fn same_lines(&self, other: &Config) -> bool {
        self.num_points == other.num_points && self.lines == other.lines
    }
}

pub(crate) fn check_bijection(f: &[PointId], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::NotABijection(format!("map has {} entries for {n} points", f.len())));
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y.index() >= n || seen[y.index()] {
            return Err(Error::NotABijection(format!("point {y} is hit twice or lies outside 0..{n}")));
        }
        seen[y.index()] = true;
    }
    Ok(())
}

/// Dense lookup tables over a valid configuration: `x ⊕ y` and the line
/// through two collinear points, both in O(1).
#[derive(Clone, Debug)]
pub struct Incidence {
    n: usize,
    join: Vec<u32>,
    line_of: Vec<u32>,
    through: Vec<Vec<usize>>,
}

const NONE: u32 = u32::MAX;

impl Incidence {
    pub fn new(c: &Config) -> Incidence {
        let n = c.num_points();
        let mut join = vec![NONE; n * n];
        let mut line_of = vec![NONE; n * n];
        let mut through = vec![Vec::new(); n];
        for (k, line) in c.lines().iter().enumerate() {
            let pts = line.points();
            for i in 0..3 {
                through[pts[i].index()].push(k);
                for j in 0..3 {
                    if i != j {
                        let (x, y) = (pts[i].index(), pts[j].index());
                        join[x * n + y] = pts[3 - i - j].0;
                        line_of[x * n + y] = k as u32;
                    }
                }
            }
        }
        for x in 0..n {
            join[x * n + x] = x as u32;
        }
        Incidence { n, join, line_of, through }
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    pub fn join(&self, x: PointId, y: PointId) -> Option<PointId> {
        match self.join[x.index() * self.n + y.index()] {
            NONE => None,
            p => Some(PointId(p)),
        }
    }

    pub fn collinear(&self, x: PointId, y: PointId) -> bool {
        x != y && self.join[x.index() * self.n + y.index()] != NONE
    }

    /// Index (into `Config::lines`) of the line through two distinct collinear points.
    pub fn line_of(&self, x: PointId, y: PointId) -> Option<usize> {
        match self.line_of[x.index() * self.n + y.index()] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    pub fn lines_through(&self, p: PointId) -> &[usize] {
        &self.through[p.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Config {
        Config::from_triples(
            7,
            &[[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
    }

    #[test]
    fn two_lines_sharing_two_points_are_reported() {
        let c = Config::from_triples(4, &[[0, 1, 2], [0, 1, 3]]);
        let report = c.validate();
        assert_eq!(
            report.violations,
            vec![Violation::SharedPoints { first: 0, second: 1, common: 2 }]
        );
        assert!(report.to_string().contains("share 2 points"));
    }

    #[test]
    fn empty_line_set_is_valid() {
        assert!(Config::new(5, vec![]).validate().is_ok());
    }

    #[test]
    fn degenerate_lines_and_labels_reported_together() {
        let c = Config::from_triples(3, &[[0, 0, 1], [0, 1, 5]])
            .with_labels(vec!["x".into(), "x".into()]);
        let v = c.validate().violations;
        assert!(v.contains(&Violation::LineSize { line: 0, distinct: 2 }));
        assert!(v.contains(&Violation::PointOutOfRange { line: 1, point: PointId(5) }));
        assert!(v.contains(&Violation::LabelCount { expected: 3, found: 2 }));
        assert!(v.iter().any(|x| matches!(x, Violation::DuplicateLabel { .. })));
        assert!(c.parameters().is_err());
    }

    #[test]
    fn fano_parameters() {
        let p = fano().parameters().unwrap();
        assert_eq!((p.nu, p.b, p.rank()), (7, 7, Some(3)));
        assert_eq!(p.binomial_n, None);
        assert_eq!(p.to_string(), "(7_3 7_3)");
    }

    #[test]
    fn join_is_partial() {
        let c = Config::from_triples(5, &[[0, 1, 2]]);
        assert_eq!(c.join(PointId(0), PointId(0)), Some(PointId(0)));
        assert_eq!(c.join(PointId(0), PointId(2)), Some(PointId(1)));
        assert_eq!(c.join(PointId(0), PointId(3)), None);
        let inc = Incidence::new(&c);
        assert_eq!(inc.join(PointId(2), PointId(1)), Some(PointId(0)));
        assert!(!inc.collinear(PointId(3), PointId(4)));
    }

    #[test]
    fn relabel_rejects_non_bijection() {
        let c = fano();
        let f: Vec<PointId> = [0, 0, 1, 2, 3, 4, 5].into_iter().map(PointId::from).collect();
        assert!(matches!(c.relabel(&f), Err(Error::NotABijection(_))));
    }

    #[test]
    fn relabel_transports_labels() {
        let c = Config::from_triples(3, &[[0, 1, 2]]).with_labels(vec!["x".into(), "y".into(), "z".into()]);
        let f: Vec<PointId> = [2, 0, 1].into_iter().map(PointId::from).collect();
        let d = c.relabel(&f).unwrap();
        assert_eq!(d.label(PointId(2)), Some("x"));
        assert_eq!(d.point_by_label("y"), Some(PointId(0)));
    }
}
