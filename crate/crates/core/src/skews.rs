//! Skews: permutations of the 2-subsets `℘₂(I_n)`.
//!
//! Pairs are indexed lexicographically, `{1,2}, {1,3}, …, {1,n}, {2,3}, …`,
//! and a [`Skew`] is a lookup table over those indices. The same indexing is
//! used for the points of an axial configuration (see `constructions`).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::PointId;
use crate::perm::Perm;

/// An unordered pair `{lo, hi}` of `I_n`, `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Pair {
    pub lo: usize,
    pub hi: usize,
}

impl Pair {
    pub fn new(i: usize, j: usize) -> Pair {
        assert!(i != j, "a pair needs two distinct elements, got {{{i},{j}}}");
        Pair {
            lo: i.min(j),
            hi: i.max(j),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo == x || self.hi == x
    }

    /// The element other than `x`.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.lo == x {
            Some(self.hi)
        } else if self.hi == x {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn is_disjoint(&self, other: &Pair) -> bool {
        !(self.contains(other.lo) || self.contains(other.hi))
    }

    /// Position in the lexicographic enumeration of `℘₂(I_n)`.
    pub fn index(&self, n: usize) -> usize {
        let (i, j) = (self.lo, self.hi);
        debug_assert!(1 <= i && j <= n);
        (i - 1) * (2 * n - i) / 2 + (j - i - 1)
    }

    pub fn from_index(idx: usize, n: usize) -> Pair {
        let mut rest = idx;
        for i in 1..n {
            let row = n - i;
            if rest < row {
                return Pair::new(i, i + 1 + rest);
            }
            rest -= row;
        }
        panic!("pair index {idx} out of range for n = {n}");
    }

    /// `℘₂(I_n)` in index order.
    pub fn all(n: usize) -> impl Iterator<Item = Pair> {
        (1..=n).tuple_combinations().map(|(i, j)| Pair::new(i, j))
    }

    pub fn count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// Parses `{i,j}` (braces optional).
    pub fn parse(s: &str) -> Option<Pair> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let (a, b) = body.split_once(',')?;
        let (i, j) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        (i != j && i > 0 && j > 0).then(|| Pair::new(i, j))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// A permutation of `℘₂(I_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Skew {
    n: usize,
    // table[index(u)] = index(σ(u))
    table: Vec<u32>,
}

impl Skew {
    pub fn identity(n: usize) -> Skew {
        Skew {
            n,
            table: (0..Pair::count(n) as u32).collect(),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(Pair) -> Pair) -> Result<Skew> {
        let table: Vec<u32> = Pair::all(n).map(|u| f(u).index(n) as u32).collect();
        let mut seen = vec![false; table.len()];
        for &t in &table {
            if seen[t as usize] {
                return Err(Error::NotABijection(format!(
                    "pair {} is hit twice",
                    Pair::from_index(t as usize, n)
                )));
            }
            seen[t as usize] = true;
        }
        Ok(Skew { n, table })
    }

    /// `ζ_n({i,j}) = {j−i, j}` for `i < j`.
    pub fn zeta(n: usize) -> Result<Skew> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("zeta needs n >= 2, got {n}")));
        }
        Skew::from_fn(n, |u| Pair::new(u.hi - u.lo, u.hi))
    }

    /// The lift `ᾱ({i,j}) = {α(i), α(j)}`.
    pub fn bar(alpha: &Perm) -> Skew {
        let n = alpha.degree();
        Skew::from_fn(n, |u| Pair::new(alpha.apply(u.lo), alpha.apply(u.hi))).expect("lifts are bijective")
    }

    pub fn from_phi(phi: &PhiSequence) -> Skew {
        let n = phi.n();
        Skew::from_fn(n, |u| Pair::new(u.hi, phi.phi(u.hi).apply(u.lo))).expect("sigma_phi is bijective")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, u: Pair) -> Pair {
        Pair::from_index(self.apply_index(u.index(self.n)), self.n)
    }

    pub fn apply_index(&self, idx: usize) -> usize {
        self.table[idx] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Skew) -> Skew {
        assert_eq!(self.n, other.n, "skews over different ground sets");
        Skew {
            n: self.n,
            table: other.table.iter().map(|&x| self.table[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Skew {
        let mut table = vec![0u32; self.table.len()];
        for (i, &x) in self.table.iter().enumerate() {
            table[x as usize] = i as u32;
        }
        Skew { n: self.n, table }
    }

    /// `Γ ∘ self ∘ Γ⁻¹`.
    pub fn conjugate_by(&self, gamma: &Skew) -> Skew {
        gamma.compose(self).compose(&gamma.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self);
            k += 1;
        }
        k
    }

    /// The skew as a point map on an axis indexed by pairs.
    pub fn as_point_map(&self) -> Vec<PointId> {
        self.table.iter().map(|&x| PointId(x)).collect()
    }

    /// Some `α` with `ᾱ = self`, by exhaustive search over `S_n`.
    pub fn bar_preimage(&self) -> Option<Perm> {
        Perm::all(self.n).find(|a| &Skew::bar(a) == self)
    }
}

impl fmt::Display for Skew {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = Pair::all(self.n).map(|u| format!("{u}->{}", self.apply(u)));
        write!(f, "[{}]", parts.format(", "))
    }
}

/// `Φ = (φ_n, …, φ_2)` with `φ_j` a permutation of `I_{j−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PhiSequence {
    n: usize,
    // phis[k] is φ_{n−k}
    phis: Vec<Perm>,
}

impl PhiSequence {
    /// `phis` lists `φ_n, …, φ_2`; a missing trailing `φ_2` is filled in.
    pub fn new(n: usize, mut phis: Vec<Perm>) -> Result<PhiSequence> {
        if n < 2 {
            return Err(Error::MalformedPhi(format!("n must be at least 2, got {n}")));
        }
        if phis.len() + 2 == n {
            phis.push(Perm::identity(1));
        }
        if phis.len() + 1 != n {
            return Err(Error::MalformedPhi(format!(
                "{} permutations given for n = {n}; expected phi_{n} .. phi_2",
                phis.len()
            )));
        }
        for (k, p) in phis.iter().enumerate() {
            let j = n - k;
            if p.degree() != j - 1 {
                return Err(Error::MalformedPhi(format!(
                    "phi_{j} must permute {{1..{}}}, but {p} acts on {{1..{}}}",
                    j - 1,
                    p.degree()
                )));
            }
        }
        Ok(PhiSequence { n, phis })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<PhiSequence> {
        let phis = (2..=n)
            .rev()
            .map(|j| Perm::from_images(&(1..j).map(|i| f(j, i)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        PhiSequence::new(n, phis)
    }

    pub fn identity(n: usize) -> Result<PhiSequence> {
        PhiSequence::from_fn(n, |_, i| i)
    }

    /// `φ_j(i) = j − i`; generates `ζ_n`.
    pub fn symmetric(n: usize) -> Result<PhiSequence> {
        PhiSequence::from_fn(n, |j, i| j - i)
    }

    /// `φ_j = (1, 2, …, j−1)`.
    pub fn cyclic(n: usize) -> Result<PhiSequence> {
        PhiSequence::from_fn(n, |j, i| if i + 1 < j { i + 1 } else { 1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `φ_j` for `2 ≤ j ≤ n`.
    pub fn phi(&self, j: usize) -> &Perm {
        &self.phis[self.n - j]
    }

    /// `(j, φ_j)` for `j = n, …, 2`.
    pub fn levels(&self) -> impl Iterator<Item = (usize, &Perm)> {
        self.phis.iter().enumerate().map(move |(k, p)| (self.n - k, p))
    }

    pub fn skew(&self) -> Skew {
        Skew::from_phi(self)
    }

    pub fn inverse(&self) -> PhiSequence {
        PhiSequence {
            n: self.n,
            phis: self.phis.iter().map(Perm::inverse).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.phis.iter().all(Perm::is_identity)
    }

    /// `Φ^α = (αφ_nα⁻¹, …)`. Only `α ∈ {id, (1,2)}` keep the initial-segment
    /// domains, so anything else is refused.
    pub fn conjugate_by(&self, alpha: &Perm) -> Result<PhiSequence> {
        if alpha.degree() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                skew: alpha.degree(),
            });
        }
        if (3..=self.n).any(|k| alpha.apply(k) != k) {
            return Err(Error::Precondition(format!(
                "phi^alpha leaves normalized form unless alpha is id or (1,2); got {alpha}"
            )));
        }
        let phis = self
            .levels()
            .map(|(j, p)| {
                if j == 2 {
                    return p.clone();
                }
                let a = Perm::from_images(&(1..j).map(|i| alpha.apply(i)).collect::<Vec<_>>())
                    .expect("alpha preserves the segment");
                p.conjugate_by(&a)
            })
            .collect();
        Ok(PhiSequence { n: self.n, phis })
    }

    /// Every sequence for `n`, `φ_2` fixed.
    pub fn all(n: usize) -> Vec<PhiSequence> {
        (3..=n)
            .rev()
            .map(|j| Perm::all(j - 1).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|phis| PhiSequence::new(n, phis).expect("levels have the right degrees"))
            .collect()
    }

    /// Parses `[φ_n, …, φ_3]` or `[φ_n, …, φ_2]` in cycle notation, e.g.
    /// `[(2)(1,3),(1,2)]`. Fixed points may be omitted. A trailing entry `(1)`
    /// is read as an explicit `φ_2`.
    pub fn parse(s: &str) -> Result<PhiSequence> {
        let t = s.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedPhi(format!("expected [..], got {t:?}")))?;
        let mut entries = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    entries.push(body[start..i].trim());
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !body[start..].trim().is_empty() || !entries.is_empty() {
            entries.push(body[start..].trim());
        }
        let explicit_phi2 = entries.len() >= 2 && entries.last().is_some_and(|e| e.replace(' ', "") == "(1)");
        let n = if explicit_phi2 { entries.len() + 1 } else { entries.len() + 2 };
        let phis = entries
            .iter()
            .enumerate()
            .map(|(k, e)| Perm::parse_cycles(e, Some(n - k - 1)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::MalformedPhi(e.to_string()))?;
        PhiSequence::new(n, phis)
    }
}

impl fmt::Display for PhiSequence {
    /// `[φ_n,…,φ_3]` in full cycle notation; `φ_2` is implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.levels().filter(|(j, _)| *j >= 3).map(|(_, p)| p.to_string());
        write!(f, "[{}]", shown.format(","))
    }
}

impl FromStr for PhiSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<PhiSequence> {
        PhiSequence::parse(s)
    }
}

/// A sequence of permutations on nested subsets of `I_n`, the unnormalized
/// input form: `maps[k]` is `φ_{n−k}` given as `(x, φ(x))` pairs over its
/// domain, for levels `n, …, 3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NestedPhi {
    pub n: usize,
    pub maps: Vec<Vec<(usize, usize)>>,
}

/// A normalized sequence together with the ordering `(x_1, …, x_n)` that
/// produced it: `x_i` becomes `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Normalized {
    pub ordering: Vec<usize>,
    pub phi: PhiSequence,
}

impl NestedPhi {
    /// Reduces to initial-segment domains. The order of `x_1, x_2` is not
    /// determined by the domains, so both choices are returned when they give
    /// different sequences.
    pub fn normalize(&self) -> Result<Vec<Normalized>> {
        let n = self.n;
        if n < 3 || self.maps.len() + 2 != n {
            return Err(Error::MalformedPhi(format!(
                "need levels {n}..3, got {} maps",
                self.maps.len()
            )));
        }
        let domain = |k: usize| -> Vec<usize> { self.maps[k].iter().map(|&(x, _)| x).sorted().collect() };
        let mut remaining: Vec<usize> = (1..=n).collect();
        let mut tail = Vec::new(); // x_n, x_{n-1}, …, x_3
        for k in 0..self.maps.len() {
            let j = n - k;
            let dom = domain(k);
            let rng: Vec<usize> = self.maps[k].iter().map(|&(_, y)| y).sorted().collect();
            if dom != rng || dom.iter().dedup().count() != dom.len() {
                return Err(Error::MalformedPhi(format!("phi_{j} is not a permutation of its domain")));
            }
            if dom.len() != j - 1 || !dom.iter().all(|x| remaining.contains(x)) {
                return Err(Error::MalformedPhi(format!(
                    "phi_{j} must act on a {}-subset of the previous domain",
                    j - 1
                )));
            }
            let dropped: Vec<usize> = remaining.iter().copied().filter(|x| !dom.contains(x)).collect();
            tail.push(dropped[0]);
            remaining = dom;
        }
        let mut out: Vec<Normalized> = Vec::new();
        for (x1, x2) in [(remaining[0], remaining[1]), (remaining[1], remaining[0])] {
            let mut ordering = vec![x1, x2];
            ordering.extend(tail.iter().rev());
            let mut rank = vec![0usize; n + 1];
            for (i, &x) in ordering.iter().enumerate() {
                rank[x] = i + 1;
            }
            let phis = self
                .maps
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let j = n - k;
                    let mut images = vec![0usize; j - 1];
                    for &(x, y) in m {
                        images[rank[x] - 1] = rank[y];
                    }
                    Perm::from_images(&images)
                })
                .collect::<Result<Vec<_>>>()?;
            let phi = PhiSequence::new(n, phis)?;
            if out.iter().all(|o| o.phi != phi) {
                out.push(Normalized { ordering, phi });
            }
        }
        Ok(out)
    }
}

/// Which case of the lift characterisation a skew falls into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum BarCase {
    /// every `φ_j` is the identity, `α = id`
    A,
    /// `φ_3 = (1,2)`, all other levels identity, `α = (1,2)`
    B,
    /// a lift not of either listed shape
    Other,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BarRecognition {
    pub case: BarCase,
    pub alpha: Perm,
}

/// Decides whether `σ_Φ = ᾱ` for some `α ∈ S_n`, by exhaustive search, and
/// names the case.
pub fn recognize_bar(phi: &PhiSequence) -> Option<BarRecognition> {
    let alpha = phi.skew().bar_preimage()?;
    let others_identity = phi.levels().filter(|(j, _)| *j != 3).all(|(_, p)| p.is_identity());
    let case = if phi.is_identity() {
        BarCase::A
    } else if others_identity && phi.n() >= 3 && !phi.phi(3).is_identity() {
        BarCase::B
    } else {
        BarCase::Other
    };
    Some(BarRecognition { case, alpha })
}

/// A pair bijection `Γ` with `σ_{Φ″} = Γ ∘ σ_{Φ′} ∘ Γ⁻¹`, built level by level
/// from conjugators `γ_j` of `φ′_j` onto `φ″_j`: `Γ({i,j}) = {j, γ_j(i)}`.
pub fn gamma_between(p1: &PhiSequence, p2: &PhiSequence) -> Result<Skew> {
    if p1.n() != p2.n() {
        return Err(Error::Arity {
            expected: p1.n(),
            skew: p2.n(),
        });
    }
    let mut gammas = vec![Perm::identity(0); p1.n() + 1];
    for (j, a) in p1.levels() {
        gammas[j] = a.conjugator_to(p2.phi(j)).ok_or(Error::CycleTypeMismatch { level: j })?;
    }
    Skew::from_fn(p1.n(), |u| Pair::new(u.hi, gammas[u.hi].apply(u.lo)))
}

/// `Γ ∘ σ ∘ Γ⁻¹`.
pub fn conjugate_skew(sigma: &Skew, gamma: &Skew) -> Result<Skew> {
    if sigma.n() != gamma.n() {
        return Err(Error::Arity {
            expected: sigma.n(),
            skew: gamma.n(),
        });
    }
    Ok(sigma.conjugate_by(gamma))
}
