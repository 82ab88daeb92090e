//! Permutations of `I_n = {1, …, n}` in one-line form, with cycle notation.
//!
//! Composition follows function order: `a.compose(&b)` applies `b` first.
//! Conjugation `p.conjugate_by(&a)` is `a ∘ p ∘ a⁻¹`, the permutation that acts
//! on `a`-relabelled points the way `p` acts on the originals.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    // images[i - 1] is the image of i
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n as u32).collect(),
        }
    }

    /// One-line notation: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotABijection(format!("{images:?} is not a permutation of I_{n}")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&x| x as u32).collect(),
        })
    }

    /// Builds a permutation of `I_n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::OutOfRange(format!("{x} is not in I_{n}")));
                }
                if used[x - 1] {
                    return Err(Error::NotABijection(format!("{x} appears in two cycles")));
                }
                used[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// Parses cycle notation such as `(1,2,3)(4)`. Fixed points may be omitted;
    /// `degree` pads the permutation to `I_degree`. Without a degree the largest
    /// mentioned element is used.
    pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Perm> {
        let err = |reason: &str| Error::PermParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        if !(trimmed.is_empty() || trimmed == "id") {
            let mut rest = trimmed;
            while !rest.is_empty() {
                rest = rest.trim_start();
                if rest.is_empty() {
                    break;
                }
                if !rest.starts_with('(') {
                    return Err(err("expected '('"));
                }
                let close = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
                let body = &rest[1..close];
                let cycle = if body.trim().is_empty() {
                    Vec::new()
                } else {
                    body.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| err("expected a positive integer")))
                        .collect::<Result<Vec<_>>>()?
                };
                if cycle.contains(&0) {
                    return Err(err("elements start at 1"));
                }
                cycles.push(cycle);
                rest = &rest[close + 1..];
            }
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = match degree {
            Some(d) if d < max => return Err(err(&format!("element {max} exceeds degree {d}"))),
            Some(d) => d,
            None => max,
        };
        Perm::from_cycles(n, &cycles).map_err(|e| err(&e.to_string()))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Perm { images }
    }

    /// `alpha ∘ self ∘ alpha⁻¹`.
    pub fn conjugate_by(&self, alpha: &Perm) -> Perm {
        alpha.compose(self).compose(&alpha.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_points().is_empty()
    }

    /// All cycles, fixed points included, each starting at its least element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    /// Every permutation of `I_n`, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (1..=n).permutations(n).map(|v| Perm {
            images: v.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Some `gamma` with `gamma ∘ self ∘ gamma⁻¹ == target`, if the cycle types agree.
    pub fn conjugator_to(&self, target: &Perm) -> Option<Perm> {
        if self.degree() != target.degree() || self.cycle_type() != target.cycle_type() {
            return None;
        }
        let by_len = |p: &Perm| {
            let mut c = p.cycles();
            c.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
            c
        };
        let mut images = vec![0usize; self.degree()];
        for (src, dst) in by_len(self).iter().zip(by_len(target).iter()) {
            for (x, y) in src.iter().zip(dst.iter()) {
                images[x - 1] = *y;
            }
        }
        Perm::from_images(&images).ok()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    /// Full cycle notation with fixed points, e.g. `(1,3)(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "({})", cycle.iter().join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        Perm::parse_cycles(s, None)
    }
}
