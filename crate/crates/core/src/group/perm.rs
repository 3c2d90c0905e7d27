use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `0..n`, printed 1-based in cycle notation.
///
/// Composition follows the functional convention `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images; fails if not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::domain(
                    "permutation is a bijection",
                    format!("images {:?} do not define a bijection", images),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation of `n` points from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n || used[x] {
                    return Err(Error::domain(
                        "cycles are disjoint",
                        format!("point {} repeated or out of range", x + 1),
                    ));
                }
                used[x] = true;
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4 5)"`, `"(1,2)"` or `"()"`.
    pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
        let bad = |detail: String| Error::domain("cycle notation", detail);
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad(format!("expected '(' in {:?}", s)));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| bad(format!("unbalanced parenthesis in {:?}", s)))?;
            let body = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| bad(format!("bad point {:?} in {:?}", tok, s)))?;
                if v == 0 {
                    return Err(bad("points are numbered from 1".into()));
                }
                cyc.push(v - 1);
            }
            if cyc.len() > 1 {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// Extends to `n` points by fixing the new ones.
    pub fn padded(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u16..n as u16);
        Permutation { images }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_right_to_left() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1.
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn parse_round_trip() {
        let c = Permutation::parse_cycles("(1 3)(2,4 5)").unwrap();
        let p = Permutation::from_cycles(5, &c).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4 5)");
        assert_eq!(p.order(), 6);
        assert!(Permutation::parse_cycles("(1 2").is_err());
    }
}
