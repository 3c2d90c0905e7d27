use std::collections::HashSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// An automorphism stored as its action on element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub map: Vec<usize>,
    pub inner: bool,
}

impl Automorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Automorphism {
            map,
            inner: self.inner,
        }
    }
}

/// Aut(G) by brute force over images of a small generating set.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    /// Generating set whose images determine each automorphism.
    pub basis: Vec<usize>,
    /// Sorted; the identity comes first.
    pub elements: Vec<Automorphism>,
}

impl AutomorphismGroup {
    pub(crate) fn compute(g: &FiniteGroup) -> Result<Self> {
        if g.order() > g.config().max_aut_order {
            return Err(Error::domain(
                "automorphism bound",
                format!("|G| = {} exceeds {}", g.order(), g.config().max_aut_order),
            ));
        }
        let mut basis: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        for &s in g.generator_ids() {
            if span.binary_search(&s).is_err() {
                basis.push(s);
                span = g.subgroup_closure(&basis);
            }
        }
        let candidates: Vec<Vec<usize>> = basis
            .iter()
            .map(|&s| {
                (0..g.order())
                    .filter(|&t| {
                        g.element_order(t) == g.element_order(s)
                            && g.class_size(g.class_of(t)) == g.class_size(g.class_of(s))
                    })
                    .collect()
            })
            .collect();

        let inner_maps: HashSet<Vec<usize>> = (0..g.order())
            .map(|c| (0..g.order()).map(|x| g.conj(c, x)).collect())
            .collect();

        let mut out = Vec::new();
        let mut choice = vec![0usize; basis.len()];
        loop {
            let images: Vec<usize> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| candidates[i][c])
                .collect();
            if let Some(map) = extend(g, &basis, &images) {
                let inner = inner_maps.contains(&map);
                out.push(Automorphism { map, inner });
            }
            // odometer
            let mut i = 0;
            loop {
                if i == choice.len() {
                    out.sort();
                    return Ok(AutomorphismGroup {
                        basis,
                        elements: out,
                    });
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inner_count(&self) -> usize {
        self.elements.iter().filter(|a| a.inner).count()
    }

    /// |Out(G)|.
    pub fn outer_order(&self) -> usize {
        self.order() / self.inner_count().max(1)
    }
}

/// Extends `basis[i] ↦ images[i]` to a bijective endomorphism if possible.
fn extend(g: &FiniteGroup, basis: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (s, t) in basis.iter().zip(images) {
            let y = g.mul(x, *s);
            let img = g.mul(map[x], *t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let mut seen = vec![false; n];
    for &y in &map {
        if y == usize::MAX || seen[y] {
            return None;
        }
        seen[y] = true;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    #[test]
    fn aut_cyclic_is_units() {
        for n in 1..=12usize {
            let g = FiniteGroup::cyclic(n).unwrap();
            assert_eq!(g.automorphisms().unwrap().order() as u64, euler_phi(n as u64));
        }
    }

    #[test]
    fn aut_s3_all_inner() {
        let a = FiniteGroup::symmetric(3).unwrap().automorphisms().unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.inner_count(), 6);
    }

    #[test]
    fn aut_klein_is_gl2() {
        let a = FiniteGroup::abelian(&[2, 2]).unwrap().automorphisms().unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.inner_count(), 1);
    }
}
