use std::collections::HashMap;

use super::FiniteGroup;
use crate::arith::{gcd, mobius};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    /// Least generator in the canonical element order.
    pub generator: usize,
    pub order: u64,
    /// Sorted member ids.
    pub members: Vec<usize>,
}

impl CyclicSubgroup {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// `generator^k` listed in order `k = 0..order`.
    pub fn powers(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut x = 0;
        for _ in 0..self.order {
            out.push(x);
            x = g.mul(x, self.generator);
        }
        out
    }
}

/// All cyclic subgroups ordered by (order, members), with inclusion and
/// the Möbius function μ(H, K) = μ([K : H]).
#[derive(Clone, Debug)]
pub struct CyclicLattice {
    pub subgroups: Vec<CyclicSubgroup>,
    by_members: HashMap<Vec<usize>, usize>,
    of_element: Vec<usize>,
}

impl CyclicLattice {
    pub(crate) fn build(g: &FiniteGroup) -> Self {
        let mut found: HashMap<Vec<usize>, u64> = HashMap::new();
        let mut of_elem_members: Vec<Vec<usize>> = Vec::with_capacity(g.order());
        for x in 0..g.order() {
            let o = g.element_order(x);
            let mut m = Vec::with_capacity(o as usize);
            let mut y = 0;
            for _ in 0..o {
                m.push(y);
                y = g.mul(y, x);
            }
            m.sort_unstable();
            found.entry(m.clone()).or_insert(o);
            of_elem_members.push(m);
        }
        let mut subgroups: Vec<CyclicSubgroup> = found
            .into_iter()
            .map(|(members, order)| {
                let generator = *members
                    .iter()
                    .find(|&&y| g.element_order(y) == order)
                    .expect("cyclic subgroup has a generator");
                CyclicSubgroup {
                    generator,
                    order,
                    members,
                }
            })
            .collect();
        subgroups.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
        let by_members: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members.clone(), i))
            .collect();
        let of_element = of_elem_members.iter().map(|m| by_members[m]).collect();
        CyclicLattice {
            subgroups,
            by_members,
            of_element,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &CyclicSubgroup {
        &self.subgroups[i]
    }

    /// Index of ⟨x⟩.
    pub fn of_element(&self, x: usize) -> usize {
        self.of_element[x]
    }

    pub fn index_of_members(&self, members: &[usize]) -> Option<usize> {
        self.by_members.get(members).copied()
    }

    pub fn contains(&self, h: usize, k: usize) -> bool {
        let (h, k) = (&self.subgroups[h], &self.subgroups[k]);
        k.order % h.order == 0 && k.contains(h.generator)
    }

    /// μ_G(H, K): μ([K : H]) when H ⊆ K, else 0.
    pub fn mobius(&self, h: usize, k: usize) -> i64 {
        if self.contains(h, k) {
            mobius(self.subgroups[k].order / self.subgroups[h].order)
        } else {
            0
        }
    }

    /// Cyclic subgroups containing `h`, including `h`.
    pub fn above(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.contains(h, k)).collect()
    }

    /// Subgroups of the cyclic subgroup `k`, including `k`.
    pub fn below(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&h| self.contains(h, k)).collect()
    }

    /// Index of `g H g⁻¹`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize, h: usize) -> usize {
        self.of_element(g.conj(x, self.subgroups[h].generator))
    }

    /// The subgroup of `k` of order `d`.
    pub fn subgroup_of_order(&self, g: &FiniteGroup, k: usize, d: u64) -> Option<usize> {
        let s = &self.subgroups[k];
        if s.order % d != 0 {
            return None;
        }
        Some(self.of_element(g.pow(s.generator, (s.order / d) as i64)))
    }

    /// Generators of the cyclic subgroup `k` (elements of full order).
    pub fn generators_of(&self, g: &FiniteGroup, k: usize) -> Vec<usize> {
        let s = &self.subgroups[k];
        let mut out: Vec<usize> = (1..=s.order.max(1))
            .filter(|&e| gcd(e, s.order) == 1)
            .map(|e| g.pow(s.generator, e as i64))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_identity_on_lattice() {
        for name in ["S4", "C12", "D6", "Ab[2,2,3]"] {
            let g = FiniteGroup::parse(name).unwrap();
            let lat = g.cyclic_lattice();
            for h in 0..lat.len() {
                for k in lat.above(h) {
                    let s: i64 = lat
                        .above(h)
                        .into_iter()
                        .filter(|&l| lat.contains(l, k))
                        .map(|l| lat.mobius(l, k))
                        .sum();
                    assert_eq!(s, i64::from(h == k), "{} {} {}", name, h, k);
                }
            }
        }
    }

    #[test]
    fn c12_lattice_shape() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let lat = g.cyclic_lattice();
        assert_eq!(lat.len(), 6);
        let one = 0;
        let whole = lat.len() - 1;
        assert_eq!(lat.mobius(one, one), 1);
        assert_eq!(lat.mobius(one, whole), 0);
        let order2 = lat.subgroup_of_order(&g, whole, 2).unwrap();
        assert_eq!(lat.mobius(one, order2), -1);
    }
}
