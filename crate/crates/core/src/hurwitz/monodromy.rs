use num_bigint::BigInt;

use super::{HolonomyClass, HurwitzDatum};
use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup};

/// A monodromy type (G, H, ξ) with H core-free in G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyType {
    /// Sorted members of H.
    pub subgroup: Vec<usize>,
    pub datum: HurwitzDatum,
}

impl MonodromyType {
    pub fn new(g: &FiniteGroup, h: &[usize], datum: HurwitzDatum) -> Result<Self> {
        let mut h = h.to_vec();
        h.sort_unstable();
        h.dedup();
        if !g.is_subgroup(&h) {
            return Err(Error::domain("subgroup", "H is not a subgroup of G"));
        }
        let mut core = h.clone();
        for x in 0..g.order() {
            core.retain(|&y| h.binary_search(&g.conj(x, y)).is_ok());
        }
        if core.len() > 1 {
            return Err(Error::domain(
                "core-free subgroup",
                format!("the core of H has order {}", core.len()),
            ));
        }
        Ok(MonodromyType { subgroup: h, datum })
    }

    /// Aut(m) = {θ ∈ Aut(G) : θ(H) = H, θ(ξ) = ξ}.
    pub fn automorphisms(&self, g: &FiniteGroup) -> Result<Vec<Automorphism>> {
        let auts = g.automorphisms()?;
        Ok(auts
            .elements
            .into_iter()
            .filter(|a| {
                self.subgroup
                    .iter()
                    .all(|&x| self.subgroup.binary_search(&a.apply(x)).is_ok())
                    && self.datum.twist(g, &a.map) == self.datum
            })
            .collect())
    }

    /// |Δ(m)| = |Aut(m)| / |H|.
    pub fn delta_order(&self, g: &FiniteGroup) -> Result<usize> {
        let a = self.automorphisms(g)?.len();
        let h = self.subgroup.len();
        if a % h != 0 {
            return Err(Error::domain(
                "H embeds in Aut(m)",
                format!("|H| = {} does not divide |Aut(m)| = {}", h, a),
            ));
        }
        Ok(a / h)
    }
}

/// Local indices d_j over a point with cyclic stabiliser I = ⟨s⟩: the
/// cycle lengths of s on G/H (first) and |I|/|H ∩ xIx⁻¹| over the double
/// cosets H\G/I (second), both sorted.
pub fn local_data(g: &FiniteGroup, h: &[usize], s: usize) -> (Vec<u64>, Vec<u64>) {
    let cosets = g.left_cosets(h);
    let mut coset_of = vec![0usize; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let mut seen = vec![false; cosets.len()];
    let mut cycles = Vec::new();
    for i in 0..cosets.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            len += 1;
            j = coset_of[g.mul(s, cosets[j][0])];
        }
        cycles.push(len);
    }
    cycles.sort_unstable();

    let i_members = g.subgroup_closure(&[s]);
    let in_h = |x: usize| h.binary_search(&x).is_ok();
    let mut covered = vec![false; g.order()];
    let mut dc = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        for &a in h {
            for &t in &i_members {
                covered[g.mul(g.mul(a, x), t)] = true;
            }
        }
        let meet = i_members.iter().filter(|&&t| in_h(g.conj(x, t))).count() as u64;
        dc.push(i_members.len() as u64 / meet);
    }
    dc.sort_unstable();
    (cycles, dc)
}

/// N_π = Π_i (Π_j d_ij) / lcm_j d_ij.
pub fn closure_count(local: &[Vec<u64>]) -> Result<BigInt> {
    let mut n = BigInt::from(1);
    for node in local {
        if node.is_empty() || node.contains(&0) {
            return Err(Error::domain("local indices", "each node needs positive indices"));
        }
        let d = node.iter().fold(1, |a, &x| lcm(a, x));
        let prod: BigInt = node.iter().map(|&x| BigInt::from(x)).product();
        n *= prod / BigInt::from(d);
    }
    Ok(n)
}

/// Orbits of Π_j μ_{d_ij} under ε ∈ μ_{d_i} acting by ζ_ij ↦ ε^{d_i/d_ij} ζ_ij,
/// counted by enumeration.
pub fn closure_count_brute(local: &[Vec<u64>]) -> u64 {
    let mut total = 1;
    for node in local {
        let size: u64 = node.iter().product();
        let mut seen = vec![false; size as usize];
        let mut orbits = 0;
        for start in 0..size {
            if seen[start as usize] {
                continue;
            }
            orbits += 1;
            let mut digits = decode(start, node);
            loop {
                let code = encode(&digits, node);
                if seen[code as usize] {
                    break;
                }
                seen[code as usize] = true;
                for (z, &d) in digits.iter_mut().zip(node) {
                    *z = (*z + 1) % d;
                }
            }
        }
        total *= orbits;
    }
    total
}

fn decode(mut x: u64, radix: &[u64]) -> Vec<u64> {
    radix
        .iter()
        .map(|&d| {
            let r = x % d;
            x /= d;
            r
        })
        .collect()
}

fn encode(digits: &[u64], radix: &[u64]) -> u64 {
    digits
        .iter()
        .zip(radix)
        .rev()
        .fold(0, |acc, (&z, &d)| acc * d + z)
}

/// Ramification of the intermediate cover C/H → C/G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedRamification {
    pub degree: u64,
    /// For each class of ξ: multiplicity and the ramification indices over
    /// one branch point.
    pub points: Vec<(HolonomyClass, u64, Vec<u64>)>,
    pub genus: i64,
}

pub fn induced_ramification(
    g: &FiniteGroup,
    h: &[usize],
    base_genus: i64,
    xi: &HurwitzDatum,
) -> Result<InducedRamification> {
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    if !g.is_subgroup(&h) {
        return Err(Error::domain("subgroup", "H is not a subgroup of G"));
    }
    let degree = (g.order() / h.len()) as i64;
    let mut chi = degree * (2 * base_genus - 2);
    let mut points = Vec::new();
    for (c, b) in xi.iter() {
        let (cycles, _) = local_data(g, &h, c.element());
        chi += b as i64 * cycles.iter().map(|&l| l as i64 - 1).sum::<i64>();
        points.push((c, b, cycles));
    }
    if chi % 2 != 0 || chi < -2 {
        return Err(Error::domain("integral genus", format!("2g - 2 = {}", chi)));
    }
    Ok(InducedRamification {
        degree: degree as u64,
        points,
        genus: chi / 2 + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_transposition_type() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let h = g.subgroup_closure(&[t]);
        let xi = HurwitzDatum::from_elements(&g, &[t; 4]);
        let m = MonodromyType::new(&g, &h, xi.clone()).unwrap();
        assert_eq!(m.automorphisms(&g).unwrap().len(), 2);
        assert_eq!(m.delta_order(&g).unwrap(), 1);
        let r = induced_ramification(&g, &h, 0, &xi).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(r.genus, 0);
        assert_eq!(r.points[0].2, vec![1, 2]);
    }

    #[test]
    fn normal_subgroup_is_not_core_free() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let c = g.parse_element("(1 2 3)").unwrap();
        let h = g.subgroup_closure(&[c]);
        assert!(MonodromyType::new(&g, &h, HurwitzDatum::new()).is_err());
    }

    #[test]
    fn closure_counts() {
        assert_eq!(closure_count(&[vec![4]]).unwrap(), BigInt::from(1));
        assert_eq!(closure_count(&[vec![2, 2]]).unwrap(), BigInt::from(2));
        assert_eq!(closure_count_brute(&[vec![2, 2]]), 2);
        assert_eq!(closure_count_brute(&[vec![2, 3], vec![4, 6]]), 2);
    }
}
