use serde_json::{json, Value};

use super::{decomposition_inertia, quotient_and_genus, Closure, GGraph};
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Shapes of the decomposition and inertia groups of a level-n degeneration,
/// item by item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub n: u64,
    pub genus: i64,
    /// dim H₁ of the quotient graph.
    pub h: usize,
    pub inertia_order: usize,
    pub decomposition_order: usize,
    pub items: Vec<(String, bool)>,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "genus": self.genus,
            "h": self.h,
            "inertia_order": self.inertia_order,
            "decomposition_order": self.decomposition_order,
            "items": self.items.iter().map(|(k, v)| json!({"check": k, "pass": v})).collect::<Vec<_>>(),
            "pass": self.passed(),
        })
    }
}

/// Whether sub/normal ≅ (Z/n)^r: order n^r and exactly d^r elements killed
/// by d for every d | n. Both arguments are sorted subgroups, normal ⊆ sub.
fn is_power(g: &FiniteGroup, sub: &[usize], normal: &[usize], n: u64, r: i64) -> bool {
    if r < 0 {
        return false;
    }
    let q = (sub.len() / normal.len()) as u128;
    let target = |d: u64| (d as u128).checked_pow(r as u32);
    if Some(q) != target(n) {
        return false;
    }
    divisors(n).into_iter().all(|d| {
        let killed = sub
            .iter()
            .filter(|&&x| normal.binary_search(&g.pow(x, d as i64)).is_ok())
            .count()
            / normal.len();
        Some(killed as u128) == target(d)
    })
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Compares G/D, G/I, D, I and, for each component, G_i, I_i with the
/// (Z/n)-power shapes predicted for G = (Z/n)^{2g}, g the genus of the
/// quotient curve and h = dim H₁ of its dual graph.
pub fn level_structure_check(gg: &GGraph, n: u64) -> Result<LevelReport> {
    let g = gg.group;
    if !g.is_abelian() {
        return Err(Error::domain("level group", "G must be abelian"));
    }
    let q = quotient_and_genus(gg)?;
    let genus = q.downstairs_genus;
    let whole: Vec<usize> = (0..g.order()).collect();
    let trivial = vec![0];
    if !is_power(g, &whole, &trivial, n, 2 * genus) {
        return Err(Error::domain(
            "level group",
            format!("G is not (Z/{})^{}", n, 2 * genus),
        ));
    }
    let gr = &gg.graph;
    let ho = &gg.half_edge_orbits;
    if gr.legs().iter().any(|&l| ho.stabilizer_order(l) > 1) {
        return Err(Error::domain("principal degeneration", "a leg has nontrivial stabiliser"));
    }
    let ex = decomposition_inertia(gg)?;
    let h = q.quotient.betti() as i64;
    let (d, i) = (&ex.decomposition, &ex.inertia);
    let mut items = vec![
        (format!("G/D = (Z/{})^{}", n, h), is_power(g, &whole, d, n, h)),
        (format!("G/I = (Z/{})^{}", n, 2 * genus - h), is_power(g, &whole, i, n, 2 * genus - h)),
        (format!("D = (Z/{})^{}", n, 2 * genus - h), is_power(g, d, &trivial, n, 2 * genus - h)),
        (format!("I = (Z/{})^{}", n, h), is_power(g, i, &trivial, n, h)),
    ];
    let vo = &gg.vertex_orbits;
    for (o, &v) in vo.reps.iter().enumerate() {
        let gi = &vo.stabilizers[o];
        let mut span = Closure::new(g);
        for hh in 0..gr.half_edge_count() {
            if gr.attach[hh] == v && !gr.is_leg(hh) {
                for x in ho.stabilizer(g, hh) {
                    span.add(x);
                }
            }
        }
        let ii = span.members();
        let gen_i = q.quotient.genera[o];
        let val = q.quotient.valence(o) as i64;
        items.push((format!("vertex {}: I_i = I ∩ G_i", o), ii == meet(i, gi)));
        items.push((
            format!("vertex {}: G_i/I_i = (Z/{})^{}", o, n, 2 * gen_i),
            is_power(g, gi, &ii, n, 2 * gen_i),
        ));
        items.push((
            format!("vertex {}: I_i = (Z/{})^{}", o, n, val - 1),
            is_power(g, &ii, &trivial, n, val - 1),
        ));
        items.push((
            format!("vertex {}: G_i = (Z/{})^{}", o, n, 2 * gen_i + val - 1),
            is_power(g, gi, &trivial, n, 2 * gen_i + val - 1),
        ));
    }
    Ok(LevelReport {
        n,
        genus,
        h: h as usize,
        inertia_order: i.len(),
        decomposition_order: d.len(),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{level_group, level_loop, level_two_edge, segment};
    use super::*;

    #[test]
    fn one_loop() {
        for n in [2, 3] {
            let g = level_group(n, 2).unwrap();
            let gg = level_loop(&g, 2).unwrap();
            let r = level_structure_check(&gg, n as u64).unwrap();
            assert_eq!(r.h, 1);
            assert_eq!(r.inertia_order, n);
            assert!(r.passed(), "{:?}", r.items);
        }
    }

    #[test]
    fn two_edges() {
        let g = level_group(2, 3).unwrap();
        let gg = level_two_edge(&g, 1, 1).unwrap();
        let r = level_structure_check(&gg, 2).unwrap();
        assert_eq!(r.inertia_order, 2);
        assert!(r.passed(), "{:?}", r.items);
    }

    #[test]
    fn tree_quotient() {
        // separating node: G = G_1 × G_2, I = 1, D = G
        let g = level_group(3, 2).unwrap();
        let e = g.generator_ids().to_vec();
        let gg = segment(&g, &e[..2], &e[2..], 0, (1, 1), &[], &[]).unwrap();
        let r = level_structure_check(&gg, 3).unwrap();
        assert_eq!(r.h, 0);
        assert_eq!(r.decomposition_order, g.order());
        assert!(r.passed(), "{:?}", r.items);
    }

    #[test]
    fn power_shapes() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let all: Vec<usize> = (0..4).collect();
        assert!(is_power(&g, &all, &[0], 4, 1));
        let k = FiniteGroup::abelian(&[2, 2]).unwrap();
        assert!(!is_power(&k, &all, &[0], 4, 1));
        assert!(is_power(&k, &all, &[0], 2, 2));
    }
}
