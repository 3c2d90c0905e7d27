//! Nielsen tuples, their braid orbits, Nielsen numbers and Hurwitz numbers.

mod orbits;

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::arith::{render, Q};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hurwitz::HurwitzDatum;

pub use orbits::{braid_orbits, moves, OrbitDecomposition};

/// Tie-break used for canonical forms under simultaneous conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonOrder {
    /// Least flattened tuple.
    Lex,
    /// Least reversed flattened tuple.
    ReverseLex,
}

/// Which moves act on tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSet {
    /// Braid moves on the branch entries.
    Braid,
    /// Braid moves plus Dehn twists on the handles, handle exchanges and
    /// twists around initial blocks.
    Extended,
}

#[derive(Clone, Debug)]
pub struct NielsenConfig {
    /// Upper bound on the number of candidate tuples visited.
    pub search_budget: u128,
    /// Upper bound on the number of nodes kept during an orbit search.
    pub node_budget: usize,
    /// Worker threads for orbit expansion; 1 runs inline.
    pub jobs: usize,
    pub moves: MoveSet,
    pub order: CanonOrder,
}

impl Default for NielsenConfig {
    fn default() -> Self {
        NielsenConfig {
            search_budget: 50_000_000,
            node_budget: 5_000_000,
            jobs: 1,
            moves: MoveSet::Braid,
            order: CanonOrder::Lex,
        }
    }
}

/// (a_1, b_1, …, a_g', b_g', σ_1, …, σ_b) flattened.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NielsenTuple {
    pub base_genus: usize,
    pub entries: Vec<usize>,
}

impl NielsenTuple {
    pub fn handles(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries[..2 * self.base_genus]
            .chunks(2)
            .map(|c| (c[0], c[1]))
    }

    pub fn branch(&self) -> &[usize] {
        &self.entries[2 * self.base_genus..]
    }

    /// Π [a_j, b_j] · σ_1 ⋯ σ_b.
    pub fn relation(&self, g: &FiniteGroup) -> usize {
        let mut acc = 0;
        for (a, b) in self.handles() {
            acc = g.mul(acc, g.commutator(a, b));
        }
        for &s in self.branch() {
            acc = g.mul(acc, s);
        }
        acc
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let a: Vec<String> = self.handles().map(|(a, _)| g.element_string(a)).collect();
        let b: Vec<String> = self.handles().map(|(_, b)| g.element_string(b)).collect();
        let s: Vec<String> = self.branch().iter().map(|&x| g.element_string(x)).collect();
        json!({"a": a, "b": b, "sigma": s})
    }
}

/// Canonical representative of a tuple under simultaneous conjugation.
pub fn canonical(g: &FiniteGroup, t: &[usize], order: CanonOrder) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for x in 0..g.order() {
        let c: Vec<usize> = t.iter().map(|&y| g.conj(x, y)).collect();
        let better = match (&best, order) {
            (None, _) => true,
            (Some(b), CanonOrder::Lex) => c < *b,
            (Some(b), CanonOrder::ReverseLex) => c.iter().rev().lt(b.iter().rev()),
        };
        if better {
            best = Some(c);
        }
    }
    best.unwrap_or_default()
}

/// Conjugacy class indices of the branch entries prescribed by ξ, sorted.
pub(crate) fn coloring(g: &FiniteGroup, xi: &HurwitzDatum) -> Vec<usize> {
    let mut c: Vec<usize> = xi.expanded().iter().map(|&s| g.class_of(s)).collect();
    c.sort_unstable();
    c
}

/// Canonical representatives of Ni(ξ) modulo conjugation, with branch
/// entries coloured in the sorted class order of ξ.
pub fn enumerate_nielsen(
    g: &FiniteGroup,
    base_genus: usize,
    xi: &HurwitzDatum,
    cfg: &NielsenConfig,
) -> Result<Vec<NielsenTuple>> {
    let colors = coloring(g, xi);
    let b = colors.len();
    let n = g.order() as u128;
    let mut space: u128 = 1;
    for _ in 0..2 * base_genus {
        space = space.saturating_mul(n);
    }
    for &c in colors.iter().take(b.saturating_sub(1)) {
        space = space.saturating_mul(g.class_size(c) as u128);
    }
    if space > cfg.search_budget {
        return Err(Error::domain(
            "search budget",
            format!("{} candidate tuples exceed the budget {}", space, cfg.search_budget),
        ));
    }
    let mut found = BTreeSet::new();
    let mut cur = vec![0usize; 2 * base_genus + b];
    search(g, base_genus, &colors, &mut cur, 0, 0, &mut |t| {
        if g.generates(t) {
            found.insert(canonical(g, t, cfg.order));
        }
    });
    Ok(found
        .into_iter()
        .map(|entries| NielsenTuple { base_genus, entries })
        .collect())
}

fn search(
    g: &FiniteGroup,
    gp: usize,
    colors: &[usize],
    cur: &mut Vec<usize>,
    i: usize,
    acc: usize,
    f: &mut impl FnMut(&[usize]),
) {
    let len = cur.len();
    if i == len {
        if acc == 0 {
            f(cur);
        }
        return;
    }
    if i < 2 * gp {
        if i % 2 == 1 {
            let a = cur[i - 1];
            for y in 0..g.order() {
                cur[i] = y;
                search(g, gp, colors, cur, i + 1, g.mul(acc, g.commutator(a, y)), f);
            }
        } else {
            for x in 0..g.order() {
                cur[i] = x;
                search(g, gp, colors, cur, i + 1, acc, f);
            }
        }
        return;
    }
    let c = colors[i - 2 * gp];
    if i + 1 == len {
        let last = g.inv(acc);
        if g.class_of(last) == c {
            cur[i] = last;
            f(cur);
        }
        return;
    }
    for &x in &g.classes()[c].members {
        cur[i] = x;
        search(g, gp, colors, cur, i + 1, g.mul(acc, x), f);
    }
}

/// Nielsen and Hurwitz numbers of (G, g', ξ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NielsenReport {
    pub nielsen_number: usize,
    pub hurwitz_number: usize,
    /// #Hom(π, G) / |G| over coloured generating tuples.
    pub weighted_count: Q,
    /// Coloured conjugation classes per orbit, orbits in order of their
    /// least member.
    pub orbit_sizes: Vec<usize>,
    pub orbits: Vec<Vec<NielsenTuple>>,
    /// False when moves beyond the braid action on branch entries were used.
    pub braid_only: bool,
}

impl NielsenReport {
    pub fn to_json(&self, g: &FiniteGroup, with_tuples: bool) -> Value {
        let mut v = json!({
            "nielsen_number": self.nielsen_number,
            "hurwitz_number": self.hurwitz_number,
            "weighted_count": render(&self.weighted_count),
            "orbit_sizes": self.orbit_sizes,
            "braid_only": self.braid_only,
        });
        if with_tuples {
            v["orbits"] = json!(self
                .orbits
                .iter()
                .map(|o| o.iter().map(|t| t.to_json(g)).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        v
    }
}

/// h(ξ) and h_{g,G,ξ}. For g' ≥ 1 the extended move set must be selected.
pub fn nielsen_number(
    g: &FiniteGroup,
    base_genus: usize,
    xi: &HurwitzDatum,
    cfg: &NielsenConfig,
) -> Result<NielsenReport> {
    if base_genus > 0 && cfg.moves != MoveSet::Extended {
        return Err(Error::domain(
            "mapping class action",
            "unsupported beyond conjugation + braid-on-σ for g' ≥ 1; enable the extended moves",
        ));
    }
    let tuples = enumerate_nielsen(g, base_genus, xi, cfg)?;
    let z = (0..g.order())
        .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
        .count();
    let hurwitz_number = tuples.len();
    let weighted_count = Q::new(
        (hurwitz_number as i64).into(),
        (z as i64).into(),
    );
    let dec = braid_orbits(g, &tuples, base_genus, cfg)?;
    Ok(NielsenReport {
        nielsen_number: dec.orbits.len(),
        hurwitz_number,
        weighted_count,
        orbit_sizes: dec.orbits.iter().map(|o| o.len()).collect(),
        orbits: dec.orbits,
        braid_only: base_genus == 0 && cfg.moves == MoveSet::Braid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_three_points() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let sigma = crate::hurwitz::cyclic_generator(&g).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[sigma; 3]);
        let t = enumerate_nielsen(&g, 0, &xi, &NielsenConfig::default()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].entries, vec![sigma; 3]);
    }

    #[test]
    fn s3_four_transpositions() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[t; 4]);
        let r = nielsen_number(&g, 0, &xi, &NielsenConfig::default()).unwrap();
        assert_eq!(r.nielsen_number, 1);
        // 3^3 tuples; product condition and generation leave 24, free action of S3
        assert_eq!(r.hurwitz_number, 4);
        assert_eq!(r.orbit_sizes, vec![4]);
    }

    #[test]
    fn empty_nielsen_class() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let sigma = crate::hurwitz::cyclic_generator(&g).unwrap();
        let two = g.pow(sigma, 2);
        let xi = HurwitzDatum::from_elements(&g, &[two, two]);
        let r = nielsen_number(&g, 0, &xi, &NielsenConfig::default()).unwrap();
        assert_eq!((r.nielsen_number, r.hurwitz_number), (0, 0));
    }

    #[test]
    fn positive_genus_needs_flag() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[1, 1]);
        assert!(nielsen_number(&g, 1, &xi, &NielsenConfig::default()).is_err());
        let cfg = NielsenConfig {
            moves: MoveSet::Extended,
            ..Default::default()
        };
        let r = nielsen_number(&g, 1, &xi, &cfg).unwrap();
        assert!(!r.braid_only);
        assert!(r.nielsen_number >= 1);
    }
}
