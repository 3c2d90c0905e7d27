use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{canonical, MoveSet, NielsenConfig, NielsenTuple};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Images of a flattened tuple under the generating moves and their inverses.
pub fn moves(g: &FiniteGroup, t: &[usize], base_genus: usize, set: MoveSet) -> Vec<Vec<usize>> {
    let h = 2 * base_genus;
    let b = t.len() - h;
    let mut out = Vec::new();
    for i in h..(h + b).saturating_sub(1) {
        let (x, y) = (t[i], t[i + 1]);
        // S_i
        let mut u = t.to_vec();
        u[i] = g.conj(x, y);
        u[i + 1] = x;
        out.push(u);
        // S_i⁻¹
        let mut u = t.to_vec();
        u[i] = y;
        u[i + 1] = g.conj(g.inv(y), x);
        out.push(u);
    }
    if set == MoveSet::Braid {
        return out;
    }
    for j in 0..base_genus {
        let (a, bb) = (t[2 * j], t[2 * j + 1]);
        let ai = g.inv(a);
        let bi = g.inv(bb);
        for (na, nb) in [
            (a, g.mul(bb, a)),
            (a, g.mul(bb, ai)),
            (g.mul(a, bb), bb),
            (g.mul(a, bi), bb),
        ] {
            let mut u = t.to_vec();
            u[2 * j] = na;
            u[2 * j + 1] = nb;
            out.push(u);
        }
    }
    for j in 0..base_genus.saturating_sub(1) {
        let c1 = g.commutator(t[2 * j], t[2 * j + 1]);
        let c2 = g.commutator(t[2 * j + 2], t[2 * j + 3]);
        let mut u = t.to_vec();
        u[2 * j] = g.conj(c1, t[2 * j + 2]);
        u[2 * j + 1] = g.conj(c1, t[2 * j + 3]);
        u[2 * j + 2] = t[2 * j];
        u[2 * j + 3] = t[2 * j + 1];
        out.push(u);
        let mut u = t.to_vec();
        let c2i = g.inv(c2);
        u[2 * j] = t[2 * j + 2];
        u[2 * j + 1] = t[2 * j + 3];
        u[2 * j + 2] = g.conj(c2i, t[2 * j]);
        u[2 * j + 3] = g.conj(c2i, t[2 * j + 1]);
        out.push(u);
    }
    // Twist around the curve enclosing the first handles and branch points:
    // conjugate that block by its product.
    for end in 1..t.len() {
        if end < h && end % 2 == 1 {
            continue;
        }
        let mut p = 0;
        let mut k = 0;
        while k < end {
            if k < h {
                p = g.mul(p, g.commutator(t[k], t[k + 1]));
                k += 2;
            } else {
                p = g.mul(p, t[k]);
                k += 1;
            }
        }
        for w in [p, g.inv(p)] {
            let mut u = t.to_vec();
            for x in u.iter_mut().take(end) {
                *x = g.conj(w, *x);
            }
            out.push(u);
        }
    }
    out
}

/// Orbits of the move group on conjugation classes of tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Each orbit lists its coloured members, sorted; orbits are ordered by
    /// their least member.
    pub orbits: Vec<Vec<NielsenTuple>>,
    /// Nodes visited, all colourings included.
    pub visited: usize,
}

/// Braid orbits of coloured tuples.
///
/// The full braid group acts on tuples whose branch classes form the
/// multiset of ξ in any order; each orbit is reported through its members
/// carrying the sorted colouring, which realises the action of the
/// partially coloured braid group.
pub fn braid_orbits(
    g: &FiniteGroup,
    tuples: &[NielsenTuple],
    base_genus: usize,
    cfg: &NielsenConfig,
) -> Result<OrbitDecomposition> {
    let run = || orbits_inner(g, tuples, base_genus, cfg);
    if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::usage(format!("thread pool: {}", e)))?;
        pool.install(run)
    } else {
        run()
    }
}

fn orbits_inner(
    g: &FiniteGroup,
    tuples: &[NielsenTuple],
    base_genus: usize,
    cfg: &NielsenConfig,
) -> Result<OrbitDecomposition> {
    let h = 2 * base_genus;
    let colored: HashSet<&[usize]> = tuples.iter().map(|t| t.entries.as_slice()).collect();
    let target = tuples.first().map(|t| {
        t.entries[h..]
            .iter()
            .map(|&x| g.class_of(x))
            .collect::<Vec<_>>()
    });
    let mut assigned: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut orbits: Vec<Vec<NielsenTuple>> = Vec::new();
    let mut visited = 0;
    let mut sorted: Vec<&NielsenTuple> = tuples.iter().collect();
    sorted.sort();
    for start in sorted {
        if assigned.contains_key(&start.entries) {
            continue;
        }
        let id = orbits.len();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(start.entries.clone());
        let mut frontier = vec![start.entries.clone()];
        while !frontier.is_empty() {
            let expand = |t: &Vec<usize>| -> Vec<Vec<usize>> {
                let rel = relation(g, t, h);
                moves(g, t, base_genus, cfg.moves)
                    .into_iter()
                    .map(|u| {
                        debug_assert_eq!(relation(g, &u, h), rel);
                        debug_assert!(same_classes(g, t, &u, h));
                        canonical(g, &u, cfg.order)
                    })
                    .collect()
            };
            let next: Vec<Vec<usize>> = if cfg.jobs > 1 {
                frontier.par_iter().flat_map_iter(expand).collect()
            } else {
                frontier.iter().flat_map(expand).collect()
            };
            frontier = Vec::new();
            for u in next {
                if !seen.contains(&u) {
                    seen.insert(u.clone());
                    frontier.push(u);
                }
            }
            if seen.len() > cfg.node_budget {
                return Err(Error::domain(
                    "node budget",
                    format!("orbit exceeds {} nodes", cfg.node_budget),
                ));
            }
        }
        visited += seen.len();
        let mut members: Vec<NielsenTuple> = seen
            .into_iter()
            .filter(|u| {
                colored.contains(u.as_slice())
                    || target
                        .as_ref()
                        .is_some_and(|c| u[h..].iter().map(|&x| g.class_of(x)).eq(c.iter().copied()))
            })
            .map(|entries| NielsenTuple { base_genus, entries })
            .collect();
        members.sort();
        for m in &members {
            assigned.insert(m.entries.clone(), id);
        }
        orbits.push(members);
    }
    Ok(OrbitDecomposition { orbits, visited })
}

fn relation(g: &FiniteGroup, t: &[usize], h: usize) -> usize {
    let mut acc = 0;
    for k in (0..h).step_by(2) {
        acc = g.mul(acc, g.commutator(t[k], t[k + 1]));
    }
    for &s in &t[h..] {
        acc = g.mul(acc, s);
    }
    acc
}

fn same_classes(g: &FiniteGroup, t: &[usize], u: &[usize], h: usize) -> bool {
    let mut a: Vec<usize> = t[h..].iter().map(|&x| g.class_of(x)).collect();
    let mut b: Vec<usize> = u[h..].iter().map(|&x| g.class_of(x)).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}
