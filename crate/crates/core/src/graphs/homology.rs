use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{Closure, GGraph, ModularGraph};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Fundamental cycles of a spanning forest. Edges are `graph.edges()`, the
/// edge (h, τh) oriented from ∂h to ∂τh; each cycle is a coefficient vector
/// over them. Also returns, per cycle, the index of its non-tree edge.
pub fn cycle_basis(graph: &ModularGraph) -> (Vec<(usize, usize)>, Vec<Vec<i64>>, Vec<usize>) {
    let edges = graph.edges();
    let nv = graph.vertex_count();
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nv];
    for (i, &(h, k)) in edges.iter().enumerate() {
        let (a, b) = (graph.attach[h], graph.attach[k]);
        adj[a].push((b, i, 1));
        adj[b].push((a, i, -1));
    }
    // parent edge with the sign that walks from the child up to the parent
    let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree = vec![false; edges.len()];
    for root in 0..nv {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, i, sign) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, i, -sign));
                    tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis = Vec::new();
    let mut chords = Vec::new();
    for (i, &(h, k)) in edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        let mut c = vec![0i64; edges.len()];
        c[i] += 1;
        // walk from ∂τh back to ∂h through the tree
        let (mut a, mut b) = (graph.attach[k], graph.attach[h]);
        let mut tail = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (p, j, s) = parent[a].expect("non-root has a parent");
                c[j] += s;
                a = p;
            } else {
                let (p, j, s) = parent[b].expect("non-root has a parent");
                tail.push((j, -s));
                b = p;
            }
        }
        for (j, s) in tail {
            c[j] += s;
        }
        basis.push(c);
        chords.push(i);
    }
    (edges, basis, chords)
}

/// Nonzero invariant factors of an integer matrix, by Smith reduction.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for k in t..cols {
                        let v = a[i][k].clone();
                        a[t][k] += v;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            out.push(a[t][t].abs());
            t += 1;
        }
    }
    out
}

/// Decomposition and inertia groups and the exactness of
/// H₁(Γ) → H₁(Γ/G) → (G/D)_ab → 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    /// Normal closure of the vertex stabilisers.
    pub decomposition: Vec<usize>,
    /// Normal closure of the edge stabilisers.
    pub inertia: Vec<usize>,
    pub inertia_in_decomposition: bool,
    pub upstairs_betti: usize,
    pub downstairs_betti: usize,
    /// |(G/D)_ab|.
    pub abelianized_order: usize,
    /// Invariant factors of H₁(Γ) → H₁(Γ/G) in cycle bases.
    pub image_invariants: Vec<BigInt>,
    pub composite_zero: bool,
    pub onto: bool,
    pub middle_exact: bool,
}

impl Exactness {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.onto && self.middle_exact
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        json!({
            "decomposition_order": self.decomposition.len(),
            "inertia_order": self.inertia.len(),
            "decomposition": self.decomposition.iter().map(|&x| g.element_string(x)).collect::<Vec<_>>(),
            "inertia": self.inertia.iter().map(|&x| g.element_string(x)).collect::<Vec<_>>(),
            "inertia_in_decomposition": self.inertia_in_decomposition,
            "upstairs_betti": self.upstairs_betti,
            "downstairs_betti": self.downstairs_betti,
            "abelianized_order": self.abelianized_order,
            "image_invariants": self.image_invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "composite_zero": self.composite_zero,
            "onto": self.onto,
            "middle_exact": self.middle_exact,
            "exact": self.exact(),
        })
    }
}

pub fn decomposition_inertia(gg: &GGraph) -> Result<Exactness> {
    let g = gg.group;
    let gr = &gg.graph;
    if !gr.is_connected() {
        return Err(Error::domain("connected graph", "the graph is disconnected"));
    }
    let vo = &gg.vertex_orbits;
    let ho = &gg.half_edge_orbits;
    let vstab: Vec<usize> = vo.stabilizers.iter().flatten().copied().collect();
    let estab: Vec<usize> = ho
        .reps
        .iter()
        .enumerate()
        .filter(|&(_, &r)| !gr.is_leg(r))
        .flat_map(|(o, _)| ho.stabilizers[o].iter().copied())
        .collect();
    let decomposition = g.normal_closure(&vstab);
    let inertia = g.normal_closure(&estab);
    let inertia_in_decomposition = inertia.iter().all(|x| decomposition.binary_search(x).is_ok());

    // N = [G, G]·D, so that G/N = (G/D)_ab
    let mut ngens = decomposition.clone();
    let gens = g.generator_ids();
    for &a in gens {
        for &b in gens {
            ngens.push(g.commutator(a, b));
        }
    }
    let n_sub = g.normal_closure(&ngens);
    let mut in_n = vec![false; g.order()];
    for &x in &n_sub {
        in_n[x] = true;
    }
    let abelianized_order = g.order() / n_sub.len();

    // quotient graph and φ on its oriented edges
    let q_attach: Vec<usize> = ho.reps.iter().map(|&h| vo.orbit_of[gr.attach[h]]).collect();
    let q_opp: Vec<usize> = ho.reps.iter().map(|&h| ho.orbit_of[gr.opposite[h]]).collect();
    let q_genera = vec![0; vo.count()];
    let quotient = ModularGraph::new(q_genera, q_attach, q_opp)?;
    let (q_edges, q_basis, q_chords) = cycle_basis(&quotient);
    let q_index = |a: usize, b: usize| -> (usize, i64) {
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let i = q_edges
            .iter()
            .position(|&e| e == (lo, hi))
            .expect("image of an edge is an edge");
        (i, s)
    };
    let phi: Vec<usize> = q_edges
        .iter()
        .map(|&(eps, _)| {
            let r = ho.reps[eps];
            let x = vo.transversal[gr.attach[r]];
            let h = ho.act(g, g.inv(x), r);
            let w = gr.attach[gr.opposite[h]];
            vo.transversal[w]
        })
        .collect();
    let eval = |chain: &[i64]| -> usize {
        chain
            .iter()
            .zip(&phi)
            .fold(0, |acc, (&c, &y)| g.mul(acc, g.pow(y, c)))
    };

    let (edges, basis, _) = cycle_basis(gr);
    let mut composite_zero = true;
    let mut matrix = Vec::with_capacity(basis.len());
    for c in &basis {
        let mut image = vec![0i64; q_edges.len()];
        for (i, &coef) in c.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            let (h, k) = edges[i];
            let (j, s) = q_index(ho.orbit_of[h], ho.orbit_of[k]);
            image[j] += s * coef;
        }
        if !in_n[eval(&image)] {
            composite_zero = false;
        }
        matrix.push(q_chords.iter().map(|&j| image[j]).collect::<Vec<i64>>());
    }
    let mut span = Closure::new(g);
    for &x in &n_sub {
        span.add(x);
    }
    for z in &q_basis {
        span.add(eval(z));
    }
    let image_order = span.len() / n_sub.len();
    let onto = image_order == abelianized_order;
    let image_invariants = smith_invariants(&matrix);
    let full_rank = image_invariants.len() == q_basis.len();
    let index: BigInt = image_invariants.iter().fold(BigInt::one(), |a, b| a * b);
    let middle_exact = composite_zero && full_rank && index == BigInt::from(image_order);
    Ok(Exactness {
        decomposition,
        inertia,
        inertia_in_decomposition,
        upstairs_betti: gr.betti(),
        downstairs_betti: quotient.betti(),
        abelianized_order,
        image_invariants,
        composite_zero,
        onto,
        middle_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{antipodal_hexagon, loop_graph, segment};
    use super::*;

    #[test]
    fn smith_small() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(
            smith_invariants(&m),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(smith_invariants(&[vec![0, 0]]), Vec::<BigInt>::new());
        assert_eq!(smith_invariants(&[vec![4], vec![6]]), vec![BigInt::from(2)]);
    }

    #[test]
    fn cycles_are_cycles() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let gg = antipodal_hexagon(&g).unwrap();
        let (edges, basis, _) = cycle_basis(&gg.graph);
        assert_eq!(basis.len(), 1);
        let mut boundary = vec![0i64; gg.graph.vertex_count()];
        for (i, &(h, k)) in edges.iter().enumerate() {
            boundary[gg.graph.attach[k]] += basis[0][i];
            boundary[gg.graph.attach[h]] -= basis[0][i];
        }
        assert!(boundary.iter().all(|&x| x == 0));
    }

    #[test]
    fn hexagon_sequence() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let gg = antipodal_hexagon(&g).unwrap();
        let r = decomposition_inertia(&gg).unwrap();
        assert_eq!((r.decomposition.len(), r.inertia.len()), (1, 1));
        assert_eq!(r.image_invariants, vec![BigInt::from(2)]);
        assert_eq!(r.abelianized_order, 2);
        assert!(r.exact());
    }

    #[test]
    fn trivial_action() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let gr = ModularGraph::new(vec![0, 0], vec![0, 1, 0, 1], vec![1, 0, 3, 2]).unwrap();
        let id = |n: usize| (0..n).collect::<Vec<_>>();
        let gg = GGraph::new(&g, gr, vec![id(2), id(2)], vec![id(4), id(4)], None).unwrap();
        let r = decomposition_inertia(&gg).unwrap();
        assert_eq!(r.decomposition.len(), 6);
        assert_eq!(r.abelianized_order, 1);
        assert_eq!(r.image_invariants, vec![BigInt::from(1)]);
        assert!(r.exact());
    }

    #[test]
    fn circuit_and_segment() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let sigma = crate::hurwitz::cyclic_generator(&g).unwrap();
        let gg = loop_graph(&g, &[], 0, sigma, 1, &[]).unwrap();
        let r = decomposition_inertia(&gg).unwrap();
        assert_eq!(r.image_invariants, vec![BigInt::from(5)]);
        assert!(r.exact());

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = s3.parse_element("(1 2)").unwrap();
        let u = s3.parse_element("(2 3)").unwrap();
        let gg = segment(&s3, &[t], &[u], 0, (0, 0), &[t, t], &[u, u]).unwrap();
        let r = decomposition_inertia(&gg).unwrap();
        assert_eq!(r.decomposition.len(), 6);
        assert_eq!(r.downstairs_betti, 0);
        assert!(r.exact());
    }
}
