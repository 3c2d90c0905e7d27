use super::{GGraph, ModularGraph};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A G-orbit of vertices G/G_v over a vertex of genus `base_genus` of the quotient.
#[derive(Clone, Debug)]
pub struct VertexOrbit {
    /// Generators of G_v.
    pub stabilizer: Vec<usize>,
    pub base_genus: i64,
}

/// A G-orbit of edges G/H, H = ⟨holonomy⟩. The half-edge (αH, +1) sits at
/// α·v_from with holonomy αsα⁻¹, its opposite (αH, −1) at α·shift·v_to with
/// holonomy αs⁻¹α⁻¹.
#[derive(Clone, Debug)]
pub struct EdgeOrbit {
    pub from: usize,
    pub to: usize,
    pub holonomy: usize,
    pub shift: usize,
}

/// A G-orbit of legs G/⟨holonomy⟩ at the vertex orbit `vertex`.
#[derive(Clone, Debug)]
pub struct LegOrbit {
    pub vertex: usize,
    pub holonomy: usize,
}

struct Cosets {
    reps: Vec<usize>,
    index: Vec<usize>,
    sub: Vec<usize>,
}

impl Cosets {
    fn new(g: &FiniteGroup, gens: &[usize]) -> Self {
        let sub = g.subgroup_closure(gens);
        let cs = g.left_cosets(&sub);
        let mut index = vec![0; g.order()];
        for (i, c) in cs.iter().enumerate() {
            for &x in c {
                index[x] = i;
            }
        }
        Cosets {
            reps: cs.iter().map(|c| c[0]).collect(),
            index,
            sub,
        }
    }

    fn contains(&self, x: usize) -> bool {
        self.sub.binary_search(&x).is_ok()
    }
}

/// Assembles Γ from a graph of groups: vertices ⊔ G/G_v, edges ⊔ G/H_e and
/// legs ⊔ G/⟨t⟩. Vertex genera come from Riemann–Hurwitz over the given
/// quotient genera.
pub fn build_from_orbits<'g>(
    g: &'g FiniteGroup,
    vertices: &[VertexOrbit],
    edges: &[EdgeOrbit],
    legs: &[LegOrbit],
) -> Result<GGraph<'g>> {
    let vc: Vec<Cosets> = vertices.iter().map(|v| Cosets::new(g, &v.stabilizer)).collect();
    let mut voff = Vec::new();
    let mut nv = 0;
    for c in &vc {
        voff.push(nv);
        nv += c.reps.len();
    }
    let vid = |o: usize, x: usize| voff[o] + vc[o].index[x];

    let mut attach = Vec::new();
    let mut opposite = Vec::new();
    let mut dec = Vec::new();
    // (cosets, offset, kind): kind 0 edge, 1 leg
    let mut blocks: Vec<(Cosets, usize, bool)> = Vec::new();
    for e in edges {
        if e.from >= vertices.len() || e.to >= vertices.len() {
            return Err(Error::domain("graph of groups", "edge names a missing vertex orbit"));
        }
        let c = Cosets::new(g, &[e.holonomy]);
        if !c.sub.iter().all(|&h| vc[e.from].contains(h)) {
            return Err(Error::domain("graph of groups", "edge stabiliser not in G_from"));
        }
        let si = g.inv(e.shift);
        if !c.sub.iter().all(|&h| vc[e.to].contains(g.conj(si, h))) {
            return Err(Error::domain("graph of groups", "shift⁻¹·H·shift not in G_to"));
        }
        let off = attach.len();
        for &a in &c.reps {
            let h = attach.len();
            attach.push(vid(e.from, a));
            attach.push(vid(e.to, g.mul(a, e.shift)));
            opposite.push(h + 1);
            opposite.push(h);
            dec.push(g.conj(a, e.holonomy));
            dec.push(g.conj(a, g.inv(e.holonomy)));
        }
        blocks.push((c, off, false));
    }
    for l in legs {
        if l.vertex >= vertices.len() {
            return Err(Error::domain("graph of groups", "leg names a missing vertex orbit"));
        }
        let c = Cosets::new(g, &[l.holonomy]);
        if !c.sub.iter().all(|&h| vc[l.vertex].contains(h)) {
            return Err(Error::domain("graph of groups", "leg stabiliser not in G_v"));
        }
        let off = attach.len();
        for &a in &c.reps {
            let h = attach.len();
            attach.push(vid(l.vertex, a));
            opposite.push(h);
            dec.push(g.conj(a, l.holonomy));
        }
        blocks.push((c, off, true));
    }

    let mut genera = vec![0; nv];
    for (o, v) in vertices.iter().enumerate() {
        let base = voff[o];
        let ram: i64 = (0..attach.len())
            .filter(|&h| attach[h] == base)
            .map(|h| g.element_order(dec[h]) as i64 - 1)
            .sum();
        let x = vc[o].sub.len() as i64 * (2 * v.base_genus - 2) + ram;
        if v.base_genus < 0 || x % 2 != 0 || x < -2 {
            return Err(Error::domain(
                "Riemann–Hurwitz",
                format!("vertex orbit {}: 2g − 2 = {}", o, x),
            ));
        }
        for c in 0..vc[o].reps.len() {
            genera[base + c] = x / 2 + 1;
        }
    }

    let mut va = Vec::new();
    let mut ha = Vec::new();
    for &x in g.generator_ids() {
        let mut vp = vec![0; nv];
        for (o, c) in vc.iter().enumerate() {
            for (i, &a) in c.reps.iter().enumerate() {
                vp[voff[o] + i] = vid(o, g.mul(x, a));
            }
        }
        let mut hp = vec![0; attach.len()];
        for (c, off, is_leg) in &blocks {
            let width = if *is_leg { 1 } else { 2 };
            for (i, &a) in c.reps.iter().enumerate() {
                let j = c.index[g.mul(x, a)];
                for k in 0..width {
                    hp[off + width * i + k] = off + width * j + k;
                }
            }
        }
        va.push(vp);
        ha.push(hp);
    }
    let graph = ModularGraph::new(genera, attach, opposite)?;
    GGraph::new(g, graph, va, ha, Some(dec))
}

fn require_generation(g: &FiniteGroup, gens: &[usize], what: &str) -> Result<()> {
    if !g.generates(gens) {
        return Err(Error::domain("generation", format!("{} do not generate G", what)));
    }
    Ok(())
}

/// Comb over a star with k ≥ 3 branches: root orbit G, leaf orbits G/H_i
/// with H_i = ⟨s_i⟩, two legs (s_i, s_i⁻¹) at each leaf, all quotient genera 0.
pub fn comb<'g>(g: &'g FiniteGroup, hs: &[usize]) -> Result<GGraph<'g>> {
    if hs.len() < 3 {
        return Err(Error::domain("stability", "the root of a comb needs k ≥ 3 branches"));
    }
    require_generation(g, hs, "the H_i")?;
    let mut vertices = vec![VertexOrbit {
        stabilizer: vec![],
        base_genus: 0,
    }];
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for (i, &s) in hs.iter().enumerate() {
        vertices.push(VertexOrbit {
            stabilizer: vec![s],
            base_genus: 0,
        });
        edges.push(EdgeOrbit {
            from: 0,
            to: i + 1,
            holonomy: 0,
            shift: 0,
        });
        legs.push(LegOrbit {
            vertex: i + 1,
            holonomy: s,
        });
        legs.push(LegOrbit {
            vertex: i + 1,
            holonomy: g.inv(s),
        });
    }
    build_from_orbits(g, &vertices, &edges, &legs)
}

/// Closed-form genus of the comb: 1 + k|G| − Σ [G : H_i].
pub fn comb_genus(g: &FiniteGroup, hs: &[usize]) -> i64 {
    let n = g.order() as i64;
    let idx: i64 = hs
        .iter()
        .map(|&s| n / g.element_order(s) as i64)
        .sum();
    1 + hs.len() as i64 * n - idx
}

/// Segment: vertex orbits G/G_1, G/G_2 joined by G/H, H = ⟨s⟩ ⊆ G_1 ∩ G_2.
/// Legs are given per side by their holonomy elements.
#[allow(clippy::too_many_arguments)]
pub fn segment<'g>(
    g: &'g FiniteGroup,
    g1: &[usize],
    g2: &[usize],
    s: usize,
    base_genera: (i64, i64),
    legs1: &[usize],
    legs2: &[usize],
) -> Result<GGraph<'g>> {
    let mut both = g1.to_vec();
    both.extend_from_slice(g2);
    require_generation(g, &both, "G_1 ∪ G_2")?;
    let vertices = [
        VertexOrbit {
            stabilizer: g1.to_vec(),
            base_genus: base_genera.0,
        },
        VertexOrbit {
            stabilizer: g2.to_vec(),
            base_genus: base_genera.1,
        },
    ];
    let edges = [EdgeOrbit {
        from: 0,
        to: 1,
        holonomy: s,
        shift: 0,
    }];
    let legs: Vec<LegOrbit> = legs1
        .iter()
        .map(|&t| LegOrbit { vertex: 0, holonomy: t })
        .chain(legs2.iter().map(|&t| LegOrbit { vertex: 1, holonomy: t }))
        .collect();
    build_from_orbits(g, &vertices, &edges, &legs)
}

/// [G:G_1]g_1 + [G:G_2]g_2 + [G:H] − [G:G_1] − [G:G_2] + 1.
pub fn segment_genus(index1: i64, index2: i64, index_h: i64, g1: i64, g2: i64) -> i64 {
    index1 * g1 + index2 * g2 + index_h - index1 - index2 + 1
}

/// Loop: one vertex orbit G/G_0, edges G/H with (αH, +1) at αG_0 and
/// (αH, −1) at αg_0G_0.
pub fn loop_graph<'g>(
    g: &'g FiniteGroup,
    g0_gens: &[usize],
    s: usize,
    g0: usize,
    base_genus: i64,
    legs: &[usize],
) -> Result<GGraph<'g>> {
    let sub = g.subgroup_closure(g0_gens);
    if sub.binary_search(&g0).is_ok() {
        return Err(Error::domain("generation", "g_0 lies in G_0"));
    }
    let mut gens = g0_gens.to_vec();
    gens.push(g0);
    require_generation(g, &gens, "G_0 ∪ {g_0}")?;
    let vertices = [VertexOrbit {
        stabilizer: g0_gens.to_vec(),
        base_genus,
    }];
    let edges = [EdgeOrbit {
        from: 0,
        to: 0,
        holonomy: s,
        shift: g0,
    }];
    let legs: Vec<LegOrbit> = legs
        .iter()
        .map(|&t| LegOrbit { vertex: 0, holonomy: t })
        .collect();
    build_from_orbits(g, &vertices, &edges, &legs)
}

/// The 6-cycle with Z/2 acting by the antipodal rotation.
pub fn antipodal_hexagon(g: &FiniteGroup) -> Result<GGraph<'_>> {
    if g.order() != 2 {
        return Err(Error::domain("group", "the antipodal hexagon needs Z/2"));
    }
    let sigma = 1;
    let v = |_| VertexOrbit {
        stabilizer: vec![],
        base_genus: 0,
    };
    let vertices: Vec<VertexOrbit> = (0..3).map(v).collect();
    let edges = [
        EdgeOrbit { from: 0, to: 1, holonomy: 0, shift: 0 },
        EdgeOrbit { from: 1, to: 2, holonomy: 0, shift: 0 },
        EdgeOrbit { from: 2, to: 0, holonomy: 0, shift: sigma },
    ];
    build_from_orbits(g, &vertices, &edges, &[])
}

/// (Z/n)^{2g}.
pub fn level_group(n: usize, genus: usize) -> Result<FiniteGroup> {
    FiniteGroup::abelian(&vec![n; 2 * genus])
}

/// The one-loop level-n degeneration: G_0 = ⟨e_1, …, e_{2g−1}⟩, H = ⟨e_1⟩,
/// g_0 = e_{2g}, vertex of geometric genus g − 1.
pub fn level_loop(g: &FiniteGroup, genus: usize) -> Result<GGraph<'_>> {
    let e = g.generator_ids();
    if genus < 1 || e.len() != 2 * genus {
        return Err(Error::domain("level group", "expected (Z/n)^{2g} on its standard generators"));
    }
    loop_graph(g, &e[..2 * genus - 1], e[0], e[2 * genus - 1], genus as i64 - 1, &[])
}

/// Two components of genera g', g'' meeting in two points: G_1 =
/// ⟨e_1, e_2, …, e_{2g'+1}⟩, G_2 = ⟨e_1, e_{2g'+2}, …, e_{2g−1}⟩, both nodes
/// with stabiliser ⟨e_1⟩, the second edge shifted by e_{2g}.
pub fn level_two_edge(g: &FiniteGroup, g1: usize, g2: usize) -> Result<GGraph<'_>> {
    let genus = g1 + g2 + 1;
    let e = g.generator_ids();
    if e.len() != 2 * genus {
        return Err(Error::domain("level group", "expected (Z/n)^{2g} on its standard generators"));
    }
    let s = e[0];
    let mut first = vec![s];
    first.extend_from_slice(&e[1..2 * g1 + 1]);
    let mut second = vec![s];
    second.extend_from_slice(&e[2 * g1 + 1..2 * genus - 1]);
    let vertices = [
        VertexOrbit {
            stabilizer: first,
            base_genus: g1 as i64,
        },
        VertexOrbit {
            stabilizer: second,
            base_genus: g2 as i64,
        },
    ];
    let edges = [
        EdgeOrbit { from: 0, to: 1, holonomy: s, shift: 0 },
        EdgeOrbit { from: 0, to: 1, holonomy: g.inv(s), shift: e[2 * genus - 1] },
    ];
    build_from_orbits(g, &vertices, &edges, &[])
}

#[cfg(test)]
mod tests {
    use super::super::quotient_and_genus;
    use super::*;

    #[test]
    fn loop_over_trivial_g0_is_a_circuit() {
        for n in 2..8 {
            let g = FiniteGroup::cyclic(n).unwrap();
            let sigma = crate::hurwitz::cyclic_generator(&g).unwrap();
            let gg = loop_graph(&g, &[], 0, sigma, 1, &[]).unwrap();
            assert_eq!(gg.graph.vertex_count(), n);
            assert_eq!(gg.graph.edges().len(), n);
            assert!(gg.graph.genera.iter().all(|&x| x == 1));
            assert_eq!(gg.graph.betti(), 1);
            for v in 0..n {
                assert_eq!(gg.graph.valence(v), 2);
            }
        }
    }

    #[test]
    fn trivial_segment() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let all = g.generator_ids().to_vec();
        let s = all[0];
        let gg = segment(&g, &all, &all, s, (1, 2), &[g.inv(s)], &[s]).unwrap();
        assert_eq!(gg.graph.vertex_count(), 2);
        assert_eq!(gg.graph.edges().len(), 1);
        let q = quotient_and_genus(&gg).unwrap();
        assert_eq!(q.upstairs_genus, gg.graph.genera[0] + gg.graph.genera[1]);
        assert_eq!(
            q.upstairs_genus,
            segment_genus(1, 1, 1, gg.graph.genera[0], gg.graph.genera[1])
        );
    }

    #[test]
    fn segment_genus_formula() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let u = g.parse_element("(2 3)").unwrap();
        // C_1 → Σ_1 a Z/2-cover with the node and one more point, likewise C_2
        let gg = segment(&g, &[t], &[u], 0, (0, 0), &[t, t], &[u, u]).unwrap();
        let q = quotient_and_genus(&gg).unwrap();
        let (g1, g2) = (gg.graph.genera[0], gg.graph.genera[gg.graph.vertex_count() - 1]);
        assert_eq!(q.upstairs_genus, segment_genus(3, 3, 6, g1, g2));
        assert_eq!(q.upstairs_genus, q.smoothing_genus);
    }

    #[test]
    fn comb_z2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let gg = comb(&g, &[1, 1, 1]).unwrap();
        let q = quotient_and_genus(&gg).unwrap();
        assert_eq!(q.downstairs_genus, 0);
        // hyperelliptic of genus 2; the closed form gives 4
        assert_eq!(q.upstairs_genus, 2);
        assert_eq!(comb_genus(&g, &[1, 1, 1]), 4);
        assert_eq!(q.upstairs_genus, comb_genus(&g, &[1, 1, 1]) - g.order() as i64);
    }

    #[test]
    fn comb_needs_generation() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let two = g.pow(crate::hurwitz::cyclic_generator(&g).unwrap(), 2);
        assert_eq!(comb(&g, &[two; 3]).unwrap_err().precondition(), Some("generation"));
    }
}
