//! Modular graphs with finite group actions: quotients, genus formulas,
//! decomposition and inertia groups, level structures and boundary strata.

mod boundary;
mod build;
mod homology;
mod level;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub use boundary::{
    boundary_components, discriminant_ramification, BoundaryComponent, NodeType, Shape,
};
pub use build::{
    antipodal_hexagon, build_from_orbits, comb, comb_genus, level_group, level_loop,
    level_two_edge, loop_graph, segment, segment_genus, EdgeOrbit, LegOrbit, VertexOrbit,
};
pub use homology::{cycle_basis, decomposition_inertia, smith_invariants, Exactness};
pub use level::{level_structure_check, LevelReport};

/// Dual graph of a nodal curve: vertices weighted by genera, half-edges with
/// an involution, legs fixed by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularGraph {
    pub genera: Vec<i64>,
    /// Vertex of each half-edge.
    pub attach: Vec<usize>,
    /// τ; legs are the fixed points.
    pub opposite: Vec<usize>,
}

impl ModularGraph {
    pub fn new(genera: Vec<i64>, attach: Vec<usize>, opposite: Vec<usize>) -> Result<Self> {
        if attach.len() != opposite.len() {
            return Err(Error::domain("graph shape", "attach and opposite differ in length"));
        }
        if let Some(&v) = attach.iter().find(|&&v| v >= genera.len()) {
            return Err(Error::domain("graph shape", format!("vertex {} out of range", v)));
        }
        if genera.iter().any(|&g| g < 0) {
            return Err(Error::domain("graph shape", "negative vertex genus"));
        }
        for (h, &o) in opposite.iter().enumerate() {
            if o >= opposite.len() || opposite[o] != h {
                return Err(Error::domain("involution", format!("τ² ≠ id at half-edge {}", h)));
            }
        }
        Ok(ModularGraph {
            genera,
            attach,
            opposite,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.attach.len()
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.opposite[h] == h
    }

    pub fn legs(&self) -> Vec<usize> {
        (0..self.half_edge_count()).filter(|&h| self.is_leg(h)).collect()
    }

    /// Geometric edges as (h, τh) with h < τh.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_edge_count())
            .filter(|&h| h < self.opposite[h])
            .map(|h| (h, self.opposite[h]))
            .collect()
    }

    /// Non-leg half-edges at `v`.
    pub fn valence(&self, v: usize) -> usize {
        (0..self.half_edge_count())
            .filter(|&h| self.attach[h] == v && !self.is_leg(h))
            .count()
    }

    pub fn legs_at(&self, v: usize) -> usize {
        (0..self.half_edge_count())
            .filter(|&h| self.attach[h] == v && self.is_leg(h))
            .count()
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertex_count();
        for (h, k) in self.edges() {
            let a = find(&mut parent, self.attach[h]);
            let b = find(&mut parent, self.attach[k]);
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// dim H₁(Γ) = E − V + #components.
    pub fn betti(&self) -> usize {
        self.edges().len() + self.component_count() - self.vertex_count()
    }

    /// Arithmetic genus Σ g(v) + dim H₁(Γ).
    pub fn genus(&self) -> i64 {
        self.genera.iter().sum::<i64>() + self.betti() as i64
    }

    /// 2g(v) − 2 + legs + branches > 0 at every vertex.
    pub fn check_stable(&self) -> Result<()> {
        for v in 0..self.vertex_count() {
            let x = 2 * self.genera[v] - 2 + self.valence(v) as i64 + self.legs_at(v) as i64;
            if x <= 0 {
                return Err(Error::domain("stability", format!("vertex {} has 2g−2+h+l = {}", v, x)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.genera.iter().map(|g| json!({"genus": g})).collect::<Vec<_>>(),
            "half_edges": self.attach,
            "edges": self.edges().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "legs": self.legs(),
        })
    }

    /// Reads `{"vertices": [{"genus": 0}, ...], "half_edges": [v, ...],
    /// "edges": [[h1, h2], ...], "legs": [h, ...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::usage(format!("graph JSON: {}", what));
        let genera = v["vertices"]
            .as_array()
            .ok_or_else(|| bad("missing vertices"))?
            .iter()
            .map(|x| x["genus"].as_i64().unwrap_or(0))
            .collect::<Vec<_>>();
        let attach = v["half_edges"]
            .as_array()
            .ok_or_else(|| bad("missing half_edges"))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("half_edges entry")))
            .collect::<Result<Vec<_>>>()?;
        let n = attach.len();
        let mut opposite = vec![usize::MAX; n];
        let mut set = |h: usize, o: usize| -> Result<()> {
            if h >= n || opposite[h] != usize::MAX {
                return Err(bad(&format!("half-edge {} listed twice or out of range", h)));
            }
            opposite[h] = o;
            Ok(())
        };
        for e in v["edges"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("edge must be a pair"))?;
            let a = pair[0].as_u64().ok_or_else(|| bad("edge entry"))? as usize;
            let b = pair[1].as_u64().ok_or_else(|| bad("edge entry"))? as usize;
            if a == b {
                return Err(bad("edge joins a half-edge to itself"));
            }
            set(a, b)?;
            set(b, a)?;
        }
        for l in v["legs"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
            let h = l.as_u64().ok_or_else(|| bad("leg entry"))? as usize;
            set(h, h)?;
        }
        if let Some(h) = opposite.iter().position(|&o| o == usize::MAX) {
            return Err(bad(&format!("half-edge {} is neither an edge end nor a leg", h)));
        }
        ModularGraph::new(genera, attach, opposite)
    }
}

/// Orbits of a group action given by generator permutations, with
/// transversals and stabilisers of the base points.
#[derive(Clone, Debug)]
pub struct Orbits {
    pub orbit_of: Vec<usize>,
    /// Base point of each orbit.
    pub reps: Vec<usize>,
    /// Sorted stabiliser of each base point.
    pub stabilizers: Vec<Vec<usize>>,
    /// For each item, an element carrying the base point of its orbit to it.
    pub transversal: Vec<usize>,
    /// For each orbit, the image of the base point under each element.
    point_of: Vec<Vec<usize>>,
}

impl Orbits {
    fn compute(g: &FiniteGroup, perms: &[Vec<usize>], n: usize) -> Result<Self> {
        let gens = g.generator_ids();
        let mut orbit_of = vec![usize::MAX; n];
        let mut transversal = vec![0; n];
        let mut reps = Vec::new();
        let mut stabilizers = Vec::new();
        let mut point_of = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let o = reps.len();
            reps.push(start);
            orbit_of[start] = o;
            transversal[start] = 0;
            let mut members = vec![start];
            let mut stab = Closure::new(g);
            let mut i = 0;
            while i < members.len() {
                let p = members[i];
                i += 1;
                for (k, perm) in perms.iter().enumerate() {
                    let q = perm[p];
                    let word = g.mul(gens[k], transversal[p]);
                    if orbit_of[q] == usize::MAX {
                        orbit_of[q] = o;
                        transversal[q] = word;
                        members.push(q);
                    } else {
                        stab.add(g.mul(g.inv(transversal[q]), word));
                    }
                }
            }
            let stab = stab.members();
            if members.len() * stab.len() != g.order() {
                return Err(Error::domain(
                    "group action",
                    format!(
                        "generator images do not define an action (orbit {} × stabiliser {} ≠ {})",
                        members.len(),
                        stab.len(),
                        g.order()
                    ),
                ));
            }
            let mut at = vec![usize::MAX; g.order()];
            for &p in &members {
                for &k in &stab {
                    at[g.mul(transversal[p], k)] = p;
                }
            }
            stabilizers.push(stab);
            point_of.push(at);
        }
        Ok(Orbits {
            orbit_of,
            reps,
            stabilizers,
            transversal,
            point_of,
        })
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// x · item.
    pub fn act(&self, g: &FiniteGroup, x: usize, item: usize) -> usize {
        let o = self.orbit_of[item];
        self.point_of[o][g.mul(x, self.transversal[item])]
    }

    /// Order of the stabiliser of any item of the orbit of `item`.
    pub fn stabilizer_order(&self, item: usize) -> usize {
        self.stabilizers[self.orbit_of[item]].len()
    }

    /// Sorted stabiliser of `item`.
    pub fn stabilizer(&self, g: &FiniteGroup, item: usize) -> Vec<usize> {
        let t = self.transversal[item];
        let mut s: Vec<usize> = self.stabilizers[self.orbit_of[item]]
            .iter()
            .map(|&k| g.conj(t, k))
            .collect();
        s.sort_unstable();
        s
    }
}

/// Subgroup grown one generator at a time.
pub(crate) struct Closure<'g> {
    g: &'g FiniteGroup,
    member: Vec<bool>,
    list: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(g: &'g FiniteGroup) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        Closure {
            g,
            member,
            list: vec![0],
            gens: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, x: usize) {
        if self.member[x] {
            return;
        }
        self.gens.push(x);
        // New elements are words ending in a generator; rescan from the start
        // so every product with x is reached.
        let mut i = 0;
        while i < self.list.len() {
            let y = self.list[i];
            i += 1;
            for &s in &self.gens {
                let z = self.g.mul(y, s);
                if !self.member[z] {
                    self.member[z] = true;
                    self.list.push(z);
                }
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    pub(crate) fn members(&self) -> Vec<usize> {
        let mut m = self.list.clone();
        m.sort_unstable();
        m
    }
}

/// A modular graph with an action of G without inversion and, optionally,
/// the holonomy of every half-edge: an element s_h generating its
/// stabiliser, with χ_h(s_h) = ζ.
#[derive(Debug)]
pub struct GGraph<'g> {
    pub group: &'g FiniteGroup,
    pub graph: ModularGraph,
    /// Images of the vertices under each generator of the group.
    pub vertex_action: Vec<Vec<usize>>,
    /// Images of the half-edges under each generator of the group.
    pub half_edge_action: Vec<Vec<usize>>,
    pub decorations: Option<Vec<usize>>,
    pub vertex_orbits: Orbits,
    pub half_edge_orbits: Orbits,
}

impl<'g> GGraph<'g> {
    pub fn new(
        group: &'g FiniteGroup,
        graph: ModularGraph,
        vertex_action: Vec<Vec<usize>>,
        half_edge_action: Vec<Vec<usize>>,
        decorations: Option<Vec<usize>>,
    ) -> Result<Self> {
        let ngen = group.generator_ids().len();
        if vertex_action.len() != ngen || half_edge_action.len() != ngen {
            return Err(Error::domain(
                "group action",
                format!("expected images for {} generators", ngen),
            ));
        }
        let nv = graph.vertex_count();
        let nh = graph.half_edge_count();
        for (vp, hp) in vertex_action.iter().zip(&half_edge_action) {
            if !is_permutation(vp, nv) || !is_permutation(hp, nh) {
                return Err(Error::domain("group action", "generator image is not a bijection"));
            }
            for h in 0..nh {
                if graph.attach[hp[h]] != vp[graph.attach[h]] {
                    return Err(Error::domain("group action", "action does not commute with ∂"));
                }
                if graph.opposite[hp[h]] != hp[graph.opposite[h]] {
                    return Err(Error::domain("group action", "action does not commute with τ"));
                }
            }
            for v in 0..nv {
                if graph.genera[vp[v]] != graph.genera[v] {
                    return Err(Error::domain("group action", "action does not preserve genera"));
                }
            }
        }
        if !graph.is_connected() {
            return Err(Error::domain("connected graph", "the graph is disconnected"));
        }
        let vertex_orbits = Orbits::compute(group, &vertex_action, nv)?;
        let half_edge_orbits = Orbits::compute(group, &half_edge_action, nh)?;
        for h in 0..nh {
            if !graph.is_leg(h)
                && half_edge_orbits.orbit_of[h] == half_edge_orbits.orbit_of[graph.opposite[h]]
            {
                return Err(Error::domain(
                    "action without inversion",
                    format!("some element sends half-edge {} to its opposite", h),
                ));
            }
        }
        if let Some(dec) = &decorations {
            if dec.len() != nh || dec.iter().any(|&s| s >= group.order()) {
                return Err(Error::domain("decoration", "one element per half-edge"));
            }
            for (k, hp) in half_edge_action.iter().enumerate() {
                let x = group.generator_ids()[k];
                for h in 0..nh {
                    if dec[hp[h]] != group.conj(x, dec[h]) {
                        return Err(Error::domain(
                            "decoration",
                            format!("decoration of g·{} is not the g-conjugate", h),
                        ));
                    }
                }
            }
            for h in 0..nh {
                if !graph.is_leg(h) && dec[graph.opposite[h]] != group.inv(dec[h]) {
                    return Err(Error::domain(
                        "decoration",
                        format!("opposite of half-edge {} does not carry the inverse character", h),
                    ));
                }
            }
            for &r in &half_edge_orbits.reps {
                if group.subgroup_closure(&[dec[r]]) != half_edge_orbits.stabilizer(group, r) {
                    return Err(Error::domain(
                        "decoration",
                        format!("holonomy of half-edge {} does not generate its stabiliser", r),
                    ));
                }
            }
        }
        Ok(GGraph {
            group,
            graph,
            vertex_action,
            half_edge_action,
            decorations,
            vertex_orbits,
            half_edge_orbits,
        })
    }

    /// Holonomy elements of one leg per leg orbit, the branch data of the
    /// smoothing.
    pub fn leg_holonomies(&self) -> Option<Vec<usize>> {
        let dec = self.decorations.as_ref()?;
        Some(
            self.half_edge_orbits
                .reps
                .iter()
                .filter(|&&r| self.graph.is_leg(r))
                .map(|&r| dec[r])
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.graph.to_json();
        v["action"] = json!(self
            .vertex_action
            .iter()
            .zip(&self.half_edge_action)
            .map(|(a, b)| json!({"vertices": a, "half_edges": b}))
            .collect::<Vec<_>>());
        if let Some(d) = &self.decorations {
            v["decor"] = json!(d.iter().map(|&s| self.group.element_string(s)).collect::<Vec<_>>());
        }
        v
    }

    /// Reads a graph in the format of [`ModularGraph::from_json`] plus
    /// `"action": [{"vertices": [...], "half_edges": [...]}, ...]`, one entry
    /// per group generator, and an optional `"decor": ["(1 2)", ...]`.
    pub fn from_json(group: &'g FiniteGroup, v: &Value) -> Result<Self> {
        let graph = ModularGraph::from_json(v)?;
        let bad = |what: &str| Error::usage(format!("graph JSON: {}", what));
        let list = |x: &Value| -> Result<Vec<usize>> {
            x.as_array()
                .ok_or_else(|| bad("action entry must be a list"))?
                .iter()
                .map(|y| y.as_u64().map(|u| u as usize).ok_or_else(|| bad("action index")))
                .collect()
        };
        let mut va = Vec::new();
        let mut ha = Vec::new();
        match v.get("action") {
            Some(a) => {
                for gen in a.as_array().ok_or_else(|| bad("action must be a list"))? {
                    va.push(list(&gen["vertices"])?);
                    ha.push(list(&gen["half_edges"])?);
                }
            }
            None => {
                for _ in group.generator_ids() {
                    va.push((0..graph.vertex_count()).collect());
                    ha.push((0..graph.half_edge_count()).collect());
                }
            }
        }
        let decorations = match v.get("decor") {
            Some(d) => Some(
                d.as_array()
                    .ok_or_else(|| bad("decor must be a list"))?
                    .iter()
                    .map(|s| group.parse_element(s.as_str().unwrap_or("")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        GGraph::new(group, graph, va, ha, decorations)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Quotient graph with genus bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    /// Γ/G; vertex i is the orbit of the i-th vertex orbit representative.
    pub quotient: ModularGraph,
    /// Σ g(v) + dim H₁(Γ).
    pub upstairs_genus: i64,
    /// Σ g'(α) + dim H₁(Γ/G).
    pub downstairs_genus: i64,
    /// Genus of the smoothing by Riemann–Hurwitz from the downstairs genus and
    /// the leg stabilisers.
    pub smoothing_genus: i64,
}

impl QuotientReport {
    pub fn to_json(&self) -> Value {
        json!({
            "quotient": self.quotient.to_json(),
            "upstairs_genus": self.upstairs_genus,
            "downstairs_genus": self.downstairs_genus,
            "smoothing_genus": self.smoothing_genus,
        })
    }
}

/// Γ/G with the genus of each quotient vertex from Riemann–Hurwitz on the
/// stabiliser: 2g(v) − 2 = |G_v|(2g'(α) − 2) + Σ_{h at v} (|G_h| − 1).
pub fn quotient_and_genus(gg: &GGraph) -> Result<QuotientReport> {
    let g = gg.group;
    let gr = &gg.graph;
    let vo = &gg.vertex_orbits;
    let ho = &gg.half_edge_orbits;
    let mut genera = Vec::with_capacity(vo.count());
    for (o, &v) in vo.reps.iter().enumerate() {
        let gv = vo.stabilizers[o].len() as i64;
        let ram: i64 = (0..gr.half_edge_count())
            .filter(|&h| gr.attach[h] == v)
            .map(|h| ho.stabilizer_order(h) as i64 - 1)
            .sum();
        let x = 2 * gr.genera[v] - 2 - ram;
        if x % gv != 0 || (x / gv) % 2 != 0 || x / gv < -2 {
            return Err(Error::domain(
                "Riemann–Hurwitz",
                format!("vertex {}: (2g−2−Σ)/|G_v| = {}/{} is not 2g'−2", v, x, gv),
            ));
        }
        genera.push(x / gv / 2 + 1);
    }
    let attach = ho.reps.iter().map(|&h| vo.orbit_of[gr.attach[h]]).collect();
    let opposite = ho.reps.iter().map(|&h| ho.orbit_of[gr.opposite[h]]).collect();
    let quotient = ModularGraph::new(genera, attach, opposite)?;
    let n = g.order() as i64;
    let downstairs_genus = quotient.genus();
    let mut chi = n * (2 * downstairs_genus - 2);
    for &r in &ho.reps {
        if gr.is_leg(r) {
            chi += n - n / ho.stabilizer_order(r) as i64;
        }
    }
    Ok(QuotientReport {
        upstairs_genus: gr.genus(),
        downstairs_genus,
        smoothing_genus: chi / 2 + 1,
        quotient,
    })
}
