//! Finite permutation groups: elements, classes, cyclic subgroups,
//! characters and automorphisms.

mod automorphism;
mod character;
mod cyclic;
mod cyclotomic;
mod modp;
mod perm;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde_json::Value;

pub use automorphism::{Automorphism, AutomorphismGroup};
pub use character::{ClassFunction, CharacterTable};
pub use cyclic::{CyclicLattice, CyclicSubgroup};
pub use cyclotomic::CyclotomicNumber;
pub use perm::Permutation;

use crate::arith::lcm;
use crate::error::{Error, Result};

/// Size limits applied while building groups.
#[derive(Clone, Debug)]
pub struct GroupConfig {
    pub max_points: usize,
    pub max_order: usize,
    pub max_aut_order: usize,
    /// Groups up to this order get a full multiplication table.
    pub table_threshold: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            max_points: 64,
            max_order: 100_000,
            max_aut_order: 1_000,
            table_threshold: 1_024,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least member in the canonical element order.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// A finite group given by permutation generators.
///
/// Elements are indexed by their position in the lexicographic order of
/// image vectors, so the identity is element 0.
pub struct FiniteGroup {
    label: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    generator_ids: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<u16>, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    exponent: u64,
    table: Option<Vec<u32>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    config: GroupConfig,
    lattice: OnceLock<CyclicLattice>,
    characters: OnceLock<CharacterTable>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    pub fn generate(generators: &[Permutation]) -> Result<Self> {
        Self::generate_with(generators, &GroupConfig::default())
    }

    pub fn generate_with(generators: &[Permutation], config: &GroupConfig) -> Result<Self> {
        let degree = generators.iter().map(|g| g.degree()).max().unwrap_or(1).max(1);
        if degree > config.max_points {
            return Err(Error::domain(
                "point bound",
                format!("{} points exceed the bound {}", degree, config.max_points),
            ));
        }
        let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();

        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let mut found = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > config.max_order {
                        return Err(Error::domain(
                            "order bound",
                            format!("group order exceeds the bound {}", config.max_order),
                        ));
                    }
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        found.sort();
        let n = found.len();
        let index: HashMap<Vec<u16>, u32> = found
            .iter()
            .enumerate()
            .map(|(i, p)| (p.raw().to_vec(), i as u32))
            .collect();
        let lookup = |p: &Permutation| index[p.raw()] as usize;
        let inverse: Vec<u32> = found.iter().map(|p| lookup(&p.inverse()) as u32).collect();
        let orders: Vec<u64> = found.iter().map(|p| p.order()).collect();
        let exponent = orders.iter().fold(1, |a, &b| lcm(a, b));
        let generator_ids: Vec<usize> = gens.iter().map(lookup).collect();
        let table = if n <= config.table_threshold {
            let mut t = vec![0u32; n * n];
            for (i, a) in found.iter().enumerate() {
                for (j, b) in found.iter().enumerate() {
                    t[i * n + j] = lookup(&a.compose(b)) as u32;
                }
            }
            Some(t)
        } else {
            None
        };

        let mut g = FiniteGroup {
            label: None,
            degree,
            generators: gens,
            generator_ids,
            elements: found,
            index,
            inverse,
            orders,
            exponent,
            table,
            classes: Vec::new(),
            class_of: Vec::new(),
            config: config.clone(),
            lattice: OnceLock::new(),
            characters: OnceLock::new(),
        };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            class_of[start] = c;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &g in &self.generator_ids {
                    let y = self.conj(g, x);
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn trivial() -> Self {
        Self::generate(&[]).expect("trivial group").with_label("C1")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("positive order", "C0"));
        }
        let g = Permutation::from_cycles(n, &[(0..n).collect()])?;
        Ok(Self::generate(&[g])?.with_label(format!("C{}", n)))
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let g = match n {
            0 => return Err(Error::domain("positive order", "D0")),
            1 => Self::cyclic(2)?,
            2 => Self::abelian(&[2, 2])?,
            _ => {
                let r = Permutation::from_cycles(n, &[(0..n).collect()])?;
                let s = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
                Self::generate(&[r, s])?
            }
        };
        Ok(g.with_label(format!("D{}", n)))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("positive degree", "S0"));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
        }
        Ok(Self::generate(&gens)?.with_label(format!("S{}", n)))
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("positive degree", "A0"));
        }
        let gens: Vec<Permutation> = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
            .collect::<Result<_>>()?;
        let g = if gens.is_empty() {
            Self::generate_with(&[Permutation::identity(n)], &GroupConfig::default())?
        } else {
            Self::generate(&gens)?
        };
        Ok(g.with_label(format!("A{}", n)))
    }

    /// Direct product of cyclic groups acting on disjoint blocks of points.
    pub fn abelian(orders: &[usize]) -> Result<Self> {
        let total: usize = orders.iter().sum::<usize>().max(1);
        let mut gens = Vec::new();
        let mut offset = 0;
        for &k in orders {
            if k == 0 {
                return Err(Error::domain("positive order", "Ab factor 0"));
            }
            gens.push(Permutation::from_cycles(total, &[(offset..offset + k).collect()])?);
            offset += k;
        }
        let label = format!(
            "Ab[{}]",
            orders.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        );
        Ok(Self::generate(&gens)?.with_label(label))
    }

    /// Parses a named family (`S4`, `C12`, `Z12`, `D5`, `A5`, `Ab[2,2,3]`)
    /// or a JSON object `{"gens": ["(1 2)", "(1 2 3)"]}`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.starts_with('{') {
            let v: Value = serde_json::from_str(s)?;
            return Self::from_json(&v);
        }
        let bad = || Error::domain("group name", format!("unknown group {:?}", spec));
        if let Some(body) = s.strip_prefix("Ab[").and_then(|r| r.strip_suffix(']')) {
            let orders: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            return Self::abelian(&orders);
        }
        let (head, num) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = num.parse().map_err(|_| bad())?;
        match head {
            "S" => Self::symmetric(n),
            "A" => Self::alternating(n),
            "C" | "Z" => Self::cyclic(n),
            "D" => Self::dihedral(n),
            _ => Err(bad()),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse(s),
            Value::Object(map) => {
                let gens = map.get("gens").and_then(|g| g.as_array()).ok_or_else(|| {
                    Error::domain("group JSON", "expected a \"gens\" array of cycle strings")
                })?;
                let mut cycles = Vec::new();
                for g in gens {
                    let s = g.as_str().ok_or_else(|| {
                        Error::domain("group JSON", "generators must be cycle strings")
                    })?;
                    cycles.push(Permutation::parse_cycles(s)?);
                }
                let max_pt = cycles
                    .iter()
                    .flatten()
                    .flatten()
                    .map(|&x| x + 1)
                    .max()
                    .unwrap_or(1);
                let n = map
                    .get("degree")
                    .and_then(|d| d.as_u64())
                    .map(|d| d as usize)
                    .unwrap_or(max_pt)
                    .max(max_pt);
                let perms: Vec<Permutation> = cycles
                    .iter()
                    .map(|c| Permutation::from_cycles(n, c))
                    .collect::<Result<_>>()?;
                let perms = if perms.is_empty() {
                    vec![Permutation::identity(n)]
                } else {
                    perms
                };
                Self::generate(&perms)
            }
            _ => Err(Error::domain("group JSON", "expected a name or an object")),
        }
    }

    /// JSON description that `from_json` reads back.
    pub fn to_json(&self) -> Value {
        match &self.label {
            Some(l) => Value::String(l.clone()),
            None => serde_json::json!({
                "gens": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>()
            }),
        }
    }

    pub fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| {
            let g: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
            format!("<{}>", g.join(", "))
        })
    }

    pub fn config(&self) -> &GroupConfig {
        &self.config
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() > self.degree {
            return None;
        }
        let p = p.padded(self.degree);
        self.index.get(p.raw()).map(|&i| i as usize)
    }

    /// Parses a cycle string and locates it in the group.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let cycles = Permutation::parse_cycles(s)?;
        let max_pt = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        if max_pt > self.degree {
            return Err(Error::domain(
                "element of G",
                format!("{} moves points outside 1..{}", s, self.degree),
            ));
        }
        let p = Permutation::from_cycles(self.degree, &cycles)?;
        self.id_of(&p)
            .ok_or_else(|| Error::domain("element of G", format!("{} is not in {}", s, self.label())))
    }

    pub fn element_string(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let p = self.elements[a].compose(&self.elements[b]);
                self.index[p.raw()] as usize
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = a;
        let mut r = 0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].members.len()
    }

    pub fn are_conjugate(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Least element of the conjugacy class of `a`.
    pub fn class_min(&self, a: usize) -> usize {
        self.classes[self.class_of(a)].representative
    }

    /// Some `g` with `g a g⁻¹ = b`.
    pub fn conjugator(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order()).find(|&g| self.conj(g, a) == b)
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.mul(g, a) == self.mul(a, g))
            .collect()
    }

    /// Centralizer of a set of elements.
    pub fn centralizer_of_set(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| set.iter().all(|&a| self.mul(g, a) == self.mul(a, g)))
            .collect()
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        let members: HashSet<usize> = set.iter().copied().collect();
        (0..self.order())
            .filter(|&g| set.iter().all(|&h| members.contains(&self.conj(g, h))))
            .collect()
    }

    /// Sorted subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Sorted normal closure of `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut conjugates: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order()];
        for &x in gens {
            for &y in &self.classes[self.class_of(x)].members {
                if !seen[y] {
                    seen[y] = true;
                    conjugates.push(y);
                }
            }
        }
        self.subgroup_closure(&conjugates)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() || !set.contains(&0) {
            return false;
        }
        let s: HashSet<usize> = set.iter().copied().collect();
        set.iter()
            .all(|&a| set.iter().all(|&b| s.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let s: HashSet<usize> = set.iter().copied().collect();
        self.generator_ids
            .iter()
            .all(|&g| set.iter().all(|&h| s.contains(&self.conj(g, h))))
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_closure(gens).len() == self.order()
    }

    /// Left coset representatives of `h` (sorted subgroup), least element of each coset.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn cyclic_lattice(&self) -> &CyclicLattice {
        self.lattice.get_or_init(|| CyclicLattice::build(self))
    }

    pub fn character_table(&self) -> &CharacterTable {
        self.characters.get_or_init(|| CharacterTable::compute(self))
    }

    pub fn automorphisms(&self) -> Result<AutomorphismGroup> {
        AutomorphismGroup::compute(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
        assert_eq!(FiniteGroup::parse("C6").unwrap().order(), 6);
        assert_eq!(FiniteGroup::parse("Z12").unwrap().exponent(), 12);
        assert_eq!(FiniteGroup::parse("D5").unwrap().order(), 10);
        assert_eq!(FiniteGroup::parse("S4").unwrap().order(), 24);
        assert_eq!(FiniteGroup::parse("A5").unwrap().order(), 60);
        assert_eq!(FiniteGroup::parse("Ab[2,2,3]").unwrap().order(), 12);
        let g = FiniteGroup::parse(r#"{"gens": ["(1 2)", "(1 2 3)"]}"#).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        assert_eq!(FiniteGroup::generate(&[]).unwrap().order(), 1);
    }

    #[test]
    fn order_bound_is_enforced() {
        let cfg = GroupConfig {
            max_order: 100,
            ..GroupConfig::default()
        };
        let s5 = FiniteGroup::symmetric(5).unwrap();
        assert!(FiniteGroup::generate_with(s5.generators(), &cfg).is_err());
    }

    #[test]
    fn s4_class_sizes() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }
}
