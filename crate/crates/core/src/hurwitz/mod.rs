//! Ramification data of Galois covers: holonomy classes, transfers,
//! genus formulas, enumeration and monodromy types.

mod enumerate;
mod genus;
mod monodromy;
mod transfer;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::arith::{gcd, mod_inv};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub use enumerate::{enumerate_data, enumerate_labeled};
pub use genus::{genus_from_datum, GenusReport};
pub use monodromy::{
    closure_count, closure_count_brute, induced_ramification, local_data, InducedRamification,
    MonodromyType,
};
pub use transfer::{corestrict, induce, quotient_group, restrict, QuotientGroup};

/// The least element of order |G| when G is cyclic.
pub fn cyclic_generator(g: &FiniteGroup) -> Option<usize> {
    (0..g.order()).find(|&x| g.element_order(x) == g.order() as u64)
}

/// A conjugacy class of pairs (H, χ), H cyclic and χ a faithful character.
///
/// Stored as the distinguished element s ∈ H with χ(s) = ζ_e, taken as the
/// least member of its conjugacy class. The trivial class has s = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HolonomyClass {
    s: usize,
}

impl HolonomyClass {
    /// Class of the pair (⟨s⟩, χ) with χ(s) = ζ_e.
    pub fn from_element(g: &FiniteGroup, s: usize) -> Self {
        HolonomyClass { s: g.class_min(s) }
    }

    /// Class of (⟨h⟩, χ) with χ(h) = ζ_e^k.
    pub fn from_pair(g: &FiniteGroup, h: usize, k: i64) -> Result<Self> {
        let e = g.element_order(h) as i64;
        if e == 1 {
            return Ok(HolonomyClass { s: 0 });
        }
        let j = mod_inv(k, e).ok_or_else(|| {
            Error::domain(
                "primitive character",
                format!("exponent {} is not a unit modulo {}", k, e),
            )
        })?;
        Ok(Self::from_element(g, g.pow(h, j)))
    }

    pub fn trivial() -> Self {
        HolonomyClass { s: 0 }
    }

    /// The canonical distinguished element.
    pub fn element(&self) -> usize {
        self.s
    }

    pub fn is_trivial(&self) -> bool {
        self.s == 0
    }

    /// e = |H|.
    pub fn order(&self, g: &FiniteGroup) -> u64 {
        g.element_order(self.s)
    }

    /// Pair form (h, k): h the least generator of H and χ(h) = ζ_e^k.
    pub fn pair(&self, g: &FiniteGroup) -> (usize, i64) {
        let lat = g.cyclic_lattice();
        let h = lat.get(lat.of_element(self.s));
        let e = h.order as i64;
        if e == 1 {
            return (0, 0);
        }
        let j = h
            .powers(g)
            .iter()
            .position(|&x| x == self.s)
            .expect("s lies in its own subgroup") as i64;
        (h.generator, mod_inv(j, e).expect("s generates H"))
    }

    /// Sorted members of H for the canonical representative.
    pub fn subgroup<'g>(&self, g: &'g FiniteGroup) -> &'g [usize] {
        let lat = g.cyclic_lattice();
        &lat.get(lat.of_element(self.s)).members
    }

    /// Stabilizer of the pair under conjugation, C_G(H).
    pub fn stabilizer(&self, g: &FiniteGroup) -> Vec<usize> {
        g.centralizer(self.s)
    }

    /// Image under an automorphism given as an element map: [θ(H), χθ⁻¹].
    pub fn twist(&self, g: &FiniteGroup, theta: &[usize]) -> Self {
        Self::from_element(g, theta[self.s])
    }

    /// Galois twist σ_a: χ ↦ χ^a for a prime to the order.
    pub fn galois(&self, g: &FiniteGroup, a: i64) -> Result<Self> {
        let e = self.order(g) as i64;
        if e == 1 {
            return Ok(*self);
        }
        let inv = mod_inv(a, e)
            .ok_or_else(|| Error::domain("Galois twist", format!("{} is not prime to {}", a, e)))?;
        Ok(Self::from_element(g, g.pow(self.s, inv)))
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let (h, k) = self.pair(g);
        json!({"H_gen": g.element_string(h), "k": k})
    }
}

/// A Hurwitz datum ξ = Σ b_i [H_i, χ_i].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HurwitzDatum {
    classes: BTreeMap<HolonomyClass, u64>,
}

impl HurwitzDatum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Datum with one point of holonomy [[s]] per listed element.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Self {
        let mut d = Self::new();
        for &s in elems {
            d.add(HolonomyClass::from_element(g, s), 1);
        }
        d
    }

    pub fn add(&mut self, c: HolonomyClass, mult: u64) {
        if mult > 0 {
            *self.classes.entry(c).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (HolonomyClass, u64)> + '_ {
        self.classes.iter().map(|(&c, &b)| (c, b))
    }

    pub fn multiplicity(&self, c: HolonomyClass) -> u64 {
        self.classes.get(&c).copied().unwrap_or(0)
    }

    /// b = Σ b_i, trivial classes included.
    pub fn degree(&self) -> u64 {
        self.classes.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of points with trivial holonomy.
    pub fn trivial_count(&self) -> u64 {
        self.multiplicity(HolonomyClass::trivial())
    }

    /// The datum without its trivial-holonomy points.
    pub fn truncated(&self) -> Self {
        HurwitzDatum {
            classes: self
                .classes
                .iter()
                .filter(|(c, _)| !c.is_trivial())
                .map(|(&c, &b)| (c, b))
                .collect(),
        }
    }

    /// Distinguished elements with multiplicity, in canonical order.
    pub fn expanded(&self) -> Vec<usize> {
        self.iter()
            .flat_map(|(c, b)| std::iter::repeat(c.element()).take(b as usize))
            .collect()
    }

    pub fn twist(&self, g: &FiniteGroup, theta: &[usize]) -> Self {
        let mut d = Self::new();
        for (c, b) in self.iter() {
            d.add(c.twist(g, theta), b);
        }
        d
    }

    pub fn galois(&self, g: &FiniteGroup, a: i64) -> Result<Self> {
        let mut d = Self::new();
        for (c, b) in self.iter() {
            d.add(c.galois(g, a)?, b);
        }
        Ok(d)
    }

    /// Reads `{"classes": [{"H_gen", "k", "mult"} | {"element", "mult"}]}`.
    ///
    /// `element` may be a cycle string or, for cyclic groups, an integer j
    /// standing for σ^j with σ the least generator.
    pub fn from_json(g: &FiniteGroup, v: &Value) -> Result<Self> {
        let bad = |d: &str| Error::domain("datum JSON", d.to_string());
        let list = v
            .get("classes")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("expected a \"classes\" array"))?;
        let mut d = Self::new();
        for item in list {
            let mult = match item.get("mult") {
                None => 1,
                Some(m) => m.as_u64().ok_or_else(|| bad("mult must be a nonnegative integer"))?,
            };
            let class = if let Some(h) = item.get("H_gen") {
                let h = parse_elem(g, h)?;
                let k = item
                    .get("k")
                    .and_then(|k| k.as_i64())
                    .ok_or_else(|| bad("H_gen needs an integer k"))?;
                HolonomyClass::from_pair(g, h, k)?
            } else if let Some(s) = item.get("element") {
                HolonomyClass::from_element(g, parse_elem(g, s)?)
            } else {
                return Err(bad("each class needs H_gen and k, or element"));
            };
            d.add(class, mult);
        }
        Ok(d)
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let classes: Vec<Value> = self
            .iter()
            .map(|(c, b)| {
                let mut v = c.to_json(g);
                v["mult"] = json!(b);
                v["element"] = json!(g.element_string(c.element()));
                v["order"] = json!(c.order(g));
                v
            })
            .collect();
        json!({"group": g.to_json(), "classes": classes})
    }

    /// Distinguished elements and multiplicities as strings.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|(c, b)| format!("{}*[{}]", b, g.element_string(c.element())))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn parse_elem(g: &FiniteGroup, v: &Value) -> Result<usize> {
    match v {
        Value::String(s) => g.parse_element(s),
        Value::Number(n) => {
            let j = n
                .as_i64()
                .ok_or_else(|| Error::domain("datum JSON", "element exponent must be an integer"))?;
            let sigma = cyclic_generator(g).ok_or_else(|| {
                Error::domain(
                    "cyclic group",
                    "integer elements are only meaningful for cyclic groups",
                )
            })?;
            Ok(g.pow(sigma, j))
        }
        _ => Err(Error::domain("datum JSON", "element must be a cycle string or integer")),
    }
}

/// ⟨x⟩ ∩ J as the power x^d with d the least positive exponent landing in J.
pub(crate) fn least_power_in(g: &FiniteGroup, x: usize, member: impl Fn(usize) -> bool) -> usize {
    let e = g.element_order(x);
    let mut d = 1;
    while d < e {
        if e % d == 0 && member(g.pow(x, d as i64)) {
            break;
        }
        d += 1;
    }
    debug_assert_eq!(gcd(d, e), d);
    g.pow(x, d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_pair_is_element() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let sigma = cyclic_generator(&g).unwrap();
        for k in 1..7 {
            let c = HolonomyClass::from_pair(&g, sigma, k).unwrap();
            // χ(σ) = ζ^k means s = σ^{k⁻¹}
            let j = mod_inv(k, 7).unwrap();
            assert_eq!(c.element(), g.pow(sigma, j));
            assert_eq!(c.pair(&g).1, k);
        }
    }

    #[test]
    fn non_unit_exponent_rejected() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let sigma = cyclic_generator(&g).unwrap();
        assert!(HolonomyClass::from_pair(&g, sigma, 2).is_err());
    }

    #[test]
    fn s3_three_cycle_pairs_coincide() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let c = g.parse_element("(1 2 3)").unwrap();
        let a = HolonomyClass::from_pair(&g, c, 1).unwrap();
        let b = HolonomyClass::from_pair(&g, c, 2).unwrap();
        assert_eq!(a, b);
        let t = g.parse_element("(1 2)").unwrap();
        assert_eq!(g.conj(t, c), g.inv(c));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let v: Value = serde_json::from_str(
            r#"{"classes": [{"H_gen": "(1 2 3 4)", "k": 3, "mult": 2}, {"element": "(1 2)", "mult": 1}]}"#,
        )
        .unwrap();
        let d = HurwitzDatum::from_json(&g, &v).unwrap();
        assert_eq!(d.degree(), 3);
        let back = HurwitzDatum::from_json(&g, &d.to_json(&g)).unwrap();
        assert_eq!(d, back);
    }
}
