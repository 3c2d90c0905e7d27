//! Chevalley–Weil: the G-modules H⁰(C, ω^⊗m) from (g', ξ), and back.

mod invert;

use serde_json::{json, Value};

use crate::arith::{fract, q, qi, to_i64, Q};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hurwitz::{cyclic_generator, genus_from_datum, HurwitzDatum};

pub use invert::{invert_cw, CwOracle, DatumOracle, Inversion};

/// Multiplicity of each irreducible (in character-table order) in
/// H⁰(C, ω^⊗m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    pub twist: u32,
    pub values: Vec<i64>,
}

impl MultiplicityVector {
    /// Σ_v deg(v)·mult(v).
    pub fn dimension(&self, g: &FiniteGroup) -> i64 {
        let t = g.character_table();
        self.values
            .iter()
            .zip(&t.degrees)
            .map(|(&m, &d)| m * d as i64)
            .sum()
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let t = g.character_table();
        json!({
            "twist": self.twist,
            "degrees": t.degrees,
            "multiplicities": self.values,
            "dimension": self.dimension(g),
        })
    }
}

/// χ(E_v) for L = ω^⊗m by Riemann–Roch and the degree formula
/// deg E_v = dim(v)·m(2g−2)/|G| − Σ_i Σ_{l=1}^{e_i−1} ((e_i−l)/e_i)·m_il,
/// where m_il counts the eigenvalues ζ_{e_i}^{m−l} of ρ_v(s_i).
pub fn euler_characteristic(
    g: &FiniteGroup,
    base_genus: i64,
    xi: &HurwitzDatum,
    m: u32,
    row: usize,
) -> Result<i64> {
    let genus = genus_from_datum(g, base_genus, xi)?.genus;
    let t = g.character_table();
    let dim = t.degrees[row] as i64;
    let n = g.order() as i64;
    let mut deg = q(dim * m as i64 * (2 * genus - 2), n);
    for (c, b) in xi.iter() {
        let e = c.order(g) as i64;
        for l in 1..e {
            let mil = t.eigen_multiplicity(g, row, c.element(), m as i64 - l) as i64;
            deg -= q((e - l) * mil * b as i64, e);
        }
    }
    let chi = deg + qi(dim * (1 - base_genus));
    to_i64(&chi).ok_or_else(|| {
        Error::domain(
            "integral multiplicity",
            format!("χ(E_v) = {} for row {} is not an integer", chi, row),
        )
    })
}

fn require_genus_two(g: &FiniteGroup, base_genus: i64, xi: &HurwitzDatum) -> Result<i64> {
    let genus = genus_from_datum(g, base_genus, xi)?.genus;
    if genus < 2 {
        return Err(Error::domain("genus at least 2", format!("g = {}", genus)));
    }
    Ok(genus)
}

/// Decomposition of H⁰(C, ω^⊗m). The trivial-holonomy points of ξ play no role.
pub fn cw_multiplicities(
    g: &FiniteGroup,
    base_genus: i64,
    xi: &HurwitzDatum,
    m: u32,
) -> Result<MultiplicityVector> {
    if m == 0 {
        return Err(Error::domain("twist degree", "m must be at least 1"));
    }
    let genus = require_genus_two(g, base_genus, xi)?;
    let t = g.character_table();
    let mut values = Vec::with_capacity(t.len());
    for row in 0..t.len() {
        let mut v = euler_characteristic(g, base_genus, xi, m, row)?;
        if m == 1 && row == t.trivial_row() {
            v += 1;
        }
        if v < 0 {
            return Err(Error::domain(
                "nonnegative multiplicity",
                format!("row {} gets {}", row, v),
            ));
        }
        values.push(v);
    }
    let out = MultiplicityVector { twist: m, values };
    let expect = if m == 1 { genus } else { (2 * m as i64 - 1) * (genus - 1) };
    if out.dimension(g) != expect {
        return Err(Error::domain(
            "dimension identity",
            format!("Σ deg·mult = {} but expected {}", out.dimension(g), expect),
        ));
    }
    Ok(out)
}

/// Ranks of the isotypic pieces of the Hodge bundle: g' for the trivial
/// character, χ(E_v) otherwise.
pub fn hodge_ranks(g: &FiniteGroup, base_genus: i64, xi: &HurwitzDatum) -> Result<Vec<i64>> {
    Ok(cw_multiplicities(g, base_genus, xi, 1)?.values)
}

/// Cyclic datum as pairs (e_i, ν_i) with s_i = σ^{(n/e_i)ν_i}, σ the least
/// generator, one pair per point. Trivial-holonomy points are skipped.
pub fn cyclic_exponents(g: &FiniteGroup, xi: &HurwitzDatum) -> Result<Vec<(u64, u64)>> {
    let sigma = cyclic_generator(g)
        .ok_or_else(|| Error::domain("cyclic group", format!("{} is not cyclic", g.label())))?;
    let n = g.order() as u64;
    let mut out = Vec::new();
    for (c, b) in xi.iter() {
        if c.is_trivial() {
            continue;
        }
        let e = c.order(g);
        let base = g.pow(sigma, (n / e) as i64);
        let nu = (1..e)
            .find(|&j| g.pow(base, j as i64) == c.element())
            .expect("s lies in the subgroup of order e");
        for _ in 0..b {
            out.push((e, nu));
        }
    }
    Ok(out)
}

/// Multiplicity of χ^l (χ(σ) = ζ_n) in H⁰(C, ω^⊗m) for a cyclic action:
/// (2m−1)(g'−1) + mr − Σ_i (⟨(lν_i − m)/e_i⟩ + m/e_i), plus 1 at l = 0, m = 1.
pub fn cyclic_multiplicity(n: u64, base_genus: i64, data: &[(u64, u64)], m: u32, l: i64) -> Q {
    let m = m as i64;
    let r = data.len() as i64;
    let mut x = qi((2 * m - 1) * (base_genus - 1) + m * r);
    for &(e, nu) in data {
        let e = e as i64;
        x -= fract(&q(l * nu as i64 - m, e)) + q(m, e);
    }
    if m == 1 && l.rem_euclid(n as i64) == 0 {
        x += qi(1);
    }
    x
}

/// Hodge ranks of a cyclic cover: g' at v = 0, g' − 1 + Σ_i ⟨−vν_i/e_i⟩ otherwise.
pub fn cyclic_hodge_rank(base_genus: i64, data: &[(u64, u64)], v: i64) -> Q {
    if v == 0 {
        return qi(base_genus);
    }
    let mut x = qi(base_genus - 1);
    for &(e, nu) in data {
        x += fract(&q(-v * nu as i64, e as i64));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_character_gets_base_genus() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let s = cyclic_generator(&g).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[s, s, s, g.pow(s, 2)]);
        for gp in 0..3 {
            let v = cw_multiplicities(&g, gp, &xi, 1).unwrap();
            assert_eq!(v.values[0], gp);
        }
    }

    #[test]
    fn cyclic_route_agrees() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let s = cyclic_generator(&g).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[g.pow(s, 3), g.pow(s, 3), g.pow(s, 2), g.pow(s, 4), s, g.pow(s, 5)]);
        let data = cyclic_exponents(&g, &xi).unwrap();
        for m in 1..5 {
            let v = cw_multiplicities(&g, 1, &xi, m).unwrap();
            for l in 0..6 {
                assert_eq!(qi(v.values[l as usize]), cyclic_multiplicity(6, 1, &data, m, l));
            }
        }
        let ranks = hodge_ranks(&g, 1, &xi).unwrap();
        for v in 0..6 {
            assert_eq!(qi(ranks[v as usize]), cyclic_hodge_rank(1, &data, v));
        }
    }

    #[test]
    fn z3_eigencomponent_rank() {
        // n = 3, g' = 0; Λ_j holds the points with ν ≡ −j (mod 3)
        let g = FiniteGroup::cyclic(3).unwrap();
        let s = cyclic_generator(&g).unwrap();
        for (l1, l2) in [(5, 2), (3, 3), (7, 1), (2, 5), (6, 0)] {
            let mut pts = vec![g.pow(s, 2); l1];
            pts.extend(vec![s; l2]);
            let xi = HurwitzDatum::from_elements(&g, &pts);
            let data = cyclic_exponents(&g, &xi).unwrap();
            let rank = cyclic_hodge_rank(0, &data, 1);
            assert_eq!(rank, q(l1 as i64 + 2 * l2 as i64, 3) - qi(1));
        }
    }

    #[test]
    fn genus_one_rejected() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[1; 4]);
        assert!(cw_multiplicities(&g, 0, &xi, 2).is_err());
    }
}
