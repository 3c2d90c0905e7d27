use super::{least_power_in, HolonomyClass, HurwitzDatum};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};

fn embedding(j: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<usize>> {
    (0..j.order())
        .map(|x| {
            g.id_of(j.element(x)).ok_or_else(|| {
                Error::domain("subgroup", format!("{} is not a subgroup of {}", j.label(), g.label()))
            })
        })
        .collect()
}

/// Ind_J^G: the same classes read in G.
pub fn induce(j: &FiniteGroup, xi: &HurwitzDatum, g: &FiniteGroup) -> Result<HurwitzDatum> {
    let emb = embedding(j, g)?;
    let mut out = HurwitzDatum::new();
    for (c, b) in xi.iter() {
        out.add(HolonomyClass::from_element(g, emb[c.element()]), b);
    }
    Ok(out)
}

/// Res_J^G: one term per double coset J x ⟨s⟩, namely the class of
/// (J ∩ x⟨s⟩x⁻¹, χ^x restricted).
pub fn restrict(g: &FiniteGroup, xi: &HurwitzDatum, j: &FiniteGroup) -> Result<HurwitzDatum> {
    let emb = embedding(j, g)?;
    let mut back = vec![usize::MAX; g.order()];
    for (y, &x) in emb.iter().enumerate() {
        back[x] = y;
    }
    let mut out = HurwitzDatum::new();
    for (c, b) in xi.iter() {
        let h = c.subgroup(g);
        let mut seen = vec![false; g.order()];
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            for &a in &emb {
                for &t in h {
                    seen[g.mul(g.mul(a, x), t)] = true;
                }
            }
            let s1 = g.conj(x, c.element());
            let t = least_power_in(g, s1, |y| back[y] != usize::MAX);
            out.add(HolonomyClass::from_element(j, back[t]), b);
        }
    }
    Ok(out)
}

/// G/K realised on the left cosets of K, with the projection.
#[derive(Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// Image of each element of G.
    pub proj: Vec<usize>,
}

pub fn quotient_group(g: &FiniteGroup, k: &[usize]) -> Result<QuotientGroup> {
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    if !g.is_subgroup(&k) || !g.is_normal(&k) {
        return Err(Error::domain("normal subgroup", "K is not a normal subgroup of G"));
    }
    let cosets = g.left_cosets(&k);
    let mut coset_of = vec![0usize; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let perm_of = |a: usize| -> Result<Permutation> {
        Permutation::from_images(cosets.iter().map(|c| coset_of[g.mul(a, c[0])]).collect())
    };
    let gens: Vec<Permutation> = g
        .generator_ids()
        .iter()
        .map(|&a| perm_of(a))
        .collect::<Result<_>>()?;
    let q = FiniteGroup::generate_with(&gens, g.config())?;
    let proj = (0..g.order())
        .map(|x| {
            let p = perm_of(x)?;
            Ok(q.id_of(&p).expect("coset action lands in the quotient"))
        })
        .collect::<Result<_>>()?;
    Ok(QuotientGroup { group: q, proj })
}

/// Cores_{G/K}: [H, χ] ↦ [H/(H∩K), χ^{|H∩K|}].
///
/// χ^{|H∩K|} is trivial on H∩K and sends the image of s to ζ_d with
/// d = |H/(H∩K)|, so the distinguished element of the image is sK.
/// With `truncate`, trivial-holonomy terms are dropped.
pub fn corestrict(
    g: &FiniteGroup,
    xi: &HurwitzDatum,
    k: &[usize],
    truncate: bool,
) -> Result<(QuotientGroup, HurwitzDatum)> {
    let q = quotient_group(g, k)?;
    let mut out = HurwitzDatum::new();
    for (c, b) in xi.iter() {
        let img = HolonomyClass::from_element(&q.group, q.proj[c.element()]);
        if truncate && img.is_trivial() {
            continue;
        }
        out.add(img, b);
    }
    Ok((q, out))
}
