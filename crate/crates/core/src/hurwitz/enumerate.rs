use std::collections::BTreeSet;

use super::HurwitzDatum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::domain("abelian group", format!("{} is not abelian", g.label())))
    }
}

/// Tuples (s_1, …, s_b) of nontrivial elements with s_1⋯s_b = 1 that
/// generate G: data on b labelled points over P¹.
///
/// With `modulo_out`, one representative (the least image) per Aut(G)-orbit.
pub fn enumerate_labeled(g: &FiniteGroup, b: usize, modulo_out: bool) -> Result<Vec<Vec<usize>>> {
    require_abelian(g)?;
    let mut out = Vec::new();
    if b == 0 {
        if g.order() == 1 {
            out.push(Vec::new());
        }
        return Ok(out);
    }
    let mut cur = vec![0usize; b];
    fill(g, &mut cur, 0, 0, &mut |t| {
        if g.generates(t) {
            out.push(t.to_vec());
        }
    });
    if modulo_out {
        let auts = g.automorphisms()?;
        let mut reps = BTreeSet::new();
        for t in &out {
            let best = auts
                .elements
                .iter()
                .map(|a| t.iter().map(|&x| a.apply(x)).collect::<Vec<_>>())
                .min()
                .expect("identity automorphism");
            reps.insert(best);
        }
        out = reps.into_iter().collect();
    }
    Ok(out)
}

fn fill(g: &FiniteGroup, cur: &mut Vec<usize>, i: usize, acc: usize, f: &mut impl FnMut(&[usize])) {
    let b = cur.len();
    if i + 1 == b {
        let last = g.inv(acc);
        if last != 0 {
            cur[i] = last;
            f(cur);
        }
        return;
    }
    for x in 1..g.order() {
        cur[i] = x;
        fill(g, cur, i + 1, g.mul(acc, x), f);
    }
}

/// Unlabelled data: multisets of b nontrivial elements with vanishing
/// product that generate G, optionally up to Aut(G).
pub fn enumerate_data(g: &FiniteGroup, b: usize, modulo_out: bool) -> Result<Vec<HurwitzDatum>> {
    require_abelian(g)?;
    let mut found = BTreeSet::new();
    let mut cur = Vec::with_capacity(b);
    multisets(g, b, 1, 0, &mut cur, &mut |t| {
        if g.generates(t) {
            found.insert(t.to_vec());
        }
    });
    let auts = if modulo_out { Some(g.automorphisms()?) } else { None };
    let mut out = BTreeSet::new();
    for t in found {
        let d = HurwitzDatum::from_elements(g, &t);
        let d = match &auts {
            Some(a) => a
                .elements
                .iter()
                .map(|th| d.twist(g, &th.map))
                .min()
                .expect("identity automorphism"),
            None => d,
        };
        out.insert(d);
    }
    Ok(out.into_iter().collect())
}

fn multisets(
    g: &FiniteGroup,
    left: usize,
    from: usize,
    acc: usize,
    cur: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if left == 0 {
        if acc == 0 {
            f(cur);
        }
        return;
    }
    for x in from..g.order() {
        cur.push(x);
        multisets(g, left - 1, x, g.mul(acc, x), cur, f);
        cur.pop();
    }
}
