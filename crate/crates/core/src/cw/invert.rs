use std::collections::{BTreeMap, HashMap};

use super::cw_multiplicities;
use crate::arith::{fract, gcd, q, qi, solve_linear, to_i64, Solution, Q};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hurwitz::{HolonomyClass, HurwitzDatum};

/// Source of multiplicities of irreducibles (character-table rows) in
/// H⁰(C, ω^⊗m).
pub trait CwOracle {
    fn multiplicity(&mut self, m: u32, row: usize) -> Result<i64>;
}

/// Oracle backed by the forward formula for a known datum.
pub struct DatumOracle<'a> {
    g: &'a FiniteGroup,
    base_genus: i64,
    xi: HurwitzDatum,
    cache: HashMap<u32, Vec<i64>>,
}

impl<'a> DatumOracle<'a> {
    pub fn new(g: &'a FiniteGroup, base_genus: i64, xi: HurwitzDatum) -> Self {
        DatumOracle {
            g,
            base_genus,
            xi,
            cache: HashMap::new(),
        }
    }
}

impl CwOracle for DatumOracle<'_> {
    fn multiplicity(&mut self, m: u32, row: usize) -> Result<i64> {
        if !self.cache.contains_key(&m) {
            let v = cw_multiplicities(self.g, self.base_genus, &self.xi, m)?;
            self.cache.insert(m, v.values);
        }
        Ok(self.cache[&m][row])
    }
}

/// Result of inverting Chevalley–Weil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inversion {
    pub base_genus: i64,
    /// The recovered datum; points with trivial holonomy are invisible.
    pub datum: HurwitzDatum,
    /// Every (m, row) queried, sorted.
    pub queries: Vec<(u32, usize)>,
    /// Per cyclic subgroup (by least generator): the counts
    /// #{i : lν_i ≡ −1 (mod e_i)} for l = 0..|K|, read off from the
    /// multiplicities and matched against the recovered local exponents.
    pub minus_one_counts: Vec<(usize, Vec<i64>)>,
}

struct Logged<'o, O: CwOracle> {
    inner: &'o mut O,
    seen: BTreeMap<(u32, usize), i64>,
}

impl<O: CwOracle> Logged<'_, O> {
    fn get(&mut self, m: u32, row: usize) -> Result<i64> {
        if let Some(&v) = self.seen.get(&(m, row)) {
            return Ok(v);
        }
        let v = self.inner.multiplicity(m, row)?;
        self.seen.insert((m, row), v);
        Ok(v)
    }
}

fn inconsistent(detail: String) -> Error {
    Error::domain("oracle consistency", detail)
}

/// Local data of the restricted action on one cyclic subgroup K = ⟨c⟩.
struct Restricted {
    /// y[(e, ν)]: K-orbits with stabiliser of order e and exponent ν.
    y: BTreeMap<(u64, u64), i64>,
    counts: Vec<i64>,
}

fn restricted<O: CwOracle>(g: &FiniteGroup, c: usize, o: &mut Logged<O>) -> Result<Restricted> {
    let t = g.character_table();
    let h = g.element_order(c) as i64;
    // multiplicity of χ^l, χ(c) = ζ_h, in the K-module H⁰(ω^⊗m)
    let mut cache: HashMap<(u32, i64), i64> = HashMap::new();
    let mut mult = |m: u32, l: i64| -> Result<i64> {
        let l = l.rem_euclid(h);
        if let Some(&v) = cache.get(&(m, l)) {
            return Ok(v);
        }
        let mut acc = 0;
        for row in 0..t.len() {
            let k = t.eigen_multiplicity(g, row, c, l) as i64;
            if k != 0 {
                acc += k * o.get(m, row)?;
            }
        }
        cache.insert((m, l), acc);
        Ok(acc)
    };
    let gp = mult(1, 0)?;
    let r = mult(2, 0)? - 3 * (gp - 1);
    let base = |m: i64| (2 * m - 1) * (gp - 1) + m * r;

    // Number of orbits with stabiliser of order k, by increasing k.
    let mut n_k = vec![0i64; h as usize + 1];
    for k in 2..=h {
        let u = base(k + 1) - mult((k + 1) as u32, 0)?;
        let mut x = u - r;
        for d in 2..k {
            x -= n_k[d as usize] * ((k + 1 + d - 1) / d - 1);
        }
        if x < 0 || (x > 0 && h % k != 0) {
            return Err(inconsistent(format!(
                "{} orbits with stabiliser of order {} in a group of order {}",
                x, k, h
            )));
        }
        n_k[k as usize] = x;
    }
    if n_k.iter().sum::<i64>() != r {
        return Err(inconsistent(format!(
            "orbit counts sum to {} but r = {}",
            n_k.iter().sum::<i64>(),
            r
        )));
    }

    // S(l, m) = Σ_i (⟨(lν_i − m)/e_i⟩ + m/e_i) for m ≥ 2.
    let mut s = |l: i64, m: i64| -> Result<i64> { Ok(base(m) - mult(m as u32, l)?) };
    let unknowns: Vec<(u64, u64)> = (2..=h as u64)
        .filter(|e| h as u64 % e == 0)
        .flat_map(|e| (1..e).filter(move |&nu| gcd(nu, e) == 1).map(move |nu| (e, nu)))
        .collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for l in 0..h {
        for m in 2..=h + 1 {
            let d = s(l, m + 1)? - s(l, m)?;
            rows.push(
                unknowns
                    .iter()
                    .map(|&(e, nu)| {
                        let hit = (l * nu as i64 - m).rem_euclid(e as i64) == 0;
                        qi(hit as i64)
                    })
                    .collect(),
            );
            rhs.push(qi(d));
        }
    }
    for k in 2..=h as u64 {
        if h as u64 % k == 0 {
            rows.push(unknowns.iter().map(|&(e, _)| qi((e == k) as i64)).collect());
            rhs.push(qi(n_k[k as usize]));
        }
    }
    let sol = match solve_linear(&rows, &rhs) {
        Solution::Unique(v) => v,
        Solution::Inconsistent => {
            return Err(inconsistent(format!(
                "no local data on a cyclic subgroup of order {} fit the multiplicities",
                h
            )))
        }
        Solution::Underdetermined(k) => {
            return Err(inconsistent(format!(
                "{} free parameters remain on a cyclic subgroup of order {}",
                k, h
            )))
        }
    };
    let mut y = BTreeMap::new();
    for (&key, v) in unknowns.iter().zip(&sol) {
        match to_i64(v) {
            Some(x) if x >= 0 => {
                if x > 0 {
                    y.insert(key, x);
                }
            }
            _ => {
                return Err(inconsistent(format!(
                    "orbit count {} for (e, ν) = {:?}",
                    v, key
                )))
            }
        }
    }

    // #{i : lν_i ≡ −1 (mod e_i)} = −Σ_i (⟨(lν_i − m)/e_i⟩ − ⟨lν_i/e_i⟩ − ⟨−m/e_i⟩)
    // at m = 2h − 1, each bracket sum read from the multiplicities.
    let inv_e: Q = (2..=h).map(|e| q(n_k[e as usize], e)).sum();
    let m1 = 2 * h - 1;
    let m2 = 2 * h;
    let frac_m: Q = (2..=h)
        .map(|e| qi(n_k[e as usize]) * fract(&q(-m1, e)))
        .sum();
    let mut counts = Vec::with_capacity(h as usize);
    for l in 0..h {
        let a = qi(s(l, m1)?) - qi(m1) * inv_e.clone();
        let b = qi(s(l, m2)?) - qi(m2) * inv_e.clone();
        let c = -(a - b - frac_m.clone());
        let c = to_i64(&c).ok_or_else(|| inconsistent(format!("non-integral count {}", c)))?;
        let direct: i64 = y
            .iter()
            .filter(|(&(e, nu), _)| (l * nu as i64 + 1).rem_euclid(e as i64) == 0)
            .map(|(_, &b)| b)
            .sum();
        if c != direct {
            return Err(inconsistent(format!(
                "count of lν ≡ −1 at l = {} is {} from the multiplicities, {} from the data",
                l, c, direct
            )));
        }
        counts.push(c);
    }
    Ok(Restricted { y, counts })
}

/// Recovers (g', ξ) from the multiplicities of irreducibles in H⁰(C, ω^⊗m).
///
/// For each cyclic subgroup K = ⟨c⟩ of order h, the restricted K-module
/// gives the genus of C/K, the number of branch points and, through the
/// jumps S(l, m+1) − S(l, m) = #{i : lν_i ≡ m (mod e_i)}, the local data of
/// C → C/K. The K-fixed points with each rotation are then Möbius-inverted
/// over the cyclic subgroups to points with stabiliser exactly K.
pub fn invert_cw<O: CwOracle>(g: &FiniteGroup, oracle: &mut O) -> Result<Inversion> {
    let mut o = Logged {
        inner: oracle,
        seen: BTreeMap::new(),
    };
    let t = g.character_table();
    let base_genus = o.get(1, t.trivial_row())?;
    let lat = g.cyclic_lattice();

    // f[(K, t)]: points fixed by K whose K-rotation has distinguished element t.
    let mut f: HashMap<usize, i64> = HashMap::new();
    let mut minus_one_counts = Vec::new();
    for k in 0..lat.len() {
        let sub = lat.get(k);
        if sub.order < 2 {
            continue;
        }
        let c = sub.generator;
        let res = restricted(g, c, &mut o)?;
        for (&(e, nu), &b) in &res.y {
            if e == sub.order {
                f.insert(g.pow(c, nu as i64), b);
            }
        }
        minus_one_counts.push((c, res.counts));
    }

    // Top-down: points with stabiliser exactly K and distinguished element t.
    let mut exact: HashMap<usize, i64> = HashMap::new();
    for k in (0..lat.len()).rev() {
        let sub = lat.get(k);
        if sub.order < 2 {
            continue;
        }
        for t_el in lat.generators_of(g, k) {
            let mut v = f.get(&t_el).copied().unwrap_or(0);
            for l in lat.above(k) {
                if l == k {
                    continue;
                }
                let big = lat.get(l);
                let step = (big.order / sub.order) as i64;
                for s_el in lat.generators_of(g, l) {
                    if g.pow(s_el, step) == t_el {
                        v -= exact.get(&s_el).copied().unwrap_or(0);
                    }
                }
            }
            if v < 0 {
                return Err(inconsistent(format!(
                    "{} points with stabiliser exactly ⟨{}⟩",
                    v,
                    g.element_string(t_el)
                )));
            }
            exact.insert(t_el, v);
        }
    }

    let mut datum = HurwitzDatum::new();
    for (&s, &v) in &exact {
        if v == 0 || g.class_min(s) != s {
            continue;
        }
        let k = g.element_order(s) as i64;
        let cent = g.centralizer(s).len() as i64;
        if (v * k) % cent != 0 {
            return Err(inconsistent(format!(
                "{} fixed points of ⟨{}⟩ do not form whole orbits",
                v,
                g.element_string(s)
            )));
        }
        datum.add(HolonomyClass::from_element(g, s), (v * k / cent) as u64);
    }
    Ok(Inversion {
        base_genus,
        datum,
        queries: o.seen.keys().copied().collect(),
        minus_one_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::cyclic_generator;

    fn round_trip(g: &FiniteGroup, gp: i64, xi: &HurwitzDatum) {
        let mut o = DatumOracle::new(g, gp, xi.clone());
        let inv = invert_cw(g, &mut o).unwrap();
        assert_eq!(inv.base_genus, gp);
        assert_eq!(&inv.datum, xi);
    }

    #[test]
    fn z6_example() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let s = cyclic_generator(&g).unwrap();
        // (e, k) = (2, 1)·3 + (3, 1)·2 + (6, 5), with χ(σ^{6/e}) = ζ_e^k
        let mut xi = HurwitzDatum::new();
        for (e, k, b) in [(2, 1, 3), (3, 1, 2), (6, 5, 1)] {
            xi.add(HolonomyClass::from_pair(&g, g.pow(s, 6 / e), k).unwrap(), b);
        }
        round_trip(&g, 0, &xi);
        round_trip(&g, 1, &xi);
    }

    #[test]
    fn empty_datum() {
        let g = FiniteGroup::cyclic(4).unwrap();
        round_trip(&g, 2, &HurwitzDatum::new());
    }

    #[test]
    fn nonabelian_round_trip() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let c = g.parse_element("(1 2 3)").unwrap();
        round_trip(&g, 0, &HurwitzDatum::from_elements(&g, &[t; 6]));
        round_trip(&g, 0, &HurwitzDatum::from_elements(&g, &[t, t, c, c, c]));
        let g = FiniteGroup::dihedral(4).unwrap();
        let inv: Vec<usize> = (1..8).filter(|&x| g.element_order(x) == 2).collect();
        let (x, y) = inv
            .iter()
            .flat_map(|&x| inv.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| g.generates(&[x, y]))
            .unwrap();
        round_trip(&g, 0, &HurwitzDatum::from_elements(&g, &[x, x, y, y, x, x]));
    }

    #[test]
    fn paired_data_with_equal_counts_are_separated() {
        // Same number of lν ≡ −1 solutions for every l, different data.
        let g = FiniteGroup::cyclic(8).unwrap();
        let s = cyclic_generator(&g).unwrap();
        let el = |e: i64, nu: i64| g.pow(s, 8 / e * nu);
        let a = HurwitzDatum::from_elements(&g, &[el(2, 1), el(4, 3), el(8, 1), el(8, 5)]);
        let b = HurwitzDatum::from_elements(&g, &[el(2, 1), el(4, 1), el(8, 3), el(8, 7)]);
        round_trip(&g, 1, &a);
        round_trip(&g, 1, &b);
    }
}
