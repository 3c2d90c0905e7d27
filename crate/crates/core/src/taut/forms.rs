use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{fract, gcd, q, render, Q};
use crate::error::{Error, Result};

/// Dense polynomial over Q, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly(vec![]);
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn sub(&self, o: &Poly) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, x) in d.0.iter().enumerate() {
                r[k + i] -= &c * x;
            }
            quo[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(quo), Poly::new(r))
    }

    fn monic(self) -> Self {
        match self.0.last() {
            None => self,
            Some(l) => {
                let l = l.clone();
                Poly(self.0.into_iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: the i-th entry is the product of the
    /// distinct monic factors of multiplicity i + 1.
    pub fn squarefree(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            let nb = b.div_rem(&a).0;
            let c = dd.div_rem(&a).0;
            dd = c.sub(&nb.derivative());
            out.push(a);
            b = nb;
        }
        out
    }
}

/// Binary form a_0 X^N + a_1 X^{N-1} Y + … + a_N Y^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Q>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("zero form", "all coefficients vanish"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "coefficients": self.coeffs.iter().map(render).collect::<Vec<_>>(),
        })
    }
}

/// Viète map: the product of the linear forms u_i X − v_i Y.
pub fn viete(factors: &[(Q, Q)]) -> Result<BinaryForm> {
    // Coefficients indexed by the power of Y.
    let mut c = vec![Q::one()];
    for (u, v) in factors {
        if u.is_zero() && v.is_zero() {
            return Err(Error::domain("zero form", "factor (0, 0)"));
        }
        let mut next = vec![Q::zero(); c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            next[k] += x * u;
            next[k + 1] -= x * v;
        }
        c = next;
    }
    BinaryForm::new(c)
}

/// Multiplicity type of the roots of a binary form on P^1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionType {
    /// n_1 ≤ … ≤ n_r.
    pub parts: Vec<usize>,
}

impl PartitionType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        PartitionType { parts }
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Dual form m_1^{k_1} … m_s^{k_s}, m_1 < … < m_s.
    pub fn dual(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((m, k)) if *m == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn from_dual(dual: &[(usize, usize)]) -> Self {
        PartitionType::new(
            dual.iter()
                .flat_map(|&(m, k)| std::iter::repeat(m).take(k))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "parts": self.parts,
            "dual": self.dual().iter().map(|(m, k)| json!([m, k])).collect::<Vec<_>>(),
            "stratum_dim": stratum_dim(self),
        })
    }
}

/// Root multiplicities over the algebraic closure, read off gcd chain degrees.
pub fn classify(f: &BinaryForm) -> PartitionType {
    // Roots at Y = 0 come from the leading zero coefficients of X^N.
    let at_infinity = f.coeffs.iter().take_while(|c| c.is_zero()).count();
    let affine = Poly::new(f.coeffs.iter().rev().cloned().collect());
    let mut parts = vec![at_infinity];
    for (i, a) in affine.squarefree().iter().enumerate() {
        parts.extend(std::iter::repeat(i + 1).take(a.degree().unwrap_or(0)));
    }
    PartitionType::new(parts)
}

/// Dimension of the closed stratum: the affine cone over P^{k_1} × … × P^{k_s}.
pub fn stratum_dim(mu: &PartitionType) -> usize {
    mu.dual().iter().map(|&(_, k)| k).sum::<usize>() + 1
}

/// Whether η lies in the closure of the μ stratum, i.e. η is obtained by
/// grouping the parts of μ.
pub fn incidence(eta: &PartitionType, mu: &PartitionType) -> bool {
    if eta.weight() != mu.weight() || eta.parts.len() > mu.parts.len() {
        return false;
    }
    fn place(parts: &[usize], bins: &mut [usize]) -> bool {
        let Some((&p, rest)) = parts.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        for i in 0..bins.len() {
            if bins[i] >= p && (i == 0 || bins[i] != bins[i - 1]) {
                bins[i] -= p;
                let ok = place(rest, bins);
                bins[i] += p;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut parts = mu.parts.clone();
    parts.reverse();
    let mut bins = eta.parts.clone();
    place(&parts, &mut bins)
}

/// Integer parts of L_i = L^{⊗i}([iB/n]) at the branch points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootExponents {
    pub i: u64,
    /// [i ν_j / e_j].
    pub offsets: Vec<i64>,
    pub deg_l: Q,
    /// i·deg L + Σ offsets.
    pub deg_li: Q,
}

impl RootExponents {
    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "offsets": self.offsets,
            "deg_L": render(&self.deg_l),
            "deg_L_i": render(&self.deg_li),
        })
    }
}

/// Bookkeeping for L with L^n = O(−B), B = Σ m_j ν_j Q_j, points as (e_j, ν_j).
pub fn root_exponents(n: u64, points: &[(u64, u64)], i: u64) -> Result<RootExponents> {
    let mut b = 0u64;
    for &(e, nu) in points {
        if e == 0 || n % e != 0 || gcd(nu, e) != 1 {
            return Err(Error::domain(
                "inconsistent datum",
                format!("(e, ν) = ({}, {}) for n = {}", e, nu, n),
            ));
        }
        b += (n / e) * nu;
    }
    if b % n != 0 {
        return Err(Error::domain(
            "inconsistent datum",
            format!("Σ m_j ν_j = {} is not divisible by {}", b, n),
        ));
    }
    let offsets: Vec<i64> = points
        .iter()
        .map(|&(e, nu)| (i * nu / e) as i64)
        .collect();
    let deg_l = -q(b as i64, n as i64);
    let deg_li = &deg_l * Q::from_integer(i.into()) + Q::from_integer(offsets.iter().sum::<i64>().into());
    Ok(RootExponents {
        i,
        offsets,
        deg_l,
        deg_li,
    })
}

/// deg L_i computed as −Σ ⟨i ν_j / e_j⟩, independent of the offsets.
pub fn degree_by_fractions(points: &[(u64, u64)], i: u64) -> Q {
    -points
        .iter()
        .map(|&(e, nu)| fract(&q((i * nu) as i64, e as i64)))
        .fold(Q::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;

    fn lin(u: i64, v: i64) -> (Q, Q) {
        (qi(u), qi(v))
    }

    #[test]
    fn pure_power() {
        let f = BinaryForm::new(vec![qi(1), qi(0), qi(0), qi(0)]).unwrap();
        assert_eq!(classify(&f).parts, vec![3]);
    }

    #[test]
    fn viete_round_trip() {
        let (a, b) = (3, 2);
        let mut fs = vec![lin(1, 0); a];
        fs.extend(vec![lin(0, 1); b]);
        let f = viete(&fs).unwrap();
        // (−1)^b X^a Y^b
        let mut expect = vec![qi(0); a + b + 1];
        expect[b] = qi(1);
        assert_eq!(f.coeffs, expect);
        assert_eq!(classify(&f).parts, vec![2, 3]);
    }

    #[test]
    fn distinct_and_repeated() {
        // (X − Y)^2 (X − 2Y)(X + Y)^3 Y
        let fs = vec![lin(1, 1), lin(1, 1), lin(1, 2), lin(1, -1), lin(1, -1), lin(1, -1), lin(0, 1)];
        let f = viete(&fs).unwrap();
        assert_eq!(classify(&f).parts, vec![1, 1, 2, 3]);
        // proportional factors merge
        let f = viete(&[lin(1, 1), lin(2, 2), lin(1, 0)]).unwrap();
        assert_eq!(classify(&f).parts, vec![1, 2]);
    }

    #[test]
    fn irreducible_factors() {
        // X^2 + Y^2 squared: two conjugate double roots
        let f = BinaryForm::new(vec![qi(1), qi(0), qi(2), qi(0), qi(1)]).unwrap();
        assert_eq!(classify(&f).parts, vec![2, 2]);
    }

    #[test]
    fn quartic_discriminant() {
        let mu = PartitionType::new(vec![1, 1, 2]);
        assert_eq!(mu.dual(), vec![(1, 2), (2, 1)]);
        assert_eq!(stratum_dim(&mu), 4);
        assert_eq!(PartitionType::from_dual(&mu.dual()), mu);
    }

    #[test]
    fn closure_order() {
        let p = |v: &[usize]| PartitionType::new(v.to_vec());
        assert!(incidence(&p(&[2, 2]), &p(&[1, 1, 2])));
        assert!(incidence(&p(&[4]), &p(&[1, 1, 1, 1])));
        assert!(!incidence(&p(&[1, 1, 2]), &p(&[2, 2])));
        assert!(!incidence(&p(&[3, 3]), &p(&[2, 2, 2])));
        assert!(incidence(&p(&[2, 4]), &p(&[2, 2, 2])));
    }

    #[test]
    fn zero_form() {
        assert!(BinaryForm::new(vec![qi(0), qi(0)]).is_err());
    }

    #[test]
    fn exponents() {
        let r = root_exponents(3, &[(3, 2), (3, 2), (3, 2)], 2).unwrap();
        assert_eq!(r.offsets, vec![1, 1, 1]);
        assert_eq!(r.deg_li, degree_by_fractions(&[(3, 2); 3], 2));
        let h = root_exponents(2, &[(2, 1); 6], 1).unwrap();
        assert!(h.offsets.iter().all(|&x| x == 0));
        let t = root_exponents(6, &[(2, 1), (3, 1), (6, 1)], 6).unwrap();
        assert_eq!(t.offsets, vec![3, 2, 1]);
        assert!(t.deg_li.is_zero());
        assert!(root_exponents(3, &[(3, 1), (3, 1)], 1).is_err());
    }
}
