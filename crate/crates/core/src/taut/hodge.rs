use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, is_prime, q, qb, qi, Q};
use crate::error::{Error, Result};

use super::pic::branch_count;

/// ∫ ψ_1^{α_1} … ψ_n^{α_n} over M̄_{0,n}, closed form (n−3)!/Π α_i!.
pub fn psi_integral(alpha: &[u32]) -> Q {
    let n = alpha.len();
    if n < 3 || alpha.iter().map(|&a| a as usize).sum::<usize>() != n - 3 {
        return Q::zero();
    }
    let den = alpha
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
    Q::new(factorial(n as u64 - 3), den)
}

/// Same integral through the string equation, forgetting a point with
/// exponent 0 until three points remain.
pub fn psi_integral_string(alpha: &[u32]) -> Q {
    let n = alpha.len();
    if n < 3 || alpha.iter().map(|&a| a as usize).sum::<usize>() != n - 3 {
        return Q::zero();
    }
    let mut memo = HashMap::new();
    string_rec(alpha.to_vec(), &mut memo)
}

fn string_rec(mut alpha: Vec<u32>, memo: &mut HashMap<Vec<u32>, Q>) -> Q {
    alpha.sort_unstable();
    if alpha.len() == 3 {
        return if alpha.iter().all(|&a| a == 0) { Q::one() } else { Q::zero() };
    }
    if let Some(v) = memo.get(&alpha) {
        return v.clone();
    }
    // sorted, so alpha[0] is a zero exponent
    let rest = &alpha[1..];
    let mut total = Q::zero();
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut b = rest.to_vec();
            b[j] -= 1;
            total += string_rec(b, memo);
        }
    }
    memo.insert(alpha, total.clone());
    total
}

/// τ_{a,n} = ∫ κ_a ψ_1^{n−3−a} over M̄_{0,n}, closed form C(n−2, a+1).
pub fn tau(a: u32, n: u32) -> Q {
    if n < 3 || a + 3 > n {
        return Q::zero();
    }
    qb(binomial(n as i64 - 2, a as i64 + 1))
}

/// τ_{a,n} from τ_{a,a+3} = 1 and τ_{a,m+1} = τ_{a,m} + ∫_{M̄_{0,m+1}} ψ_1^{m−a−2} ψ_{m+1}^a.
pub fn tau_recursive(a: u32, n: u32) -> Q {
    if n < 3 || a + 3 > n {
        return Q::zero();
    }
    let mut t = Q::one();
    for m in a + 3..n {
        let mut alpha = vec![0u32; m as usize + 1];
        alpha[0] = m - a - 2;
        alpha[m as usize] += a;
        t += psi_integral_string(&alpha);
    }
    t
}

fn range_check(g: i64, a: i64) -> Result<()> {
    if g < 1 || a < 0 || a > 2 * g - 1 {
        return Err(Error::domain(
            "a out of range",
            format!("need 0 ≤ a ≤ 2g−1, got g = {}, a = {}", g, a),
        ));
    }
    Ok(())
}

fn pow2(k: i64) -> Q {
    if k >= 0 {
        qb(BigInt::one() << k as usize)
    } else {
        Q::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// ∫ κ_a μ_1^{2g−1−a} over hyperelliptic curves with one marked Weierstrass
/// point, closed form.
pub fn hyperelliptic_integral(g: i64, a: i64) -> Result<Q> {
    range_check(g, a)?;
    let f = qb(factorial(2 * g as u64 + 1));
    let inner = qb(binomial(2 * g, a + 1))
        - qi(2 * g + 1) * pow2(-(a + 1)) * qb(binomial(2 * g - 1, a));
    Ok(inner * pow2(-(2 * g - 1 - a)) / f)
}

/// The same integral pulled back to all 2g+2 Weierstrass points and pushed
/// to M̄_{0,2g+2}: κ_a = 2δ*κ'_a, 2μ = δ*ψ, deg δ = 1/2, and the correction
/// Σ_{α≥2} ∫ μ_α^a μ_1^{2g−1−a}.
pub fn hyperelliptic_integral_pipeline(g: i64, a: i64) -> Result<Q> {
    range_check(g, a)?;
    let n = (2 * g + 2) as u32;
    let half = q(1, 2);
    let k = 2 * g - 1 - a;
    let main = qi(2) * pow2(-k) * &half * tau_recursive(a as u32, n);
    let mut alpha = vec![0u32; n as usize];
    alpha[0] = k as u32;
    alpha[1] += a as u32;
    let corr = qi(2 * g + 1) * pow2(-(2 * g - 1)) * &half * psi_integral_string(&alpha);
    Ok((main - corr) / qb(factorial(2 * g as u64 + 1)))
}

/// ∫ μ_1^{2g−1} over the one-pointed hyperelliptic space, via M̄_{0,2g+2}.
pub fn mu_top(g: i64) -> Result<Q> {
    range_check(g, 0)?;
    let mut alpha = vec![0u32; 2 * g as usize + 2];
    alpha[0] = 2 * g as u32 - 1;
    Ok(pow2(-(2 * g - 1)) * q(1, 2) * psi_integral_string(&alpha) / qb(factorial(2 * g as u64 + 1)))
}

/// Taylor coefficients of sin(t/2)/(t/2) up to t^max, from y'' = −y/4.
pub fn sinc_half_series(max: usize) -> Vec<Q> {
    // y = sin(t/2): c_0 = 0, c_1 = 1/2, c_{k+2} = −c_k / (4(k+1)(k+2))
    let mut c = vec![Q::zero(); max + 2];
    c[1] = q(1, 2);
    for k in 0..max {
        c[k + 2] = -c[k].clone() / qi(4 * (k as i64 + 1) * (k as i64 + 2));
    }
    (0..=max).map(|k| &c[k + 1] * qi(2)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// M̄_{0,n}.
    GenusZero(usize),
    /// Hyperelliptic curves of genus g with one marked Weierstrass point.
    HyperellipticOnePoint(i64),
}

/// A monomial in ψ_i, one κ_a and μ_1 over a supported space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HodgeIntegralKey {
    pub space: Space,
    pub psi: Vec<u32>,
    pub kappa: Option<u32>,
    pub mu: u32,
}

impl HodgeIntegralKey {
    pub fn dimension(&self) -> i64 {
        match self.space {
            Space::GenusZero(n) => n as i64 - 3,
            Space::HyperellipticOnePoint(g) => 2 * g - 1,
        }
    }

    pub fn degree(&self) -> i64 {
        self.psi.iter().map(|&a| a as i64).sum::<i64>()
            + self.kappa.map_or(0, |a| a as i64)
            + self.mu as i64
    }

    /// Zero when the degree misses the dimension.
    pub fn evaluate(&self) -> Result<Q> {
        if self.degree() != self.dimension() {
            return Ok(Q::zero());
        }
        let unsupported = || Error::domain("unsupported monomial", format!("{:?}", self));
        match self.space {
            Space::GenusZero(n) => {
                if self.mu > 0 || self.psi.len() > n {
                    return Err(unsupported());
                }
                let mut alpha = self.psi.clone();
                alpha.resize(n, 0);
                match self.kappa {
                    None => Ok(psi_integral(&alpha)),
                    Some(a) if alpha[1..].iter().all(|&x| x == 0) => Ok(tau(a, n as u32)),
                    Some(_) => Err(unsupported()),
                }
            }
            Space::HyperellipticOnePoint(g) => {
                if self.psi.iter().any(|&x| x > 0) {
                    return Err(unsupported());
                }
                match self.kappa {
                    Some(a) => hyperelliptic_integral(g, a as i64),
                    None => mu_top(g),
                }
            }
        }
    }
}

/// Normalization of the boundary recursion for B_{g,ξ} = ∫ λ^{b−3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// 24(b−1)/(p²−1) B = Σ_{ordered (I_1,I_2)} (b_1b_2 − 2(b−1)) C(b−4, b_1−2) B_1 B_2.
    #[default]
    OrderedPairs,
    /// 12(b−1)/(p²−1) B = Σ_{unordered} (b_1b_2 − (b−1)) C(b−4, b_1−2) B_1 B_2,
    /// from summing the eigen relations against the genus-0 ψ relation.
    UnorderedPairs,
}

type MemoKey = (u64, i64, Vec<u64>, Normalization);

fn memo() -> &'static Mutex<HashMap<MemoKey, Q>> {
    static M: OnceLock<Mutex<HashMap<MemoKey, Q>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Order of the automorphism group of y^p = x^a(1−x)^b over P^1.
pub fn base_automorphisms(p: u64, xi: &[u64]) -> u64 {
    let (a, b, c) = (xi[0], xi[1], xi[2]);
    if a == b && b == c {
        if p == 3 {
            18
        } else {
            p
        }
    } else if a == b || b == c || a == c {
        2 * p
    } else {
        p
    }
}

/// B_{g,ξ} for Z/p covers of P^1 with branch datum ξ = (ν_1, …, ν_b).
pub fn hodge_recursion(p: u64, g: i64, xi: &[u64], norm: Normalization) -> Result<Q> {
    if !is_prime(p) {
        return Err(Error::domain("p prime", format!("p = {}", p)));
    }
    let b = branch_count(p, g)?;
    if xi.len() != b {
        return Err(Error::domain(
            "inconsistent datum",
            format!("genus {} needs {} branch points, got {}", g, b, xi.len()),
        ));
    }
    if xi.iter().any(|&v| v == 0 || v >= p) || xi.iter().sum::<u64>() % p != 0 {
        return Err(Error::domain("inconsistent datum", format!("{:?} mod {}", xi, p)));
    }
    if p == 2 || b < 3 {
        return Err(Error::domain("unreachable base", format!("p = {}, b = {}", p, b)));
    }
    let mut key = xi.to_vec();
    key.sort_unstable();
    Ok(recurse(p, g, key, norm))
}

fn recurse(p: u64, g: i64, xi: Vec<u64>, norm: Normalization) -> Q {
    let b = xi.len();
    if b == 3 {
        return q(1, base_automorphisms(p, &xi) as i64);
    }
    let mkey = (p, g, xi.clone(), norm);
    if let Some(v) = memo().lock().unwrap().get(&mkey) {
        return v.clone();
    }
    let mut total = Q::zero();
    for mask in 1u64..(1u64 << b) - 1 {
        if norm == Normalization::UnorderedPairs && mask & 1 == 0 {
            continue;
        }
        let i1: Vec<u64> = (0..b).filter(|&i| mask >> i & 1 == 1).map(|i| xi[i]).collect();
        let i2: Vec<u64> = (0..b).filter(|&i| mask >> i & 1 == 0).map(|i| xi[i]).collect();
        let (b1, b2) = (i1.len() as i64, i2.len() as i64);
        if b1 < 2 || b2 < 2 {
            continue;
        }
        let eta = i1.iter().sum::<u64>() % p;
        if eta == 0 {
            // Ramond splits contribute nothing
            continue;
        }
        let mut x1 = i1;
        x1.push(p - eta);
        x1.sort_unstable();
        let mut x2 = i2;
        x2.push(eta);
        x2.sort_unstable();
        let g1 = (p as i64 - 1) * (b1 - 1) / 2;
        let g2 = (p as i64 - 1) * (b2 - 1) / 2;
        let bm = b as i64 - 1;
        let w = match norm {
            Normalization::OrderedPairs => b1 * b2 - 2 * bm,
            Normalization::UnorderedPairs => b1 * b2 - bm,
        };
        let c = qb(binomial(b as i64 - 4, b1 - 2)) * qi(w);
        total += c * recurse(p, g1, x1, norm) * recurse(p, g2, x2, norm);
    }
    let pp = (p * p - 1) as i64;
    let lhs = match norm {
        Normalization::OrderedPairs => q(24 * (b as i64 - 1), pp),
        Normalization::UnorderedPairs => q(12 * (b as i64 - 1), pp),
    };
    let v = total / lhs;
    memo().lock().unwrap().insert(mkey, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_small() {
        assert_eq!(psi_integral(&[0, 0, 0]), qi(1));
        assert_eq!(psi_integral(&[2, 0, 0, 0, 0]), qi(1));
        assert_eq!(psi_integral(&[1, 1, 0, 0, 0]), qi(2));
        assert_eq!(psi_integral(&[1, 0, 0, 0, 0]), qi(0));
        assert_eq!(psi_integral_string(&[1, 1, 0, 0, 0]), qi(2));
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(1, 6), qi(6));
        assert_eq!(tau_recursive(1, 6), qi(6));
        assert_eq!(tau_recursive(0, 7), qi(5));
    }

    #[test]
    fn hyperelliptic_values() {
        assert_eq!(hyperelliptic_integral(1, 0).unwrap(), q(1, 24));
        for g in 1..=4 {
            let f = qb(factorial(2 * g as u64 + 1)) * pow2(2 * g);
            assert_eq!(mu_top(g).unwrap(), Q::one() / &f);
            assert_eq!(hyperelliptic_integral(g, 1).unwrap(), qi((2 * g - 1) * (2 * g - 1)) / &f);
            assert_eq!(hyperelliptic_integral(g, 0).unwrap(), qi(2 * g - 1) * mu_top(g).unwrap());
        }
        assert!(hyperelliptic_integral(2, 4).is_err());
    }

    #[test]
    fn sinc_series() {
        let s = sinc_half_series(8);
        assert_eq!(s[0], qi(1));
        assert_eq!(s[2], q(-1, 24));
        assert!(s[3].is_zero());
    }

    #[test]
    fn base_cases() {
        let n = Normalization::OrderedPairs;
        assert_eq!(hodge_recursion(3, 1, &[1, 1, 1], n).unwrap(), q(1, 18));
        assert_eq!(hodge_recursion(5, 2, &[1, 1, 3], n).unwrap(), q(1, 10));
        assert_eq!(hodge_recursion(7, 3, &[1, 2, 4], n).unwrap(), q(1, 7));
        assert!(hodge_recursion(2, 2, &[1; 6], n).is_err());
        assert!(hodge_recursion(3, 2, &[1, 1, 1], n).is_err());
        assert!(hodge_recursion(4, 3, &[1, 1, 1, 1], n).is_err());
    }

    #[test]
    fn genus_two_ternary() {
        let a = hodge_recursion(3, 2, &[1, 1, 2, 2], Normalization::OrderedPairs).unwrap();
        assert_eq!(a, q(-1, 729));
        let b = hodge_recursion(3, 2, &[1, 1, 2, 2], Normalization::UnorderedPairs).unwrap();
        assert_eq!(b, q(1, 1458));
        let key = HodgeIntegralKey {
            space: Space::GenusZero(6),
            psi: vec![2],
            kappa: Some(1),
            mu: 0,
        };
        assert_eq!(key.evaluate().unwrap(), qi(6));
    }
}
