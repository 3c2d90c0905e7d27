//! Integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qb(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn gcd_i(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least nonnegative residue.
pub fn rem(a: i64, n: i64) -> i64 {
    a.rem_euclid(n)
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Classical Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd.abs() != 1 {
        return None;
    }
    Some(rem(g.x * g.gcd, m))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part ⟨x⟩ ∈ [0, 1).
pub fn fract(x: &Q) -> Q {
    x - x.floor()
}

/// ⟨⟨x⟩⟩ = 1 − ⟨−x⟩, equal to 1 at integers.
pub fn fract_up(x: &Q) -> Q {
    Q::one() - fract(&(-x.clone()))
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Renders a rational as `"n"` for integers and `"num/den"` otherwise.
pub fn render(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Q>),
    Inconsistent,
    /// Consistent but with free variables; their number is given.
    Underdetermined(usize),
}

/// Solves `a x = b` over Q by Gauss–Jordan elimination.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> Solution {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / m[row][c].clone();
        for x in m[row].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = m[row][j].clone() * f.clone();
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined(cols - pivots.len());
    }
    Solution::Unique((0..cols).map(|i| m[i][cols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
    }

    #[test]
    fn brackets() {
        assert_eq!(fract(&q(-1, 3)), q(2, 3));
        assert_eq!(fract_up(&qi(2)), qi(1));
        assert_eq!(fract_up(&q(1, 3)), q(1, 3));
        assert_eq!(render(&q(6, 3)), "2");
        assert_eq!(render(&q(-1, 24)), "-1/24");
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)], vec![qi(2), qi(0)]];
        assert_eq!(
            solve_linear(&a, &[qi(3), qi(1), qi(4)]),
            Solution::Unique(vec![qi(2), qi(1)])
        );
        assert_eq!(solve_linear(&a, &[qi(3), qi(1), qi(5)]), Solution::Inconsistent);
        assert_eq!(
            solve_linear(&a[..1], &[qi(3)]),
            Solution::Underdetermined(1)
        );
    }

    #[test]
    fn inverses_and_binomials() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(euler_phi(12), 4);
    }
}
