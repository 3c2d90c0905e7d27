use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, qi, render, Q};

struct FieldData {
    phi: usize,
    /// `x^t mod Φ_m` for `t = 0..m`, as integer coordinates.
    pows: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic, coefficients from low to high degree.
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = r[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    quot
}

fn cyclotomic_poly(m: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            let f = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &f);
        }
    }
    memo.insert(m, p.clone());
    p
}

fn field(m: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    static POLYS: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("field cache").get(&m) {
        return f.clone();
    }
    let phi_poly = {
        let mut polys = POLYS.get_or_init(|| Mutex::new(HashMap::new())).lock().expect("poly cache");
        cyclotomic_poly(m, &mut polys)
    };
    let phi = euler_phi(m) as usize;
    debug_assert_eq!(phi_poly.len(), phi + 1);
    let mut pows = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        pows.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * phi_poly[j];
            }
        }
        cur = next;
    }
    let f = Arc::new(FieldData { phi, pows });
    cache.lock().expect("field cache").insert(m, f.clone());
    f
}

/// An element of Q(ζ_m) in the power basis `1, ζ, …, ζ^{φ(m)−1}`,
/// reduced modulo the m-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    m: u64,
    coords: Vec<Q>,
}

impl CyclotomicNumber {
    pub fn zero(m: u64) -> Self {
        let phi = euler_phi(m) as usize;
        CyclotomicNumber {
            m,
            coords: vec![Q::zero(); phi],
        }
    }

    pub fn from_rational(m: u64, x: Q) -> Self {
        let mut z = Self::zero(m);
        z.coords[0] = x;
        z
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Q::one())
    }

    /// ζ_m^t.
    pub fn zeta_pow(m: u64, t: i64) -> Self {
        let f = field(m);
        let t = t.rem_euclid(m as i64) as usize;
        CyclotomicNumber {
            m,
            coords: f.pows[t].iter().map(|&c| qi(c)).collect(),
        }
    }

    /// Σ_k mults[k] ζ_o^k, with o = mults.len() dividing m.
    pub fn from_spectrum(m: u64, mults: &[u64]) -> Self {
        let o = mults.len() as u64;
        assert!(o > 0 && m % o == 0, "spectrum order must divide the field order");
        let f = field(m);
        let mut acc = vec![0i64; f.phi];
        for (k, &c) in mults.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let t = (k as u64 * (m / o)) as usize;
            for (a, &p) in acc.iter_mut().zip(&f.pows[t]) {
                *a += c as i64 * p;
            }
        }
        CyclotomicNumber {
            m,
            coords: acc.into_iter().map(qi).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, x: &Q) -> Self {
        CyclotomicNumber {
            m: self.m,
            coords: self.coords.iter().map(|c| c * x).collect(),
        }
    }

    /// Image under ζ ↦ ζ^a, for a prime to m; a = −1 is complex conjugation.
    pub fn galois(&self, a: i64) -> Self {
        let f = field(self.m);
        let mut out = vec![Q::zero(); f.phi];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (i as i64 * a).rem_euclid(self.m as i64) as usize;
            for (o, &p) in out.iter_mut().zip(&f.pows[t]) {
                if p != 0 {
                    *o += c * qi(p);
                }
            }
        }
        CyclotomicNumber {
            m: self.m,
            coords: out,
        }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.m, o.m, "mixed cyclotomic fields");
        CyclotomicNumber {
            m: self.m,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.m, o.m, "mixed cyclotomic fields");
        CyclotomicNumber {
            m: self.m,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            m: self.m,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, o: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.m, o.m, "mixed cyclotomic fields");
        let f = field(self.m);
        let phi = f.phi;
        let mut wide = vec![Q::zero(); 2 * phi];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Q> = wide[..phi].to_vec();
        for (t, c) in wide.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (x, &p) in out.iter_mut().zip(&f.pows[t % self.m as usize]) {
                if p != 0 {
                    *x += c * qi(p);
                }
            }
        }
        CyclotomicNumber {
            m: self.m,
            coords: out,
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = render(c);
            terms.push(match i {
                0 => coef,
                _ => {
                    let z = if i == 1 {
                        format!("z{}", self.m)
                    } else {
                        format!("z{}^{}", self.m, i)
                    };
                    if c.is_one() {
                        z
                    } else if *c == -Q::one() {
                        format!("-{}", z)
                    } else {
                        format!("{}*{}", coef, z)
                    }
                }
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in [1u64, 2, 3, 4, 6, 12, 15] {
            let mut s = CyclotomicNumber::zero(m);
            for t in 0..m as i64 {
                s = &s + &CyclotomicNumber::zeta_pow(m, t);
            }
            if m == 1 {
                assert_eq!(s.to_rational(), Some(qi(1)));
            } else {
                assert!(s.is_zero(), "m = {}", m);
            }
        }
    }

    #[test]
    fn multiplication_matches_exponents() {
        let m = 12;
        for a in 0..12 {
            for b in 0..12 {
                let p = &CyclotomicNumber::zeta_pow(m, a) * &CyclotomicNumber::zeta_pow(m, b);
                assert_eq!(p, CyclotomicNumber::zeta_pow(m, a + b));
            }
        }
        let z = CyclotomicNumber::zeta_pow(m, 5);
        assert_eq!(&z * &z.conj(), CyclotomicNumber::one(m));
    }
}
