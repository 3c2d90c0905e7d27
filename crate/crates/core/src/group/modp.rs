//! Dense linear algebra over a prime field F_p.

use crate::arith::{factorize, is_prime, mod_pow};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        mod_pow(a, self.p - 2, self.p)
    }
    #[cfg(test)]
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// A primitive `m`-th root of unity; requires `m | p − 1`.
    pub fn root_of_unity(self, m: u64) -> u64 {
        assert_eq!((self.p - 1) % m, 0);
        let primes: Vec<u64> = factorize(self.p - 1).iter().map(|&(q, _)| q).collect();
        let g = (2..self.p)
            .find(|&g| primes.iter().all(|&q| mod_pow(g, (self.p - 1) / q, self.p) != 1))
            .expect("primitive root exists");
        mod_pow(g, (self.p - 1) / m, self.p)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of the right null space of a square or rectangular matrix.
    pub fn nullspace(self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let ncols = a.first().map_or(0, |r| r.len());
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, m[i][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial, coefficients from low to high degree,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for i in j + 2..n {
                let f = self.mul(h[i][j], inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = self.mul(f, h[j + 1][c]);
                    h[i][c] = self.sub(h[i][c], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[i]);
                    row[j + 1] = self.add(row[j + 1], t);
                }
            }
        }
        // p_k(x) = (x − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j−1}) p_{i−1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let f = self.mul(h[i][k], prod);
                if f == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

/// Least prime `p ≡ 1 (mod m)` with `p > lower`.
pub(crate) fn dixon_prime(m: u64, lower: u64) -> u64 {
    let mut p = m + 1;
    while p <= lower || !is_prime(p) {
        p += m;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        let f = Fp { p: 101 };
        // diag(2, 3) conjugated: [[2,1],[0,3]]
        let a = vec![vec![2, 1], vec![0, 3]];
        let cp = f.charpoly(&a);
        assert_eq!(cp, vec![6, f.from_i64(-5), 1]);
        let mut r = f.roots(&cp);
        r.sort_unstable();
        assert_eq!(r, vec![2, 3]);
    }

    #[test]
    fn charpoly_three_by_three() {
        let f = Fp { p: 97 };
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        let cp = f.charpoly(&a);
        // det(xI − A) = x³ − 16x² − 12x + 3
        assert_eq!(cp, vec![3, f.from_i64(-12), f.from_i64(-16), 1]);
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fp { p: 7 };
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = f.nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = (0..3).fold(0, |acc, i| f.add(acc, f.mul(a[0][i], v[i])));
            assert_eq!(s, 0);
        }
    }
}
