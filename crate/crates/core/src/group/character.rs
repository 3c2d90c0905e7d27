//! Character tables by the class-algebra eigenvector method over a prime
//! field, lifted to exact cyclotomic values through eigenvalue spectra.

use num_traits::Zero;

use super::cyclotomic::CyclotomicNumber;
use super::modp::{dixon_prime, Fp};
use super::FiniteGroup;
use crate::arith::{qi, Q};
use crate::error::{Error, Result};

/// A class function with values in Q(ζ_m), one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn field_order(&self) -> u64 {
        self.values.first().map_or(1, |v| v.order())
    }

    pub fn degree(&self) -> Option<Q> {
        self.values.first().and_then(|v| v.to_rational())
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn scale(&self, x: &Q) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|a| a.scale(x)).collect(),
        }
    }

    /// The contragredient class function g ↦ f(g⁻¹).
    pub fn dual(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|a| a.conj()).collect(),
        }
    }
}

/// Irreducible characters of a finite group.
///
/// Row 0 is the trivial character. For cyclic groups, row `j` is the
/// character sending the least generator σ to ζ_n^j.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub field_order: u64,
    pub degrees: Vec<u64>,
    pub rows: Vec<ClassFunction>,
    /// `spectra[row][class][k]`: multiplicity of ζ_o^k as an eigenvalue of
    /// a representative of the class, o its order.
    pub spectra: Vec<Vec<Vec<u64>>>,
}

impl CharacterTable {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        if let Some(sigma) = (0..n).find(|&x| g.element_order(x) == n as u64) {
            return Self::cyclic(g, sigma);
        }
        Self::dixon(g)
    }

    fn cyclic(g: &FiniteGroup, sigma: usize) -> Self {
        let n = g.order() as u64;
        // exponent of x in base sigma
        let mut log = vec![0u64; n as usize];
        let mut x = 0;
        for k in 0..n {
            log[x] = k;
            x = g.mul(x, sigma);
        }
        let mut spectra = Vec::new();
        for j in 0..n {
            let mut row = Vec::new();
            for c in g.classes() {
                let x = c.representative;
                let o = g.element_order(x);
                let mut s = vec![0u64; o as usize];
                // ζ_n^{j log x} = ζ_o^{j log x · o / n}
                s[((j * log[x] % n) * o / n) as usize] = 1;
                row.push(s);
            }
            spectra.push(row);
        }
        Self::from_spectra(n, spectra)
    }

    fn from_spectra(field_order: u64, spectra: Vec<Vec<Vec<u64>>>) -> Self {
        let rows: Vec<ClassFunction> = spectra
            .iter()
            .map(|row| ClassFunction {
                values: row
                    .iter()
                    .map(|s| CyclotomicNumber::from_spectrum(field_order, s))
                    .collect(),
            })
            .collect();
        let degrees = spectra.iter().map(|r| r[0].iter().sum()).collect();
        CharacterTable {
            field_order,
            degrees,
            rows,
            spectra,
        }
    }

    fn dixon(g: &FiniteGroup) -> Self {
        let n = g.order() as u64;
        let k = g.classes().len();
        let m = g.exponent();
        let lower = 2 * ((n as f64).sqrt().ceil() as u64) + 1;
        let f = Fp {
            p: dixon_prime(m, lower),
        };
        let sizes: Vec<u64> = g.classes().iter().map(|c| c.members.len() as u64).collect();

        // c[r][s][t] = #{x ∈ C_r : x⁻¹ z_t ∈ C_s}
        let mut c = vec![vec![vec![0u64; k]; k]; k];
        for (t, cl) in g.classes().iter().enumerate() {
            let z = cl.representative;
            for x in 0..g.order() {
                let r = g.class_of(x);
                let s = g.class_of(g.mul(g.inv(x), z));
                c[r][s][t] += 1;
            }
        }

        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect()];
        for r in 1..k {
            if spaces.len() == k {
                break;
            }
            let mut next = Vec::new();
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                next.extend(split_space(f, &c[r], basis));
            }
            spaces = next;
        }
        assert_eq!(spaces.len(), k, "class matrices failed to separate characters");

        let zeta = f.root_of_unity(m);
        let inv_class: Vec<usize> = g
            .classes()
            .iter()
            .map(|cl| g.class_of(g.inv(cl.representative)))
            .collect();
        let mut spectra = Vec::new();
        for basis in spaces {
            let mut w = basis[0].clone();
            let s0 = f.inv(w[0]);
            for x in w.iter_mut() {
                *x = f.mul(*x, s0);
            }
            let mut s = 0u64;
            for j in 0..k {
                let t = f.mul(f.mul(w[j], w[inv_class[j]]), f.inv(sizes[j] % f.p));
                s = f.add(s, t);
            }
            let d2 = f.mul(n % f.p, f.inv(s));
            let d = (1..=((n as f64).sqrt() as u64 + 1))
                .find(|&d| f.mul(d, d) == d2)
                .expect("degree squared is a square below |G|");
            let chi: Vec<u64> = (0..k)
                .map(|j| f.mul(f.mul(w[j], d), f.inv(sizes[j] % f.p)))
                .collect();
            let mut row = Vec::with_capacity(k);
            for cl in g.classes() {
                let x = cl.representative;
                let o = g.element_order(x);
                let z_o = crate::arith::mod_pow(zeta, m / o, f.p);
                let vals: Vec<u64> = (0..o).map(|l| chi[g.class_of(g.pow(x, l as i64))]).collect();
                let inv_o = f.inv(o % f.p);
                let mut spec = vec![0u64; o as usize];
                for (kk, slot) in spec.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (l, &v) in vals.iter().enumerate() {
                        let e = (o - (kk as u64 * l as u64) % o) % o;
                        acc = f.add(acc, f.mul(v, crate::arith::mod_pow(z_o, e, f.p)));
                    }
                    let mult = f.mul(acc, inv_o);
                    assert!(mult <= d, "eigenvalue multiplicity out of range");
                    *slot = mult;
                }
                row.push(spec);
            }
            spectra.push(row);
        }
        let is_trivial = |row: &Vec<Vec<u64>>| row.iter().all(|s| s[0] == 1 && s.iter().sum::<u64>() == 1);
        spectra.sort_by(|a, b| {
            let da: u64 = a[0].iter().sum();
            let db: u64 = b[0].iter().sum();
            (!is_trivial(a), da, a).cmp(&(!is_trivial(b), db, b))
        });
        Self::from_spectra(m, spectra)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn trivial_row(&self) -> usize {
        0
    }

    /// Multiplicity of ζ_o^k as an eigenvalue of ρ_row(x), o the order of x.
    pub fn eigen_multiplicity(&self, g: &FiniteGroup, row: usize, x: usize, k: i64) -> u64 {
        // Spectra are stored at class representatives; x is conjugate to it.
        let c = g.class_of(x);
        let s = &self.spectra[row][c];
        s[k.rem_euclid(s.len() as i64) as usize]
    }

    /// ⟨a, b⟩ = (1/|G|) Σ_g a(g) b(g⁻¹).
    pub fn inner_product(g: &FiniteGroup, a: &ClassFunction, b: &ClassFunction) -> Q {
        let m = crate::arith::lcm(a.field_order(), b.field_order());
        let mut acc = CyclotomicNumber::zero(m);
        for (j, cl) in g.classes().iter().enumerate() {
            let x = embed(&a.values[j], m);
            let y = embed(&b.values[j], m).conj();
            acc = &acc + &(&x * &y).scale(&qi(cl.members.len() as i64));
        }
        let r = acc
            .to_rational()
            .expect("inner product of class functions is rational");
        r / qi(g.order() as i64)
    }

    /// Multiplicities of each irreducible in `cf`.
    pub fn decompose(&self, g: &FiniteGroup, cf: &ClassFunction) -> Vec<Q> {
        self.rows.iter().map(|r| Self::inner_product(g, cf, r)).collect()
    }

    /// The trivial character of `g`.
    pub fn trivial(g: &FiniteGroup) -> ClassFunction {
        ClassFunction {
            values: vec![CyclotomicNumber::one(g.exponent()); g.classes().len()],
        }
    }

    /// Restriction of a class function of `g` to the subgroup `h`.
    pub fn restrict(g: &FiniteGroup, cf: &ClassFunction, h: &FiniteGroup) -> Result<ClassFunction> {
        let mut values = Vec::new();
        for cl in h.classes() {
            let x = g.id_of(h.element(cl.representative)).ok_or_else(|| {
                Error::domain("subgroup", "restriction target is not a subgroup")
            })?;
            values.push(cf.values[g.class_of(x)].clone());
        }
        Ok(ClassFunction { values })
    }

    /// Induction of a class function of the subgroup `h` to `g`.
    pub fn induce(g: &FiniteGroup, cf: &ClassFunction, h: &FiniteGroup) -> Result<ClassFunction> {
        let m = crate::arith::lcm(cf.field_order(), g.exponent());
        let mut h_class = vec![usize::MAX; g.order()];
        for x in 0..h.order() {
            let y = g
                .id_of(h.element(x))
                .ok_or_else(|| Error::domain("subgroup", "induction source is not a subgroup"))?;
            h_class[y] = h.class_of(x);
        }
        let mut values = Vec::new();
        for cl in g.classes() {
            let x = cl.representative;
            let mut acc = CyclotomicNumber::zero(m);
            for y in 0..g.order() {
                let z = g.conj(y, x);
                if h_class[z] != usize::MAX {
                    acc = &acc + &embed(&cf.values[h_class[z]], m);
                }
            }
            values.push(acc.scale(&Q::new(1.into(), (h.order() as i64).into())));
        }
        Ok(ClassFunction { values })
    }

    /// Class function of a permutation action given by fixed-point counts.
    pub fn from_integers(g: &FiniteGroup, vals: &[i64]) -> ClassFunction {
        ClassFunction {
            values: vals
                .iter()
                .map(|&v| CyclotomicNumber::from_rational(g.exponent(), qi(v)))
                .collect(),
        }
    }

    pub fn is_zero(cf: &ClassFunction) -> bool {
        cf.values.iter().all(|v| v.is_zero())
    }
}

/// Q(ζ_a) → Q(ζ_m) for a | m.
pub(crate) fn embed(x: &CyclotomicNumber, m: u64) -> CyclotomicNumber {
    let a = x.order();
    if a == m {
        return x.clone();
    }
    assert_eq!(m % a, 0, "embedding requires divisibility");
    let mut out = CyclotomicNumber::zero(m);
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = CyclotomicNumber::zeta_pow(m, (i as u64 * (m / a)) as i64);
        out = &out + &z.scale(c);
    }
    out
}

fn split_space(f: Fp, mr: &[Vec<u64>], mut basis: Vec<Vec<u64>>) -> Vec<Vec<Vec<u64>>> {
    let pivots = f.rref(&mut basis);
    let d = basis.len();
    let k = mr.len();
    // column i of `a` holds coordinates of M_r b_i
    let mut a = vec![vec![0u64; d]; d];
    for (i, b) in basis.iter().enumerate() {
        let w: Vec<u64> = (0..k)
            .map(|s| (0..k).fold(0, |acc, t| f.add(acc, f.mul(mr[s][t], b[t]))))
            .collect();
        for (j, &pc) in pivots.iter().enumerate() {
            a[j][i] = w[pc];
        }
    }
    let cp = f.charpoly(&a);
    let roots = f.roots(&cp);
    if roots.len() <= 1 {
        return vec![basis];
    }
    let mut out = Vec::new();
    for lam in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { f.sub(a[i][j], lam) } else { a[i][j] })
                    .collect()
            })
            .collect();
        let ns = f.nullspace(&shifted);
        let mut sub: Vec<Vec<u64>> = ns
            .iter()
            .map(|coef| {
                (0..k)
                    .map(|t| (0..d).fold(0, |acc, i| f.add(acc, f.mul(coef[i], basis[i][t]))))
                    .collect()
            })
            .collect();
        f.rref(&mut sub);
        out.push(sub);
    }
    out
}
