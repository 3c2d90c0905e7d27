use super::HurwitzDatum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Genus of the cover, degree of the branch divisor and the dimension of
/// the Hurwitz space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub genus: i64,
    pub branch_degree: i64,
    pub dimension: i64,
}

/// Riemann–Hurwitz for a Galois cover with group G over a base of genus g'.
pub fn genus_from_datum(g: &FiniteGroup, base_genus: i64, xi: &HurwitzDatum) -> Result<GenusReport> {
    if base_genus < 0 {
        return Err(Error::domain("base genus", "g' must be nonnegative"));
    }
    let n = g.order() as i64;
    let mut branch = 0i64;
    for (c, b) in xi.iter() {
        let e = c.order(g) as i64;
        branch += b as i64 * (n - n / e);
    }
    let chi = n * (2 * base_genus - 2) + branch;
    if chi % 2 != 0 {
        return Err(Error::domain(
            "integral genus",
            format!("2g - 2 = {} is odd", chi),
        ));
    }
    let genus = chi / 2 + 1;
    if genus < 0 {
        return Err(Error::domain("nonnegative genus", format!("genus {} < 0", genus)));
    }
    Ok(GenusReport {
        genus,
        branch_degree: branch,
        dimension: 3 * base_genus - 3 + xi.degree() as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unramified() {
        let g = FiniteGroup::symmetric(3).unwrap();
        for gp in 0..4 {
            let r = genus_from_datum(&g, gp, &HurwitzDatum::new());
            if gp == 0 {
                assert!(r.is_err());
            } else {
                assert_eq!(r.unwrap().genus, 6 * (gp - 1) + 1);
            }
        }
    }

    #[test]
    fn hyperelliptic() {
        let g = FiniteGroup::cyclic(2).unwrap();
        for genus in 0..8 {
            let xi = HurwitzDatum::from_elements(&g, &vec![1; 2 * genus + 2]);
            let r = genus_from_datum(&g, 0, &xi).unwrap();
            assert_eq!(r.genus, genus as i64);
            assert_eq!(r.branch_degree, 2 * genus as i64 + 2);
        }
    }

    #[test]
    fn odd_chi_rejected() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let xi = HurwitzDatum::from_elements(&g, &[1, 1, 1]);
        assert!(genus_from_datum(&g, 0, &xi).is_err());
    }
}
