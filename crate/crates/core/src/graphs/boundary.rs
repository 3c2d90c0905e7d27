use serde_json::{json, Value};

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Segment,
    Loop,
}

/// Isotropy of the node of a boundary point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeType {
    /// Trivial stabiliser.
    Ramond,
    /// Stabiliser of order e; symbol (a, b) = ((n/e)ν¹, (n/e)ν²), ν¹ + ν² = e.
    NeveuSchwarz { a: u64, b: u64, e: u64, nu: (u64, u64) },
}

impl NodeType {
    fn from_a(n: u64, a: u64) -> Self {
        if a % n == 0 {
            return NodeType::Ramond;
        }
        let e = n / gcd(a, n);
        let nu1 = a / (n / e);
        NodeType::NeveuSchwarz {
            a,
            b: n - a,
            e,
            nu: (nu1, e - nu1),
        }
    }

    /// Order of the node stabiliser.
    pub fn order(&self) -> u64 {
        match self {
            NodeType::Ramond => 1,
            NodeType::NeveuSchwarz { e, .. } => *e,
        }
    }
}

/// One irreducible boundary divisor of the space of Z/n-covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub shape: Shape,
    /// Segment: genera of the two sides. Loop: (g' − 1, 0).
    pub genera: (i64, i64),
    /// Branch points (0-based) on each side; for a loop all sit on the first.
    pub parts: (Vec<usize>, Vec<usize>),
    /// Orders n_1, n_2 of the component stabilisers (loop: n_0 twice).
    pub orders: (u64, u64),
    pub node: NodeType,
    pub label: String,
}

impl BoundaryComponent {
    pub fn to_json(&self) -> Value {
        let node = match &self.node {
            NodeType::Ramond => json!({"type": "R", "e": 1}),
            NodeType::NeveuSchwarz { a, b, e, nu } => {
                json!({"type": "NS", "a": a, "b": b, "e": e, "nu": [nu.0, nu.1]})
            }
        };
        json!({
            "shape": match self.shape { Shape::Segment => "segment", Shape::Loop => "loop" },
            "genera": [self.genera.0, self.genera.1],
            "parts": [self.parts.0, self.parts.1],
            "orders": [self.orders.0, self.orders.1],
            "node": node,
            "label": self.label,
        })
    }
}

fn set_label(ix: &[usize]) -> String {
    let v: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Boundary divisors of covers with group Z/n over a base of genus g'. The
/// branch points are given as (e_α, ν_α), holonomy (n/e_α)ν_α ∈ Z/n.
pub fn boundary_components(
    n: u64,
    base_genus: i64,
    points: &[(u64, u64)],
    shape: Shape,
) -> Result<Vec<BoundaryComponent>> {
    if n == 0 || base_genus < 0 {
        return Err(Error::domain("inconsistent datum", "n ≥ 1 and g' ≥ 0 required"));
    }
    let mut total = 0;
    for &(e, nu) in points {
        if e < 2 || n % e != 0 || nu == 0 || nu >= e || gcd(nu, e) != 1 {
            return Err(Error::domain(
                "inconsistent datum",
                format!("(e, ν) = ({}, {}) is not a primitive holonomy of Z/{}", e, nu, n),
            ));
        }
        total += (n / e) * nu;
    }
    if total % n != 0 {
        return Err(Error::domain(
            "inconsistent datum",
            format!("Σ m_α ν_α = {} is not divisible by {}", total, n),
        ));
    }
    let hol: Vec<u64> = points.iter().map(|&(e, nu)| (n / e) * nu % n).collect();
    let span = |ix: &[usize]| ix.iter().fold(n, |acc, &i| gcd(acc, hol[i]));
    let order = |ix: &[usize]| n / span(ix);
    let b = points.len();
    let mut out = Vec::new();
    match shape {
        Shape::Segment => {
            if b >= usize::BITS as usize {
                return Err(Error::domain("inconsistent datum", "too many branch points"));
            }
            for mask in 0u64..(1u64 << b) {
                let i1: Vec<usize> = (0..b).filter(|&i| mask >> i & 1 == 1).collect();
                let i2: Vec<usize> = (0..b).filter(|&i| mask >> i & 1 == 0).collect();
                for g1 in 0..=base_genus {
                    let g2 = base_genus - g1;
                    if (g1, &i1) > (g2, &i2) {
                        continue;
                    }
                    if 2 * g1 - 1 + i1.len() as i64 <= 0 || 2 * g2 - 1 + i2.len() as i64 <= 0 {
                        continue;
                    }
                    let a = (n - i1.iter().map(|&i| hol[i]).sum::<u64>() % n) % n;
                    let node = NodeType::from_a(n, a);
                    let choices = |gi: i64, ix: &[usize]| -> Vec<u64> {
                        let base = order(ix);
                        if gi == 0 {
                            vec![base]
                        } else {
                            divisors(n).into_iter().filter(|d| d % base == 0).collect()
                        }
                    };
                    for &n1 in &choices(g1, &i1) {
                        for &n2 in &choices(g2, &i2) {
                            if lcm(n1, n2) != n || ((g1, &i1) == (g2, &i2) && n1 > n2) {
                                continue;
                            }
                            let label = format!(
                                "δ_{{{},{},{},{}}}^{{{},{}}}",
                                g1,
                                g2,
                                set_label(&i1),
                                set_label(&i2),
                                n1,
                                n2
                            );
                            out.push(BoundaryComponent {
                                shape,
                                genera: (g1, g2),
                                parts: (i1.clone(), i2.clone()),
                                orders: (n1, n2),
                                node: node.clone(),
                                label,
                            });
                        }
                    }
                }
            }
        }
        Shape::Loop => {
            if base_genus < 1 || 2 * base_genus - 2 + b as i64 <= 0 {
                return Ok(out);
            }
            let all: Vec<usize> = (0..b).collect();
            let base = order(&all);
            for n0 in divisors(n).into_iter().filter(|d| d % base == 0) {
                for e in divisors(n0) {
                    if base_genus == 1 && lcm(base, e) != n0 {
                        continue;
                    }
                    let nus: Vec<u64> = if e == 1 {
                        vec![0]
                    } else {
                        (1..e).filter(|&v| gcd(v, e) == 1 && 2 * v <= e).collect()
                    };
                    for nu1 in nus {
                        let node = NodeType::from_a(n, (n / e) * nu1);
                        let label = match &node {
                            NodeType::Ramond => format!("δ_{{0,{},R}}", n0),
                            NodeType::NeveuSchwarz { a, b, .. } => {
                                format!("δ_{{0,{},{},{}}}", n0, a, b)
                            }
                        };
                        out.push(BoundaryComponent {
                            shape,
                            genera: (base_genus - 1, 0),
                            parts: (all.clone(), vec![]),
                            orders: (n0, n0),
                            node,
                            label,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Ramification divisor of the discriminant map: Σ_{NS} (|H| − 1) δ.
pub fn discriminant_ramification(list: &[BoundaryComponent]) -> Vec<(String, u64)> {
    list.iter()
        .filter(|c| c.node != NodeType::Ramond)
        .map(|c| (c.label.clone(), c.node.order() - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperelliptic_parity() {
        let g = 3;
        let pts = vec![(2, 1); 2 * g + 2];
        let list = boundary_components(2, 0, &pts, Shape::Segment).unwrap();
        assert!(!list.is_empty());
        for c in &list {
            let odd = c.parts.0.len() % 2 == 1;
            match c.node {
                NodeType::Ramond => assert!(!odd),
                NodeType::NeveuSchwarz { a, b, .. } => {
                    assert!(odd);
                    assert_eq!((a, b), (1, 1));
                }
            }
            assert!(c.parts.0.len() >= 2 && c.parts.1.len() >= 2);
        }
        // unordered splits of 8 labelled points into parts of size ≥ 2
        let expect = (2..=6).map(|k| crate::arith::binomial(8, k)).sum::<num_bigint::BigInt>() / 2;
        assert_eq!(num_bigint::BigInt::from(list.len()), expect);
    }

    #[test]
    fn symbols_add_up() {
        let pts = [(3, 1), (3, 1), (3, 2), (3, 2), (3, 1), (3, 2)];
        for c in boundary_components(3, 0, &pts, Shape::Segment).unwrap() {
            if let NodeType::NeveuSchwarz { a, b, e, nu } = c.node {
                assert_eq!(a + b, 3);
                assert_eq!(gcd(a, b) * e, 3);
                assert_eq!(nu.0 + nu.1, e);
            }
        }
    }

    #[test]
    fn loops_over_genus_one() {
        let list = boundary_components(4, 1, &[(2, 1), (2, 1)], Shape::Loop).unwrap();
        for c in &list {
            assert_eq!(c.orders.0 % 2, 0);
            assert_eq!(lcm(2, c.node.order()), c.orders.0);
        }
        let r = discriminant_ramification(&list);
        assert!(r.iter().all(|(_, k)| *k >= 1));
    }

    #[test]
    fn inconsistent() {
        assert!(boundary_components(3, 0, &[(3, 1), (3, 1)], Shape::Segment).is_err());
    }
}
