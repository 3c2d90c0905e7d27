use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::arith::{floor, fract, gcd, is_prime, q, qi, render, Q};
use crate::error::{Error, Result};
use crate::graphs::{boundary_components, BoundaryComponent, NodeType, Shape};

/// Generators of the rational Picard group of a space of cyclic covers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// Hodge class of the base family.
    LambdaPrime,
    /// Hodge class of the whole cover.
    Lambda,
    /// Determinant of the χ_v eigenbundle, 1 ≤ v < n.
    LambdaV(u64),
    Psi(usize),
    Mu(usize),
    /// ψ_{i,j}.
    PsiIJ(usize, u64),
    Kappa(u32),
    KappaPrime(u32),
    /// Mumford's κ̃_1.
    TildeKappa1,
    /// ⟨ω, ω⟩.
    OmegaPair,
    Delta(String),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::LambdaPrime => write!(f, "λ'"),
            Sym::Lambda => write!(f, "λ"),
            Sym::LambdaV(v) => write!(f, "λ_{}", v),
            Sym::Psi(i) => write!(f, "ψ_{}", i + 1),
            Sym::Mu(i) => write!(f, "μ_{}", i + 1),
            Sym::PsiIJ(i, j) => write!(f, "ψ_{{{},{}}}", i + 1, j),
            Sym::Kappa(a) => write!(f, "κ_{}", a),
            Sym::KappaPrime(a) => write!(f, "κ'_{}", a),
            Sym::TildeKappa1 => write!(f, "κ̃_1"),
            Sym::OmegaPair => write!(f, "⟨ω,ω⟩"),
            Sym::Delta(l) => write!(f, "{}", l),
        }
    }
}

/// Q-linear combination of symbols; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PicElement {
    terms: BTreeMap<Sym, Q>,
}

impl PicElement {
    pub fn zero() -> Self {
        PicElement::default()
    }

    pub fn sym(s: Sym) -> Self {
        PicElement::zero().plus(s, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &Sym) -> Q {
        self.terms.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Sym, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, s: Sym, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn plus(mut self, s: Sym, c: Q) -> Self {
        self.add_term(s, c);
        self
    }

    pub fn add(&self, o: &PicElement) -> Self {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(s.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return PicElement::zero();
        }
        PicElement {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
        }
    }

    pub fn sub(&self, o: &PicElement) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (s, c) in &self.terms {
            m.insert(s.to_string(), Value::String(render(c)));
        }
        Value::Object(m)
    }
}

impl fmt::Display for PicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("({}) {}", render(c), s))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cyclic datum Z/n over a base of genus g' with branch points (e_α, ν_α)
/// and its boundary divisors.
#[derive(Clone, Debug)]
pub struct CyclicContext {
    pub n: u64,
    pub base_genus: i64,
    pub points: Vec<(u64, u64)>,
    pub boundary: Vec<BoundaryComponent>,
}

impl CyclicContext {
    pub fn new(n: u64, base_genus: i64, points: Vec<(u64, u64)>) -> Result<Self> {
        let mut boundary = boundary_components(n, base_genus, &points, Shape::Segment)?;
        boundary.extend(boundary_components(n, base_genus, &points, Shape::Loop)?);
        Ok(CyclicContext {
            n,
            base_genus,
            points,
            boundary,
        })
    }

    /// m_α = n / e_α.
    pub fn m(&self, i: usize) -> u64 {
        self.n / self.points[i].0
    }

    /// m_π = n / e_π.
    pub fn m_pi(&self, c: &BoundaryComponent) -> u64 {
        self.n / c.node.order()
    }

    /// δ = Σ m_π δ_π.
    pub fn total_boundary(&self) -> PicElement {
        let mut d = PicElement::zero();
        for c in &self.boundary {
            d.add_term(Sym::Delta(c.label.clone()), qi(self.m_pi(c) as i64));
        }
        d
    }

    fn check(&self, s: &Sym) -> Result<()> {
        let b = self.points.len();
        let ok = match s {
            Sym::Psi(i) | Sym::Mu(i) => *i < b,
            Sym::PsiIJ(i, j) => *i < b && *j >= 1,
            Sym::LambdaV(v) => *v >= 1 && *v < self.n,
            Sym::Delta(l) => self.boundary.iter().any(|c| &c.label == l),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain("unknown symbol", s.to_string()))
        }
    }
}

/// Rewrites onto {λ', λ, λ_v, ψ_i, κ'_a, δ_π, ⟨ω,ω⟩}: ψ_{i,j} → jμ_i − [jν_i/e_i]ψ_i,
/// μ_i → (m_iν_i/n)ψ_i, κ_a → nκ'_a, κ̃_1 → ⟨ω,ω⟩ − δ. Torsion classes vanish.
pub fn pic_normalize(x: &PicElement, ctx: &CyclicContext) -> Result<PicElement> {
    let n = ctx.n as i64;
    let mut out = PicElement::zero();
    for (s, c) in x.terms() {
        ctx.check(s)?;
        match s {
            Sym::PsiIJ(i, j) => {
                let (e, nu) = ctx.points[*i];
                if *j % e == 0 {
                    log::warn!("ψ_{{{},{}}} is torsion; dropped over Q", i + 1, j);
                }
                let mu = PicElement::sym(Sym::Mu(*i)).scale(&qi(*j as i64));
                let r = mu.plus(Sym::Psi(*i), -qi((*j * nu / e) as i64));
                out = out.add(&pic_normalize(&r, ctx)?.scale(c));
            }
            Sym::Mu(i) => {
                let nu = ctx.points[*i].1 as i64;
                out.add_term(Sym::Psi(*i), c * q(ctx.m(*i) as i64 * nu, n));
            }
            Sym::Kappa(a) => out.add_term(Sym::KappaPrime(*a), c * qi(n)),
            Sym::TildeKappa1 => {
                let r = PicElement::sym(Sym::OmegaPair).sub(&ctx.total_boundary());
                out = out.add(&r.scale(c));
            }
            _ => out.add_term(s.clone(), c.clone()),
        }
    }
    Ok(out)
}

fn unit_check(n: u64, j: u64) -> Result<()> {
    if j == 0 || j >= n || gcd(j, n) != 1 {
        return Err(Error::domain(
            "gcd(j,n) = 1",
            format!("j = {} is not a unit mod {}", j, n),
        ));
    }
    Ok(())
}

/// Boundary form of the j-th eigen relation, written as an element equal to 0:
///
/// 2nλ_{n−j} − 2nλ' + Σ jn⟨x_α⟩μ_α − Σ n⟨x_α⟩(1 + [x_α])ψ_α + Σ_NS (a(j)b(j)/m_π) δ_π,
///
/// x_α = j m_α ν_α / n, a(j) = ja mod n and b(j) = n − a(j).
pub fn lambda_relation(ctx: &CyclicContext, j: u64) -> Result<PicElement> {
    let n = ctx.n;
    unit_check(n, j)?;
    let nq = qi(n as i64);
    let mut r = PicElement::zero()
        .plus(Sym::LambdaV(n - j), &nq * qi(2))
        .plus(Sym::LambdaPrime, -&nq * qi(2));
    for (i, &(_, nu)) in ctx.points.iter().enumerate() {
        let x = q((j * ctx.m(i) * nu) as i64, n as i64);
        let fx = fract(&x);
        r.add_term(Sym::Mu(i), qi(j as i64) * &nq * &fx);
        r.add_term(Sym::Psi(i), -(&nq * &fx * (Q::one() + Q::from_integer(floor(&x)))));
    }
    for c in &ctx.boundary {
        if let NodeType::NeveuSchwarz { a, .. } = c.node {
            let aj = j * a % n;
            let coeff = q((aj * (n - aj)) as i64, ctx.m_pi(c) as i64);
            r.add_term(Sym::Delta(c.label.clone()), coeff);
        }
    }
    Ok(r)
}

/// Replaces Σ_v c λ_v by c λ when every λ_v carries the same coefficient.
pub fn collect_lambda(x: &PicElement, n: u64) -> Result<PicElement> {
    let c = x.coeff(&Sym::LambdaV(1));
    let mut out = PicElement::zero();
    for (s, k) in x.terms() {
        match s {
            Sym::LambdaV(_) => {}
            _ => out.add_term(s.clone(), k.clone()),
        }
    }
    for v in 1..n {
        if x.coeff(&Sym::LambdaV(v)) != c {
            return Err(Error::domain(
                "gcd(j,n) = 1",
                "eigen Hodge classes do not combine into λ",
            ));
        }
    }
    out.add_term(Sym::Lambda, c);
    Ok(out)
}

/// Sum over j of the eigen relations for prime n = p over P^1, multiplied by p,
/// with λ' = 0 and λ = Σ λ_v.
pub fn summed_relation(ctx: &CyclicContext) -> Result<PicElement> {
    let p = ctx.n;
    if !is_prime(p) || ctx.base_genus != 0 {
        return Err(Error::domain("p prime", format!("n = {}, g' = {}", p, ctx.base_genus)));
    }
    let mut s = PicElement::zero();
    for j in 1..p {
        s = s.add(&pic_normalize(&lambda_relation(ctx, j)?, ctx)?);
    }
    let mut s = collect_lambda(&s, p)?.scale(&qi(p as i64));
    s.terms.remove(&Sym::LambdaPrime);
    Ok(s)
}

/// Pullback of the genus-0 relation 2(b−1)Σψ_α = Σ_{ordered (I,J)} |I||J| Δ'_{I,J}
/// along the discriminant map, in the form (b−1)Σψ_α = Σ_π |I||J| e_π δ_π
/// over unordered splits. Only meaningful for prime n.
fn psi_sum_pullback(ctx: &CyclicContext) -> PicElement {
    let b = ctx.points.len() as i64;
    let mut r = PicElement::zero();
    for c in ctx.boundary.iter().filter(|c| c.shape == Shape::Segment) {
        let w = (c.parts.0.len() * c.parts.1.len()) as i64 * c.node.order() as i64;
        r.add_term(Sym::Delta(c.label.clone()), q(w, b - 1));
    }
    r
}

/// Coefficient table of a boundary expression for λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornalbaHarris {
    pub p: u64,
    pub genus: i64,
    /// The relation, written as an element equal to 0.
    pub relation: PicElement,
    pub lambda: Q,
    /// Common coefficient of the ψ_α (zero once eliminated).
    pub psi: Q,
    /// (label, Ramond?, smaller side size, coefficient).
    pub delta: Vec<(String, bool, usize, Q)>,
}

impl CornalbaHarris {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "genus": self.genus,
            "lambda": render(&self.lambda),
            "psi": render(&self.psi),
            "delta": self.delta.iter().map(|(l, r, j, c)| json!({
                "label": l,
                "type": if *r { "R" } else { "NS" },
                "j": j,
                "coefficient": render(c),
            })).collect::<Vec<_>>(),
            "relation": self.relation.to_json(),
        })
    }
}

/// A datum with b points of Z/p and every ν_α ≠ 0.
pub fn default_datum(p: u64, b: usize) -> Result<Vec<u64>> {
    if b < 2 || p < 2 {
        return Err(Error::domain("inconsistent datum", "b ≥ 2 and p ≥ 2 required"));
    }
    let mut nu = vec![1u64; b];
    let s = (b as u64 - 1) % p;
    nu[b - 1] = (p - s) % p;
    if nu[b - 1] == 0 {
        if p == 2 {
            return Err(Error::domain("inconsistent datum", "odd number of points for p = 2"));
        }
        nu[b - 2] = 2;
        nu[b - 1] = p - 1;
    }
    Ok(nu)
}

/// Number of branch points of a Z/p cover of P^1 of genus g.
pub fn branch_count(p: u64, g: i64) -> Result<usize> {
    let num = 2 * g - 2 + 2 * p as i64;
    let den = p as i64 - 1;
    if den <= 0 || num <= 0 || num % den != 0 {
        return Err(Error::domain("non-integral b", format!("(2g−2+2p)/(p−1) for p = {}, g = {}", p, g)));
    }
    Ok((num / den) as usize)
}

/// λ in terms of ψ_α and δ_π for Z/p covers of P^1. For p = 2 the ψ_α are
/// eliminated through the genus-0 relation, giving the coefficients of
/// 8(2g+1)λ; otherwise the summed relation is reported as is.
pub fn cornalba_harris(p: u64, g: i64, nu: Option<&[u64]>) -> Result<CornalbaHarris> {
    if !is_prime(p) {
        return Err(Error::domain("p prime", format!("p = {}", p)));
    }
    let b = branch_count(p, g)?;
    let nu = match nu {
        Some(v) => v.to_vec(),
        None => default_datum(p, b)?,
    };
    if nu.len() != b {
        return Err(Error::domain("inconsistent datum", format!("expected {} points, got {}", b, nu.len())));
    }
    let ctx = CyclicContext::new(p, 0, nu.iter().map(|&v| (p, v)).collect())?;
    let mut rel = summed_relation(&ctx)?;
    if p == 2 {
        // 8λ − Σψ + 2Σδ_NS = 0; multiply by (b−1) and substitute.
        let c = rel.coeff(&Sym::Psi(0));
        let bm = qi(b as i64 - 1);
        let mut r = PicElement::zero();
        for (s, k) in rel.terms() {
            if !matches!(s, Sym::Psi(_)) {
                r.add_term(s.clone(), k * &bm);
            }
        }
        rel = r.add(&psi_sum_pullback(&ctx).scale(&(c * &bm)));
        // sign convention: λ on the left
        if rel.coeff(&Sym::Lambda) < Q::zero() {
            rel = rel.scale(&-Q::one());
        }
        return Ok(table(p, g, &ctx, rel, true));
    }
    Ok(table(p, g, &ctx, rel, false))
}

fn table(p: u64, g: i64, ctx: &CyclicContext, rel: PicElement, solved: bool) -> CornalbaHarris {
    let lambda = rel.coeff(&Sym::Lambda);
    let psi = rel.coeff(&Sym::Psi(0));
    let delta = ctx
        .boundary
        .iter()
        .map(|c| {
            let j = c.parts.0.len().min(c.parts.1.len());
            let k = rel.coeff(&Sym::Delta(c.label.clone()));
            // with λ on the left the boundary sits on the right
            let k = if solved { -k } else { k };
            (c.label.clone(), c.node == NodeType::Ramond, j, k)
        })
        .collect();
    CornalbaHarris {
        p,
        genus: g,
        relation: rel,
        lambda,
        psi,
        delta,
    }
}

/// The relation on the unordered hyperelliptic locus, aggregated by side
/// size: keys ("R", α) with j = 2α and ("NS", β) with j = 2β + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusForm {
    pub lambda: Q,
    pub terms: Vec<(&'static str, i64, Q)>,
}

impl LocusForm {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": render(&self.lambda),
            "terms": self.terms.iter().map(|(t, k, c)| json!({"type": t, "index": k, "coefficient": render(c)})).collect::<Vec<_>>(),
        })
    }
}

/// Both displayed normalizations: (8g+4)λ = g[Δ^R_1] + Σ 2α(g+1−α)[Δ^R_α] +
/// 4Σ β(g−β)[Δ^NS_β] and the same divided by 2.
pub fn locus_forms(g: i64) -> (LocusForm, LocusForm) {
    let mut terms = vec![("R", 1, qi(g))];
    for a in 2..=(g + 1) / 2 {
        terms.push(("R", a, qi(2 * a * (g + 1 - a))));
    }
    for b in 1..=g / 2 {
        terms.push(("NS", b, qi(4 * b * (g - b))));
    }
    let full = LocusForm {
        lambda: qi(8 * g + 4),
        terms,
    };
    let half = LocusForm {
        lambda: &full.lambda / qi(2),
        terms: full.terms.iter().map(|(t, k, c)| (*t, *k, c / qi(2))).collect(),
    };
    (full, half)
}

/// Descends the ordered-marking relation to the locus: halve every term and
/// halve once more the R term with two marked points on the rational side.
pub fn locus_from_marked(ch: &CornalbaHarris) -> Result<LocusForm> {
    let mut terms: Vec<(&'static str, i64, Q)> = Vec::new();
    for (_, ramond, j, c) in &ch.delta {
        let (t, k) = if *ramond { ("R", (*j / 2) as i64) } else { ("NS", ((*j - 1) / 2) as i64) };
        let mut c = c / qi(2);
        if *ramond && *j == 2 {
            c /= qi(2);
        }
        match terms.iter().find(|x| x.0 == t && x.1 == k) {
            Some(x) if x.2 != c => {
                return Err(Error::domain("p prime", format!("coefficients differ within {} {}", t, k)))
            }
            Some(_) => {}
            None => terms.push((t, k, c)),
        }
    }
    terms.retain(|x| !x.2.is_zero());
    terms.sort_by_key(|x| (x.0 != "R", x.1));
    Ok(LocusForm {
        lambda: &ch.lambda / qi(2),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper(g: usize) -> CyclicContext {
        CyclicContext::new(2, 0, vec![(2, 1); 2 * g + 2]).unwrap()
    }

    #[test]
    fn torsion_vanishes() {
        let ctx = CyclicContext::new(6, 0, vec![(3, 1), (6, 1), (2, 1), (6, 5), (3, 2), (2, 1)]).unwrap();
        for i in 0..ctx.points.len() {
            let e = ctx.points[i].0;
            let x = PicElement::sym(Sym::PsiIJ(i, e));
            assert!(pic_normalize(&x, &ctx).unwrap().is_zero());
            // n μ_i − m_i ν_i ψ_i
            let nu = ctx.points[i].1;
            let r = PicElement::sym(Sym::Mu(i))
                .scale(&qi(6))
                .plus(Sym::Psi(i), -qi((ctx.m(i) * nu) as i64));
            assert!(pic_normalize(&r, &ctx).unwrap().is_zero());
        }
    }

    #[test]
    fn hyperelliptic_mu() {
        let ctx = hyper(2);
        let x = pic_normalize(&PicElement::sym(Sym::Mu(3)), &ctx).unwrap();
        assert_eq!(x, PicElement::sym(Sym::Psi(3)).scale(&q(1, 2)));
    }

    #[test]
    fn idempotent() {
        let ctx = CyclicContext::new(3, 0, vec![(3, 1), (3, 1), (3, 2), (3, 2)]).unwrap();
        let x = PicElement::sym(Sym::TildeKappa1)
            .plus(Sym::Kappa(2), q(1, 3))
            .plus(Sym::PsiIJ(1, 2), qi(5))
            .plus(Sym::LambdaV(1), qi(1));
        let y = pic_normalize(&x, &ctx).unwrap();
        assert_eq!(pic_normalize(&y, &ctx).unwrap(), y);
        assert!(pic_normalize(&PicElement::sym(Sym::Psi(9)), &ctx).is_err());
        assert!(pic_normalize(&PicElement::sym(Sym::Delta("nope".into())), &ctx).is_err());
    }

    #[test]
    fn twisted_relations_agree() {
        let n = 5;
        let pts = vec![(5, 1), (5, 2), (5, 3), (5, 3), (5, 1)];
        let tw: Vec<(u64, u64)> = pts.iter().map(|&(e, v)| (e, e - v)).collect();
        let (c1, c2) = (
            CyclicContext::new(n, 0, pts).unwrap(),
            CyclicContext::new(n, 0, tw).unwrap(),
        );
        for j in 1..n {
            let a = pic_normalize(&lambda_relation(&c1, j).unwrap(), &c1).unwrap();
            let b = pic_normalize(&lambda_relation(&c2, n - j).unwrap(), &c2).unwrap();
            let mut sw = PicElement::zero();
            for (s, k) in b.terms() {
                let s = match s {
                    Sym::LambdaV(v) => Sym::LambdaV(n - v),
                    s => s.clone(),
                };
                sw.add_term(s, k.clone());
            }
            assert_eq!(a, sw, "j = {}", j);
        }
    }

    #[test]
    fn non_unit() {
        let ctx = CyclicContext::new(4, 0, vec![(4, 1), (4, 1), (2, 1)]).unwrap();
        assert!(lambda_relation(&ctx, 2).is_err());
        assert!(lambda_relation(&ctx, 3).is_ok());
    }

    #[test]
    fn summed_prime_relation() {
        for p in [2u64, 3, 5, 7] {
            let b = if p == 2 { 6 } else { 4 };
            let nu = default_datum(p, b).unwrap();
            let ctx = CyclicContext::new(p, 0, nu.iter().map(|&v| (p, v)).collect()).unwrap();
            let s = summed_relation(&ctx).unwrap();
            let pp = qi(p as i64);
            let c = q((p * p - 1) as i64, 6);
            assert_eq!(s.coeff(&Sym::Lambda), qi(2) * &pp * &pp);
            for i in 0..b {
                assert_eq!(s.coeff(&Sym::Psi(i)), -(&pp * &c));
            }
            for comp in &ctx.boundary {
                let k = s.coeff(&Sym::Delta(comp.label.clone()));
                match comp.node {
                    NodeType::Ramond => assert!(k.is_zero()),
                    _ => assert_eq!(k, &pp * &pp * &c),
                }
            }
        }
    }

    #[test]
    fn hyperelliptic_cornalba_harris() {
        for g in 2..=5i64 {
            let ch = cornalba_harris(2, g, None).unwrap();
            assert_eq!(ch.lambda, qi(8 * (2 * g + 1)));
            assert!(ch.psi.is_zero());
            for (_, ramond, j, c) in &ch.delta {
                let j = *j as i64;
                if *ramond {
                    let a = j / 2;
                    assert_eq!(*c, qi(4 * a * (g + 1 - a)));
                } else {
                    let b = (j - 1) / 2;
                    assert_eq!(*c, qi(8 * b * (g - b)));
                }
            }
            let (full, half) = locus_forms(g);
            assert_eq!(locus_from_marked(&ch).unwrap(), full);
            assert_eq!(half.lambda, qi(4 * g + 2));
        }
    }
}
