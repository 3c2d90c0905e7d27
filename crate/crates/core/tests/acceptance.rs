//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! KNOWN_FAILURES must still fail; every other one must pass.

use std::io::Write;
use std::time::Instant;

use hurwitz_core::arith::Q;
use hurwitz_core::cw::{cw_multiplicities, euler_characteristic, invert_cw, DatumOracle};
use hurwitz_core::graphs::{
    antipodal_hexagon, comb, comb_genus, decomposition_inertia, level_group, level_loop,
    level_structure_check, level_two_edge, loop_graph, quotient_and_genus, segment,
};
use hurwitz_core::group::FiniteGroup;
use hurwitz_core::hurwitz::{
    closure_count, closure_count_brute, cyclic_generator, enumerate_labeled, genus_from_datum,
    induced_ramification, HurwitzDatum,
};
use hurwitz_core::nielsen::{nielsen_number, NielsenConfig};
use hurwitz_core::taut::{
    cornalba_harris, default_datum, hodge_recursion, hyperelliptic_integral,
    hyperelliptic_integral_pipeline, mu_top, psi_integral, psi_integral_string, summed_relation,
    tau_recursive, CyclicContext, Normalization, Sym,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const KNOWN_FAILURES: &[&str] = &["7b"];

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn fact(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    fact(n) / (fact(k) * fact(n - k))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random generating tuple for Z/n over P¹ with 2 ≤ b ≤ 6 points, as
/// exponents of σ.
fn cyclic_tuple(rng: &mut StdRng, n: u64) -> Vec<u64> {
    loop {
        let b = rng.gen_range(2..=6);
        let mut t: Vec<u64> = (0..b - 1).map(|_| rng.gen_range(1..n)).collect();
        let last = (n - t.iter().sum::<u64>() % n) % n;
        if last == 0 {
            continue;
        }
        t.push(last);
        if t.iter().fold(n, |a, &x| gcd(a, x)) == 1 {
            return t;
        }
    }
}

fn cyclic_datum(g: &FiniteGroup, exps: &[u64]) -> HurwitzDatum {
    let sigma = cyclic_generator(g).unwrap();
    let elems: Vec<usize> = exps.iter().map(|&k| g.pow(sigma, k as i64)).collect();
    HurwitzDatum::from_elements(g, &elems)
}

fn c1() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(1);
    let cfg = NielsenConfig::default();
    let start = Instant::now();
    for n in 2..=12u64 {
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        for _ in 0..50 {
            let t = cyclic_tuple(&mut rng, n);
            let r = nielsen_number(&g, 0, &cyclic_datum(&g, &t), &cfg).map_err(|e| e.to_string())?;
            if r.nielsen_number != 1 {
                return Err(format!("n = {}, {:?}: {} orbits", n, t, r.nielsen_number));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 30.0 {
        return Err(format!("took {:.1} s", secs));
    }
    Ok(())
}

fn c2() -> Result<(), String> {
    let g = FiniteGroup::cyclic(3).unwrap();
    for genus in 1..=7u64 {
        let b = genus + 2;
        let got = enumerate_labeled(&g, b as usize, true).map_err(|e| e.to_string())?.len();
        let sum: BigInt = (0..=b)
            .filter(|&l| (2 * l) % 3 == (genus + 2) % 3)
            .map(|l| choose(b, l))
            .sum();
        let want = sum / 2;
        if BigInt::from(got) != want {
            return Err(format!("g = {}: {} vs {}", genus, got, want));
        }
    }
    Ok(())
}

fn c3() -> Result<(), String> {
    let g = FiniteGroup::symmetric(3).unwrap();
    let t = g.parse_element("(1 2)").unwrap();
    for b in [4usize, 6] {
        let xi = HurwitzDatum::from_elements(&g, &vec![t; b]);
        let r = nielsen_number(&g, 0, &xi, &NielsenConfig::default()).map_err(|e| e.to_string())?;
        if r.nielsen_number != 1 {
            return Err(format!("b = {}: {} orbits", b, r.nielsen_number));
        }
    }
    Ok(())
}

/// Random ξ read off a tuple satisfying the surface relation and generating G.
fn random_datum(rng: &mut StdRng, g: &FiniteGroup, base_genus: usize) -> Option<HurwitzDatum> {
    let n = g.order();
    for _ in 0..200 {
        let b = rng.gen_range(1..=4);
        let mut acc = 0;
        let mut all = Vec::new();
        for _ in 0..base_genus {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            acc = g.mul(acc, g.commutator(x, y));
            all.extend([x, y]);
        }
        let mut sigma = Vec::new();
        for _ in 0..b - 1 {
            let s = rng.gen_range(1..n);
            acc = g.mul(acc, s);
            sigma.push(s);
        }
        let last = g.inv(acc);
        if last == 0 {
            continue;
        }
        sigma.push(last);
        all.extend(&sigma);
        if !g.generates(&all) {
            continue;
        }
        let xi = HurwitzDatum::from_elements(g, &sigma);
        match genus_from_datum(g, base_genus as i64, &xi) {
            Ok(r) if r.genus >= 2 => return Some(xi),
            _ => continue,
        }
    }
    None
}

fn c4() -> Result<(), String> {
    let specs = [
        "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C10", "C12", "Ab[2,2]", "Ab[2,4]", "Ab[3,3]",
        "S3", "D4", "D5", "D6", "A4", "S4", "A5", "Ab[2,2,2]",
    ];
    let groups: Vec<FiniteGroup> = specs.iter().map(|s| FiniteGroup::parse(s).unwrap()).collect();
    let mut rng = StdRng::seed_from_u64(4);
    let mut done = 0;
    while done < 100 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let base = rng.gen_range(0..=2);
        let Some(xi) = random_datum(&mut rng, g, base) else { continue };
        let genus = genus_from_datum(g, base as i64, &xi).unwrap().genus;
        let v = cw_multiplicities(g, base as i64, &xi, 1).map_err(|e| e.to_string())?;
        let t = g.character_table();
        let total: i64 = v.values.iter().zip(&t.degrees).map(|(&m, &d)| m * d as i64).sum();
        if total != genus {
            return Err(format!("{} over genus {}: {} vs {}", g.label(), base, total, genus));
        }
        done += 1;
    }
    Ok(())
}

fn c5() -> Result<(), String> {
    for (spec, rs) in [("S3", [4u64, 6, 8, 10]), ("S4", [4, 6, 8, 10])] {
        let g = FiniteGroup::parse(spec).unwrap();
        let t = g.parse_element("(1 2)").unwrap();
        let tc = g.class_of(t);
        let table = g.character_table();
        for r in rs {
            let xi = HurwitzDatum::from_elements(&g, &vec![t; r as usize]);
            for row in 0..table.rows.len() {
                let got = euler_characteristic(&g, 0, &xi, 1, row).map_err(|e| e.to_string())?;
                let at_one = qi(table.degrees[row] as i64);
                let at_t = table.rows[row].values[tc].to_rational().ok_or("irrational value")?;
                let r4 = Q::new(BigInt::from(r), BigInt::from(4));
                let want = (&r4 - qi(1)) * at_one - r4 * at_t;
                if qi(got) != want {
                    return Err(format!("{} r = {} row {}: {} vs {}", spec, r, row, got, want));
                }
            }
        }
    }
    Ok(())
}

fn c6() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(6);
    let start = Instant::now();
    let groups: Vec<FiniteGroup> = (2..=20).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
    // every cyclic group once, then random ones
    let mut done = 0;
    let mut k = 0;
    while done < 200 {
        let g = if k < groups.len() { &groups[k] } else { &groups[rng.gen_range(0..groups.len())] };
        k += 1;
        let base = rng.gen_range(0..=1);
        let Some(xi) = random_datum(&mut rng, g, base) else { continue };
        let mut oracle = DatumOracle::new(g, base as i64, xi.clone());
        let inv = invert_cw(g, &mut oracle).map_err(|e| e.to_string())?;
        if inv.base_genus != base as i64 || inv.datum != xi.truncated() {
            return Err(format!("{}: {} not recovered", g.label(), xi.describe(g)));
        }
        done += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 60.0 {
        return Err(format!("took {:.1} s", secs));
    }
    Ok(())
}

fn c7a() -> Result<(), String> {
    let mut failures = Vec::new();
    let mut check = |name: &str, r: hurwitz_core::Result<bool>| match r {
        Ok(true) => {}
        Ok(false) => failures.push(format!("{} not exact", name)),
        Err(e) => failures.push(format!("{}: {}", name, e)),
    };
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t = s3.parse_element("(1 2)").unwrap();
    let u = s3.parse_element("(2 3)").unwrap();
    let z5 = FiniteGroup::cyclic(5).unwrap();
    let sigma = cyclic_generator(&z5).unwrap();
    check("comb Z/2", comb(&z2, &[1, 1, 1]).and_then(|gg| Ok(decomposition_inertia(&gg)?.exact())));
    check("comb S3", comb(&s3, &[t, u, t]).and_then(|gg| Ok(decomposition_inertia(&gg)?.exact())));
    check(
        "segment S3",
        segment(&s3, &[t], &[u], 0, (0, 0), &[t, t], &[u, u])
            .and_then(|gg| Ok(decomposition_inertia(&gg)?.exact())),
    );
    check(
        "loop Z/5",
        loop_graph(&z5, &[], 0, sigma, 1, &[]).and_then(|gg| Ok(decomposition_inertia(&gg)?.exact())),
    );
    check("hexagon Z/2", antipodal_hexagon(&z2).and_then(|gg| Ok(decomposition_inertia(&gg)?.exact())));
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn c7b() -> Result<(), String> {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t = s3.parse_element("(1 2)").unwrap();
    let u = s3.parse_element("(2 3)").unwrap();
    for (g, hs) in [(&z2, vec![1, 1, 1]), (&s3, vec![t, u, t])] {
        let gg = comb(g, &hs).map_err(|e| e.to_string())?;
        let q = quotient_and_genus(&gg).map_err(|e| e.to_string())?;
        let closed = comb_genus(g, &hs);
        if q.upstairs_genus != closed || q.smoothing_genus != closed {
            return Err(format!(
                "{}: graph genus {}, smoothing {}, closed form {}",
                g.label(),
                q.upstairs_genus,
                q.smoothing_genus,
                closed
            ));
        }
    }
    Ok(())
}

fn c8() -> Result<(), String> {
    for n in [2usize, 3, 4] {
        let g = level_group(n, 2).map_err(|e| e.to_string())?;
        let gg = level_loop(&g, 2).map_err(|e| e.to_string())?;
        let r = level_structure_check(&gg, n as u64).map_err(|e| e.to_string())?;
        if !r.passed() || r.h != 1 {
            return Err(format!("loop n = {}: {:?}", n, r.items));
        }
        let g = level_group(n, 3).map_err(|e| e.to_string())?;
        let gg = level_two_edge(&g, 1, 1).map_err(|e| e.to_string())?;
        let r = level_structure_check(&gg, n as u64).map_err(|e| e.to_string())?;
        if !r.passed() || r.h != 1 {
            return Err(format!("two edges n = {}: {:?}", n, r.items));
        }
    }
    Ok(())
}

fn compositions(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn go(cur: &mut Vec<u32>, left: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
        if cur.len() + 1 == parts {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(cur, left - x, parts, f);
            cur.pop();
        }
    }
    go(&mut Vec::new(), total, parts, f);
}

fn c9() -> Result<(), String> {
    let start = Instant::now();
    for n in 3..=12u32 {
        for a in 0..=n - 3 {
            let want = Q::from_integer(choose(n as u64 - 2, a as u64 + 1));
            if tau_recursive(a, n) != want {
                return Err(format!("τ_({},{})", a, n));
            }
        }
    }
    let mut bad = None;
    for n in 3..=10u32 {
        compositions(n - 3, n as usize, &mut |alpha| {
            if bad.is_none() && psi_integral(alpha) != psi_integral_string(alpha) {
                bad = Some(alpha.to_vec());
            }
        });
    }
    if let Some(a) = bad {
        return Err(format!("ψ closed form vs string equation at {:?}", a));
    }
    for g in 1..=5i64 {
        for a in 0..=2 * g - 1 {
            let x = hyperelliptic_integral(g, a).map_err(|e| e.to_string())?;
            let y = hyperelliptic_integral_pipeline(g, a).map_err(|e| e.to_string())?;
            if x != y {
                return Err(format!("paths differ at g = {}, a = {}", g, a));
            }
        }
        let want = Q::new(BigInt::one(), BigInt::from(4).pow(g as u32) * fact(2 * g as u64 + 1));
        if mu_top(g).map_err(|e| e.to_string())? != want {
            return Err(format!("∫μ^(2g−1) at g = {}", g));
        }
    }
    if hyperelliptic_integral(1, 0).map_err(|e| e.to_string())? != Q::new(1.into(), 24.into()) {
        return Err("g = 1, a = 0".into());
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 30.0 {
        return Err(format!("took {:.1} s", secs));
    }
    Ok(())
}

fn c10() -> Result<(), String> {
    for g in 2..=6i64 {
        let ch = cornalba_harris(2, g, None).map_err(|e| e.to_string())?;
        if ch.lambda != qi(8 * (2 * g + 1)) || !ch.psi.is_zero() {
            return Err(format!("λ or ψ coefficient at g = {}", g));
        }
        for (label, ramond, j, c) in &ch.delta {
            let j = *j as i64;
            let want = if *ramond {
                let a = j / 2;
                4 * a * (g + 1 - a)
            } else {
                let b = (j - 1) / 2;
                8 * b * (g - b)
            };
            if *c != qi(want) {
                return Err(format!("g = {}: {} has {} not {}", g, label, c, want));
            }
        }
    }
    for p in [2u64, 3, 5] {
        let b = if p == 2 { 6 } else { 4 };
        let nu = default_datum(p, b).map_err(|e| e.to_string())?;
        let ctx = CyclicContext::new(p, 0, nu.iter().map(|&v| (p, v)).collect())
            .map_err(|e| e.to_string())?;
        let s = summed_relation(&ctx).map_err(|e| e.to_string())?;
        let pp = qi(p as i64);
        let c = Q::new(BigInt::from(p * p - 1), BigInt::from(6));
        if s.coeff(&Sym::Lambda) != qi(2) * &pp * &pp {
            return Err(format!("λ at p = {}", p));
        }
        for i in 0..b {
            if s.coeff(&Sym::Psi(i)) != -(&pp * &c) {
                return Err(format!("ψ_{} at p = {}", i + 1, p));
            }
        }
        for comp in &ctx.boundary {
            let k = s.coeff(&Sym::Delta(comp.label.clone()));
            let want = if comp.node.order() == 1 { Q::zero() } else { &pp * &pp * &c };
            if k != want {
                return Err(format!("{} at p = {}: {}", comp.label, p, k));
            }
        }
    }
    Ok(())
}

fn c11() -> Result<(), String> {
    let instances: Vec<Vec<Vec<u64>>> = vec![
        vec![vec![4]],
        vec![vec![2, 2]],
        vec![vec![2, 3]],
        vec![vec![2, 4]],
        vec![vec![4, 6]],
        vec![vec![2, 2, 2]],
        vec![vec![3, 3]],
        vec![vec![6, 4, 2]],
        vec![vec![2, 3], vec![4, 6]],
        vec![vec![5, 5]],
        vec![vec![2, 2], vec![3, 3]],
        vec![vec![6, 9]],
        vec![vec![1, 4]],
        vec![vec![4, 4, 2]],
        vec![vec![3, 3, 3]],
        vec![vec![2, 6], vec![2]],
        vec![vec![8, 12]],
        vec![vec![5, 10]],
        vec![vec![2, 2, 2, 2]],
        vec![vec![3, 6], vec![4, 4]],
    ];
    for local in &instances {
        let a = closure_count(local).map_err(|e| e.to_string())?;
        let b = closure_count_brute(local);
        if a != BigInt::from(b) {
            return Err(format!("{:?}: {} vs {}", local, a, b));
        }
    }
    let g = FiniteGroup::symmetric(3).unwrap();
    let t = g.parse_element("(1 2)").unwrap();
    let h = g.subgroup_closure(&[t]);
    let xi = HurwitzDatum::from_elements(&g, &[t; 4]);
    let r = induced_ramification(&g, &h, 0, &xi).map_err(|e| e.to_string())?;
    if r.genus != 0 {
        return Err(format!("induced genus {}", r.genus));
    }
    Ok(())
}

fn c12() -> Result<(), String> {
    let start = Instant::now();
    let norm = Normalization::default();
    let base = [
        (3u64, 1i64, vec![1u64, 1, 1], Q::new(1.into(), 18.into())),
        (5, 2, vec![1, 2, 2], Q::new(1.into(), 10.into())),
        (5, 2, vec![1, 1, 3], Q::new(1.into(), 10.into())),
        (7, 3, vec![1, 2, 4], Q::new(1.into(), 7.into())),
        (5, 2, vec![1, 3, 1], Q::new(1.into(), 10.into())),
        (11, 5, vec![1, 2, 8], Q::new(1.into(), 11.into())),
    ];
    for (p, g, xi, want) in &base {
        let got = hodge_recursion(*p, *g, xi, norm).map_err(|e| e.to_string())?;
        if &got != want {
            return Err(format!("B_{{{},{:?}}} for p = {}: {}", g, xi, p, got));
        }
    }
    for xi in [vec![1u64, 1, 2, 2], vec![1, 2, 1, 2]] {
        let a = hodge_recursion(3, 2, &xi, norm).map_err(|e| e.to_string())?;
        let again = hodge_recursion(3, 2, &xi, norm).map_err(|e| e.to_string())?;
        let twisted: Vec<u64> = xi.iter().map(|&v| 2 * v % 3).collect();
        let b = hodge_recursion(3, 2, &twisted, norm).map_err(|e| e.to_string())?;
        if a != again || a != b {
            return Err(format!("B_{{2,{:?}}}: {} vs twisted {}", xi, a, b));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 5.0 {
        return Err(format!("took {:.1} s", secs));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("1", c1),
        ("2", c2),
        ("3", c3),
        ("4", c4),
        ("5", c5),
        ("6", c6),
        ("7a", c7a),
        ("7b", c7b),
        ("8", c8),
        ("9", c9),
        ("10", c10),
        ("11", c11),
        ("12", c12),
    ];
    let mut unexpected = Vec::new();
    for (id, f) in criteria {
        let r = f();
        // straight to stderr so the lines survive the harness's output capture
        let line = match &r {
            Ok(()) => format!("criterion {}: PASS\n", id),
            Err(e) => format!("criterion {}: FAIL ({})\n", id, e),
        };
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        let known = KNOWN_FAILURES.contains(&id);
        if r.is_ok() == known {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcome for criteria {:?}", unexpected);
}
