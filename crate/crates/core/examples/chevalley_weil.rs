//! Decomposition of H⁰(C, ω^⊗m) for an S4 cover and recovery of a cyclic datum.

use hurwitz_core::cw::{cw_multiplicities, invert_cw, DatumOracle};
use hurwitz_core::group::FiniteGroup;
use hurwitz_core::hurwitz::{cyclic_generator, HurwitzDatum};

fn main() -> hurwitz_core::Result<()> {
    let s4 = FiniteGroup::parse("S4")?;
    let t = s4.parse_element("(1 2)")?;
    let xi = HurwitzDatum::from_elements(&s4, &[t; 8]);
    for m in 1..=3 {
        let v = cw_multiplicities(&s4, 0, &xi, m)?;
        println!("m = {}: {:?} (dim {})", m, v.values, v.dimension(&s4));
    }

    let z = FiniteGroup::cyclic(10)?;
    let s = cyclic_generator(&z).unwrap();
    let elems: Vec<usize> = [1, 2, 5, 2].iter().map(|&k| z.pow(s, k)).collect();
    let xi = HurwitzDatum::from_elements(&z, &elems);
    let mut oracle = DatumOracle::new(&z, 0, xi.clone());
    let inv = invert_cw(&z, &mut oracle)?;
    println!(
        "recovered {} from {} queries; matches: {}",
        inv.datum.describe(&z),
        inv.queries.len(),
        inv.datum == xi.truncated()
    );
    Ok(())
}
