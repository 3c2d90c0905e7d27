//! Braid orbits for simple covers and for a cyclic datum.

use hurwitz_core::group::FiniteGroup;
use hurwitz_core::hurwitz::{cyclic_generator, HurwitzDatum};
use hurwitz_core::nielsen::{nielsen_number, NielsenConfig};

fn main() -> hurwitz_core::Result<()> {
    let cfg = NielsenConfig::default();
    let s3 = FiniteGroup::parse("S3")?;
    let t = s3.parse_element("(1 2)")?;
    for b in [4, 6] {
        let r = nielsen_number(&s3, 0, &HurwitzDatum::from_elements(&s3, &vec![t; b]), &cfg)?;
        println!("S3, {} transpositions: h = {}, N = {}", b, r.nielsen_number, r.hurwitz_number);
    }

    let z = FiniteGroup::cyclic(12)?;
    let s = cyclic_generator(&z).unwrap();
    let elems: Vec<usize> = [1, 5, 7, 11].iter().map(|&k| z.pow(s, k)).collect();
    let r = nielsen_number(&z, 0, &HurwitzDatum::from_elements(&z, &elems), &cfg)?;
    println!("Z/12, (1,5,7,11): h = {}, orbit sizes {:?}", r.nielsen_number, r.orbit_sizes);
    Ok(())
}
