//! Riemann–Hurwitz for a datum and the data of Z/3 with six branch points.

use hurwitz_core::group::FiniteGroup;
use hurwitz_core::hurwitz::{enumerate_data, enumerate_labeled, genus_from_datum, HurwitzDatum};

fn main() -> hurwitz_core::Result<()> {
    let s3 = FiniteGroup::parse("S3")?;
    let t = s3.parse_element("(1 2)")?;
    let xi = HurwitzDatum::from_elements(&s3, &[t; 6]);
    let r = genus_from_datum(&s3, 0, &xi)?;
    println!("{}: genus {}, dim {}", xi.describe(&s3), r.genus, r.dimension);

    let z3 = FiniteGroup::cyclic(3)?;
    println!("Z/3, b = 6: {} unlabelled data", enumerate_data(&z3, 6, false)?.len());
    println!("Z/3, b = 6: {} labelled data up to Aut", enumerate_labeled(&z3, 6, true)?.len());
    Ok(())
}
