//! Tautological relations on hyperelliptic loci and a few Hodge integrals.

use hurwitz_core::arith::render;
use hurwitz_core::taut::{
    classify, cornalba_harris, hodge_recursion, hyperelliptic_integral, lambda_relation,
    locus_forms, pic_normalize, tau, viete, CyclicContext, Normalization,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> hurwitz_core::Result<()> {
    let ctx = CyclicContext::new(3, 0, vec![(3, 1), (3, 1), (3, 1), (3, 2), (3, 2), (3, 2)])?;
    let rel = pic_normalize(&lambda_relation(&ctx, 1)?, &ctx)?;
    println!("Z/3, j = 1: {} = 0", rel);

    let ch = cornalba_harris(2, 3, None)?;
    println!("g = 3: λ coefficient {}", render(&ch.lambda));
    let (_, half) = locus_forms(3);
    println!("{}", half.to_json());

    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let f = viete(&[(one.clone(), one.clone()), (one.clone(), one.clone()), (one, two)])?;
    println!("type of a form with a double root: {:?}", classify(&f).parts);

    println!("τ_(1,6) = {}", render(&tau(1, 6)));
    println!("g = 2, a = 1: {}", render(&hyperelliptic_integral(2, 1)?));
    let b = hodge_recursion(3, 2, &[1, 1, 2, 2], Normalization::OrderedPairs)?;
    println!("B_(2,(1,1,2,2)) = {}", render(&b));
    Ok(())
}
