//! Quotients, exactness and level structures on G-graphs.

use hurwitz_core::graphs::{
    antipodal_hexagon, comb, comb_genus, decomposition_inertia, level_group, level_loop,
    level_structure_check, quotient_and_genus,
};
use hurwitz_core::group::FiniteGroup;

fn main() -> hurwitz_core::Result<()> {
    let s3 = FiniteGroup::parse("S3")?;
    let hs = [s3.parse_element("(1 2)")?, s3.parse_element("(2 3)")?, s3.parse_element("(1 3)")?];
    let gg = comb(&s3, &hs)?;
    let q = quotient_and_genus(&gg)?;
    println!(
        "S3 comb: genus {} from the graph, {} by Riemann–Hurwitz, {} by the closed form",
        q.upstairs_genus,
        q.smoothing_genus,
        comb_genus(&s3, &hs)
    );
    println!("exact: {}", decomposition_inertia(&gg)?.exact());

    let z2 = FiniteGroup::cyclic(2)?;
    let hex = decomposition_inertia(&antipodal_hexagon(&z2)?)?;
    println!("hexagon: image invariants {:?}, exact {}", hex.image_invariants, hex.exact());

    let g = level_group(3, 2)?;
    let r = level_structure_check(&level_loop(&g, 2)?, 3)?;
    for (check, ok) in &r.items {
        println!("  {} {}", if *ok { "ok " } else { "BAD" }, check);
    }
    Ok(())
}
