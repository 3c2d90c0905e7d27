//! Conjugacy classes and character table of S4.

use hurwitz_core::group::FiniteGroup;

fn main() -> hurwitz_core::Result<()> {
    let g = FiniteGroup::parse("S4")?;
    println!("{} has order {}", g.label(), g.order());
    for c in g.classes() {
        println!("  class of {} ({} elements)", g.element_string(c.representative), c.members.len());
    }
    let t = g.character_table();
    for (d, row) in t.degrees.iter().zip(&t.rows) {
        let vals: Vec<String> = row.values.iter().map(|x| x.to_string()).collect();
        println!("  deg {}: [{}]", d, vals.join(", "));
    }
    Ok(())
}
