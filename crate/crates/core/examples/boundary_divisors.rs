//! Boundary divisors of the space of Z/3 covers with six branch points.

use hurwitz_core::graphs::{boundary_components, discriminant_ramification, Shape};

fn main() -> hurwitz_core::Result<()> {
    let pts = [(3, 1), (3, 1), (3, 1), (3, 2), (3, 2), (3, 2)];
    let list = boundary_components(3, 0, &pts, Shape::Segment)?;
    for c in &list {
        println!("{}  {:?}", c.label, c.node);
    }
    for (label, k) in discriminant_ramification(&list) {
        println!("ramification {} along {}", k, label);
    }
    Ok(())
}
