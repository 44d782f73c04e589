//! Mixed volumes of a unit cube and a box, and the exact volume polynomial.

use lorentzkit::bodies::{minkowski_sum, mixed_volumes, BodyFamily, Polytope};
use lorentzkit::poly::Direction;
use lorentzkit::rational::{fmt_rational, int};

fn main() -> lorentzkit::error::Result<()> {
    let cube = Polytope::boxed(&[int(1), int(1), int(1)])?;
    let slab = Polytope::boxed(&[int(2), int(1), int(3)])?;
    let f = mixed_volumes(&BodyFamily::new(vec![cube.clone(), slab.clone()])?)?;
    println!("vol(t1 K + t2 L) = {f}");
    for (e, c) in f.terms() {
        println!("  coefficient of t^{e:?}: {}", fmt_rational(c));
    }
    let at = Direction::from_ints(&[1, 1]);
    let direct = minkowski_sum(&cube, &slab)?.volume();
    println!("f(1, 1) = {}, vol(K + L) = {}", fmt_rational(&f.evaluate(&at)?), fmt_rational(&direct));
    Ok(())
}
