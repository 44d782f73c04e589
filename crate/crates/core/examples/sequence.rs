//! The mixed-value sequence s_k = alpha^k beta^(d-k) of a volume polynomial,
//! its log-concavity, and the equality conditions for a flat sequence.

use lorentzkit::bodies::{mixed_volumes, BodyFamily, Polytope};
use lorentzkit::deficits::flatness_conditions;
use lorentzkit::poly::Direction;
use lorentzkit::rational::{fmt_rational, int};

fn main() -> lorentzkit::error::Result<()> {
    let cube = Polytope::boxed(&[int(1), int(1), int(1)])?;
    let slab = Polytope::boxed(&[int(1), int(2), int(4)])?;
    let f = mixed_volumes(&BodyFamily::new(vec![cube, slab])?)?;
    for (a, b) in [([1, 0], [0, 1]), ([1, 0], [3, 0])] {
        let (alpha, beta) = (Direction::from_ints(&a), Direction::from_ints(&b));
        let s = f.sequence_sk(&alpha, &beta)?;
        let values: Vec<String> = s.values.iter().map(fmt_rational).collect();
        println!("alpha = {alpha}, beta = {beta}: s = [{}]", values.join(", "));
        println!("  log-concave: {}", s.is_log_concave());
        println!("  equality conditions: {:?}", flatness_conditions(&f, &alpha, &beta)?);
    }
    Ok(())
}
