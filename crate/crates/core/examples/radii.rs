//! Inradius and outradius of one class relative to another in the nef order.

use lorentzkit::bodies::{mixed_volumes, BodyFamily, Polytope};
use lorentzkit::cone::ConeModel;
use lorentzkit::deficits::radii;
use lorentzkit::poly::Direction;
use lorentzkit::rational::fmt_rational;

fn main() -> lorentzkit::error::Result<()> {
    let square = Polytope::from_ints(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])?;
    let tri = Polytope::from_ints(&[&[0, 0], &[2, 0], &[0, 2]])?;
    let f = mixed_volumes(&BodyFamily::new(vec![square, tri])?)?;
    let nef = ConeModel::positive_orthant(2);
    let (alpha, beta) = (Direction::from_ints(&[1, 0]), Direction::from_ints(&[0, 1]));
    for (a, b) in [(&alpha, &beta), (&beta, &alpha)] {
        let r = radii(&f, a, b, &nef)?;
        let r_out = r.r_out.as_ref().map_or("inf".to_string(), fmt_rational);
        println!("{a} vs {b}: r = {} (tuple {:?}), R = {r_out} (tuple {:?})", fmt_rational(&r.r_in), r.argmin_tuple, r.argmax_tuple);
        println!("  order verified: {}", r.verify_order(&f, a, b, &nef, &[])?);
    }
    Ok(())
}
