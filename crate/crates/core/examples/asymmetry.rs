//! The asymmetry index of two classes and the radii chain restricted to the
//! hyperplane section cut out by omega.

use lorentzkit::bodies::{mixed_volumes, BodyFamily, Polytope};
use lorentzkit::cone::ConeModel;
use lorentzkit::deficits::asymmetry::fmp_radii_chain;
use lorentzkit::poly::Direction;
use lorentzkit::rational::{fmt_rational, to_f64};

fn main() -> lorentzkit::error::Result<()> {
    let cube = Polytope::from_ints(&[
        &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
    ])?;
    let simplex = Polytope::from_ints(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])?;
    let f = mixed_volumes(&BodyFamily::new(vec![cube, simplex])?)?;
    let nef = ConeModel::positive_orthant(2);
    let (alpha, beta, omega) = (Direction::from_ints(&[1, 0]), Direction::from_ints(&[0, 1]), Direction::from_ints(&[1, 1]));
    let chain = fmp_radii_chain(&f, &alpha, &beta, &omega, &nef, 128)?;
    println!("F = {} (gap {:.3e})", chain.asymmetry.f, to_f64(&chain.asymmetry.gap));
    println!("best gamma ~ {:?}", chain.asymmetry.gamma.to_f64());
    let r_out = chain.r_out_gamma.as_ref().map_or("inf".to_string(), fmt_rational);
    println!("r on the section = {}, R on the section = {r_out}", fmt_rational(&chain.r_gamma));
    Ok(())
}
