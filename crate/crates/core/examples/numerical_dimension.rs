//! Numerical dimensions of nef classes for f = x*y + x*z, and the
//! Hall-Rado style criterion for a product of classes to be nonzero.

use lorentzkit::cone::{ConeModel, DEFAULT_SAMPLES};
use lorentzkit::numdim::{hall_rado, maximal_index_set, nd_collection, nd_omega, NefCollection};
use lorentzkit::poly::{Direction, VolumePolynomial};

fn main() -> lorentzkit::error::Result<()> {
    let f = VolumePolynomial::from_int_terms(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)])?;
    let omega = Direction::from_ints(&[1, 1, 1]);
    for i in 0..3 {
        let e = Direction::unit(3, i);
        println!("nd(e{}) = {}", i + 1, nd_omega(&f, &e, &omega)?);
    }
    let samples = ConeModel::positive_orthant(3).sample_plan(DEFAULT_SAMPLES).points;
    for classes in [vec![Direction::unit(3, 0), Direction::unit(3, 1)], vec![Direction::unit(3, 1), Direction::unit(3, 2)]] {
        let names: Vec<String> = classes.iter().map(ToString::to_string).collect();
        let coll = NefCollection::new(classes, omega.clone())?;
        let nd = nd_collection(&f, &coll)?;
        let hr = hall_rado(&f, &coll, &samples)?;
        println!("collection {names:?}: nd = {nd}, product nonzero = {}, criterion = {}, agree = {}", hr.product_nonzero, hr.nd_criterion, hr.agree);
        match hr.violating_set {
            Some(set) => println!("  violating index set {set:?}"),
            None => println!("  maximal index set {:?}", maximal_index_set(&f, &coll)?),
        }
    }
    Ok(())
}
