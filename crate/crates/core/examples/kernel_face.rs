//! Classifies the face of the nef cone killed by a collection of classes.

use lorentzkit::cone::ConeModel;
use lorentzkit::numdim::{kernel_face, NefCollection};
use lorentzkit::poly::{Direction, VolumePolynomial};

fn main() -> lorentzkit::error::Result<()> {
    let f = VolumePolynomial::from_int_terms(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)])?;
    let cone = ConeModel::positive_orthant(3);
    let omega = Direction::from_ints(&[1, 1, 1]);
    for class in [Direction::unit(3, 0), Direction::unit(3, 1)] {
        let label = class.to_string();
        let report = kernel_face(&f, &NefCollection::new(vec![class], omega.clone())?, &cone)?;
        println!("{label}: nd = {}, {:?}", report.nd_collection, report.classification);
        for z in &report.zero_generators {
            println!("  generator {} = {} ({:?}) preserves nd: {:?}", z.index, z.generator, z.tag, z.preserves_nd);
        }
    }
    Ok(())
}
