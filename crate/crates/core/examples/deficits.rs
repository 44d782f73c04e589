//! Deficits, radii and the proportionality panel for a square and a rectangle.

use lorentzkit::bodies::{mixed_volumes, BodyFamily, Polytope};
use lorentzkit::cone::ConeModel;
use lorentzkit::deficits::{deficit_report, Instance};
use lorentzkit::poly::Direction;
use lorentzkit::rational::fmt_rational;

fn main() -> lorentzkit::error::Result<()> {
    let square = Polytope::from_ints(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])?;
    let rect = Polytope::from_ints(&[&[0, 0], &[4, 0], &[4, 1], &[0, 1]])?;
    let inst = Instance {
        name: "square-rectangle".into(),
        f: mixed_volumes(&BodyFamily::new(vec![square, rect])?)?,
        alpha: Direction::from_ints(&[1, 0]),
        beta: Direction::from_ints(&[0, 1]),
        omega: Direction::from_ints(&[1, 1]),
        nef: ConeModel::positive_orthant(2),
        psef: None,
    };
    let r = deficit_report(&inst, 128)?;
    println!("A^2 = {}", fmt_rational(&r.a_squared));
    println!("B = {}", r.b);
    println!("K = {}", r.k);
    println!("sigma = {}", r.sigma);
    let r_out = r.radii.r_out.as_ref().map_or("inf".to_string(), fmt_rational);
    println!("r = {}, R = {r_out}", fmt_rational(&r.radii.r_in));
    println!("panel conditions: {:?}", r.panel.conditions());
    Ok(())
}
