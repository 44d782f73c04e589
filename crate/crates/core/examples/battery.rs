//! Runs the full inequality battery on a Chow ring instance and prints each
//! verdict with its slack.

use lorentzkit::deficits::{inequality_battery, Instance};
use lorentzkit::interval::Decision;
use lorentzkit::matroid::{bergman_volume_polynomial, chow_ring, DivisorSpec, Matroid};
use lorentzkit::poly::Direction;

fn main() -> lorentzkit::error::Result<()> {
    let ring = chow_ring(&Matroid::uniform(3, 4)?)?;
    let (f, nef) = bergman_volume_polynomial(&ring, &[DivisorSpec::Alpha, DivisorSpec::Beta])?;
    let inst = Instance {
        name: "u34".into(),
        f,
        alpha: Direction::from_ints(&[1, 0]),
        beta: Direction::from_ints(&[0, 1]),
        omega: Direction::from_ints(&[1, 1]),
        nef,
        // without a psef model the surface radii fall back to the nef order
        psef: None,
    };
    let items = inequality_battery(&inst, 128)?;
    for item in &items {
        let slack = item.slack.as_ref().map_or("n/a".to_string(), ToString::to_string);
        println!("{:<16} {:?} slack {slack}", item.id, item.verdict);
    }
    let holds = items.iter().filter(|i| i.verdict == Decision::Holds).count();
    println!("{holds}/{} hold", items.len());
    Ok(())
}
