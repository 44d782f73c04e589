//! Chow ring degrees of a matroid, checked against its characteristic
//! polynomial, and the volume polynomial of two divisors.

use lorentzkit::matroid::{bergman_volume_polynomial, chow_ring, degree, flats, reduced_characteristic, DivisorSpec, Matroid};
use lorentzkit::rational::fmt_rational;

fn main() -> lorentzkit::error::Result<()> {
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    println!("K4: rank {}, {} flats", k4.rank(), flats(&k4).flats.len());
    let ring = chow_ring(&k4)?;
    for k in 0..=ring.top_degree() {
        println!("  dim A^{k} = {}", ring.quotient_dimension(k));
    }
    let d = ring.top_degree();
    let degrees: Vec<String> = (0..=d)
        .map(|i| {
            let mut ds = vec![DivisorSpec::Alpha; d - i];
            ds.extend(vec![DivisorSpec::Beta; i]);
            degree(&ring, &ds).map(|q| fmt_rational(&q))
        })
        .collect::<Result<_, _>>()?;
    println!("  alpha^(d-i) beta^i = {degrees:?}");
    println!("  reduced characteristic coefficients = {:?}", reduced_characteristic(&k4)?);
    let (f, _) = bergman_volume_polynomial(&ring, &[DivisorSpec::Alpha, DivisorSpec::Beta])?;
    println!("  volume polynomial: {f}");
    Ok(())
}
