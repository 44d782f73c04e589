//! Asymmetry of two planar bodies over translations, compared with the
//! Brunn-Minkowski deficit.

use lorentzkit::bodies::planar::fmp_bodies_check;
use lorentzkit::bodies::Polytope;
use lorentzkit::rational::{fmt_rational, to_f64};

fn main() -> lorentzkit::error::Result<()> {
    let square = Polytope::from_ints(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]])?;
    let tri = Polytope::from_ints(&[&[0, 0], &[3, 0], &[0, 3]])?;
    let rec = fmp_bodies_check(&square, &tri, 96)?;
    println!("areas {} and {}, sum {}", fmt_rational(&rec.area_a), fmt_rational(&rec.area_b), fmt_rational(&rec.area_sum));
    println!("F = {} at translation ~{:?}", rec.asymmetry.f, rec.asymmetry.translation.iter().map(to_f64).collect::<Vec<_>>());
    println!("sigma = {}, BM deficit = {}", rec.sigma, rec.bm_deficit);
    if let Some(ratio) = &rec.ratio {
        println!("F / sqrt(sigma B) = {ratio}");
    }
    Ok(())
}
