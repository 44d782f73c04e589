//! Certifies that the volume polynomial of three planar bodies is Lorentzian
//! on the positive orthant, then checks strictness at interior samples.

use lorentzkit::bodies::{mixed_volumes, BodyFamily, Polytope};
use lorentzkit::cone::{ConeModel, SamplePlan, DEFAULT_SAMPLES};
use lorentzkit::lorentz::{check_cone_lorentzian, check_strict, Verdict};

fn main() -> lorentzkit::error::Result<()> {
    let square = Polytope::from_ints(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])?;
    let rect = Polytope::from_ints(&[&[0, 0], &[3, 0], &[3, 1], &[0, 1]])?;
    let tri = Polytope::from_ints(&[&[0, 0], &[2, 0], &[0, 2]])?;
    let f = mixed_volumes(&BodyFamily::new(vec![square, rect, tri])?)?;
    println!("f = {f}");

    let cone = ConeModel::positive_orthant(3);
    let plan = SamplePlan::new(&cone.generators, DEFAULT_SAMPLES);
    let cert = check_cone_lorentzian(&f, &cone, &plan)?;
    println!("verdict: {}", cert.verdict);
    if cert.verdict == Verdict::Lorentzian {
        let strict = check_strict(&f, &cone, &plan)?;
        println!("strictness: {}", strict.verdict);
        for w in strict.witnesses.iter().take(3) {
            let inertia = w.inertia.as_ref().map(ToString::to_string).unwrap_or_default();
            println!("  sample {} inertia {inertia}", w.dirs[0]);
        }
    }
    Ok(())
}
