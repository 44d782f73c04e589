//! Inradius and outradius of one class relative to another on `Omega`.
//!
//! For fixed other slots the ratio of two linear forms over a polyhedral
//! cone is extremal on extreme rays, so enumerating generator multisets is
//! exact.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::error::{Error, Result};
use crate::numdim::MAX_TUPLES;
use crate::poly::{multisets, Direction, VolumePolynomial};
use crate::rational::{binomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiiReport {
    #[serde(with = "crate::rational::serde_rational")]
    pub r_in: Rational,
    /// `None` is `+infinity`.
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub r_out: Option<Rational>,
    /// Generator indices (0-based, sorted) realizing `r_in`.
    pub argmin_tuple: Vec<usize>,
    /// Generator indices realizing `r_out`, or the tuple forcing infinity.
    pub argmax_tuple: Vec<usize>,
}

impl RadiiReport {
    /// Re-checks `r_in beta <= alpha <= r_out beta` against every tuple.
    pub fn verify_order(
        &self,
        f: &VolumePolynomial,
        alpha: &Direction,
        beta: &Direction,
        nef: &ConeModel,
        fixed: &[&Direction],
    ) -> Result<bool> {
        let lower = alpha.sub(&beta.scale(&self.r_in));
        let upper = self.r_out.as_ref().map(|r| beta.scale(r).sub(alpha));
        for t in tuples(f, nef, fixed)? {
            if pair(f, &lower, &t, fixed, nef)?.is_negative() {
                return Ok(false);
            }
            if let Some(u) = &upper {
                if pair(f, u, &t, fixed, nef)?.is_negative() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn tuples(f: &VolumePolynomial, nef: &ConeModel, fixed: &[&Direction]) -> Result<Vec<Vec<usize>>> {
    let d = f.degree() as usize;
    if fixed.len() + 1 > d {
        return Err(Error::input("too many fixed slots for the degree"));
    }
    let k = d - 1 - fixed.len();
    let g = nef.generators.len();
    if g == 0 {
        return Err(Error::domain("nef cone has no generators"));
    }
    let count = binomial((g + k - 1) as u32, k as u32);
    if count > MAX_TUPLES.into() {
        return Err(Error::Cap(format!(
            "{count} generator tuples exceed the cap of {MAX_TUPLES}"
        )));
    }
    Ok(multisets(g, k))
}

fn pair(
    f: &VolumePolynomial,
    x: &Direction,
    t: &[usize],
    fixed: &[&Direction],
    nef: &ConeModel,
) -> Result<Rational> {
    let mut dirs: Vec<&Direction> = vec![x];
    dirs.extend(t.iter().map(|&i| &nef.generators[i]));
    dirs.extend_from_slice(fixed);
    f.mixed_value_refs(&dirs)
}

/// Radii of `alpha` relative to `beta` with all `d - 1` free slots tested.
pub fn radii(f: &VolumePolynomial, alpha: &Direction, beta: &Direction, nef: &ConeModel) -> Result<RadiiReport> {
    radii_with(f, alpha, beta, nef, &[])
}

/// Radii on `Omega . H_1 ... H_m`: the `fixed` classes occupy `m` slots and
/// the remaining `d - 1 - m` range over generator multisets.
pub fn radii_with(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
    nef: &ConeModel,
    fixed: &[&Direction],
) -> Result<RadiiReport> {
    let mut r_in: Option<(Rational, Vec<usize>)> = None;
    let mut r_out: Option<(Rational, Vec<usize>)> = None;
    let mut infinite: Option<Vec<usize>> = None;
    for t in tuples(f, nef, fixed)? {
        let den = pair(f, beta, &t, fixed, nef)?;
        let num = pair(f, alpha, &t, fixed, nef)?;
        if den.is_zero() {
            if num.is_positive() && infinite.is_none() {
                infinite = Some(t);
            }
            continue;
        }
        let q = num / den;
        if r_in.as_ref().is_none_or(|(b, _)| q < *b) {
            r_in = Some((q.clone(), t.clone()));
        }
        if r_out.as_ref().is_none_or(|(b, _)| q > *b) {
            r_out = Some((q, t));
        }
    }
    let (Some((r_in, argmin)), Some((r_max, argmax))) = (r_in, r_out) else {
        return Err(Error::domain(
            "every generator tuple pairs to zero with beta; radii are undefined",
        ));
    };
    let (r_out, argmax_tuple) = match infinite {
        Some(t) => (None, t),
        None => (Some(r_max), argmax),
    };
    Ok(RadiiReport {
        r_in,
        r_out,
        argmin_tuple: argmin,
        argmax_tuple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn xy() -> VolumePolynomial {
        VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap()
    }

    #[test]
    fn hand_enumerated_radii() {
        let nef = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[1, 1]);
        let b = Direction::from_ints(&[2, 1]);
        let r = radii(&xy(), &a, &b, &nef).unwrap();
        assert_eq!(r.r_in, rat(1, 2));
        assert_eq!(r.r_out, Some(int(1)));
        assert!(r.verify_order(&xy(), &a, &b, &nef, &[]).unwrap());
        let back = radii(&xy(), &b, &a, &nef).unwrap();
        assert_eq!(back.r_out, Some(int(2)));
    }

    #[test]
    fn equal_classes_have_unit_radii() {
        let nef = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[3, 1]);
        let r = radii(&xy(), &a, &a, &nef).unwrap();
        assert_eq!((r.r_in, r.r_out), (int(1), Some(int(1))));
    }

    #[test]
    fn boundary_beta_gives_infinite_outradius() {
        let nef = ConeModel::positive_orthant(2);
        let r = radii(&xy(), &Direction::from_ints(&[1, 1]), &Direction::from_ints(&[1, 0]), &nef).unwrap();
        assert_eq!(r.r_out, None);
        assert!(matches!(
            radii(&xy(), &Direction::from_ints(&[1, 1]), &Direction::zeros(2), &nef),
            Err(Error::Domain(_))
        ));
    }
}
