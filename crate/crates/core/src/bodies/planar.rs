//! Planar convex bodies: exact clipping, the relative asymmetry index by
//! translation search, and the FMP experiment record.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{mixed_volumes, BodyFamily, Polytope};
use crate::deficits::{deficit_b, sigma};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::Direction;
use crate::rational::{exact_root, int, rat, Rational};

type Pt = [Rational; 2];

/// Coarse grid cells per bounding-box span.
pub const GRID_STEPS: i64 = 32;
/// Each refinement divides the step by this factor.
pub const REFINE_FACTOR: i64 = 4;
pub const REFINE_ROUNDS: usize = 2;
/// Rational upper bound for `sqrt(2) / 2`.
fn half_sqrt2_upper() -> Rational {
    rat(17, 24)
}

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices in counterclockwise order starting from the lexicographic minimum.
fn ccw(p: &Polytope) -> Vec<Pt> {
    let mut pts: Vec<Pt> = p.vertices().iter().map(|v| [v[0].clone(), v[1].clone()]).collect();
    if pts.len() < 3 {
        return pts;
    }
    let o = pts[0].clone();
    pts[1..].sort_by(|a, b| {
        let c = cross(&o, a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    pts
}

pub fn polygon_area(poly: &[Pt]) -> Rational {
    if poly.len() < 3 {
        return Rational::zero();
    }
    let n = poly.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            &a[0] * &b[1] - &a[1] * &b[0]
        })
        .sum();
    twice.abs() / int(2)
}

/// Sutherland-Hodgman clipping of `subject` by the convex counterclockwise
/// polygon `clip`.
pub fn clip_polygon(subject: &[Pt], clip: &[Pt]) -> Vec<Pt> {
    let mut out: Vec<Pt> = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&clip[i], &clip[(i + 1) % m]);
        let input = std::mem::take(&mut out);
        let n = input.len();
        for j in 0..n {
            let (p, q) = (&input[j], &input[(j + 1) % n]);
            let (cp, cq) = (cross(a, b, p), cross(a, b, q));
            let (pin, qin) = (!cp.is_negative(), !cq.is_negative());
            if pin {
                out.push(p.clone());
            }
            if pin != qin && !(cp.is_zero() || cq.is_zero()) {
                let t = &cp / (&cp - &cq);
                out.push([
                    &p[0] + &t * (&q[0] - &p[0]),
                    &p[1] + &t * (&q[1] - &p[1]),
                ]);
            }
        }
    }
    out
}

fn shifted(poly: &[Pt], x: &Pt) -> Vec<Pt> {
    poly.iter().map(|p| [&p[0] + &x[0], &p[1] + &x[1]]).collect()
}

/// Sum of `|dx| + |dy|` over the edges, an upper bound for the perimeter.
fn l1_perimeter(poly: &[Pt]) -> Rational {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            (&a[0] - &b[0]).abs() + (&a[1] - &b[1]).abs()
        })
        .sum()
}

struct Search {
    overlap: Rational,
    at: Pt,
    step: Rational,
    lipschitz: Rational,
}

fn bbox(poly: &[Pt]) -> [(Rational, Rational); 2] {
    let ax = |k: usize| {
        let lo = poly.iter().map(|p| &p[k]).min().unwrap().clone();
        let hi = poly.iter().map(|p| &p[k]).max().unwrap().clone();
        (lo, hi)
    };
    [ax(0), ax(1)]
}

/// Maximizes `|(x + a) cap b|` over translations `x` on a grid with two
/// local refinements.
fn search(a: &[Pt], b: &[Pt]) -> Search {
    let (ba, bb) = (bbox(a), bbox(b));
    let lo = [&bb[0].0 - &ba[0].1, &bb[1].0 - &ba[1].1];
    let span = [&bb[0].1 - &ba[0].0 - &lo[0], &bb[1].1 - &ba[1].0 - &lo[1]];
    let wide = if span[0] > span[1] { span[0].clone() } else { span[1].clone() };
    let mut step = wide / int(GRID_STEPS);
    let overlap = |x: &Pt| polygon_area(&clip_polygon(&shifted(a, x), b));
    let mut best: Option<(Rational, Pt)> = None;
    let consider = |x: Pt, best: &mut Option<(Rational, Pt)>| {
        let v = overlap(&x);
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            *best = Some((v, x));
        }
    };
    let count = |k: usize| -> i64 {
        let c = (&span[k] / &step).ceil().to_integer();
        i64::try_from(c).unwrap_or(GRID_STEPS)
    };
    for i in 0..=count(0) {
        for j in 0..=count(1) {
            consider([&lo[0] + &step * int(i), &lo[1] + &step * int(j)], &mut best);
        }
    }
    for _ in 0..REFINE_ROUNDS {
        step /= int(REFINE_FACTOR);
        let centre = best.as_ref().unwrap().1.clone();
        for i in -REFINE_FACTOR..=REFINE_FACTOR {
            for j in -REFINE_FACTOR..=REFINE_FACTOR {
                consider([&centre[0] + &step * int(i), &centre[1] + &step * int(j)], &mut best);
            }
        }
    }
    let (overlap, at) = best.expect("grid is nonempty");
    let pa = l1_perimeter(a);
    let pb = l1_perimeter(b);
    let lipschitz = if pa < pb { pa } else { pb } / int(2);
    Search { overlap, at, step, lipschitz }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodiesAsymmetry {
    /// `[F_lo, F_hi]`; `F_hi` is realized by `translation`.
    pub f: Interval,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub translation: Vec<Rational>,
    /// Final grid step.
    #[serde(with = "crate::rational::serde_rational")]
    pub step: Rational,
    pub scale: Interval,
}

/// `F(A, B) = 1 - max_x |(x + rA) cap B| / |B|` with `r = (|B| / |A|)^(1/2)`.
pub fn asymmetry_f_bodies(a: &Polytope, b: &Polytope, bits: u32) -> Result<BodiesAsymmetry> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::input("the planar asymmetry index needs two-dimensional bodies"));
    }
    let (va, vb) = (a.volume(), b.volume());
    if !va.is_positive() || !vb.is_positive() {
        return Err(Error::domain("degenerate body: the area is zero"));
    }
    let ratio = &vb / &va;
    let r = match exact_root(&ratio, 2) {
        Some(q) => Interval::exact(q),
        None => Interval::exact(ratio).sqrt(bits),
    };
    let pb = ccw(b);
    let inner = search(&ccw(&a.scale(&r.lo)), &pb);
    let f_hi = Rational::one() - &inner.overlap / &vb;
    // A larger homothet dominates any translate of rA, so r_hi bounds from above.
    let outer = if r.is_exact() {
        inner.overlap.clone() + &inner.lipschitz * &inner.step * half_sqrt2_upper()
    } else {
        let s = search(&ccw(&a.scale(&r.hi)), &pb);
        s.overlap + s.lipschitz * &s.step * half_sqrt2_upper()
    };
    let mut f_lo = Rational::one() - outer / &vb;
    if f_lo.is_negative() {
        f_lo = Rational::zero();
    }
    if f_lo > f_hi {
        f_lo = f_hi.clone();
    }
    Ok(BodiesAsymmetry {
        f: Interval::new(f_lo, f_hi),
        translation: inner.at.to_vec(),
        step: inner.step,
        scale: r,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmpBodiesRecord {
    #[serde(with = "crate::rational::serde_rational")]
    pub area_a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub area_b: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub area_sum: Rational,
    pub asymmetry: BodiesAsymmetry,
    pub sigma: Interval,
    pub bm_deficit: Interval,
    /// `F / sqrt(sigma B)`; absent when `B = 0`.
    pub ratio: Option<Interval>,
}

/// The empirical FMP constant for one pair of planar bodies.
pub fn fmp_bodies_check(a: &Polytope, b: &Polytope, bits: u32) -> Result<FmpBodiesRecord> {
    let asym = asymmetry_f_bodies(a, b, bits)?;
    let f = mixed_volumes(&BodyFamily::new(vec![a.clone(), b.clone()])?)?;
    let (e1, e2) = (Direction::unit(2, 0), Direction::unit(2, 1));
    let bm = deficit_b(&f, &e1, &e2, bits)?;
    let sg = sigma(&f, &e1, &e2, bits)?;
    let ratio = if bm.lo.is_positive() {
        let den = sg.mul(&bm).sqrt(bits);
        asym.f.div(&den)
    } else {
        None
    };
    Ok(FmpBodiesRecord {
        area_a: a.volume(),
        area_b: b.volume(),
        area_sum: f.evaluate(&Direction::from_ints(&[1, 1]))?,
        asymmetry: asym,
        sigma: sg,
        bm_deficit: bm,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn clipping_overlap() {
        let s = ccw(&square());
        let t = shifted(&s, &[rat(1, 2), rat(1, 2)]);
        assert_eq!(polygon_area(&clip_polygon(&t, &s)), rat(1, 4));
        let far = shifted(&s, &[int(3), int(0)]);
        assert_eq!(polygon_area(&clip_polygon(&far, &s)), int(0));
    }

    #[test]
    fn square_against_flat_rectangle() {
        let rect = Polytope::boxed(&[int(2), rat(1, 2)]).unwrap();
        let rep = asymmetry_f_bodies(&square(), &rect, 128).unwrap();
        assert!(rep.f.contains(&rat(1, 2)));
        assert!(rep.f.width() <= rat(1, 64));
        assert_eq!(rep.f.hi, rat(1, 2));
    }

    #[test]
    fn translates_are_symmetric() {
        let p = Polytope::from_ints(&[&[0, 0], &[3, 1], &[1, 2]]).unwrap();
        let q = p.translate(&[rat(7, 3), int(-1)]);
        let rep = asymmetry_f_bodies(&p, &q, 64).unwrap();
        assert_eq!(rep.f.lo, int(0));
        assert!(rep.f.hi <= rat(1, 10));
    }

    #[test]
    fn homothetic_record_is_vacuous() {
        let rec = fmp_bodies_check(&square(), &square().scale(&int(3)), 64).unwrap();
        assert_eq!(rec.bm_deficit, Interval::zero());
        assert!(rec.ratio.is_none());
        assert_eq!(rec.asymmetry.f.hi, int(0));
    }
}
