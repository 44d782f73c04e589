//! Exact convex hulls by the double description method.
//!
//! Points `p` are homogenized to rows `(1, p)`; the extreme rays `y` of
//! `{y : (1, p) . y >= 0 for all p}` are the facets `y_0 + y' . x >= 0`.
//! Rays are kept as primitive integer vectors and adjacency is tested
//! combinatorially on zero sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{self, Matrix};
use crate::rational::{primitive, Rational};

/// Facet `a . x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Facet {
    pub fn slack(&self, p: &[Rational]) -> Rational {
        &self.b - self.a.iter().zip(p).map(|(x, y)| x * y).sum::<Rational>()
    }
}

type Bits = Vec<u64>;

fn bit_set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn count(a: &Bits) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let q: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
    primitive(&q)
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

/// Facets of a full-dimensional polytope given by its points.
/// Requires the affine hull of `points` to be the whole space.
pub fn facets(points: &[Vec<Rational>]) -> Vec<Facet> {
    let n = points[0].len();
    let m = n + 1;
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut r = vec![Rational::from_integer(1.into())];
            r.extend(p.iter().cloned());
            primitive(&r)
        })
        .collect();
    let words = rows.len().div_ceil(64);

    // Initial basis: m independent rows.
    let rational_rows: Matrix = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let (_, pivots) = linalg::rref(&linalg::transpose(&rational_rows));
    assert_eq!(pivots.len(), m, "points must affinely span the space");
    let basis: Matrix = pivots.iter().map(|&i| rational_rows[i].clone()).collect();
    let mut rays: Vec<Ray> = (0..m)
        .map(|j| {
            let mut e = vec![Rational::zero(); m];
            e[j] = Rational::from_integer(1.into());
            let col = linalg::solve(&basis, &e).expect("basis is invertible");
            Ray { v: primitive(&col), zeros: vec![0; words] }
        })
        .collect();
    let mut done: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = pivots.clone();
    order.extend((0..rows.len()).filter(|i| !pivots.contains(i)));
    for &i in &order {
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(&rows[i], &r.v)).collect();
        if vals.iter().all(|x| !x.is_negative()) {
            for (r, x) in rays.iter_mut().zip(&vals) {
                if x.is_zero() {
                    bit_set(&mut r.zeros, i);
                }
            }
            done.push(i);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = and(&rays[p].zeros, &rays[q].zeros);
                if (count(&common) as usize) < m - 2 {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != q)
                    .all(|k| !subset(&common, &rays[k].zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(yq, yp)| vp * yq - vq * yp)
                    .collect();
                let mut zeros = common;
                bit_set(&mut zeros, i);
                next.push(Ray { v: int_primitive(v), zeros });
            }
        }
        for (k, r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            let mut r = r;
            if vals[k].is_zero() {
                bit_set(&mut r.zeros, i);
            }
            next.push(r);
        }
        rays = next;
        done.push(i);
    }
    let set: BTreeSet<Facet> = rays
        .into_iter()
        .map(|r| Facet {
            a: r.v[1..].iter().map(|x| Rational::from_integer(-x)).collect(),
            b: Rational::from_integer(r.v[0].clone()),
        })
        .collect();
    set.into_iter().collect()
}

/// Points that are vertices of the hull, given its facets.
pub fn vertices_from_facets(points: &[Vec<Rational>], facets: &[Facet]) -> Vec<Vec<Rational>> {
    let n = points[0].len();
    let unique: BTreeSet<Vec<Rational>> = points.iter().cloned().collect();
    unique
        .into_iter()
        .filter(|p| {
            let tight: Matrix = facets
                .iter()
                .filter(|f| f.slack(p).is_zero())
                .map(|f| f.a.clone())
                .collect();
            !tight.is_empty() && linalg::rank(&tight) == n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn cube_has_six_facets() {
        let mut p = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    p.push(vec![int(x), int(y), int(z)]);
                }
            }
        }
        p.push(vec![crate::rational::rat(1, 2); 3]);
        let f = facets(&p);
        assert_eq!(f.len(), 6);
        assert_eq!(vertices_from_facets(&p, &f).len(), 8);
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let p = pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 0], &[1, 1]]);
        let f = facets(&p);
        assert_eq!(f.len(), 4);
        assert_eq!(vertices_from_facets(&p, &f).len(), 4);
    }
}
