//! Rational polytopes in dimension at most 4: hulls, Minkowski sums,
//! exact volumes and mixed volumes.

mod hull;
pub mod planar;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{multisets, VolumePolynomial};
use crate::rational::{factorial, int, Rational};

pub use planar::{asymmetry_f_bodies, fmp_bodies_check, FmpBodiesRecord};

pub const MAX_DIM: usize = 4;

/// The convex hull of finitely many rational points, stored by its vertices
/// in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    #[serde(with = "crate::rational::serde_rational_matrix")]
    vertices: Vec<Vec<Rational>>,
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeRepr { vertices: self.vertices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolytopeRepr::deserialize(d)?;
        Polytope::new(repr.vertices).map_err(serde::de::Error::custom)
    }
}

impl Polytope {
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::input("a polytope needs at least one point"));
        };
        let dim = first.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::input(format!("ambient dimension {dim} outside 1..={MAX_DIM}")));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::input("polytope points have inconsistent dimensions"));
        }
        let vertices = hull_vertices(&points);
        Ok(Polytope { dim, vertices })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect())
    }

    /// `[0, a_1] x ... x [0, a_n]`.
    pub fn boxed(sides: &[Rational]) -> Result<Self> {
        let n = sides.len();
        let pts = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { sides[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn translate(&self, v: &[Rational]) -> Polytope {
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(v).map(|(x, y)| x + y).collect())
            .collect();
        Polytope { dim: self.dim, vertices }
    }

    pub fn scale(&self, c: &Rational) -> Polytope {
        let mut vertices: Vec<Vec<Rational>> =
            self.vertices.iter().map(|p| p.iter().map(|x| x * c).collect()).collect();
        if c.is_negative() {
            vertices.sort();
        }
        Polytope { dim: self.dim, vertices }
    }

    /// Exact `n`-dimensional volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> Rational {
        volume_of(&self.vertices)
    }
}

/// Affine rank of a point set and the coordinates that parametrize its hull.
fn affine_frame(points: &[Vec<Rational>]) -> Vec<usize> {
    let base = &points[0];
    let diffs: Matrix = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    linalg::rref(&diffs).1
}

fn hull_vertices(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let unique: Vec<Vec<Rational>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let frame = affine_frame(&unique);
    let proj: Vec<Vec<Rational>> = unique
        .iter()
        .map(|p| frame.iter().map(|&i| p[i].clone()).collect())
        .collect();
    // Projection onto the pivot coordinates is injective on the affine hull.
    let keep: BTreeSet<Vec<Rational>> = match frame.len() {
        0 => proj.iter().take(1).cloned().collect(),
        1 => {
            let lo = proj.iter().min().unwrap().clone();
            let hi = proj.iter().max().unwrap().clone();
            [lo, hi].into_iter().collect()
        }
        _ => {
            let f = hull::facets(&proj);
            hull::vertices_from_facets(&proj, &f).into_iter().collect()
        }
    };
    let mut out: Vec<Vec<Rational>> = unique
        .into_iter()
        .zip(proj)
        .filter(|(_, q)| keep.contains(q))
        .map(|(p, _)| p)
        .collect();
    out.sort();
    out
}

/// Volume as a sum of pyramids over facets with apex at the vertex mean;
/// facets are measured after dropping one coordinate.
fn volume_of(points: &[Vec<Rational>]) -> Rational {
    let n = points[0].len();
    if affine_frame(points).len() < n {
        return Rational::zero();
    }
    if n == 1 {
        let lo = points.iter().map(|p| &p[0]).min().unwrap();
        let hi = points.iter().map(|p| &p[0]).max().unwrap();
        return hi - lo;
    }
    let facets = hull::facets(points);
    let verts = hull::vertices_from_facets(points, &facets);
    let count = int(verts.len() as i64);
    let centre: Vec<Rational> = (0..n)
        .map(|i| verts.iter().map(|v| &v[i]).sum::<Rational>() / &count)
        .collect();
    let mut total = Rational::zero();
    for f in &facets {
        let on: Vec<&Vec<Rational>> = verts.iter().filter(|v| f.slack(v).is_zero()).collect();
        let k = f.a.iter().position(|x| !x.is_zero()).expect("facet normal is nonzero");
        let proj: Vec<Vec<Rational>> = on
            .iter()
            .map(|v| v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect())
            .collect();
        let base = volume_of(&proj);
        total += base * f.slack(&centre) / f.a[k].abs();
    }
    total / int(n as i64)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim != q.dim {
        return Err(Error::input(format!(
            "Minkowski sum of polytopes in dimensions {} and {}",
            p.dim, q.dim
        )));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    Polytope::new(pts)
}

/// `s` polytopes in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyFamily {
    pub bodies: Vec<Polytope>,
}

impl BodyFamily {
    pub fn new(bodies: Vec<Polytope>) -> Result<Self> {
        let Some(first) = bodies.first() else {
            return Err(Error::input("a body family needs at least one polytope"));
        };
        if bodies.iter().any(|b| b.dim != first.dim) {
            return Err(Error::input("bodies in a family must share the ambient dimension"));
        }
        Ok(BodyFamily { bodies })
    }

    pub fn dim(&self) -> usize {
        self.bodies[0].dim
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }
}

/// Upper bound on the number of distinct Minkowski sums evaluated.
pub const MAX_SUMS: usize = 20_000;

/// `f(t) = vol(t_1 P_1 + ... + t_s P_s)` via
/// `V(K_1, ..., K_n) = (1/n!) sum_S (-1)^(n - |S|) vol(sum_{i in S} K_i)`.
pub fn mixed_volumes(family: &BodyFamily) -> Result<VolumePolynomial> {
    let n = family.dim();
    let s = family.len();
    let slots = multisets(s, n);
    if slots.len() * ((1 << n) - 1) > MAX_SUMS {
        return Err(Error::Cap(format!(
            "{} mixed volumes in dimension {n} exceed the cap",
            slots.len()
        )));
    }
    // Volumes of sums keyed by how often each body occurs.
    let mut cache: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut vol_of = |counts: Vec<usize>| -> Result<Rational> {
        if let Some(v) = cache.get(&counts) {
            return Ok(v.clone());
        }
        let mut acc: Option<Polytope> = None;
        for (i, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let body = family.bodies[i].scale(&int(c as i64));
            acc = Some(match acc {
                None => body,
                Some(a) => minkowski_sum(&a, &body)?,
            });
        }
        let v = acc.map_or_else(Rational::zero, |p| p.volume());
        cache.insert(counts, v.clone());
        Ok(v)
    };
    let nfact = Rational::from_integer(factorial(n as u32));
    VolumePolynomial::from_mixed_values(s, n as u32, |ms| {
        let mut total = Rational::zero();
        for mask in 1usize..(1 << n) {
            let mut counts = vec![0usize; s];
            for (slot, &body) in ms.iter().enumerate() {
                if mask >> slot & 1 == 1 {
                    counts[body] += 1;
                }
            }
            let v = vol_of(counts)?;
            if (n - mask.count_ones() as usize).is_multiple_of(2) {
                total += v;
            } else {
                total -= v;
            }
        }
        Ok(total / &nfact)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Direction;
    use crate::rational::rat;

    fn square() -> Polytope {
        Polytope::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn triangle() -> Polytope {
        Polytope::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn basic_volumes() {
        assert_eq!(square().volume(), int(1));
        assert_eq!(triangle().volume(), rat(1, 2));
        let seg = Polytope::from_ints(&[&[0, 0], &[2, 1], &[1, 0]]).unwrap();
        assert_eq!(seg.volume(), rat(1, 2));
        let line = Polytope::from_ints(&[&[0, 0], &[2, 1], &[4, 2]]).unwrap();
        assert_eq!(line.volume(), int(0));
        assert_eq!(line.vertices().len(), 2);
        let cube = Polytope::boxed(&[int(1), int(2), rat(1, 3)]).unwrap();
        assert_eq!(cube.volume(), rat(2, 3));
        let simplex4 = Polytope::from_ints(&[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(simplex4.volume(), rat(1, 24));
    }

    #[test]
    fn sums() {
        let origin = Polytope::from_ints(&[&[0, 0]]).unwrap();
        assert_eq!(minkowski_sum(&square(), &origin).unwrap(), square());
        let two = minkowski_sum(&square(), &square()).unwrap();
        assert_eq!(two, square().scale(&int(2)));
        let pent = minkowski_sum(&square(), &triangle()).unwrap();
        assert_eq!(pent.vertices().len(), 5);
        assert_eq!(pent.volume(), rat(7, 2));
        let bad = Polytope::from_ints(&[&[0, 0, 0]]).unwrap();
        assert!(minkowski_sum(&square(), &bad).is_err());
    }

    #[test]
    fn planar_mixed_volumes() {
        let f = mixed_volumes(&BodyFamily::new(vec![square(), square()]).unwrap()).unwrap();
        assert_eq!(f, VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]).unwrap());
        let g = mixed_volumes(&BodyFamily::new(vec![square(), triangle()]).unwrap()).unwrap();
        assert_eq!(g.mixed_value(&[Direction::unit(2, 0), Direction::unit(2, 1)]).unwrap(), int(1));
        assert_eq!(g.coefficient(&[0, 2]), rat(1, 2));
        let rect = Polytope::boxed(&[int(2), rat(1, 2)]).unwrap();
        let h = mixed_volumes(&BodyFamily::new(vec![square(), rect]).unwrap()).unwrap();
        assert_eq!(h.mixed_value(&[Direction::unit(2, 0), Direction::unit(2, 1)]).unwrap(), rat(5, 4));
    }

    #[test]
    fn boxes_in_three_dimensions() {
        // vol(t1 [0,1]^3 + t2 [0,2]x[0,1]x[0,1]) = (t1 + 2 t2)(t1 + t2)^2
        let a = Polytope::boxed(&[int(1), int(1), int(1)]).unwrap();
        let b = Polytope::boxed(&[int(2), int(1), int(1)]).unwrap();
        let f = mixed_volumes(&BodyFamily::new(vec![a, b]).unwrap()).unwrap();
        let t = Direction::from_ints(&[3, 5]);
        assert_eq!(f.evaluate(&t).unwrap(), int(13 * 64));
    }
}
