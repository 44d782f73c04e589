//! Polyhedral cones given by generators, facet normals, or both.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Direction;
use crate::rational::{primitive, Rational};

/// Positivity role of a generator in the model file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorTag {
    #[default]
    Nef,
    Movable,
    Divisorial,
}

/// A polyhedral cone `{x : n.x >= 0 for n in facets, e.x = 0 for e in equations}`
/// together with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeModel {
    pub name: String,
    pub generators: Vec<Direction>,
    pub facet_normals: Vec<Direction>,
    /// Normals of the orthogonal complement of the linear span.
    pub equations: Vec<Direction>,
    pub tags: Vec<GeneratorTag>,
}

impl ConeModel {
    /// Builds the cone spanned by `generators` and derives its facets.
    pub fn from_generators(name: impl Into<String>, generators: Vec<Direction>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::input("cone needs at least one generator"));
        };
        let s = first.dim();
        if generators.iter().any(|g| g.dim() != s) {
            return Err(Error::input("cone generators have inconsistent lengths"));
        }
        if generators.iter().any(Direction::is_zero) {
            return Err(Error::input("cone generators must be nonzero"));
        }
        let (facet_normals, equations) = facets_of(&generators, s);
        let tags = vec![GeneratorTag::Nef; generators.len()];
        Ok(ConeModel {
            name: name.into(),
            generators,
            facet_normals,
            equations,
            tags,
        })
    }

    /// Builds a full-dimensional cone from inequalities `n.x >= 0`.
    pub fn from_facets(name: impl Into<String>, normals: Vec<Direction>) -> Result<Self> {
        let dual = ConeModel::from_generators("dual", normals.clone())?;
        if !dual.equations.is_empty() {
            return Err(Error::input(
                "facet normals do not span the ambient space; the cone is not pointed",
            ));
        }
        ConeModel::from_generators(name, dual.facet_normals)
    }

    pub fn positive_orthant(s: usize) -> Self {
        let gens = (0..s).map(|i| Direction::unit(s, i)).collect();
        ConeModel::from_generators("orthant", gens).expect("orthant is valid")
    }

    pub fn with_tags(mut self, tags: Vec<GeneratorTag>) -> Result<Self> {
        if tags.len() != self.generators.len() {
            return Err(Error::input("tag list length differs from generator count"));
        }
        self.tags = tags;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, v: &Direction) -> bool {
        self.facet_normals.iter().all(|n| !n.dot(v).is_negative())
            && self.equations.iter().all(|e| e.dot(v).is_zero())
    }

    /// Strictly inside the relative interior.
    pub fn contains_interior(&self, v: &Direction) -> bool {
        self.facet_normals.iter().all(|n| n.dot(v).is_positive())
            && self.equations.iter().all(|e| e.dot(v).is_zero())
    }

    /// The dual cone `{y : y.g >= 0 for all generators g}`.
    pub fn dual(&self, name: impl Into<String>) -> Result<ConeModel> {
        if !self.is_full_dimensional() {
            return Err(Error::domain("dual of a lower-dimensional cone is not pointed"));
        }
        ConeModel::from_facets(name, self.generators.clone())
    }

    /// Smallest `lambda` with `lambda * omega - v` in the cone; `omega` must be
    /// interior.
    pub fn dominating_scale(&self, v: &Direction, omega: &Direction) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for n in &self.facet_normals {
            let w = n.dot(omega);
            if !w.is_positive() {
                return Err(Error::domain("reference class is not interior to the cone"));
            }
            let q = n.dot(v) / w;
            if best.as_ref().is_none_or(|b| q > *b) {
                best = Some(q);
            }
        }
        Ok(best.unwrap_or_else(Rational::zero))
    }

    pub fn sample_plan(&self, count: usize) -> SamplePlan {
        SamplePlan::new(&self.generators, count)
    }
}

/// Deterministic interior points: sample 0 is the sum of the generators,
/// sample `i` weights generator `j` by the Halton radical inverse of `i`
/// in the `j`-th prime base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePlan {
    pub points: Vec<Direction>,
}

pub const DEFAULT_SAMPLES: usize = 16;

impl SamplePlan {
    pub fn new(generators: &[Direction], count: usize) -> Self {
        let s = generators.first().map_or(0, Direction::dim);
        let points = (0..count)
            .map(|i| {
                if i == 0 {
                    return Direction::sum(s, generators);
                }
                generators
                    .iter()
                    .enumerate()
                    .fold(Direction::zeros(s), |acc, (j, g)| {
                        acc.add(&g.scale(&halton(i as u64, nth_prime(j))))
                    })
            })
            .collect();
        SamplePlan { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Radical inverse of `i` in base `b`, in `(0, 1)` for `i >= 1`.
pub fn halton(mut i: u64, b: u64) -> Rational {
    let mut result = Rational::zero();
    let mut f = Rational::new(BigInt::one(), BigInt::from(b));
    let base = Rational::from_integer(BigInt::from(b));
    while i > 0 {
        result += &f * Rational::from_integer(BigInt::from(i % b));
        i /= b;
        f /= &base;
    }
    result
}

fn nth_prime(n: usize) -> u64 {
    let mut count = 0;
    let mut k = 1u64;
    loop {
        k += 1;
        if (2..k).take_while(|p| p * p <= k).all(|p| !k.is_multiple_of(p)) {
            if count == n {
                return k;
            }
            count += 1;
        }
    }
}

fn to_direction(v: Vec<BigInt>) -> Direction {
    Direction(v.into_iter().map(Rational::from_integer).collect())
}

fn canonical_set(vs: Vec<Direction>) -> Vec<Direction> {
    let set: BTreeSet<Vec<BigInt>> = vs.iter().map(|v| primitive(&v.0)).collect();
    set.into_iter().map(to_direction).collect()
}

/// Facet normals (primitive, sorted) and span equations of `cone(gens)`.
fn facets_of(gens: &[Direction], s: usize) -> (Vec<Direction>, Vec<Direction>) {
    let gm: Matrix = gens.iter().map(|g| g.0.clone()).collect();
    let equations: Vec<Direction> = canonical_set(
        linalg::nullspace(&gm, s)
            .into_iter()
            .map(Direction)
            .collect(),
    );
    let (red, pivots) = linalg::rref(&gm);
    let k = pivots.len();
    let basis: Matrix = red.into_iter().take(k).collect();
    // coordinates of each generator in the row basis: pivot entries
    let coords: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| pivots.iter().map(|&p| g.0[p].clone()).collect())
        .collect();
    let mut local: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in combinations(gens.len(), k.saturating_sub(1)) {
        let sub: Matrix = subset.iter().map(|&i| coords[i].clone()).collect();
        let ns = linalg::nullspace(&sub, k);
        if ns.len() != 1 {
            continue;
        }
        let n = &ns[0];
        let vals: Vec<Rational> = coords
            .iter()
            .map(|c| c.iter().zip(n).fold(Rational::zero(), |a, (x, y)| a + x * y))
            .collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        if !pos && !neg {
            continue;
        }
        let oriented: Vec<Rational> = if neg {
            n.iter().map(|x| -x.clone()).collect()
        } else {
            n.clone()
        };
        local.insert(primitive(&oriented));
    }
    // Lift local normals: find x in R^s with basis * x = local normal, inside
    // the span so that the lift is canonical.
    let facets = local
        .into_iter()
        .map(|nl| {
            let target: Vec<Rational> = nl.into_iter().map(Rational::from_integer).collect();
            // x = basis^T y with (basis basis^T) y = target
            let bt = linalg::transpose(&basis);
            let gram = linalg::mat_mul(&basis, &bt);
            let y = linalg::solve(&gram, &target).expect("gram matrix is invertible");
            let x = linalg::mat_vec(&bt, &y);
            Direction(x)
        })
        .collect();
    (canonical_set(facets), equations)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn orthant_facets() {
        let c = ConeModel::positive_orthant(3);
        assert_eq!(c.facet_normals.len(), 3);
        assert!(c.contains(&Direction::from_ints(&[1, 0, 2])));
        assert!(!c.contains(&Direction::from_ints(&[1, -1, 2])));
        assert!(c.contains_interior(&Direction::from_ints(&[1, 1, 1])));
        assert!(!c.contains_interior(&Direction::from_ints(&[1, 0, 1])));
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = ConeModel::from_generators(
            "wedge",
            vec![Direction::from_ints(&[1, 0, 0]), Direction::from_ints(&[1, 1, 0])],
        )
        .unwrap();
        assert_eq!(c.equations.len(), 1);
        assert_eq!(c.facet_normals.len(), 2);
        assert!(c.contains(&Direction::from_ints(&[2, 1, 0])));
        assert!(!c.contains(&Direction::from_ints(&[2, 1, 1])));
        assert!(!c.contains(&Direction::from_ints(&[0, 1, 0])));
    }

    #[test]
    fn facets_round_trip() {
        let c = ConeModel::from_facets(
            "square cone",
            vec![
                Direction::from_ints(&[1, 0, 1]),
                Direction::from_ints(&[-1, 0, 1]),
                Direction::from_ints(&[0, 1, 1]),
                Direction::from_ints(&[0, -1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(c.generators.len(), 4);
        let back = ConeModel::from_generators("g", c.generators.clone()).unwrap();
        assert_eq!(back.facet_normals, c.facet_normals);
    }

    #[test]
    fn samples_are_interior() {
        let c = ConeModel::from_generators(
            "c",
            vec![
                Direction::from_ints(&[1, 0]),
                Direction::from_ints(&[1, 2]),
            ],
        )
        .unwrap();
        let plan = c.sample_plan(DEFAULT_SAMPLES);
        assert_eq!(plan.len(), 16);
        assert!(plan.points.iter().all(|p| c.contains_interior(p)));
        assert_eq!(plan.points[0], Direction::from_ints(&[2, 2]));
    }

    #[test]
    fn halton_values() {
        assert_eq!(halton(1, 2), rat(1, 2));
        assert_eq!(halton(3, 2), rat(3, 4));
        assert_eq!(halton(5, 3), rat(7, 9));
    }

    #[test]
    fn dominating_scale_on_orthant() {
        let c = ConeModel::positive_orthant(2);
        let l = c
            .dominating_scale(&Direction::from_ints(&[3, 1]), &Direction::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(l, int(3));
    }
}
