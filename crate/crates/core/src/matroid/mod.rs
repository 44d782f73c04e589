//! Matroids, their lattices of flats, and the Chow ring of the Bergman
//! class in the Feichtner-Yuzvinsky presentation.

mod chow;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chow::{bergman_volume_polynomial, chow_ring, degree, ChowRingModel, DivisorSpec, DivisorTag};

pub const MAX_GROUND: usize = 7;
pub const MAX_RANK: usize = 5;

/// Subsets of the ground set as bit masks.
pub type Mask = u32;

pub fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &e| m | 1 << e)
}

pub fn elements_of(m: Mask) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatroidRepr", into = "MatroidRepr")]
pub struct Matroid {
    ground_size: usize,
    bases: Vec<Mask>,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct MatroidRepr {
    ground_size: usize,
    bases: Vec<Vec<usize>>,
}

impl TryFrom<MatroidRepr> for Matroid {
    type Error = Error;
    fn try_from(r: MatroidRepr) -> Result<Self> {
        Matroid::new(r.ground_size, &r.bases)
    }
}

impl From<Matroid> for MatroidRepr {
    fn from(m: Matroid) -> Self {
        MatroidRepr {
            ground_size: m.ground_size,
            bases: m.bases.iter().map(|&b| elements_of(b)).collect(),
        }
    }
}

impl Matroid {
    /// Validates sizes and the basis exchange axiom.
    pub fn new(ground_size: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if ground_size == 0 || ground_size > MAX_GROUND {
            return Err(Error::input(format!("ground set size {ground_size} outside 1..={MAX_GROUND}")));
        }
        if bases.is_empty() {
            return Err(Error::input("a matroid needs at least one basis"));
        }
        if bases.iter().flatten().any(|&e| e >= ground_size) {
            return Err(Error::input("basis element outside the ground set"));
        }
        let set: BTreeSet<Mask> = bases.iter().map(|b| mask_of(b)).collect();
        let rank = set.iter().next().unwrap().count_ones() as usize;
        if set.iter().any(|b| b.count_ones() as usize != rank) {
            return Err(Error::input("bases have different sizes"));
        }
        if bases.iter().any(|b| b.len() != rank) {
            return Err(Error::input("a basis lists a repeated element"));
        }
        for &b1 in &set {
            for &b2 in &set {
                for x in elements_of(b1 & !b2) {
                    let ok = elements_of(b2 & !b1)
                        .into_iter()
                        .any(|y| set.contains(&((b1 & !(1 << x)) | 1 << y)));
                    if !ok {
                        return Err(Error::input(format!(
                            "basis exchange fails for {:?}, {:?} at element {x}",
                            elements_of(b1),
                            elements_of(b2)
                        )));
                    }
                }
            }
        }
        Ok(Matroid {
            ground_size,
            bases: set.into_iter().collect(),
            rank,
        })
    }

    /// `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::input("uniform matroid needs r <= n"));
        }
        let bases: Vec<Vec<usize>> = crate::cone::combinations(n, r);
        Self::new(n, &bases)
    }

    pub fn boolean(n: usize) -> Result<Self> {
        Self::uniform(n, n)
    }

    /// Cycle matroid of a graph on `vertices` with the given edges; bases are
    /// spanning forests.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::input("edge endpoint outside the vertex set"));
        }
        let forest = |subset: &[usize]| -> bool {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for &e in subset {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
            true
        };
        let m = edges.len();
        let r = (0..=m)
            .rev()
            .find(|&k| crate::cone::combinations(m, k).iter().any(|s| forest(s)))
            .unwrap_or(0);
        let bases: Vec<Vec<usize>> = crate::cone::combinations(m, r).into_iter().filter(|s| forest(s)).collect();
        Self::new(m, &bases)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }

    pub fn ground(&self) -> Mask {
        (1 << self.ground_size) - 1
    }

    pub fn rank_of(&self, s: Mask) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        (0..self.ground_size)
            .filter(|&e| self.rank_of(s | 1 << e) == r)
            .fold(s, |m, e| m | 1 << e)
    }

    pub fn is_loopless(&self) -> bool {
        self.closure(0) == 0
    }

    /// Relabels the ground set by `perm` (element `i` becomes `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let bases: Vec<Vec<usize>> = self
            .bases
            .iter()
            .map(|&b| elements_of(b).into_iter().map(|e| perm[e]).collect())
            .collect();
        Self::new(self.ground_size, &bases)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    /// All flats sorted by rank, then by mask.
    pub flats: Vec<Mask>,
    pub ranks: Vec<usize>,
}

impl FlatLattice {
    /// Flats other than the closure of the empty set and the ground set.
    pub fn proper_nonempty(&self, ground: Mask) -> Vec<Mask> {
        self.flats.iter().copied().filter(|&f| f != 0 && f != ground).collect()
    }

    /// `(F, G)` with `G` covering `F`.
    pub fn covers(&self) -> Vec<(Mask, Mask)> {
        let mut out = Vec::new();
        for (i, &f) in self.flats.iter().enumerate() {
            for (j, &g) in self.flats.iter().enumerate() {
                if f & !g == 0 && f != g && self.ranks[j] == self.ranks[i] + 1 {
                    out.push((f, g));
                }
            }
        }
        out
    }
}

pub fn flats(m: &Matroid) -> FlatLattice {
    let set: BTreeSet<(usize, Mask)> = (0..=m.ground())
        .map(|s| {
            let c = m.closure(s);
            (m.rank_of(c), c)
        })
        .collect();
    let (ranks, flats) = set.into_iter().unzip();
    FlatLattice { flats, ranks }
}

/// Coefficients of the reduced characteristic polynomial
/// `chi(lambda) / (lambda - 1)`, leading first, by Moebius summation over flats.
pub fn reduced_characteristic(m: &Matroid) -> Result<Vec<BigInt>> {
    if !m.is_loopless() {
        return Err(Error::domain("the characteristic polynomial of a matroid with loops vanishes"));
    }
    let lat = flats(m);
    let r = m.rank();
    let mut mu: Vec<BigInt> = Vec::with_capacity(lat.flats.len());
    for (i, &f) in lat.flats.iter().enumerate() {
        let v = if f == 0 {
            BigInt::one()
        } else {
            -(0..i)
                .filter(|&j| lat.flats[j] & !f == 0)
                .map(|j| mu[j].clone())
                .sum::<BigInt>()
        };
        mu.push(v);
    }
    // chi(lambda) = sum mu(F) lambda^(r - rank F), stored leading first.
    let mut chi = vec![BigInt::zero(); r + 1];
    for (i, v) in mu.iter().enumerate() {
        chi[lat.ranks[i]] += v;
    }
    // Synthetic division by (lambda - 1).
    let mut out = Vec::with_capacity(r);
    let mut carry = BigInt::zero();
    for c in chi.iter().take(r) {
        carry = &carry + c;
        out.push(carry.clone());
    }
    debug_assert_eq!(&carry + &chi[r], BigInt::zero());
    Ok(out)
}
