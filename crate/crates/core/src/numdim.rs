//! Numerical dimensions, Hall–Rado criteria and kernel faces.
//!
//! Index sets are 1-based, matching the usual `[m] = {1, ..., m}` notation.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{ConeModel, GeneratorTag};
use crate::error::{Error, Result};
use crate::poly::{multisets, Direction, VolumePolynomial};
use crate::rational::Rational;

pub type IndexSet = BTreeSet<usize>;

/// Hard limit on collection size for subset enumeration (`2^m` subsets).
pub const MAX_COLLECTION: usize = 20;

/// Hard limit on the number of generator tuples enumerated.
pub const MAX_TUPLES: usize = 1_000_000;

/// `mixed_value(f, [L; k] ++ extra ++ [omega; d - k - extra.len()])`.
fn mixed_powers(
    f: &VolumePolynomial,
    l: &Direction,
    k: usize,
    extra: &[&Direction],
    omega: &Direction,
) -> Result<Rational> {
    let d = f.degree() as usize;
    let mut dirs: Vec<&Direction> = Vec::with_capacity(d);
    dirs.extend(std::iter::repeat_n(l, k));
    dirs.extend_from_slice(extra);
    dirs.extend(std::iter::repeat_n(omega, d - k - extra.len()));
    f.mixed_value_refs(&dirs)
}

/// `max { k : L^k . omega^(d-k) != 0 }`, with the zero class mapped to 0.
pub fn nd_omega(f: &VolumePolynomial, l: &Direction, omega: &Direction) -> Result<usize> {
    if l.is_zero() {
        return Ok(0);
    }
    let d = f.degree() as usize;
    for k in (0..=d).rev() {
        if !mixed_powers(f, l, k, &[], omega)?.is_zero() {
            return Ok(k);
        }
    }
    Ok(0)
}

/// A collection of nef classes with a fixed interior reference class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCollection {
    pub classes: Vec<Direction>,
    pub reference_omega: Direction,
}

impl NefCollection {
    pub fn new(classes: Vec<Direction>, reference_omega: Direction) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::input("collection needs at least one class"));
        }
        if classes.len() > MAX_COLLECTION {
            return Err(Error::input(format!(
                "collection of {} classes exceeds the limit of {MAX_COLLECTION}",
                classes.len()
            )));
        }
        if classes.iter().any(|c| c.dim() != reference_omega.dim()) {
            return Err(Error::input("collection classes have inconsistent lengths"));
        }
        Ok(NefCollection {
            classes,
            reference_omega,
        })
    }

    /// Checks every class against the nef cone's facets.
    pub fn check_nef(&self, nef: &ConeModel) -> Result<()> {
        for (i, c) in self.classes.iter().enumerate() {
            if !nef.contains(c) {
                return Err(Error::input(format!("class {} ({c}) is not nef", i + 1)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `L_I = sum_{i in I} L_i`.
    pub fn partial_sum(&self, set: &IndexSet) -> Direction {
        Direction::sum(
            self.reference_omega.dim(),
            set.iter().map(|&i| &self.classes[i - 1]),
        )
    }
}

/// Nonempty subsets of `[m]`, by size then lexicographically.
pub fn nonempty_subsets(m: usize) -> Vec<IndexSet> {
    let mut out = Vec::with_capacity((1usize << m) - 1);
    for size in 1..=m {
        for c in crate::cone::combinations(m, size) {
            out.push(c.into_iter().map(|i| i + 1).collect());
        }
    }
    out
}

fn subset_nds(f: &VolumePolynomial, coll: &NefCollection) -> Result<Vec<(IndexSet, usize)>> {
    nonempty_subsets(coll.len())
        .into_iter()
        .map(|set| {
            let nd = nd_omega(f, &coll.partial_sum(&set), &coll.reference_omega)?;
            Ok((set, nd))
        })
        .collect()
}

/// `min over nonempty I of nd(L_I) - |I| + m`.
pub fn nd_collection(f: &VolumePolynomial, coll: &NefCollection) -> Result<usize> {
    let m = coll.len() as i64;
    let best = subset_nds(f, coll)?
        .into_iter()
        .map(|(set, nd)| nd as i64 - set.len() as i64 + m)
        .min()
        .expect("collection is nonempty");
    Ok(best.max(0) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallRadoReport {
    pub product_nonzero: bool,
    pub nd_criterion: bool,
    pub violating_set: Option<IndexSet>,
    /// The product was zero at some samples and nonzero at others.
    pub sample_disagreement: bool,
    pub agree: bool,
}

/// Compares `L_1 ... L_m . omega^(d-m) != 0` (over every sample `omega`)
/// with the subset criterion `nd(L_I) >= |I|`.
pub fn hall_rado(
    f: &VolumePolynomial,
    coll: &NefCollection,
    samples: &[Direction],
) -> Result<HallRadoReport> {
    let d = f.degree() as usize;
    let m = coll.len();
    if m > d {
        return Err(Error::input(format!(
            "collection of {m} classes exceeds the degree {d}"
        )));
    }
    let mut omegas: Vec<&Direction> = vec![&coll.reference_omega];
    omegas.extend(samples.iter());
    let mut nonzero = Vec::with_capacity(omegas.len());
    for omega in &omegas {
        let mut dirs: Vec<&Direction> = coll.classes.iter().collect();
        dirs.extend(std::iter::repeat_n(*omega, d - m));
        nonzero.push(!f.mixed_value_refs(&dirs)?.is_zero());
    }
    let product_nonzero = nonzero[0];
    let sample_disagreement = nonzero.iter().any(|&b| b != product_nonzero);
    let violating_set = subset_nds(f, coll)?
        .into_iter()
        .find(|(set, nd)| *nd < set.len())
        .map(|(set, _)| set);
    let nd_criterion = violating_set.is_none();
    Ok(HallRadoReport {
        product_nonzero,
        nd_criterion,
        violating_set,
        sample_disagreement,
        agree: product_nonzero == nd_criterion && !sample_disagreement,
    })
}

/// The unique maximal `I` with `nd(L_I) = |I|`; requires `nd(coll) = m`.
pub fn maximal_index_set(f: &VolumePolynomial, coll: &NefCollection) -> Result<IndexSet> {
    let m = coll.len();
    let nd = nd_collection(f, coll)?;
    if nd != m {
        return Err(Error::domain(format!(
            "maximal index set needs nd(collection) = {m}, found {nd}"
        )));
    }
    let tight: Vec<IndexSet> = subset_nds(f, coll)?
        .into_iter()
        .filter(|(set, nd)| *nd == set.len())
        .map(|(set, _)| set)
        .collect();
    if tight.is_empty() {
        return Err(Error::domain("no tight index set (supercritical collection)"));
    }
    // tight sets are closed under union
    for a in &tight {
        for b in &tight {
            let u: IndexSet = a.union(b).cloned().collect();
            let nd = nd_omega(f, &coll.partial_sum(&u), &coll.reference_omega)?;
            if nd != u.len() {
                return Err(Error::Internal(format!(
                    "tight sets {a:?} and {b:?} have a non-tight union"
                )));
            }
        }
    }
    Ok(tight.into_iter().fold(IndexSet::new(), |acc, s| {
        acc.union(&s).cloned().collect()
    }))
}

/// `nd(L+M+N) + nd(L) <= nd(L+M) + nd(L+N)`.
pub fn submodularity_check(
    f: &VolumePolynomial,
    l: &Direction,
    m: &Direction,
    n: &Direction,
    omega: &Direction,
) -> Result<bool> {
    let lhs = nd_omega(f, &l.add(m).add(n), omega)? + nd_omega(f, l, omega)?;
    let rhs = nd_omega(f, &l.add(m), omega)? + nd_omega(f, &l.add(n), omega)?;
    Ok(lhs <= rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Vanishing,
    Critical,
    Supercritical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroGenerator {
    /// 1-based generator index in the cone.
    pub index: usize,
    pub generator: Direction,
    pub tag: GeneratorTag,
    /// `nd(L_{I_0} + g) = nd(L_{I_0})`; present in the critical case.
    pub preserves_nd: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFaceReport {
    pub nd_collection: usize,
    pub classification: Classification,
    pub zero_generators: Vec<ZeroGenerator>,
    pub maximal_index_set: Option<IndexSet>,
}

/// Face of `cone` cut out by `g -> g . L_1 ... L_{d-1}`, which must be
/// nonnegative on every generator.
pub fn kernel_face(
    f: &VolumePolynomial,
    coll: &NefCollection,
    cone: &ConeModel,
) -> Result<KernelFaceReport> {
    let d = f.degree() as usize;
    if coll.len() + 1 != d {
        return Err(Error::input(format!(
            "kernel face needs {} classes, got {}",
            d - 1,
            coll.len()
        )));
    }
    let nd = nd_collection(f, coll)?;
    let classification = if nd + 2 <= d {
        Classification::Vanishing
    } else if nd + 1 == d {
        Classification::Critical
    } else {
        Classification::Supercritical
    };
    let i0 = if classification == Classification::Critical {
        Some(maximal_index_set(f, coll)?)
    } else {
        None
    };
    let base = i0.as_ref().map(|s| coll.partial_sum(s));
    let base_nd = match &base {
        Some(b) => Some(nd_omega(f, b, &coll.reference_omega)?),
        None => None,
    };
    let mut zero_generators = Vec::new();
    for (j, g) in cone.generators.iter().enumerate() {
        let mut dirs: Vec<&Direction> = vec![g];
        dirs.extend(coll.classes.iter());
        let value = f.mixed_value_refs(&dirs)?;
        if value.is_negative() {
            return Err(Error::Precondition(format!(
                "functional is negative on generator {} ({g})",
                j + 1
            )));
        }
        if value.is_zero() {
            let preserves_nd = match (&base, base_nd) {
                (Some(b), Some(bn)) => {
                    Some(nd_omega(f, &b.add(g), &coll.reference_omega)? == bn)
                }
                _ => None,
            };
            zero_generators.push(ZeroGenerator {
                index: j + 1,
                generator: g.clone(),
                tag: cone.tags.get(j).copied().unwrap_or_default(),
                preserves_nd,
            });
        }
    }
    Ok(KernelFaceReport {
        nd_collection: nd,
        classification,
        zero_generators,
        maximal_index_set: i0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    /// `nd(L)`.
    pub k: usize,
    /// `k < d`; the first condition is vacuous otherwise.
    pub applicable: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    /// Smallest `lambda` with `(lambda L - alpha) . B_1 ... B_{d-1} >= 0` for all
    /// nef generator tuples, when one exists.
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub lambda_min: Option<Rational>,
    pub agree: bool,
}

/// The three equivalent annihilation conditions for nef `L`, `alpha`.
pub fn annihilation_triple(
    f: &VolumePolynomial,
    l: &Direction,
    alpha: &Direction,
    omega: &Direction,
    nef: &ConeModel,
) -> Result<AnnihilationReport> {
    let d = f.degree() as usize;
    let k = nd_omega(f, l, omega)?;
    let applicable = k < d;
    let cond1 = if applicable {
        mixed_powers(f, l, k, &[alpha], omega)?.is_zero()
    } else {
        true
    };
    let cond2 = nd_omega(f, &l.add(alpha), omega)? == k;
    let tuples = generator_tuples(nef, d - 1)?;
    let mut lambda: Option<Rational> = Some(Rational::zero());
    for t in &tuples {
        let mut dirs: Vec<&Direction> = t.clone();
        dirs.push(l);
        let a = f.mixed_value_refs(&dirs)?;
        *dirs.last_mut().expect("nonempty") = alpha;
        let b = f.mixed_value_refs(&dirs)?;
        if a.is_zero() {
            if b.is_positive() {
                lambda = None;
                break;
            }
            continue;
        }
        let q = b / a;
        if let Some(cur) = lambda.as_mut() {
            if q > *cur {
                *cur = q;
            }
        }
    }
    let cond3 = lambda.is_some();
    Ok(AnnihilationReport {
        k,
        applicable,
        cond1,
        cond2,
        cond3,
        lambda_min: lambda,
        agree: cond1 == cond2 && cond2 == cond3,
    })
}

/// All `k`-multisets of cone generators, refusing more than [`MAX_TUPLES`].
pub fn generator_tuples(cone: &ConeModel, k: usize) -> Result<Vec<Vec<&Direction>>> {
    let g = cone.generators.len();
    let count = crate::rational::binomial((g + k - 1) as u32, k as u32);
    if count > num_bigint::BigInt::from(MAX_TUPLES) {
        return Err(Error::Cap(format!(
            "{count} generator tuples exceed the limit of {MAX_TUPLES}"
        )));
    }
    Ok(multisets(g, k)
        .into_iter()
        .map(|ms| ms.into_iter().map(|i| &cone.generators[i]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly(s: usize, terms: &[(&[u32], i64)]) -> VolumePolynomial {
        VolumePolynomial::from_int_terms(s, terms).unwrap()
    }

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().cloned().collect()
    }

    #[test]
    fn nd_omega_examples() {
        let f = poly(2, &[(&[2, 1], 1)]);
        let w = Direction::from_ints(&[1, 1]);
        assert_eq!(nd_omega(&f, &Direction::unit(2, 1), &w).unwrap(), 1);
        assert_eq!(nd_omega(&f, &Direction::unit(2, 0), &w).unwrap(), 2);
        assert_eq!(nd_omega(&f, &w, &w).unwrap(), 3);
        assert_eq!(nd_omega(&f, &Direction::zeros(2), &w).unwrap(), 0);
    }

    #[test]
    fn nd_collection_examples() {
        let f = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)]);
        let w = Direction::from_ints(&[1, 1, 1]);
        let c = NefCollection::new(vec![Direction::unit(3, 1), Direction::unit(3, 2)], w.clone())
            .unwrap();
        assert_eq!(nd_collection(&f, &c).unwrap(), 1);
        let c = NefCollection::new(vec![w.clone(), w.clone()], w.clone()).unwrap();
        assert_eq!(nd_collection(&f, &c).unwrap(), 2);
        let c = NefCollection::new(vec![Direction::zeros(3)], w).unwrap();
        assert_eq!(nd_collection(&f, &c).unwrap(), 0);
    }

    #[test]
    fn hall_rado_examples() {
        let f = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)]);
        let w = Direction::from_ints(&[1, 1, 1]);
        let c = NefCollection::new(vec![Direction::unit(3, 1), Direction::unit(3, 2)], w.clone())
            .unwrap();
        let r = hall_rado(&f, &c, &[]).unwrap();
        assert!(!r.product_nonzero);
        assert_eq!(r.violating_set, Some(set(&[1, 2])));
        assert!(r.agree);

        let g = poly(2, &[(&[2, 1], 1)]);
        let w2 = Direction::from_ints(&[1, 1]);
        let c = NefCollection::new(vec![Direction::unit(2, 0), Direction::unit(2, 1)], w2.clone())
            .unwrap();
        let r = hall_rado(&g, &c, &[]).unwrap();
        assert!(r.product_nonzero && r.nd_criterion && r.agree);

        let c = NefCollection::new(vec![Direction::unit(2, 0), Direction::zeros(2)], w2.clone())
            .unwrap();
        let r = hall_rado(&g, &c, &[]).unwrap();
        assert!(!r.product_nonzero);
        assert_eq!(r.violating_set, Some(set(&[2])));

        let c = NefCollection::new(vec![w2.clone(); 4], w2).unwrap();
        assert!(matches!(hall_rado(&g, &c, &[]), Err(Error::Input(_))));
    }

    #[test]
    fn maximal_index_set_examples() {
        let xy = poly(2, &[(&[1, 1], 1)]);
        let c = NefCollection::new(vec![Direction::unit(2, 0)], Direction::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(maximal_index_set(&xy, &c).unwrap(), set(&[1]));
        let xyz = poly(3, &[(&[1, 1, 1], 1)]);
        let c = NefCollection::new(
            vec![Direction::unit(3, 0), Direction::unit(3, 1)],
            Direction::from_ints(&[1, 1, 1]),
        )
        .unwrap();
        assert_eq!(maximal_index_set(&xyz, &c).unwrap(), set(&[1, 2]));
        let w = Direction::from_ints(&[1, 1, 1]);
        let c = NefCollection::new(vec![w.clone()], w).unwrap();
        assert!(matches!(maximal_index_set(&xyz, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn submodularity_examples() {
        let f = poly(2, &[(&[2, 1], 1)]);
        let w = Direction::from_ints(&[1, 1]);
        assert!(submodularity_check(&f, &w, &w, &w, &w).unwrap());
        assert!(submodularity_check(
            &f,
            &Direction::unit(2, 0),
            &Direction::unit(2, 1),
            &Direction::zeros(2),
            &w
        )
        .unwrap());
    }

    #[test]
    fn kernel_face_examples() {
        let f = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)]);
        let w = Direction::from_ints(&[1, 1, 1]);
        let cone = ConeModel::positive_orthant(3);
        let c = NefCollection::new(vec![Direction::unit(3, 1)], w.clone()).unwrap();
        let r = kernel_face(&f, &c, &cone).unwrap();
        let idx: Vec<usize> = r.zero_generators.iter().map(|z| z.index).collect();
        assert_eq!(idx, vec![2, 3]);
        assert_eq!(r.classification, Classification::Critical);
        assert_eq!(r.maximal_index_set, Some(set(&[1])));
        assert!(r.zero_generators.iter().all(|z| z.preserves_nd == Some(true)));

        let c = NefCollection::new(vec![w.clone()], w.clone()).unwrap();
        let xyz = poly(3, &[(&[1, 1, 1], 1)]);
        let c3 = NefCollection::new(vec![w.clone(), w.clone()], w.clone()).unwrap();
        let r = kernel_face(&xyz, &c3, &cone).unwrap();
        assert_eq!(r.classification, Classification::Supercritical);
        assert!(r.zero_generators.is_empty());
        assert!(kernel_face(&f, &c, &cone).unwrap().zero_generators.is_empty());

        let zero = NefCollection::new(vec![Direction::zeros(3)], w).unwrap();
        let r = kernel_face(&f, &zero, &cone).unwrap();
        assert_eq!(r.classification, Classification::Vanishing);
        assert_eq!(r.zero_generators.len(), 3);
    }

    #[test]
    fn annihilation_examples() {
        let f = poly(2, &[(&[2, 1], 1)]);
        let w = Direction::from_ints(&[1, 1]);
        let nef = ConeModel::positive_orthant(2);
        let e1 = Direction::unit(2, 0);
        let r = annihilation_triple(&f, &e1, &e1, &w, &nef).unwrap();
        assert!(r.cond1 && r.cond2 && r.cond3 && r.agree);
        assert_eq!(r.lambda_min, Some(int(1)));
        let r = annihilation_triple(&f, &e1, &Direction::unit(2, 1), &w, &nef).unwrap();
        assert_eq!(r.k, 2);
        assert!(!r.cond1 && !r.cond2 && !r.cond3 && r.agree);
        let r = annihilation_triple(&f, &e1, &Direction::zeros(2), &w, &nef).unwrap();
        assert!(r.cond1 && r.cond2 && r.cond3 && r.agree);
    }
}
