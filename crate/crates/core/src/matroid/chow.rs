use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{elements_of, flats, mask_of, Mask, Matroid, MAX_RANK};
use crate::cone::ConeModel;
use crate::error::{Error, Result};
use crate::poly::VolumePolynomial;
use crate::rational::{serde_rational, serde_rational_vec, Rational};

/// Largest chain-monomial basis accepted in any degree.
pub const MAX_MONOMIALS: usize = 60_000;

/// A monomial in the flat variables, as sorted flat indices. Only monomials
/// whose flats form a multichain survive the incomparability relations.
type Monomial = Vec<usize>;

#[derive(Clone, Debug)]
pub struct ChowRingModel {
    matroid: Matroid,
    /// Proper nonempty flats sorted by rank, then mask; `F < G` implies
    /// `index(F) < index(G)`.
    flats: Vec<Mask>,
    flat_ranks: Vec<usize>,
    /// Multichain monomials per degree `0..=r-1`.
    monomials: Vec<Vec<Monomial>>,
    quotient_dims: Vec<usize>,
    /// Degree of each top-degree multichain monomial.
    degree_map: HashMap<Monomial, Rational>,
}

impl ChowRingModel {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn flats(&self) -> &[Mask] {
        &self.flats
    }

    pub fn flat_ranks(&self) -> &[usize] {
        &self.flat_ranks
    }

    /// Top degree `r - 1`.
    pub fn top_degree(&self) -> usize {
        self.matroid.rank() - 1
    }

    pub fn monomial_basis(&self, k: usize) -> &[Vec<usize>] {
        &self.monomials[k]
    }

    pub fn quotient_dimension(&self, k: usize) -> usize {
        self.quotient_dims[k]
    }

    /// Degree of `x_{F_1} ... x_{F_{r-1}}`; zero when two flats are incomparable.
    pub fn monomial_degree(&self, flats: &[Mask]) -> Result<Rational> {
        if flats.len() != self.top_degree() {
            return Err(Error::input(format!(
                "expected {} flats, got {}",
                self.top_degree(),
                flats.len()
            )));
        }
        let mut m = Vec::with_capacity(flats.len());
        for f in flats {
            match self.flats.iter().position(|g| g == f) {
                Some(i) => m.push(i),
                None => return Err(Error::input(format!("{:?} is not a proper nonempty flat", elements_of(*f)))),
            }
        }
        m.sort_unstable();
        Ok(if is_chain(&self.flats, &m) {
            self.degree_map[&m].clone()
        } else {
            Rational::zero()
        })
    }

    /// Dimension of the span of `divisors` in degree one.
    pub fn divisor_rank(&self, divisors: &[DivisorSpec]) -> Result<usize> {
        let n = self.matroid.ground_size();
        let relations: Vec<Vec<Rational>> = (1..n)
            .map(|i| {
                self.flats
                    .iter()
                    .map(|&f| Rational::from_integer((i64::from(f & 1 == 1) - i64::from(f >> i & 1 == 1)).into()))
                    .collect()
            })
            .collect();
        let mut all = relations.clone();
        for d in divisors {
            all.push(self.divisor_coefficients(d)?);
        }
        Ok(crate::linalg::rank(&all) - crate::linalg::rank(&relations))
    }

    /// Coefficients of a divisor on the flat variables.
    pub fn divisor_coefficients(&self, d: &DivisorSpec) -> Result<Vec<Rational>> {
        let n = self.matroid.ground_size();
        Ok(match d {
            DivisorSpec::Alpha => self.flats.iter().map(|&f| indicator(f & 1 == 1)).collect(),
            DivisorSpec::Beta => self.flats.iter().map(|&f| indicator(f & 1 == 0)).collect(),
            _ => {
                let z = d.subset_function(n)?;
                self.flats.iter().map(|&f| z[f as usize].clone()).collect()
            }
        })
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn is_chain(flats: &[Mask], m: &[usize]) -> bool {
    m.windows(2).all(|w| flats[w[0]] & !flats[w[1]] == 0)
}

/// `m * x_j` if the product is still a multichain.
fn times(flats: &[Mask], m: &[usize], j: usize) -> Option<Monomial> {
    let pos = m.partition_point(|&i| i <= j);
    let below = pos == 0 || flats[m[pos - 1]] & !flats[j] == 0;
    let above = pos == m.len() || flats[j] & !flats[m[pos]] == 0;
    (below && above).then(|| {
        let mut out = m.to_vec();
        out.insert(pos, j);
        out
    })
}

fn multichains(flats: &[Mask], k: usize) -> Result<Vec<Monomial>> {
    let mut level: Vec<Monomial> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &level {
            let start = m.last().copied().unwrap_or(0);
            for j in start..flats.len() {
                if m.last().is_none_or(|&l| flats[l] & !flats[j] == 0) {
                    let mut e = m.clone();
                    e.push(j);
                    next.push(e);
                }
            }
        }
        if next.len() > MAX_MONOMIALS {
            return Err(Error::Cap(format!(
                "more than {MAX_MONOMIALS} chain monomials in degree {}",
                m_len(&next)
            )));
        }
        level = next;
    }
    Ok(level)
}

fn m_len(level: &[Monomial]) -> usize {
    level.first().map_or(0, Vec::len)
}

/// Row echelon form over sparse rows, built incrementally; each stored row
/// has a distinct leading column.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        row.retain(|_, c| !c.is_zero());
        while let Some((&lead, c)) = row.iter().next() {
            let Some(pivot) = self.rows.get(&lead) else {
                let c = c.clone();
                for v in row.values_mut() {
                    *v /= &c;
                }
                self.rows.insert(lead, row);
                return;
            };
            let c = c.clone();
            for (&j, p) in pivot {
                let e = row.entry(j).or_insert_with(Rational::zero);
                *e -= &c * p;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The functional vanishing on every row, given its value on the free
    /// columns.
    fn annihilator(&self, cols: usize, free_value: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let mut phi = vec![Rational::zero(); cols];
        for c in 0..cols {
            if !self.rows.contains_key(&c) {
                phi[c] = free_value(c);
            }
        }
        for (&lead, row) in self.rows.iter().rev() {
            let s: Rational = row.iter().filter(|(&j, _)| j != lead).map(|(&j, v)| v * &phi[j]).sum();
            phi[lead] = -s;
        }
        phi
    }
}

/// Builds the Chow ring: degree `k` is spanned by multichain monomials
/// modulo the linear relations times degree `k - 1`.
pub fn chow_ring(m: &Matroid) -> Result<ChowRingModel> {
    if !m.is_loopless() {
        return Err(Error::domain("the Chow ring needs a loopless matroid"));
    }
    let r = m.rank();
    if r < 2 {
        return Err(Error::domain("the Chow ring needs rank at least 2"));
    }
    if r > MAX_RANK {
        return Err(Error::Cap(format!("rank {r} exceeds {MAX_RANK}")));
    }
    let lattice = flats(m);
    let ground = m.ground();
    let (flat_ranks, flat_list): (Vec<usize>, Vec<Mask>) = lattice
        .flats
        .iter()
        .zip(&lattice.ranks)
        .filter(|(&f, _)| f != 0 && f != ground)
        .map(|(&f, &k)| (k, f))
        .unzip();
    // Linear relations sum_{F ∋ 0} x_F - sum_{F ∋ i} x_F for i > 0.
    let relations: Vec<Vec<(usize, Rational)>> = (1..m.ground_size())
        .map(|i| {
            flat_list
                .iter()
                .enumerate()
                .filter_map(|(j, &f)| {
                    let c = i64::from(f & 1 == 1) - i64::from(f >> i & 1 == 1);
                    (c != 0).then(|| (j, Rational::from_integer(c.into())))
                })
                .collect()
        })
        .collect();

    let mut monomials: Vec<Vec<Monomial>> = Vec::with_capacity(r);
    let mut quotient_dims = Vec::with_capacity(r);
    let mut top = None;
    for k in 0..r {
        let basis = multichains(&flat_list, k)?;
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::default();
        if k > 0 {
            for lower in &monomials[k - 1] {
                for rel in &relations {
                    let mut row = BTreeMap::new();
                    for (j, c) in rel {
                        if let Some(p) = times(&flat_list, lower, *j) {
                            *row.entry(index[&p]).or_insert_with(Rational::zero) += c;
                        }
                    }
                    ech.insert(row);
                }
            }
        }
        quotient_dims.push(basis.len() - ech.rank());
        if k == r - 1 {
            top = Some((ech, basis.len()));
        }
        monomials.push(basis);
    }
    let (ech, cols) = top.expect("r >= 2");
    if quotient_dims[r - 1] != 1 {
        return Err(Error::Internal(format!(
            "top graded piece has dimension {}",
            quotient_dims[r - 1]
        )));
    }
    let phi = ech.annihilator(cols, |_| Rational::one());
    let top_basis = &monomials[r - 1];
    // Normalize on one complete flag, then require every flag to agree.
    let is_flag = |m: &Monomial| m.iter().enumerate().all(|(i, &j)| flat_ranks[j] == i + 1);
    let flag = top_basis
        .iter()
        .position(&is_flag)
        .ok_or_else(|| Error::Internal("no complete flag".into()))?;
    let scale = phi[flag].clone();
    if scale.is_zero() {
        return Err(Error::Internal("degree map vanishes on a complete flag".into()));
    }
    let degree_map: HashMap<Monomial, Rational> =
        top_basis.iter().cloned().zip(phi.iter().map(|v| v / &scale)).collect();
    for m in top_basis.iter().filter(|m| is_flag(m)) {
        if !degree_map[m].is_one() {
            return Err(Error::Internal(format!(
                "complete flag {:?} has degree {}",
                m.iter().map(|&j| elements_of(flat_list[j])).collect::<Vec<_>>(),
                degree_map[m]
            )));
        }
    }
    Ok(ChowRingModel {
        matroid: m.clone(),
        flats: flat_list,
        flat_ranks,
        monomials,
        quotient_dims,
        degree_map,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorTag {
    /// From a strictly submodular function.
    Ample,
    Nef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetValue {
    pub set: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// A divisor class. `Alpha` and `Beta` are the sums of `x_F` over flats
/// containing, respectively avoiding, element 0; a function `z` on subsets
/// gives `sum_F z(F) x_F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DivisorSpec {
    Alpha,
    Beta,
    /// Values on every subset; the empty set and the ground set default to 0.
    Submodular { values: Vec<SubsetValue> },
    /// `z(S) = values[|S|]`.
    Cardinality {
        #[serde(with = "serde_rational_vec")]
        values: Vec<Rational>,
    },
}

impl DivisorSpec {
    /// `z` indexed by subset mask.
    fn subset_function(&self, n: usize) -> Result<Vec<Rational>> {
        let size = 1usize << n;
        match self {
            DivisorSpec::Alpha | DivisorSpec::Beta => Err(Error::input("named divisors have no subset function")),
            DivisorSpec::Cardinality { values } => {
                if values.len() != n + 1 {
                    return Err(Error::input(format!("cardinality divisor needs {} values", n + 1)));
                }
                Ok((0..size).map(|s| values[s.count_ones() as usize].clone()).collect())
            }
            DivisorSpec::Submodular { values } => {
                let mut z: Vec<Option<Rational>> = vec![None; size];
                z[0] = Some(Rational::zero());
                z[size - 1] = Some(Rational::zero());
                for sv in values {
                    if sv.set.iter().any(|&e| e >= n) {
                        return Err(Error::input(format!("subset {:?} leaves the ground set", sv.set)));
                    }
                    z[mask_of(&sv.set) as usize] = Some(sv.value.clone());
                }
                z.into_iter()
                    .enumerate()
                    .map(|(s, v)| v.ok_or_else(|| Error::input(format!("no value for subset {:?}", elements_of(s as Mask)))))
                    .collect()
            }
        }
    }

    /// Nef when `z` is submodular, ample when strictly so on every
    /// incomparable pair; other functions are rejected.
    pub fn tag(&self, n: usize) -> Result<DivisorTag> {
        if matches!(self, DivisorSpec::Alpha | DivisorSpec::Beta) {
            return Ok(DivisorTag::Nef);
        }
        let z = self.subset_function(n)?;
        let mut strict = true;
        for s in 0..z.len() {
            for t in s + 1..z.len() {
                let gap = &z[s] + &z[t] - &z[s & t] - &z[s | t];
                if gap < Rational::zero() {
                    return Err(Error::domain(format!(
                        "non-nef divisor: z fails submodularity on {:?}, {:?}",
                        elements_of(s as Mask),
                        elements_of(t as Mask)
                    )));
                }
                let incomparable = s & !t != 0 && t & !s != 0;
                if incomparable && gap.is_zero() {
                    strict = false;
                }
            }
        }
        Ok(if strict { DivisorTag::Ample } else { DivisorTag::Nef })
    }
}

/// Intersection number of `r - 1` divisors.
pub fn degree(ring: &ChowRingModel, divisors: &[DivisorSpec]) -> Result<Rational> {
    if divisors.len() != ring.top_degree() {
        return Err(Error::input(format!(
            "degree needs {} divisors, got {}",
            ring.top_degree(),
            divisors.len()
        )));
    }
    let coeffs = divisors
        .iter()
        .map(|d| ring.divisor_coefficients(d))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&[Rational]> = coeffs.iter().map(Vec::as_slice).collect();
    Ok(degree_of_coefficients(ring, &refs))
}

fn degree_of_coefficients(ring: &ChowRingModel, divisors: &[&[Rational]]) -> Rational {
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::from([(Vec::new(), Rational::one())]);
    for d in divisors {
        let mut next: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &acc {
            for (j, dj) in d.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some(p) = times(&ring.flats, m, j) {
                    *next.entry(p).or_insert_with(Rational::zero) += c * dj;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc.iter().map(|(m, c)| c * &ring.degree_map[m]).sum()
}

/// `f(t) = deg((sum t_i D_i)^(r-1))` with the positive orthant as its cone.
pub fn bergman_volume_polynomial(
    ring: &ChowRingModel,
    divisors: &[DivisorSpec],
) -> Result<(VolumePolynomial, ConeModel)> {
    if divisors.is_empty() {
        return Err(Error::input("at least one divisor is required"));
    }
    let n = ring.matroid.ground_size();
    for d in divisors {
        d.tag(n)?;
    }
    let coeffs = divisors
        .iter()
        .map(|d| ring.divisor_coefficients(d))
        .collect::<Result<Vec<_>>>()?;
    let f = VolumePolynomial::from_mixed_values(divisors.len(), ring.top_degree() as u32, |ms| {
        let refs: Vec<&[Rational]> = ms.iter().map(|&i| coeffs[i].as_slice()).collect();
        Ok(degree_of_coefficients(ring, &refs))
    })?;
    Ok((f, ConeModel::positive_orthant(divisors.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::reduced_characteristic;
    use crate::rational::int;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn alpha_beta_degrees(m: &Matroid) -> Vec<Rational> {
        let ring = chow_ring(m).unwrap();
        let d = ring.top_degree();
        (0..=d)
            .map(|k| {
                let mut ds = vec![DivisorSpec::Alpha; d - k];
                ds.extend(vec![DivisorSpec::Beta; k]);
                degree(&ring, &ds).unwrap()
            })
            .collect()
    }

    fn oracle(m: &Matroid) -> Vec<Rational> {
        reduced_characteristic(m)
            .unwrap()
            .into_iter()
            .map(|c: BigInt| Rational::from_integer(c.abs()))
            .collect()
    }

    #[test]
    fn uniform_three_four() {
        let m = Matroid::uniform(3, 4).unwrap();
        let ring = chow_ring(&m).unwrap();
        assert_eq!(ring.quotient_dimension(2), 1);
        assert_eq!(ring.quotient_dimension(0), 1);
        assert_eq!(alpha_beta_degrees(&m), vec![int(1), int(3), int(3)]);
        assert_eq!(oracle(&m), vec![int(1), int(3), int(3)]);
        // incomparable flats multiply to zero
        assert_eq!(ring.monomial_degree(&[0b0011, 0b0100]).unwrap(), int(0));
        assert_eq!(ring.monomial_degree(&[0b0001, 0b0011]).unwrap(), int(1));
    }

    #[test]
    fn small_ranks_and_boolean() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let ring = chow_ring(&u24).unwrap();
        assert_eq!(ring.top_degree(), 1);
        assert_eq!(alpha_beta_degrees(&u24), oracle(&u24));
        let b3 = Matroid::boolean(3).unwrap();
        assert_eq!(chow_ring(&b3).unwrap().quotient_dimension(2), 1);
        assert_eq!(alpha_beta_degrees(&b3), oracle(&b3));
    }

    #[test]
    fn oracle_agreement() {
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for m in [Matroid::uniform(3, 5).unwrap(), k4, Matroid::uniform(4, 5).unwrap()] {
            assert_eq!(alpha_beta_degrees(&m), oracle(&m));
        }
    }

    #[test]
    fn volume_polynomial_and_tags() {
        let m = Matroid::uniform(3, 4).unwrap();
        let ring = chow_ring(&m).unwrap();
        let (f, cone) = bergman_volume_polynomial(&ring, &[DivisorSpec::Alpha, DivisorSpec::Beta]).unwrap();
        assert_eq!(f.coefficient(&[2, 0]), int(1));
        assert_eq!(f.coefficient(&[1, 1]), int(6));
        assert_eq!(f.coefficient(&[0, 2]), int(3));
        assert_eq!(cone.generators.len(), 2);
        assert_eq!(ring.divisor_rank(&[DivisorSpec::Alpha, DivisorSpec::Beta]).unwrap(), 2);

        let concave = DivisorSpec::Cardinality {
            values: vec![int(0), int(3), int(4), int(3), int(0)],
        };
        assert_eq!(concave.tag(4).unwrap(), DivisorTag::Ample);
        let bad = DivisorSpec::Cardinality {
            values: vec![int(0), int(-1), int(0), int(-1), int(0)],
        };
        assert!(bergman_volume_polynomial(&ring, &[bad]).is_err());
        let (single, _) = bergman_volume_polynomial(&ring, std::slice::from_ref(&concave)).unwrap();
        let deg = degree(&ring, &[concave.clone(), concave]).unwrap();
        assert_eq!(single.coefficient(&[2]), deg);
        assert!(deg > int(0));
        // every symmetric class of a uniform matroid lies in a plane
        let three = [DivisorSpec::Alpha, DivisorSpec::Beta, concave_copy()];
        assert_eq!(ring.divisor_rank(&three).unwrap(), 2);
    }

    fn concave_copy() -> DivisorSpec {
        DivisorSpec::Cardinality {
            values: vec![int(0), int(3), int(4), int(3), int(0)],
        }
    }

    #[test]
    fn permutation_invariance() {
        let m = Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let p = m.permute(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(alpha_beta_degrees(&m), alpha_beta_degrees(&p));
    }
}
