//! Homogeneous polynomials with exact rational coefficients.
//!
//! A [`VolumePolynomial`] `f` of degree `d` in `s` variables stands in for a
//! class through `v -> f(v)`. Mixed values use the normalization
//! `mixed_value(v_1, ..., v_d) = (1/d!) D_{v_1} ... D_{v_d} f`, so that
//! `mixed_value(v, ..., v) = f(v)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, fmt_rational, int, Rational};

/// A vector of exact coordinates (a class, a generator, a sample point).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(#[serde(with = "crate::rational::serde_rational_vec")] pub Vec<Rational>);

impl Direction {
    pub fn new(coords: Vec<Rational>) -> Self {
        Direction(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Direction(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(s: usize) -> Self {
        Direction(vec![Rational::zero(); s])
    }

    pub fn unit(s: usize, i: usize) -> Self {
        let mut v = Self::zeros(s);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Direction) -> Direction {
        Direction(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Direction) -> Direction {
        Direction(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Direction {
        Direction(self.0.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, o: &Direction) -> Rational {
        self.0
            .iter()
            .zip(&o.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Sum of a list of directions; `dim` is used when the list is empty.
    pub fn sum<'a>(dim: usize, items: impl IntoIterator<Item = &'a Direction>) -> Direction {
        items
            .into_iter()
            .fold(Direction::zeros(dim), |acc, v| acc.add(v))
    }

    /// True when `o = c * self` for some rational `c` (zero vectors count as
    /// proportional to everything).
    pub fn is_proportional(&self, o: &Direction) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if &self.0[i] * &o.0[j] != &self.0[j] * &o.0[i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(crate::rational::to_f64).collect()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    degree: u32,
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl VolumePolynomial {
    /// Builds a homogeneous polynomial, dropping zero coefficients and
    /// merging repeated exponents.
    pub fn new(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::input("polynomial needs at least one variable"));
        }
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::input(format!(
                    "exponent {:?} has length {} but nvars is {}",
                    e,
                    e.len(),
                    nvars
                )));
            }
            let total: u32 = e.iter().sum();
            if total != degree {
                return Err(Error::input(format!(
                    "non-homogeneous term {e:?}: total degree {total} != {degree}"
                )));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(VolumePolynomial {
            degree,
            nvars,
            terms: map,
        })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let degree = terms.first().map(|t| t.0.iter().sum()).unwrap_or(0);
        Self::new(
            nvars,
            degree,
            terms.iter().map(|(e, c)| (e.to_vec(), int(*c))),
        )
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        VolumePolynomial {
            degree,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic order (largest exponent first).
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    fn check_dim(&self, v: &Direction) -> Result<()> {
        if v.dim() != self.nvars {
            return Err(Error::input(format!(
                "direction of length {} used with a polynomial in {} variables",
                v.dim(),
                self.nvars
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &Direction) -> Result<Rational> {
        self.check_dim(v)?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in v.0.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += m;
        }
        Ok(total)
    }

    /// `D_v f = sum_i v_i * df/dx_i`, homogeneous of degree `d - 1`.
    pub fn directional_derivative(&self, v: &Direction) -> Result<VolumePolynomial> {
        self.check_dim(v)?;
        if self.degree == 0 {
            return Err(Error::domain("cannot differentiate a degree-0 polynomial"));
        }
        let mut out: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (i, vi) in v.0.iter().enumerate() {
                if e[i] == 0 || vi.is_zero() {
                    continue;
                }
                let mut ne = e.clone();
                ne[i] -= 1;
                let add = c * vi * int(e[i] as i64);
                *out.entry(ne).or_insert_with(Rational::zero) += add;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(VolumePolynomial {
            degree: self.degree - 1,
            nvars: self.nvars,
            terms: out,
        })
    }

    /// Polarized value `(1/d!) D_{v_1} ... D_{v_d} f`; symmetric and
    /// multilinear in the directions.
    pub fn mixed_value(&self, dirs: &[Direction]) -> Result<Rational> {
        let refs: Vec<&Direction> = dirs.iter().collect();
        self.mixed_value_refs(&refs)
    }

    pub fn mixed_value_refs(&self, dirs: &[&Direction]) -> Result<Rational> {
        if dirs.len() != self.degree as usize {
            return Err(Error::input(format!(
                "mixed value needs {} directions, got {}",
                self.degree,
                dirs.len()
            )));
        }
        for v in dirs {
            self.check_dim(v)?;
        }
        if self.terms.is_empty() {
            return Ok(Rational::zero());
        }
        // Differentiate in place; the last derivative reduces to a constant.
        let mut cur: Vec<(Exponent, Rational)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        for v in dirs {
            let mut next: BTreeMap<Exponent, Rational> = BTreeMap::new();
            for (e, c) in &cur {
                for (i, vi) in v.0.iter().enumerate() {
                    if e[i] == 0 || vi.is_zero() {
                        continue;
                    }
                    let mut ne = e.clone();
                    ne[i] -= 1;
                    let add = c * vi * int(e[i] as i64);
                    *next.entry(ne).or_insert_with(Rational::zero) += add;
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if cur.is_empty() {
                return Ok(Rational::zero());
            }
        }
        let total: Rational = cur.into_iter().map(|(_, c)| c).sum();
        Ok(total / BigRational::from_integer(factorial(self.degree)))
    }

    /// `g(y_1, ..., y_m) = f(y_1 v_1 + ... + y_m v_m)`, expanded exactly.
    pub fn substitute_cone(&self, gens: &[Direction]) -> Result<VolumePolynomial> {
        if gens.is_empty() {
            return Err(Error::input("substitute_cone needs at least one generator"));
        }
        for g in gens {
            self.check_dim(g)?;
        }
        let m = gens.len();
        // Each variable x_i becomes the linear form sum_j gens[j][i] * y_j.
        let linear: Vec<Vec<(usize, Rational)>> = (0..self.nvars)
            .map(|i| {
                gens.iter()
                    .enumerate()
                    .filter(|(_, g)| !g.0[i].is_zero())
                    .map(|(j, g)| (j, g.0[i].clone()))
                    .collect()
            })
            .collect();
        let mut out: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut prod: BTreeMap<Exponent, Rational> = BTreeMap::new();
            prod.insert(vec![0; m], c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    let mut next: BTreeMap<Exponent, Rational> = BTreeMap::new();
                    for (pe, pc) in &prod {
                        for (j, a) in &linear[i] {
                            let mut ne = pe.clone();
                            ne[*j] += 1;
                            *next.entry(ne).or_insert_with(Rational::zero) += pc * a;
                        }
                    }
                    prod = next;
                }
            }
            for (pe, pc) in prod {
                *out.entry(pe).or_insert_with(Rational::zero) += pc;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(VolumePolynomial {
            degree: self.degree,
            nvars: m,
            terms: out,
        })
    }

    /// `s_k = mixed_value(alpha^k, beta^(d-k))` for `k = 0..=d`.
    pub fn sequence_sk(&self, alpha: &Direction, beta: &Direction) -> Result<SequenceSk> {
        self.check_dim(alpha)?;
        self.check_dim(beta)?;
        let d = self.degree as usize;
        let mut values = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut dirs: Vec<&Direction> = Vec::with_capacity(d);
            dirs.extend(std::iter::repeat_n(alpha, k));
            dirs.extend(std::iter::repeat_n(beta, d - k));
            values.push(self.mixed_value_refs(&dirs)?);
        }
        Ok(SequenceSk { values })
    }

    /// Builds the polynomial whose mixed values on basis vectors are the
    /// given symmetric multilinear form: `table(multiset)` returns the value
    /// on `e_{i_1}, ..., e_{i_d}` for a sorted index multiset.
    pub fn from_mixed_values<F>(nvars: usize, degree: u32, mut table: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Result<Rational>,
    {
        let mut terms = Vec::new();
        for ms in multisets(nvars, degree as usize) {
            let value = table(&ms)?;
            if value.is_zero() {
                continue;
            }
            let mut e = vec![0u32; nvars];
            for &i in &ms {
                e[i] += 1;
            }
            // coefficient of t^e is the multinomial d!/prod(e_i!) times the value
            let multinomial = e
                .iter()
                .fold(factorial(degree), |acc, &k| acc / factorial(k));
            terms.push((e, value * BigRational::from_integer(multinomial)));
        }
        Self::new(nvars, degree, terms)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for VolumePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The sequence `s_k = alpha^k . beta^(d-k) . Omega`, `k = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSk {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub values: Vec<Rational>,
}

impl SequenceSk {
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    /// `s_k^2 >= s_{k-1} s_{k+1}` for every interior `k`.
    pub fn is_log_concave(&self) -> bool {
        (1..self.degree()).all(|k| {
            &self.values[k] * &self.values[k] >= &self.values[k - 1] * &self.values[k + 1]
        })
    }
}

/// Sorted multisets of size `k` drawn from `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 && k > 0 {
        return out;
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Number of distinct orderings of a sorted multiset.
pub fn multiset_permutations(ms: &[usize]) -> BigInt {
    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
    for &i in ms {
        *counts.entry(i).or_insert(0) += 1;
    }
    counts
        .values()
        .fold(factorial(ms.len() as u32), |acc, &c| acc / factorial(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xy() -> VolumePolynomial {
        VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap()
    }

    fn x2y() -> VolumePolynomial {
        VolumePolynomial::from_int_terms(2, &[(&[2, 1], 1)]).unwrap()
    }

    fn squares() -> VolumePolynomial {
        VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(xy().evaluate(&Direction::from_ints(&[1, 1])).unwrap(), int(1));
        assert_eq!(squares().evaluate(&Direction::from_ints(&[1, 1])).unwrap(), int(4));
        assert_eq!(x2y().evaluate(&Direction::from_ints(&[2, 3])).unwrap(), int(12));
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        assert!(matches!(
            xy().evaluate(&Direction::from_ints(&[1, 1, 1])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        let d = xy().directional_derivative(&Direction::unit(2, 0)).unwrap();
        assert_eq!(d, VolumePolynomial::from_int_terms(2, &[(&[0, 1], 1)]).unwrap());
        let d = x2y().directional_derivative(&Direction::from_ints(&[1, 1])).unwrap();
        let expect =
            VolumePolynomial::from_int_terms(2, &[(&[1, 1], 2), (&[2, 0], 1)]).unwrap();
        assert_eq!(d, expect);
        let e2 = Direction::unit(2, 1);
        let dd = x2y()
            .directional_derivative(&e2)
            .unwrap()
            .directional_derivative(&e2)
            .unwrap();
        assert!(dd.is_zero());
        assert_eq!(dd.degree(), 1);
    }

    #[test]
    fn derivative_of_constant_is_domain_error() {
        let c = VolumePolynomial::new(1, 0, vec![(vec![0], int(3))]).unwrap();
        assert!(matches!(
            c.directional_derivative(&Direction::unit(1, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mixed_value_examples() {
        let e = |i| Direction::unit(2, i);
        assert_eq!(xy().mixed_value(&[e(0), e(1)]).unwrap(), rat(1, 2));
        let f = VolumePolynomial::from_int_terms(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1)]).unwrap();
        let e3 = |i| Direction::unit(3, i);
        assert_eq!(f.mixed_value(&[e3(1), e3(2)]).unwrap(), int(0));
        assert_eq!(squares().mixed_value(&[e(0), e(1)]).unwrap(), int(1));
    }

    #[test]
    fn mixed_value_arity_is_checked() {
        assert!(matches!(
            xy().mixed_value(&[Direction::unit(2, 0)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let g = xy()
            .substitute_cone(&[Direction::unit(2, 0), Direction::unit(2, 1)])
            .unwrap();
        assert_eq!(g, xy());
        let g = xy().substitute_cone(&[Direction::from_ints(&[1, 1])]).unwrap();
        assert_eq!(g, VolumePolynomial::from_int_terms(1, &[(&[2], 1)]).unwrap());
        // x^2 y at x = y1 + y2, y = y2: (y1+y2)^2 y2
        let g = x2y()
            .substitute_cone(&[Direction::from_ints(&[1, 0]), Direction::from_ints(&[1, 1])])
            .unwrap();
        let expect = VolumePolynomial::from_int_terms(
            2,
            &[(&[2, 1], 1), (&[1, 2], 2), (&[0, 3], 1)],
        )
        .unwrap();
        assert_eq!(g, expect);
        assert!(xy().substitute_cone(&[]).is_err());
    }

    #[test]
    fn sequence_examples() {
        let a = Direction::from_ints(&[2, 1]);
        let s = x2y().sequence_sk(&a, &a).unwrap();
        assert!(s.values.iter().all(|v| *v == int(4)));
        let s = squares()
            .sequence_sk(&Direction::unit(2, 0), &Direction::unit(2, 1))
            .unwrap();
        assert_eq!(s.values, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn from_mixed_values_round_trips() {
        let f = x2y();
        let e: Vec<Direction> = (0..2).map(|i| Direction::unit(2, i)).collect();
        let g = VolumePolynomial::from_mixed_values(2, 3, |ms| {
            let dirs: Vec<Direction> = ms.iter().map(|&i| e[i].clone()).collect();
            f.mixed_value(&dirs)
        })
        .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(squares().to_string(), "t1^2 + 2*t1*t2 + t2^2");
    }
}
