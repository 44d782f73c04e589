//! Six proportionality conditions that coincide on strictly Lorentzian
//! polynomials for big inputs.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::{Direction, VolumePolynomial};
use crate::rational::{exact_root, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProportionalityPanel {
    /// `alpha` and `beta` are proportional vectors.
    pub vectors: bool,
    /// `alpha^k` and `beta^k` are proportional for every `1 <= k <= d-1`.
    pub powers_all: bool,
    /// `alpha^k` and `beta^k` are proportional for some `1 <= k <= d-1`.
    pub powers_some: bool,
    /// `D_alpha^k f` and `D_beta^k f` are proportional for some `k`.
    pub contracted_some: bool,
    /// `D_alpha^(d-1) f` and `D_beta^(d-1) f` are proportional.
    pub contracted_top: bool,
    /// Equality in Brunn-Minkowski.
    pub bm_equality: bool,
    pub agree: bool,
    /// Both classes have positive volume.
    pub big: bool,
    /// A disagreement on big inputs rules out strictness.
    pub implies_non_strict: bool,
    /// With exactly one big input: `|alpha + beta| > max(|alpha|, |beta|)`.
    pub bm_strict: Option<bool>,
}

impl ProportionalityPanel {
    pub fn conditions(&self) -> [bool; 6] {
        [
            self.vectors,
            self.powers_all,
            self.powers_some,
            self.contracted_some,
            self.contracted_top,
            self.bm_equality,
        ]
    }
}

type Sparse = BTreeMap<Vec<u32>, Rational>;

/// `v^k` in the polynomial ring, by repeated multiplication.
fn linear_power(v: &Direction, k: usize) -> Sparse {
    let s = v.dim();
    let mut acc: Sparse = BTreeMap::new();
    acc.insert(vec![0; s], Rational::one());
    for _ in 0..k {
        let mut next: Sparse = BTreeMap::new();
        for (e, c) in &acc {
            for (i, x) in v.coords().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut ne = e.clone();
                ne[i] += 1;
                *next.entry(ne).or_insert_with(Rational::zero) += c * x;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// `p = c q` for some nonzero `c`; two zeros count as proportional.
fn sparse_proportional(p: &Sparse, q: &Sparse) -> bool {
    if p.is_empty() || q.is_empty() {
        return p.is_empty() && q.is_empty();
    }
    if p.len() != q.len() {
        return false;
    }
    let mut ratio: Option<Rational> = None;
    for ((ep, cp), (eq, cq)) in p.iter().zip(q) {
        if ep != eq {
            return false;
        }
        let r = cp / cq;
        match &ratio {
            None => ratio = Some(r),
            Some(r0) if *r0 != r => return false,
            _ => {}
        }
    }
    true
}

fn terms_of(p: &VolumePolynomial) -> Sparse {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

/// Exact `|alpha + beta|^(1/d) = |alpha|^(1/d) + |beta|^(1/d)` for positive
/// volumes. If `(1 + q)^d` and `q^d` are rational then `q` is rational, so
/// equality forces `|alpha| / |beta|` to be a perfect `d`-th power.
pub(crate) fn bm_equality(va: &Rational, vb: &Rational, vab: &Rational, d: u32) -> bool {
    let Some(q) = exact_root(&(va / vb), d) else {
        return false;
    };
    *vab == vb * pow(&(q + Rational::one()), d)
}

pub fn proportionality_panel(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
) -> Result<ProportionalityPanel> {
    let d = f.degree() as usize;
    let va = f.evaluate(alpha)?;
    let vb = f.evaluate(beta)?;
    let vab = f.evaluate(&alpha.add(beta))?;
    let big = va.is_positive() && vb.is_positive();

    let vectors = alpha.is_proportional(beta);
    let powers: Vec<bool> = (1..d)
        .map(|k| sparse_proportional(&linear_power(alpha, k), &linear_power(beta, k)))
        .collect();
    let mut contracted = Vec::with_capacity(d.saturating_sub(1));
    let (mut pa, mut pb) = (f.clone(), f.clone());
    for _ in 1..d {
        pa = pa.directional_derivative(alpha)?;
        pb = pb.directional_derivative(beta)?;
        contracted.push(sparse_proportional(&terms_of(&pa), &terms_of(&pb)));
    }
    let bm = if big {
        bm_equality(&va, &vb, &vab, d as u32)
    } else {
        // Only the degenerate reading applies: both sides vanish.
        va.is_zero() && vb.is_zero() && vab.is_zero()
    };
    let mut panel = ProportionalityPanel {
        vectors,
        powers_all: powers.iter().all(|&b| b),
        powers_some: powers.iter().any(|&b| b),
        contracted_some: contracted.iter().any(|&b| b),
        contracted_top: contracted.last().copied().unwrap_or(true),
        bm_equality: bm,
        agree: false,
        big,
        implies_non_strict: false,
        bm_strict: None,
    };
    let c = panel.conditions();
    panel.agree = c.iter().all(|&b| b == c[0]);
    panel.implies_non_strict = big && !panel.agree;
    if va.is_positive() != vb.is_positive() {
        let big_side = if va.is_positive() { &va } else { &vb };
        panel.bm_strict = Some(vab > *big_side);
    }
    Ok(panel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn scaled_inputs_satisfy_everything() {
        let f = VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 3), (&[0, 2], 1)]).unwrap();
        let a = Direction::from_ints(&[1, 2]);
        let p = proportionality_panel(&f, &a, &a.scale(&int(3))).unwrap();
        assert_eq!(p.conditions(), [true; 6]);
        assert!(p.agree && !p.implies_non_strict);
    }

    #[test]
    fn square_rectangle_fails_everything() {
        let f = VolumePolynomial::new(
            2,
            2,
            vec![(vec![2, 0], int(1)), (vec![1, 1], crate::rational::rat(5, 2)), (vec![0, 2], int(1))],
        )
        .unwrap();
        let p = proportionality_panel(&f, &Direction::unit(2, 0), &Direction::unit(2, 1)).unwrap();
        assert_eq!(p.conditions(), [false; 6]);
        assert!(p.agree);
    }

    #[test]
    fn degenerate_square_is_flagged() {
        let f = VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]).unwrap();
        let p = proportionality_panel(&f, &Direction::unit(2, 0), &Direction::unit(2, 1)).unwrap();
        assert!(!p.vectors);
        assert!(p.contracted_some && p.contracted_top && p.bm_equality);
        assert!(!p.agree && p.implies_non_strict);
    }

    #[test]
    fn one_big_side_gives_strict_bm() {
        let f = VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap();
        let p = proportionality_panel(&f, &Direction::from_ints(&[1, 1]), &Direction::unit(2, 0)).unwrap();
        assert!(!p.big);
        assert_eq!(p.bm_strict, Some(true));
    }
}
