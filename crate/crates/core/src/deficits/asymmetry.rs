//! Relative asymmetry over a polyhedral cone and the radii chain that
//! bounds it on `omega^(d-2)`.
//!
//! The feasible set is a polytope; its vertices are enumerated exactly.
//! `f^(1/d)` is maximized by pairwise Frank-Wolfe in floating point, the
//! iterate is snapped to exact convex weights, and the concavity gap gives
//! an exact upper bound on the maximum.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::radii::radii_with;
use super::{deficit_k, repeat};
use crate::cone::{combinations, ConeModel};
use crate::error::{Error, Result};
use crate::interval::{decide, Decision, Interval};
use crate::linalg::{self, Matrix};
use crate::poly::{Direction, VolumePolynomial};
use crate::rational::{exact_root, from_f64, int, pow, to_f64, Rational};

/// Maximum number of constraint subsets tried during vertex enumeration.
pub const MAX_VERTEX_SUBSETS: u128 = 500_000;
const FW_ITERATIONS: usize = 4000;
const FW_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymmetryReport {
    /// Enclosure `[F_lo, F_hi]`; both ends exact.
    pub f: Interval,
    /// Best feasible class found; it certifies `F_hi`.
    pub gamma: Direction,
    /// `F_hi - F_lo`.
    #[serde(with = "crate::rational::serde_rational")]
    pub gap: Rational,
    pub vertices: usize,
    /// The feasible set was empty and `F = 1` by convention.
    pub empty: bool,
}

/// Constraint `a . x <= b`.
struct Halfspace {
    a: Vec<Rational>,
    b: Rational,
}

fn feasible_region(
    alpha_scaled: &Direction,
    beta: &Direction,
    c: &ConeModel,
    order: &ConeModel,
    bound: &Rational,
) -> Vec<Halfspace> {
    let s = beta.dim();
    let mut hs = Vec::new();
    let neg = |v: &Direction| v.coords().iter().map(|x| -x).collect::<Vec<_>>();
    for n in &c.facet_normals {
        hs.push(Halfspace { a: neg(n), b: Rational::zero() });
    }
    for e in &c.equations {
        hs.push(Halfspace { a: e.coords().to_vec(), b: Rational::zero() });
        hs.push(Halfspace { a: neg(e), b: Rational::zero() });
    }
    for top in [alpha_scaled, beta] {
        for m in &order.facet_normals {
            hs.push(Halfspace { a: m.coords().to_vec(), b: m.dot(top) });
        }
        for e in &order.equations {
            hs.push(Halfspace { a: e.coords().to_vec(), b: e.dot(top) });
            hs.push(Halfspace { a: neg(e), b: -e.dot(top) });
        }
    }
    for i in 0..s {
        let u = Direction::unit(s, i);
        hs.push(Halfspace { a: u.coords().to_vec(), b: bound.clone() });
        hs.push(Halfspace { a: neg(&u), b: bound.clone() });
    }
    hs
}

fn vertices(hs: &[Halfspace], s: usize, bound: &Rational) -> Result<Vec<Direction>> {
    let n = hs.len();
    let subsets = crate::rational::binomial(n as u32, s as u32);
    if subsets > MAX_VERTEX_SUBSETS.into() {
        return Err(Error::Cap(format!(
            "vertex enumeration needs {subsets} subsets, above the cap of {MAX_VERTEX_SUBSETS}"
        )));
    }
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for idx in combinations(n, s) {
        let m: Matrix = idx.iter().map(|&i| hs[i].a.clone()).collect();
        if linalg::det(&m).is_zero() {
            continue;
        }
        let b: Vec<Rational> = idx.iter().map(|&i| hs[i].b.clone()).collect();
        let Some(x) = linalg::solve(&m, &b) else { continue };
        let ok = hs
            .iter()
            .all(|h| h.a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>() <= h.b);
        if ok {
            found.insert(x);
        }
    }
    let out: Vec<Direction> = found.into_iter().map(Direction::new).collect();
    if out.iter().any(|v| v.coords().iter().any(|x| x.abs() == *bound)) {
        return Err(Error::domain("the feasible set for the asymmetry index is unbounded"));
    }
    Ok(out)
}

/// Floating-point copy of a polynomial for the ascent.
struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
    nvars: usize,
    degree: f64,
}

impl FloatPoly {
    fn new(f: &VolumePolynomial) -> Self {
        FloatPoly {
            terms: f
                .terms()
                .map(|(e, c)| (e.clone(), to_f64(c)))
                .collect(),
            nvars: f.nvars(),
            degree: f.degree() as f64,
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product::<f64>())
            .sum()
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.nvars];
        for (e, c) in &self.terms {
            for i in 0..self.nvars {
                if e[i] == 0 {
                    continue;
                }
                let mut m = c * e[i] as f64;
                for (j, (&k, &v)) in e.iter().zip(x).enumerate() {
                    let k = if i == j { k - 1 } else { k };
                    m *= v.powi(k as i32);
                }
                g[i] += m;
            }
        }
        g
    }

    /// `f^(1/d)`, concave on the certified cone.
    fn root(&self, x: &[f64]) -> f64 {
        self.eval(x).max(0.0).powf(1.0 / self.degree)
    }
}

fn combine(verts: &[Vec<f64>], w: &[f64]) -> Vec<f64> {
    let s = verts[0].len();
    let mut x = vec![0.0; s];
    for (v, &wi) in verts.iter().zip(w) {
        for k in 0..s {
            x[k] += wi * v[k];
        }
    }
    x
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise Frank-Wolfe on the simplex of vertex weights.
fn ascend(fp: &FloatPoly, verts: &[Vec<f64>]) -> Vec<f64> {
    let n = verts.len();
    let mut w = vec![1.0 / n as f64; n];
    for _ in 0..FW_ITERATIONS {
        let x = combine(verts, &w);
        let g = fp.grad(&x);
        let scores: Vec<f64> = verts.iter().map(|v| dot(&g, v)).collect();
        let best = (0..n).max_by(|&i, &j| scores[i].total_cmp(&scores[j])).unwrap();
        let away = (0..n)
            .filter(|&i| w[i] > 0.0)
            .min_by(|&i, &j| scores[i].total_cmp(&scores[j]))
            .unwrap();
        if scores[best] - scores[away] <= FW_TOLERANCE * (1.0 + scores[best].abs()) {
            break;
        }
        let cap = w[away];
        let at = |t: f64| {
            let mut wt = w.clone();
            wt[best] += t;
            wt[away] -= t;
            fp.root(&combine(verts, &wt))
        };
        // Golden-section search; the restriction to a segment is unimodal.
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (0.0, cap);
        for _ in 0..60 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if at(m1) < at(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let t = 0.5 * (lo + hi);
        if at(t) <= at(0.0) {
            break;
        }
        w[best] += t;
        w[away] -= t;
        w[away] = w[away].max(0.0);
    }
    w
}

/// Exact convex weights near `w`.
fn snap(w: &[f64]) -> Vec<Rational> {
    let mut q: Vec<Rational> = w
        .iter()
        .map(|&x| {
            let r = from_f64((x * 1e12).round() / 1e12);
            if r.is_negative() {
                Rational::zero()
            } else {
                r
            }
        })
        .collect();
    let total: Rational = q.iter().sum();
    if total.is_zero() {
        let n = q.len() as i64;
        return vec![Rational::new(1.into(), n.into()); q.len()];
    }
    for x in q.iter_mut() {
        *x /= &total;
    }
    q
}

/// Best exact point in the polytope spanned by `verts`.
fn best_point(f: &VolumePolynomial, verts: &[Direction]) -> Result<(Direction, Rational)> {
    let s = verts[0].dim();
    let fp = FloatPoly::new(f);
    let vf: Vec<Vec<f64>> = verts.iter().map(Direction::to_f64).collect();
    let w = snap(&ascend(&fp, &vf));
    let gamma = verts
        .iter()
        .zip(&w)
        .fold(Direction::zeros(s), |acc, (v, wi)| acc.add(&v.scale(wi)));
    let mut best = (gamma.clone(), f.evaluate(&gamma)?);
    for v in verts {
        let val = f.evaluate(v)?;
        if val > best.1 {
            best = (v.clone(), val);
        }
    }
    Ok(best)
}

/// Exact upper bound for `max f` over `conv(verts)` from concavity of
/// `f^(1/d)` at `gamma`: `max f <= f(gamma) (1 + t)^d` with
/// `t = max_v grad f(gamma).(v - gamma) / (d f(gamma))`.
fn concavity_bound(f: &VolumePolynomial, gamma: &Direction, fg: &Rational, verts: &[Direction]) -> Result<Rational> {
    let d = f.degree();
    let grad: Vec<Rational> = (0..f.nvars())
        .map(|i| f.directional_derivative(&Direction::unit(f.nvars(), i))?.evaluate(gamma))
        .collect::<Result<_>>()?;
    let grad = Direction::new(grad);
    let mut t = Rational::zero();
    for v in verts {
        let x = grad.dot(&v.sub(gamma));
        if x > t {
            t = x;
        }
    }
    let t = t / (int(d as i64) * fg);
    Ok(fg * pow(&(t + Rational::one()), d))
}

/// Encloses `F = 1 - sup f(gamma) / f(beta)` over classes `gamma` in `c`
/// with `gamma <= r alpha` and `gamma <= beta` in the order of `order`,
/// where `r = (f(beta) / f(alpha))^(1/d)`.
pub fn asymmetry_f_cone(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
    c: &ConeModel,
    order: &ConeModel,
    bits: u32,
) -> Result<AsymmetryReport> {
    let d = f.degree();
    let (va, vb) = (f.evaluate(alpha)?, f.evaluate(beta)?);
    if !va.is_positive() || !vb.is_positive() {
        return Err(Error::domain("asymmetry index needs classes of positive volume"));
    }
    let s = f.nvars();
    let ratio = &vb / &va;
    let r = match exact_root(&ratio, d) {
        Some(q) => Interval::exact(q),
        None => Interval::exact(ratio).nth_root(d, bits),
    };
    let scale = alpha
        .coords()
        .iter()
        .chain(beta.coords())
        .map(|x| x.abs())
        .fold(Rational::one(), |m, x| if x > m { x } else { m });
    let bound = scale * int(1 << 20);
    let empty = |gamma| AsymmetryReport {
        f: Interval::exact(Rational::one()),
        gamma,
        gap: Rational::zero(),
        vertices: 0,
        empty: true,
    };

    // Inner region with r_lo certifies F_hi; outer region with r_hi bounds F_lo.
    let inner = vertices(&feasible_region(&alpha.scale(&r.lo), beta, c, order, &bound), s, &bound)?;
    if inner.is_empty() {
        return Ok(empty(Direction::zeros(s)));
    }
    let (gamma, fg) = best_point(f, &inner)?;
    let f_hi = Rational::one() - &fg / &vb;
    let outer = if r.is_exact() {
        inner.clone()
    } else {
        vertices(&feasible_region(&alpha.scale(&r.hi), beta, c, order, &bound), s, &bound)?
    };
    let upper = if fg.is_positive() {
        concavity_bound(f, &gamma, &fg, &outer)?
    } else {
        outer
            .iter()
            .map(|v| f.evaluate(v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(Rational::zero(), |m, x| if x > m { x } else { m })
    };
    let mut f_lo = Rational::one() - upper / &vb;
    if f_lo.is_negative() {
        f_lo = Rational::zero();
    }
    if f_lo > f_hi {
        f_lo = f_hi.clone();
    }
    Ok(AsymmetryReport {
        gap: &f_hi - &f_lo,
        f: Interval::new(f_lo, f_hi),
        gamma,
        vertices: inner.len(),
        empty: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmpChainReport {
    pub asymmetry: AsymmetryReport,
    #[serde(with = "crate::rational::serde_rational")]
    pub r_gamma: Rational,
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub r_out_gamma: Option<Rational>,
    /// `r_Gamma^2 |beta|_Gamma / |alpha|_Gamma`, the squared inradius after
    /// normalizing both volumes on `Gamma` to 1.
    #[serde(with = "crate::rational::serde_rational")]
    pub r_normalized_sq: Rational,
    /// `F <= 1 - r^2` for the normalized inradius.
    pub first_step: Decision,
    /// `1 - r^2 <= 2 (1 - r)`.
    pub second_step: Decision,
    /// `K^(1/2^(d-2)) / (1 - r_Gamma / R_Gamma)` when the denominator is positive.
    pub kt_radii_ratio: Option<Interval>,
}

/// `f_Gamma(x) = x . x . omega^(d-2)`.
pub fn restrict_to_omega(f: &VolumePolynomial, omega: &Direction) -> Result<VolumePolynomial> {
    let d = f.degree() as usize;
    let s = f.nvars();
    let units: Vec<Direction> = (0..s).map(|i| Direction::unit(s, i)).collect();
    let w = repeat(omega, d - 2);
    VolumePolynomial::from_mixed_values(s, 2, |ms| {
        let mut dirs = vec![&units[ms[0]], &units[ms[1]]];
        dirs.extend_from_slice(&w);
        f.mixed_value_refs(&dirs)
    })
}

/// The order on `Gamma`: `x >= 0` when `x . B . omega^(d-2) >= 0` for every
/// nef generator `B`.
pub fn order_cone_on_omega(f: &VolumePolynomial, omega: &Direction, nef: &ConeModel) -> Result<ConeModel> {
    let fg = restrict_to_omega(f, omega)?;
    let s = f.nvars();
    let units: Vec<Direction> = (0..s).map(|i| Direction::unit(s, i)).collect();
    let normals = nef
        .generators
        .iter()
        .map(|b| {
            let row = units
                .iter()
                .map(|u| fg.mixed_value_refs(&[u, b]))
                .collect::<Result<Vec<_>>>()?;
            Ok(Direction::new(row))
        })
        .collect::<Result<Vec<_>>>()?;
    ConeModel::from_facets("order-on-omega", normals)
        .map_err(|e| Error::domain(format!("order cone on omega^(d-2) is degenerate: {e}")))
}

pub fn fmp_radii_chain(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
    omega: &Direction,
    nef: &ConeModel,
    bits: u32,
) -> Result<FmpChainReport> {
    let d = f.degree() as usize;
    let fg = restrict_to_omega(f, omega)?;
    let order = order_cone_on_omega(f, omega, nef)?;
    let asym = asymmetry_f_cone(&fg, alpha, beta, nef, &order, bits)?;
    let rr = radii_with(f, alpha, beta, nef, &repeat(omega, d - 2))?;
    let (va, vb) = (fg.evaluate(alpha)?, fg.evaluate(beta)?);
    let rn2 = &rr.r_in * &rr.r_in * vb / va;
    let bound = Rational::one() - &rn2;
    let first_step = if asym.f.lo <= bound { Decision::Holds } else { Decision::Fails };
    let second_step = match exact_root(&rn2, 2) {
        Some(x) => {
            if bound <= int(2) * (Rational::one() - x) {
                Decision::Holds
            } else {
                Decision::Fails
            }
        }
        None => {
            decide(bits, |p| {
                let x = Interval::exact(rn2.clone()).sqrt(p);
                (Interval::exact(bound.clone()), x.scale(&int(-2)).add_q(&int(2)))
            })
            .0
        }
    };
    let kt_radii_ratio = match &rr.r_out {
        Some(big) if big.is_positive() => {
            let den = Rational::one() - &rr.r_in / big;
            if den.is_positive() {
                let k = deficit_k(f, alpha, beta, bits)?;
                let root = 1u32 << (d - 2);
                Some(k.nth_root(root, bits).scale(&(Rational::one() / den)))
            } else {
                None
            }
        }
        _ => None,
    };
    Ok(FmpChainReport {
        asymmetry: asym,
        r_gamma: rr.r_in,
        r_out_gamma: rr.r_out,
        r_normalized_sq: rn2,
        first_step,
        second_step,
        kt_radii_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xy() -> VolumePolynomial {
        VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap()
    }

    #[test]
    fn box_optimum_is_a_vertex() {
        let q = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[1, 1]);
        let b = Direction::new(vec![int(2), rat(1, 2)]);
        let rep = asymmetry_f_cone(&xy(), &a, &b, &q, &q, 128).unwrap();
        assert_eq!(rep.f, Interval::exact(rat(1, 2)));
        assert_eq!(rep.gamma, Direction::new(vec![int(1), rat(1, 2)]));
    }

    #[test]
    fn grid_oracle_agrees_on_irrational_scale() {
        // r = (2/1)^(1/2) is irrational; compare with a fine grid.
        let q = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[1, 1]);
        let b = Direction::from_ints(&[2, 1]);
        let rep = asymmetry_f_cone(&xy(), &a, &b, &q, &q, 128).unwrap();
        let r = 2f64.sqrt();
        let mut best: f64 = 0.0;
        for i in 0..=400 {
            for j in 0..=400 {
                let (x, y) = (r.min(2.0) * i as f64 / 400.0, 1.0f64.min(r) * j as f64 / 400.0);
                best = best.max(x * y);
            }
        }
        let grid_f = 1.0 - best / 2.0;
        assert!(crate::rational::to_f64(&rep.f.lo) <= grid_f + 1e-9);
        assert!(crate::rational::to_f64(&rep.f.hi) >= grid_f - 1e-9);
        assert!(rep.gap < rat(1, 1000));
    }

    #[test]
    fn equal_classes_are_symmetric() {
        let q = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[3, 2]);
        let rep = asymmetry_f_cone(&xy(), &a, &a, &q, &q, 64).unwrap();
        assert_eq!(rep.f, Interval::zero());
    }

    #[test]
    fn infeasible_order_gives_one() {
        let q = ConeModel::positive_orthant(2);
        // beta is outside the order cone, so even gamma = 0 is infeasible.
        let order = ConeModel::from_generators("shifted", vec![Direction::from_ints(&[1, 0]), Direction::from_ints(&[1, 1])]).unwrap();
        let f = VolumePolynomial::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 1)]).unwrap();
        let rep = asymmetry_f_cone(&f, &Direction::from_ints(&[1, 0]), &Direction::from_ints(&[1, 2]), &q, &order, 64).unwrap();
        assert!(rep.empty);
        assert_eq!(rep.f, Interval::exact(int(1)));
    }

    #[test]
    fn chain_on_xy() {
        let q = ConeModel::positive_orthant(2);
        let a = Direction::from_ints(&[1, 1]);
        let b = Direction::new(vec![int(2), rat(1, 2)]);
        let rep = fmp_radii_chain(&xy(), &a, &b, &a, &q, 128).unwrap();
        assert_eq!(rep.r_gamma, rat(1, 2));
        assert_eq!(rep.r_normalized_sq, rat(1, 4));
        assert_eq!(rep.first_step, Decision::Holds);
        assert_eq!(rep.second_step, Decision::Holds);
    }
}
