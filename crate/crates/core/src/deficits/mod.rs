//! Deficits, radii and the inequality battery for a pair of classes.
//!
//! All intersection numbers are exact. Quantities that need roots are
//! enclosed in [`Interval`]s; zero tests go through rational identities.

pub mod asymmetry;
pub mod battery;
pub mod compare;
pub mod empirical;
pub mod panel;
pub mod radii;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::{Direction, SequenceSk, VolumePolynomial};
use crate::rational::{pow, Rational};

pub use asymmetry::{asymmetry_f_cone, fmp_radii_chain, AsymmetryReport, FmpChainReport};
pub use battery::{inequality_battery, BatteryItem};
pub use empirical::{empirical_constants, EmpiricalReport};
pub use panel::{proportionality_panel, ProportionalityPanel};
pub use radii::{radii, radii_with, RadiiReport};

/// One `(f, alpha, beta)` instance with its reference class and cones.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub f: VolumePolynomial,
    pub alpha: Direction,
    pub beta: Direction,
    pub omega: Direction,
    pub nef: ConeModel,
    pub psef: Option<ConeModel>,
}

/// `Delta(a, b; extra . Omega) = (a.b)^2 - (a.a)(b.b)` with `d - 2` extra slots.
pub fn delta(f: &VolumePolynomial, a: &Direction, b: &Direction, extra: &[&Direction]) -> Result<Rational> {
    let mixed = |x: &Direction, y: &Direction| -> Result<Rational> {
        let mut dirs: Vec<&Direction> = vec![x, y];
        dirs.extend_from_slice(extra);
        f.mixed_value_refs(&dirs)
    };
    let ab = mixed(a, b)?;
    Ok(&ab * &ab - mixed(a, a)? * mixed(b, b)?)
}

/// `[omega; k]` as a slot list.
pub fn repeat(v: &Direction, k: usize) -> Vec<&Direction> {
    std::iter::repeat_n(v, k).collect()
}

fn require_big(f: &VolumePolynomial, alpha: &Direction, beta: &Direction) -> Result<(Rational, Rational)> {
    let a = f.evaluate(alpha)?;
    let b = f.evaluate(beta)?;
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::domain(format!(
            "classes must be big: volumes are {} and {}",
            crate::rational::fmt_rational(&a),
            crate::rational::fmt_rational(&b)
        )));
    }
    Ok((a, b))
}

/// AF deficit: returns `A^2` exactly and an enclosure of `A`.
pub fn deficit_a(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
    omega: &Direction,
    bits: u32,
) -> Result<(Rational, Interval)> {
    require_big(f, alpha, beta)?;
    let d = f.degree() as usize;
    let extra = repeat(omega, d - 2);
    let mut dirs = vec![alpha, beta];
    dirs.extend_from_slice(&extra);
    let denom = f.mixed_value_refs(&dirs)?;
    if !denom.is_positive() {
        return Err(Error::domain(
            "alpha . beta . omega^(d-2) vanishes; the classes are not big",
        ));
    }
    let a2 = delta(f, alpha, beta, &extra)? / (&denom * &denom);
    let a = Interval::exact(a2.clone()).sqrt(bits);
    Ok((a2, a))
}

/// `s_k^d = s_d^k s_0^(d-k)` for every `k`.
pub fn is_flat(s: &SequenceSk) -> bool {
    let d = s.degree();
    (1..d).all(|k| flat_at(s, k))
}

pub fn flat_at(s: &SequenceSk, k: usize) -> bool {
    let d = s.degree();
    pow(s.get(k), d as u32) == pow(s.get(d), k as u32) * pow(s.get(0), (d - k) as u32)
}

/// The six equality statements for big `alpha`, `beta`, evaluated
/// independently: consecutive log-concavity equalities, all three-term
/// interpolations, every flat-chain identity, some flat-chain identity,
/// the top identity, and Brunn-Minkowski equality.
pub fn flatness_conditions(f: &VolumePolynomial, alpha: &Direction, beta: &Direction) -> Result<[bool; 6]> {
    let (va, vb) = require_big(f, alpha, beta)?;
    let s = f.sequence_sk(alpha, beta)?;
    let d = s.degree();
    let consecutive = (1..d).all(|k| s.get(k) * s.get(k) == s.get(k - 1) * s.get(k + 1));
    let mut interpolated = true;
    for k1 in 0..=d {
        for k2 in k1..=d {
            for k3 in k2..=d {
                if k3 > k1 {
                    let lhs = pow(s.get(k2), (k3 - k1) as u32);
                    let rhs = pow(s.get(k1), (k3 - k2) as u32) * pow(s.get(k3), (k2 - k1) as u32);
                    interpolated &= lhs == rhs;
                }
            }
        }
    }
    let chain: Vec<bool> = (0..=d).map(|k| flat_at(&s, k)).collect();
    let vab = f.evaluate(&alpha.add(beta))?;
    Ok([
        consecutive,
        interpolated,
        chain.iter().all(|&b| b),
        chain[1..d].iter().any(|&b| b),
        chain[d - 1],
        panel::bm_equality(&va, &vb, &vab, d as u32),
    ])
}

/// BM deficit; exactly zero when the sequence `s_k` is flat.
pub fn deficit_b(f: &VolumePolynomial, alpha: &Direction, beta: &Direction, bits: u32) -> Result<Interval> {
    let (va, vb) = require_big(f, alpha, beta)?;
    let s = f.sequence_sk(alpha, beta)?;
    if is_flat(&s) {
        return Ok(Interval::zero());
    }
    let d = f.degree();
    let vab = f.evaluate(&alpha.add(beta))?;
    let num = Interval::exact(vab).nth_root(d, bits);
    let den = Interval::exact(va)
        .nth_root(d, bits)
        .add(&Interval::exact(vb).nth_root(d, bits));
    let ratio = num.div(&den).expect("denominator is positive");
    Ok(ratio.add_q(&-Rational::one()))
}

/// `l`-th KT deficit `s_l / (s_d^l s_0^(d-l))^(1/d) - 1`; exactly zero when
/// `s_l^d = s_d^l s_0^(d-l)`.
pub fn deficit_k_l(
    f: &VolumePolynomial,
    alpha: &Direction,
    beta: &Direction,
    l: usize,
    bits: u32,
) -> Result<Interval> {
    require_big(f, alpha, beta)?;
    let d = f.degree() as usize;
    if l == 0 || l >= d {
        return Err(Error::input(format!("KT deficit index {l} outside 1..{}", d - 1)));
    }
    let s = f.sequence_sk(alpha, beta)?;
    if flat_at(&s, l) {
        return Ok(Interval::zero());
    }
    let base = pow(s.get(d), l as u32) * pow(s.get(0), (d - l) as u32);
    let root = Interval::exact(base).nth_root(d as u32, bits);
    let ratio = Interval::exact(s.get(l).clone())
        .div(&root)
        .expect("volumes are positive");
    Ok(ratio.add_q(&-Rational::one()))
}

/// KT deficit `K(alpha, beta)`, oriented with `alpha^(d-1) . beta`.
pub fn deficit_k(f: &VolumePolynomial, alpha: &Direction, beta: &Direction, bits: u32) -> Result<Interval> {
    deficit_k_l(f, alpha, beta, f.degree() as usize - 1, bits)
}

/// Relative size `max(|a|/|b|, |b|/|a|)^(1/d)`.
pub fn sigma(f: &VolumePolynomial, alpha: &Direction, beta: &Direction, bits: u32) -> Result<Interval> {
    let (va, vb) = require_big(f, alpha, beta)?;
    let q = if va >= vb { va / vb } else { vb / va };
    Ok(Interval::exact(q).nth_root(f.degree(), bits))
}

/// `R(alpha, omega) / r(alpha, omega)^2 * inf { lambda : lambda omega - alpha nef }`,
/// or `None` when a radius is degenerate.
pub fn delta_index(
    f: &VolumePolynomial,
    alpha: &Direction,
    omega: &Direction,
    nef: &ConeModel,
) -> Result<Option<Rational>> {
    let rr = radii(f, alpha, omega, nef)?;
    let Some(big_r) = rr.r_out.clone() else {
        return Ok(None);
    };
    if rr.r_in.is_zero() {
        return Ok(None);
    }
    let lambda = nef.dominating_scale(alpha, omega)?;
    Ok(Some(big_r / (&rr.r_in * &rr.r_in) * lambda))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficitReport {
    pub instance: String,
    pub d: usize,
    pub s: usize,
    pub s_sequence: SequenceSk,
    #[serde(with = "crate::rational::serde_rational")]
    pub a_squared: Rational,
    pub a: Interval,
    pub b: Interval,
    pub k: Interval,
    pub k_reverse: Interval,
    /// `K_l` for `l = 1, ..., d-1`.
    pub k_l: Vec<Interval>,
    pub sigma: Interval,
    pub radii: RadiiReport,
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub delta_alpha_omega: Option<Rational>,
    #[serde(with = "crate::rational::serde_rational_opt")]
    pub delta_beta_omega: Option<Rational>,
    pub panel: ProportionalityPanel,
    pub battery: Vec<BatteryItem>,
    pub fmp: Option<FmpChainReport>,
}

/// Every deficit, radius and battery verdict for one instance.
pub fn deficit_report(inst: &Instance, bits: u32) -> Result<DeficitReport> {
    let f = &inst.f;
    let (alpha, beta, omega) = (&inst.alpha, &inst.beta, &inst.omega);
    let d = f.degree() as usize;
    if d < 2 {
        return Err(Error::input("deficits need degree at least 2"));
    }
    let s_sequence = f.sequence_sk(alpha, beta)?;
    let (a_squared, a) = deficit_a(f, alpha, beta, omega, bits)?;
    let k_l = (1..d)
        .map(|l| deficit_k_l(f, alpha, beta, l, bits))
        .collect::<Result<Vec<_>>>()?;
    let fmp = match fmp_radii_chain(f, alpha, beta, omega, &inst.nef, bits) {
        Ok(r) => Some(r),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(DeficitReport {
        instance: inst.name.clone(),
        d,
        s: f.nvars(),
        s_sequence,
        a_squared,
        a,
        b: deficit_b(f, alpha, beta, bits)?,
        k: deficit_k(f, alpha, beta, bits)?,
        k_reverse: deficit_k(f, beta, alpha, bits)?,
        k_l,
        sigma: sigma(f, alpha, beta, bits)?,
        radii: radii(f, alpha, beta, &inst.nef)?,
        delta_alpha_omega: delta_index(f, alpha, omega, &inst.nef)?,
        delta_beta_omega: delta_index(f, beta, omega, &inst.nef)?,
        panel: proportionality_panel(f, alpha, beta)?,
        battery: inequality_battery(inst, bits)?,
        fmp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    /// Square Q and rectangle [0,2]x[0,1/2]: |Q| = |R| = 1, V(Q,R) = 5/4.
    pub(crate) fn sq_rect() -> VolumePolynomial {
        VolumePolynomial::new(
            2,
            2,
            vec![(vec![2, 0], int(1)), (vec![1, 1], rat(5, 2)), (vec![0, 2], int(1))],
        )
        .unwrap()
    }

    #[test]
    fn square_rectangle_fixture() {
        let f = sq_rect();
        let (e1, e2) = (Direction::unit(2, 0), Direction::unit(2, 1));
        let w = Direction::from_ints(&[1, 1]);
        let (a2, _) = deficit_a(&f, &e1, &e2, &w, 128).unwrap();
        assert_eq!(a2, rat(9, 25));
        let k = deficit_k(&f, &e1, &e2, 128).unwrap();
        assert_eq!(k, Interval::exact(rat(1, 4)));
        let b = deficit_b(&f, &e1, &e2, 128).unwrap();
        assert!(b.lo >= rat(606, 10000) && b.hi <= rat(607, 10000));
        assert_eq!(sigma(&f, &e1, &e2, 128).unwrap(), Interval::exact(int(1)));
    }

    #[test]
    fn proportional_inputs_have_zero_deficits() {
        let f = sq_rect();
        let a = Direction::from_ints(&[1, 2]);
        let b = a.scale(&int(2));
        let w = Direction::from_ints(&[1, 1]);
        assert_eq!(deficit_a(&f, &a, &a, &w, 64).unwrap().0, int(0));
        assert_eq!(deficit_a(&f, &b, &a, &w, 64).unwrap().0, int(0));
        assert_eq!(deficit_b(&f, &a, &b, 64).unwrap(), Interval::zero());
        assert_eq!(deficit_k(&f, &a, &b, 64).unwrap(), Interval::zero());
        assert_eq!(sigma(&f, &a, &a, 64).unwrap(), Interval::exact(int(1)));
    }

    #[test]
    fn non_big_classes_are_rejected() {
        let xy = VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap();
        let w = Direction::from_ints(&[1, 1]);
        assert!(matches!(
            deficit_a(&xy, &Direction::unit(2, 0), &w, &w, 64),
            Err(Error::Domain(_))
        ));
    }
}
