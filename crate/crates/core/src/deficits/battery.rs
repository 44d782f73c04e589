//! Inequalities with explicit constants, each decided exactly or by
//! separated enclosures. Every item reads `lhs <= rhs`; a missing `rhs`
//! stands for `+infinity` and makes the item vacuous.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::compare::{le_sqrt, le_sqrt_sum};
use super::radii::{radii, radii_with, RadiiReport};
use super::{deficit_b, deficit_k_l, delta, delta_index, is_flat, repeat, Instance};
use crate::cone::ConeModel;
use crate::error::Result;
use crate::interval::{decide, Decision, Interval};
use crate::poly::{Direction, VolumePolynomial};
use crate::rational::{int, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryItem {
    pub id: String,
    pub verdict: Decision,
    pub lhs: Option<Interval>,
    pub rhs: Option<Interval>,
    /// `rhs - lhs`; absent when a side is infinite.
    pub slack: Option<Interval>,
    pub note: String,
}

impl BatteryItem {
    fn new(id: impl Into<String>, verdict: Decision, lhs: Option<Interval>, rhs: Option<Interval>, note: impl Into<String>) -> Self {
        let slack = match (&lhs, &rhs) {
            (Some(l), Some(r)) => Some(r.sub(l)),
            _ => None,
        };
        BatteryItem {
            id: id.into(),
            verdict,
            lhs,
            rhs,
            slack,
            note: note.into(),
        }
    }

    fn exact(id: impl Into<String>, lhs: Rational, rhs: Rational, note: impl Into<String>) -> Self {
        let v = if lhs <= rhs { Decision::Holds } else { Decision::Fails };
        Self::new(id, v, Some(Interval::exact(lhs)), Some(Interval::exact(rhs)), note)
    }

    fn vacuous(id: impl Into<String>, lhs: Option<Interval>, note: impl Into<String>) -> Self {
        Self::new(id, Decision::Holds, lhs, None, note)
    }

    fn decided(id: impl Into<String>, (v, l, r): (Decision, Interval, Interval), note: impl Into<String>) -> Self {
        Self::new(id, v, Some(l), Some(r), note)
    }

    pub fn holds(&self) -> bool {
        self.verdict == Decision::Holds
    }
}

fn two_pow(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn mixed(f: &VolumePolynomial, dirs: &[&Direction]) -> Result<Rational> {
    f.mixed_value_refs(dirs)
}

/// `(B_1...B_d)(A^d) <= 2^(k(d-k)) (A^k B_(k+1..d)) (A^(d-k) B_(1..k))`.
pub fn rkt_check(f: &VolumePolynomial, a: &Direction, bs: &[&Direction], k: usize, id: &str) -> Result<BatteryItem> {
    let d = f.degree() as usize;
    let lhs = mixed(f, bs)? * mixed(f, &repeat(a, d))?;
    let mut left = repeat(a, k);
    left.extend_from_slice(&bs[k..]);
    let mut right = repeat(a, d - k);
    right.extend_from_slice(&bs[..k]);
    let rhs = two_pow((k * (d - k)) as i64) * mixed(f, &left)? * mixed(f, &right)?;
    Ok(BatteryItem::exact(id, lhs, rhs, format!("k = {k}")))
}

fn rkt_items(inst: &Instance, out: &mut Vec<BatteryItem>) -> Result<()> {
    let d = inst.f.degree() as usize;
    for (name, a, other) in [("alpha", &inst.alpha, &inst.beta), ("beta", &inst.beta, &inst.alpha)] {
        let mut pool: Vec<&Direction> = vec![other, &inst.omega];
        pool.extend(inst.nef.generators.iter());
        let bs: Vec<&Direction> = (0..d).map(|i| pool[i % pool.len()]).collect();
        for k in 1..d {
            out.push(rkt_check(&inst.f, a, &bs, k, &format!("rkt[A={name},k={k}]"))?);
        }
    }
    Ok(())
}

fn bf_items(inst: &Instance, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    let g = repeat(&inst.omega, d - 2);
    let m2 = |x: &Direction, y: &Direction| -> Result<Rational> {
        let mut dirs = vec![x, y];
        dirs.extend_from_slice(&g);
        mixed(f, &dirs)
    };
    let (a, b) = (&inst.alpha, &inst.beta);
    let mut gammas: Vec<(String, &Direction)> = vec![("omega".into(), &inst.omega)];
    gammas.extend(inst.nef.generators.iter().enumerate().map(|(i, v)| (format!("g{}", i + 1), v)));
    for (name, c) in gammas {
        let x = m2(a, b)? * m2(c, c)? - m2(a, c)? * m2(b, c)?;
        let lhs = &x * &x;
        let rhs = delta(f, a, c, &g)? * delta(f, b, c, &g)?;
        out.push(BatteryItem::exact(format!("bonnesen-fenchel[gamma={name}]"), lhs, rhs, "on omega^(d-2)"));
    }
    Ok(())
}

/// Psef radii from facet normals: `alpha - t beta` stays in the cone.
fn psef_radii(psef: &ConeModel, alpha: &Direction, beta: &Direction) -> Option<(Rational, Option<Rational>)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut infinite = false;
    for n in &psef.facet_normals {
        let (na, nb) = (n.dot(alpha), n.dot(beta));
        if nb.is_zero() {
            infinite |= na.is_positive();
            continue;
        }
        let q = na / nb;
        if lo.as_ref().is_none_or(|l| q < *l) {
            lo = Some(q.clone());
        }
        if hi.as_ref().is_none_or(|h| q > *h) {
            hi = Some(q);
        }
    }
    let lo = lo?;
    Some((lo, if infinite { None } else { hi }))
}

/// `(R - r) / 2 <= sqrt(Delta) / (beta^2)` decided exactly.
fn half_spread_item(
    id: &str,
    r: &Rational,
    big_r: Option<&Rational>,
    delta_ab: &Rational,
    beta_sq: &Rational,
    bits: u32,
    note: &str,
) -> BatteryItem {
    let rhs = Interval::exact(delta_ab.clone()).sqrt(bits).scale(&(Rational::one() / beta_sq));
    let Some(big_r) = big_r else {
        // an infinite outradius means beta is not big in this order
        return BatteryItem::new(id, Decision::Holds, None, Some(rhs), format!("{note}; outradius is infinite, hypothesis unmet"));
    };
    let x = (big_r - r) / int(2);
    let v = if le_sqrt(&x, &(Rational::one() / beta_sq), delta_ab) {
        Decision::Holds
    } else {
        Decision::Fails
    };
    BatteryItem::new(id, v, Some(Interval::exact(x)), Some(rhs), note)
}

fn stab_items(inst: &Instance, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    let (a, b) = (&inst.alpha, &inst.beta);
    let g = repeat(&inst.omega, d - 2);
    let dl = delta(f, a, b, &g)?;
    let mut bb = vec![b, b];
    bb.extend_from_slice(&g);
    let beta_sq = mixed(f, &bb)?;
    if !beta_sq.is_positive() {
        return Ok(());
    }
    let rg = radii_with(f, a, b, &inst.nef, &g)?;
    out.push(half_spread_item(
        "stab-kt",
        &rg.r_in,
        rg.r_out.as_ref(),
        &dl,
        &beta_sq,
        bits,
        "radii on omega^(d-2)",
    ));
    if d == 2 {
        let (r, big_r) = match &inst.psef {
            Some(p) => match psef_radii(p, a, b) {
                Some(x) => x,
                None => return Ok(()),
            },
            None => (rg.r_in.clone(), rg.r_out.clone()),
        };
        out.push(half_spread_item(
            "bonnesen",
            &r,
            big_r.as_ref(),
            &dl,
            &beta_sq,
            bits,
            "psef radii",
        ));
    }
    Ok(())
}

fn af_induction_items(inst: &Instance, rr: &RadiiReport, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    if d < 3 {
        return Ok(());
    }
    let (a, b, w) = (&inst.alpha, &inst.beta, &inst.omega);
    let s = f.sequence_sk(a, b)?;
    fn slots<'a>(a: &'a Direction, b: &'a Direction, i: usize, j: usize, extra: Option<&'a Direction>) -> Vec<&'a Direction> {
        let mut v = repeat(a, i);
        v.extend(repeat(b, j));
        v.extend(extra);
        v
    }
    for l in 1..=d - 2 {
        let id = format!("af-deficit-induction[l={l}]");
        let d0 = delta(f, a, b, &slots(a, b, l - 1, d - l - 2, Some(w)))?;
        let den = mixed(f, &slots(a, b, l - 1, d - l, Some(w)))?;
        let d1 = delta(f, a, b, &slots(a, b, l - 1, d - l - 1, None))?;
        let d2 = delta(f, a, b, &slots(a, b, l, d - l - 2, None))?;
        let (s0, s1) = (s.get(l - 1).clone(), s.get(l).clone());
        if !den.is_positive() || !s0.is_positive() || !s1.is_positive() {
            out.push(BatteryItem::vacuous(id, None, "degenerate denominator"));
            continue;
        }
        let (c1, c2) = (int(2) / &s0, int(2) / &s1);
        let rhs = Interval::exact(d1.clone())
            .sqrt(bits)
            .scale(&c1)
            .add(&Interval::exact(d2.clone()).sqrt(bits).scale(&c2));
        let Some(big_r) = &rr.r_out else {
            out.push(BatteryItem::new(id, Decision::Holds, Some(Interval::zero()), Some(rhs), "outradius infinite; lhs is 0"));
            continue;
        };
        let lhs = d0 / (big_r * &den * &den);
        let v = if le_sqrt_sum(&lhs, &c1, &d1, &c2, &d2) { Decision::Holds } else { Decision::Fails };
        out.push(BatteryItem::new(id, v, Some(Interval::exact(lhs)), Some(rhs), ""));
    }
    Ok(())
}

fn radius_bound_items(inst: &Instance, rr: &RadiiReport, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    let s = f.sequence_sk(&inst.alpha, &inst.beta)?;
    let (sd, sd1) = (s.get(d).clone(), s.get(d - 1).clone());
    let back = radii(f, &inst.beta, &inst.alpha, &inst.nef)?;
    let bound = two_pow(d as i64 - 1) * &sd1 / &sd;
    match back.r_out {
        Some(r) => out.push(BatteryItem::exact("radius-bound[R(beta,alpha)]", r, bound, "")),
        None => out.push(BatteryItem::new(
            "radius-bound[R(beta,alpha)]",
            Decision::Fails,
            None,
            Some(Interval::exact(bound)),
            "outradius infinite",
        )),
    }
    out.push(BatteryItem::exact(
        "radius-bound[r(alpha,beta)]",
        two_pow(1 - d as i64) * &sd / &sd1,
        rr.r_in.clone(),
        "",
    ));
    Ok(())
}

fn comp_radii_items(inst: &Instance, rr: &RadiiReport, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    let (a, b, h) = (&inst.alpha, &inst.beta, &inst.omega);
    let rh = radii_with(f, a, b, &inst.nef, &[h])?;
    let c = two_pow(1 - d as i64);
    let s = f.sequence_sk(a, b)?;

    // Inradius ratio.
    if rh.r_in.is_positive() {
        let ratio = &rr.r_in / &rh.r_in;
        out.push(BatteryItem::exact("compare-radii[r<=1]", ratio.clone(), int(1), "H = omega"));
        let da = delta(f, a, b, &repeat(a, d - 2))?;
        let sd1 = s.get(d - 1).clone();
        let lhs = Interval::exact(da.clone())
            .sqrt(bits)
            .scale(&(-c.clone() / &sd1))
            .add_q(&c);
        let x = &c - &ratio;
        let v = if le_sqrt(&x, &(&c / &sd1), &da) { Decision::Holds } else { Decision::Fails };
        out.push(BatteryItem::new("compare-radii[r>=c]", v, Some(lhs), Some(Interval::exact(ratio)), "c = 2^(1-d)"));
    }

    // Outradius ratio.
    let s1 = s.get(1).clone();
    let db = delta(f, a, b, &repeat(b, d - 2))?;
    match (&rr.r_out, &rh.r_out) {
        (Some(r0), Some(r1)) if r1.is_positive() => {
            let ratio = r0 / r1;
            out.push(BatteryItem::exact("compare-radii[R>=1]", int(1), ratio.clone(), "H = omega"));
            let id = "compare-radii[R<=1/c]";
            if db >= (&s1 * &s1) {
                out.push(BatteryItem::vacuous(id, Some(Interval::exact(ratio)), "bound is infinite"));
            } else {
                let rc = &ratio * &c;
                let x = &rc - Rational::one();
                let v = if le_sqrt(&x, &(&rc / &s1), &db) { Decision::Holds } else { Decision::Fails };
                let den = Interval::exact(db.clone())
                    .sqrt(bits)
                    .scale(&(-c.clone() / &s1))
                    .add_q(&c);
                let rhs = Interval::exact(Rational::one()).div(&den);
                match rhs {
                    Some(rhs) => out.push(BatteryItem::new(id, v, Some(Interval::exact(ratio)), Some(rhs), "")),
                    None => out.push(BatteryItem::new(id, v, Some(Interval::exact(ratio)), None, "")),
                }
            }
        }
        (None, _) => out.push(BatteryItem::vacuous("compare-radii[R>=1]", None, "outradius on Omega infinite")),
        _ => {}
    }
    Ok(())
}

fn kt_dominates_bm(inst: &Instance, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree();
    let (mut a, mut b) = (&inst.alpha, &inst.beta);
    let (mut va, mut vb) = (f.evaluate(a)?, f.evaluate(b)?);
    if va < vb {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut va, &mut vb);
    }
    let id = "kt-dominates-bm";
    if is_flat(&f.sequence_sk(a, b)?) {
        let k = deficit_k_l(f, a, b, d as usize - 1, bits)?;
        out.push(BatteryItem::new(id, Decision::Holds, Some(Interval::zero()), Some(k), "B = 0 exactly"));
        return Ok(());
    }
    let q = vb / va;
    let res = decide(bits, |p| {
        let lhs = deficit_b(f, a, b, p).expect("checked big");
        let k = deficit_k_l(f, a, b, d as usize - 1, p).expect("checked big");
        let rhs = Interval::exact(q.clone()).nth_root(d, p).mul(&k);
        (lhs, rhs)
    });
    out.push(BatteryItem::decided(id, res, "oriented with |alpha| >= |beta|"));
    Ok(())
}

fn log_concavity_items(inst: &Instance, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let s = f.sequence_sk(&inst.alpha, &inst.beta)?;
    let d = s.degree();
    let sv = |k: usize| s.get(k).clone();
    for k in 1..d {
        out.push(BatteryItem::exact(format!("logconc-1[k={k}]"), sv(k - 1) * sv(k + 1), sv(k) * sv(k), ""));
    }
    for k1 in 0..=d {
        for k3 in k1 + 2..=d {
            for k2 in k1 + 1..k3 {
                let lhs = pow(&sv(k1), (k3 - k2) as u32) * pow(&sv(k3), (k2 - k1) as u32);
                let rhs = pow(&sv(k2), (k3 - k1) as u32);
                out.push(BatteryItem::exact(
                    format!("logconc-2[{k1},{k2},{k3}]"),
                    lhs,
                    rhs,
                    "raised to the power k3 - k1",
                ));
            }
        }
    }
    for k in 1..d {
        let lhs = pow(&sv(d), k as u32) * pow(&sv(0), (d - k) as u32);
        out.push(BatteryItem::exact(format!("logconc-3[k={k}]"), lhs, pow(&sv(k), d as u32), ""));
    }
    out.push(BatteryItem::exact(
        "logconc-4",
        pow(&sv(d), d as u32 - 1) * sv(0),
        pow(&sv(d - 1), d as u32),
        "",
    ));
    let (va, vb) = (sv(d), sv(0));
    let vab = f.evaluate(&inst.alpha.add(&inst.beta))?;
    let eval = |p: u32| {
        let lhs = Interval::exact(va.clone())
            .nth_root(d as u32, p)
            .add(&Interval::exact(vb.clone()).nth_root(d as u32, p));
        (lhs, Interval::exact(vab.clone()).nth_root(d as u32, p))
    };
    if is_flat(&s) {
        let (l, r) = eval(bits);
        out.push(BatteryItem::new("logconc-5", Decision::Holds, Some(l), Some(r), "equality: flat sequence"));
    } else {
        out.push(BatteryItem::decided("logconc-5", decide(bits, eval), ""));
    }
    Ok(())
}

fn schneider_item(inst: &Instance, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    if d < 3 {
        return Ok(());
    }
    let (a, b, w) = (&inst.alpha, &inst.beta, &inst.omega);
    let g3 = w.add(a);
    let gbar = repeat(w, d - 2);
    let mut gam = vec![&g3];
    gam.extend(repeat(w, d - 3));
    let ab = |extra: &[&Direction]| -> Result<Rational> {
        let mut v = vec![a, b];
        v.extend_from_slice(extra);
        mixed(f, &v)
    };
    let id = "schneider";
    let (abar, agam) = (ab(&gbar)?, ab(&gam)?);
    if !abar.is_positive() || !agam.is_positive() {
        out.push(BatteryItem::vacuous(id, None, "degenerate denominator"));
        return Ok(());
    }
    let lhs = delta(f, a, b, &gbar)? / (&abar * &abar);
    let dg = delta(f, a, b, &gam)?;
    let ratio = |x: &Direction| -> Result<Option<Rational>> {
        let r = radii(f, x, &g3, &inst.nef)?;
        Ok(match r.r_out {
            Some(big) if r.r_in.is_positive() => Some(big / r.r_in),
            _ => None,
        })
    };
    let m = match (ratio(a)?, ratio(b)?) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    };
    let r3 = radii(f, &g3, w, &inst.nef)?.r_out;
    let (Some(m), Some(r3)) = (m, r3) else {
        out.push(BatteryItem::vacuous(id, Some(Interval::exact(lhs)), "coefficient is infinite"));
        return Ok(());
    };
    let c = int(4) * m * r3 / agam;
    let v = if le_sqrt(&lhs, &c, &dg) { Decision::Holds } else { Decision::Fails };
    let rhs = Interval::exact(dg).sqrt(bits).scale(&c);
    out.push(BatteryItem::new(id, v, Some(Interval::exact(lhs)), Some(rhs), "gamma3 = omega + alpha, others omega"));
    Ok(())
}

fn af_dominates_items(inst: &Instance, rr: &RadiiReport, bits: u32, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    if d < 3 {
        return Ok(());
    }
    let (a, b, w) = (&inst.alpha, &inst.beta, &inst.omega);
    let back = radii(f, b, a, &inst.nef)?;
    let (da, db) = (delta_index(f, a, w, &inst.nef)?, delta_index(f, b, w, &inst.nef)?);
    let ids: Vec<String> = std::iter::once("af-dominates-bm".to_string())
        .chain((1..d).map(|l| format!("af-dominates-kt[l={l}]")))
        .collect();
    let (Some(r1), Some(r2), Some(da), Some(db)) = (rr.r_out.clone(), back.r_out, da, db) else {
        for id in ids {
            out.push(BatteryItem::vacuous(id, None, "a radius is infinite or zero"));
        }
        return Ok(());
    };
    let rmax = if r1 > r2 { r1 } else { r2 };
    let dmax = if da > db { da } else { db };
    let (a2, _) = super::deficit_a(f, a, b, w, bits)?;
    let root = 1u32 << (d - 2);
    // C^2 = rmax^(d+4) dmax^4, so C = sqrt(rmax^(d+4)) dmax^2.
    let coef = |p: u32, power: u32| -> Interval {
        Interval::exact(pow(&rmax, d as u32 + 4))
            .sqrt(p)
            .scale(&(int(4) * pow(&int(d as i64), power) * &dmax * &dmax))
            .mul(&Interval::exact(a2.clone()).nth_root(root, p))
    };
    let flat = is_flat(&f.sequence_sk(a, b)?);
    for (i, id) in ids.into_iter().enumerate() {
        let power = if i == 0 { 3 } else { 2 };
        let lhs_at = |p: u32| -> Interval {
            if i == 0 {
                deficit_b(f, a, b, p).expect("checked big")
            } else {
                deficit_k_l(f, a, b, i, p).expect("checked big")
            }
        };
        if flat {
            out.push(BatteryItem::new(id, Decision::Holds, Some(lhs_at(bits)), Some(coef(bits, power)), "deficit is 0"));
            continue;
        }
        let res = decide(bits, |p| (lhs_at(p), coef(p, power)));
        out.push(BatteryItem::decided(id, res, ""));
    }
    Ok(())
}

fn order_items(inst: &Instance, rr: &RadiiReport, out: &mut Vec<BatteryItem>) -> Result<()> {
    let f = &inst.f;
    let d = f.degree() as usize;
    let (a, b, w) = (&inst.alpha, &inst.beta, &inst.omega);
    for (name, l) in [("omega", w), ("alpha", a), ("beta", b)] {
        let lv = repeat(l, d - 1);
        let pair = |x: &Direction| -> Result<Rational> {
            let mut v = vec![x];
            v.extend_from_slice(&lv);
            mixed(f, &v)
        };
        let (la, lb) = (pair(a)?, pair(b)?);
        out.push(BatteryItem::exact(format!("order-lower[L={name}^(d-1)]"), &rr.r_in * &lb, la.clone(), ""));
        match &rr.r_out {
            Some(r) => out.push(BatteryItem::exact(format!("order-upper[L={name}^(d-1)]"), la, r * lb, "")),
            None => out.push(BatteryItem::vacuous(
                format!("order-upper[L={name}^(d-1)]"),
                Some(Interval::exact(la)),
                "outradius infinite",
            )),
        }
    }
    let ok = rr.verify_order(f, a, b, &inst.nef, &[])?;
    let v = if ok { Decision::Holds } else { Decision::Fails };
    out.push(BatteryItem::new("order-tuples", v, None, None, "every generator tuple"));
    Ok(())
}

/// The full battery for one instance, in a fixed order.
pub fn inequality_battery(inst: &Instance, bits: u32) -> Result<Vec<BatteryItem>> {
    let f = &inst.f;
    super::require_big(f, &inst.alpha, &inst.beta)?;
    let rr = radii(f, &inst.alpha, &inst.beta, &inst.nef)?;
    let mut out = Vec::new();
    rkt_items(inst, &mut out)?;
    bf_items(inst, &mut out)?;
    stab_items(inst, bits, &mut out)?;
    af_induction_items(inst, &rr, bits, &mut out)?;
    radius_bound_items(inst, &rr, &mut out)?;
    comp_radii_items(inst, &rr, bits, &mut out)?;
    kt_dominates_bm(inst, bits, &mut out)?;
    log_concavity_items(inst, bits, &mut out)?;
    schneider_item(inst, bits, &mut out)?;
    af_dominates_items(inst, &rr, bits, &mut out)?;
    order_items(inst, &rr, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sq_rect() -> Instance {
        Instance {
            name: "sq-rect".into(),
            f: VolumePolynomial::new(
                2,
                2,
                vec![(vec![2, 0], int(1)), (vec![1, 1], rat(5, 2)), (vec![0, 2], int(1))],
            )
            .unwrap(),
            alpha: Direction::unit(2, 0),
            beta: Direction::unit(2, 1),
            omega: Direction::from_ints(&[1, 1]),
            nef: ConeModel::positive_orthant(2),
            psef: None,
        }
    }

    #[test]
    fn infinite_outradius_is_out_of_hypothesis() {
        let mut inst = sq_rect();
        inst.psef = Some(ConeModel::positive_orthant(2));
        let items = inequality_battery(&inst, 96).unwrap();
        let item = items.iter().find(|i| i.id == "bonnesen").unwrap();
        assert!(item.holds() && item.lhs.is_none());
        assert!(item.note.contains("hypothesis unmet"));
    }

    #[test]
    fn rkt_on_xy() {
        let f = VolumePolynomial::from_int_terms(2, &[(&[1, 1], 1)]).unwrap();
        let one = Direction::from_ints(&[1, 1]);
        let item = rkt_check(&f, &one, &[&one, &one], 1, "rkt").unwrap();
        assert!(item.holds());
        assert_eq!(item.lhs, Some(Interval::exact(int(1))));
        assert_eq!(item.rhs, Some(Interval::exact(int(2))));
    }

    #[test]
    fn square_rectangle_battery_holds() {
        let items = inequality_battery(&sq_rect(), 128).unwrap();
        for it in &items {
            assert!(it.holds(), "{} failed: {:?}", it.id, it);
        }
        let stab = items.iter().find(|i| i.id == "stab-kt").unwrap();
        // radii of e1 against e2: r = 4/5, R = 5/4
        assert_eq!(stab.lhs, Some(Interval::exact(rat(9, 40))));
        assert!(stab.rhs.as_ref().unwrap().contains(&rat(3, 4)));
    }

    #[test]
    fn proportional_battery_is_tight() {
        let mut inst = sq_rect();
        inst.beta = inst.alpha.scale(&int(2));
        inst.alpha = Direction::from_ints(&[1, 2]);
        inst.beta = inst.alpha.scale(&int(2));
        let items = inequality_battery(&inst, 64).unwrap();
        assert!(items.iter().all(BatteryItem::holds));
        let lc = items.iter().find(|i| i.id == "logconc-4").unwrap();
        assert_eq!(lc.slack, Some(Interval::zero()));
    }
}
