//! Worst-case constants `min X / Y^e` over a corpus for the comparison
//! theorems whose constants are not explicit. Nothing here asserts a bound.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::DeficitReport;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalRow {
    /// Short name of the comparison, e.g. `kt-vs-af`.
    pub theorem: String,
    pub d: usize,
    /// The exponent `e` on `Y`.
    pub exponent: u32,
    /// Enclosure of the smallest ratio; `None` when every `Y` vanished.
    pub min_ratio: Option<Interval>,
    pub instance: Option<String>,
    /// Instances with certified `Y > 0`.
    pub samples: usize,
    /// Instances with `Y = 0` or an enclosure touching 0.
    pub excluded: usize,
}

impl EmpiricalRow {
    pub fn is_vacuous(&self) -> bool {
        self.samples == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub rows: Vec<EmpiricalRow>,
    /// `K >= c F^e` for each exponent of the sweep.
    pub diskant_sweep: Vec<EmpiricalRow>,
}

type Sample = Option<(Interval, Interval)>;

struct Accumulator {
    row: EmpiricalRow,
}

impl Accumulator {
    fn new(theorem: &str, d: usize, exponent: u32) -> Self {
        Accumulator {
            row: EmpiricalRow {
                theorem: theorem.into(),
                d,
                exponent,
                min_ratio: None,
                instance: None,
                samples: 0,
                excluded: 0,
            },
        }
    }

    fn push(&mut self, name: &str, sample: Sample) {
        let Some((x, y)) = sample else {
            self.row.excluded += 1;
            return;
        };
        if !y.lo.is_positive() {
            self.row.excluded += 1;
            return;
        }
        let ratio = x.div(&y.powi(self.row.exponent)).expect("denominator is positive");
        self.row.samples += 1;
        let better = self.row.min_ratio.as_ref().is_none_or(|m| ratio.lo < m.lo);
        if better {
            self.row.min_ratio = Some(ratio);
            self.row.instance = Some(name.to_string());
        }
    }
}

/// Orientation with `|alpha| >= |beta|`: returns the matching KT deficit.
fn oriented_k(r: &DeficitReport) -> &Interval {
    if r.s_sequence.get(r.d) >= r.s_sequence.get(0) {
        &r.k
    } else {
        &r.k_reverse
    }
}

fn samples(r: &DeficitReport, bits: u32) -> Vec<(&'static str, u32, Sample)> {
    let e = 1u32 << (r.d - 2);
    let k = oriented_k(r);
    let inv_sigma = Interval::exact(Rational::one()).div(&r.sigma).expect("sigma >= 1");
    let xk = inv_sigma.mul(k);
    let bm_y = xk.div(&xk.add_q(&Rational::one())).expect("K >= 0");
    let sigma_b = r.sigma.mul(&r.b);
    let radii_y = r.fmp.as_ref().and_then(|c| {
        c.r_out_gamma
            .as_ref()
            .map(|big| Interval::exact(Rational::one() - &c.r_gamma / big))
    });
    let f_hi = r.fmp.as_ref().map(|c| Interval::exact(c.asymmetry.f.hi.clone()));
    vec![
        ("kt-vs-af", e, Some((r.k.clone(), r.a.clone()))),
        ("bm-vs-kt", 1, Some((r.b.clone(), bm_y))),
        ("sigma-bm-vs-af", e, Some((sigma_b, r.a.clone()))),
        ("kt-root-vs-radii", 1, radii_y.map(|y| (r.k.nth_root(e, bits), y))),
        ("kt-vs-asymmetry", e, f_hi.map(|y| (r.k.clone(), y))),
    ]
}

fn sweep_exponents(d: usize) -> Vec<u32> {
    let set: BTreeSet<u32> = [1, 2, d as u32, 1u32 << (d - 2)].into_iter().collect();
    set.into_iter().collect()
}

/// Per-theorem minima over the given reports, grouped by degree.
pub fn empirical_constants(reports: &[DeficitReport], bits: u32) -> Result<EmpiricalReport> {
    if reports.is_empty() {
        return Err(Error::input("empirical constants need a nonempty corpus"));
    }
    let degrees: BTreeSet<usize> = reports.iter().map(|r| r.d).collect();
    let mut rows = Vec::new();
    let mut diskant_sweep = Vec::new();
    for &d in &degrees {
        let group: Vec<&DeficitReport> = reports.iter().filter(|r| r.d == d).collect();
        let names: Vec<(&str, u32)> = samples(group[0], bits).iter().map(|(n, e, _)| (*n, *e)).collect();
        let mut accs: Vec<Accumulator> = names.iter().map(|(n, e)| Accumulator::new(n, d, *e)).collect();
        let mut sweep: Vec<Accumulator> = sweep_exponents(d)
            .into_iter()
            .map(|e| Accumulator::new("kt-vs-asymmetry-sweep", d, e))
            .collect();
        for r in group {
            for (acc, (_, _, s)) in accs.iter_mut().zip(samples(r, bits)) {
                acc.push(&r.instance, s);
            }
            let f_hi = r.fmp.as_ref().map(|c| Interval::exact(c.asymmetry.f.hi.clone()));
            for acc in sweep.iter_mut() {
                acc.push(&r.instance, f_hi.clone().map(|y| (r.k.clone(), y)));
            }
        }
        rows.extend(accs.into_iter().map(|a| a.row));
        diskant_sweep.extend(sweep.into_iter().map(|a| a.row));
    }
    Ok(EmpiricalReport { rows, diskant_sweep })
}

#[cfg(test)]
mod tests {
    use super::super::{deficit_report, Instance};
    use super::*;
    use crate::cone::ConeModel;
    use crate::poly::{Direction, VolumePolynomial};
    use crate::rational::{int, rat};

    fn inst(name: &str, beta: Direction) -> Instance {
        Instance {
            name: name.into(),
            f: VolumePolynomial::new(
                2,
                2,
                vec![(vec![2, 0], int(1)), (vec![1, 1], rat(5, 2)), (vec![0, 2], int(1))],
            )
            .unwrap(),
            alpha: Direction::unit(2, 0),
            beta,
            omega: Direction::from_ints(&[1, 1]),
            nef: ConeModel::positive_orthant(2),
            psef: None,
        }
    }

    #[test]
    fn square_rectangle_kt_over_af() {
        let r = deficit_report(&inst("sq-rect", Direction::unit(2, 1)), 128).unwrap();
        let rep = empirical_constants(&[r], 128).unwrap();
        let row = rep.rows.iter().find(|r| r.theorem == "kt-vs-af").unwrap();
        assert_eq!(row.min_ratio, Some(Interval::exact(rat(5, 12))));
        assert!(rep.rows.iter().all(|r| r.min_ratio.as_ref().is_none_or(|m| m.lo.is_positive())));
    }

    #[test]
    fn proportional_corpus_is_vacuous() {
        let r = deficit_report(&inst("same", Direction::unit(2, 0).scale(&int(2))), 64).unwrap();
        let rep = empirical_constants(&[r], 64).unwrap();
        assert!(rep.rows.iter().all(EmpiricalRow::is_vacuous));
        assert!(empirical_constants(&[], 64).is_err());
    }
}
