//! Exact certification of (strictly) Lorentzian volume polynomials.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{ConeModel, SamplePlan};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{multisets, Direction, Exponent, VolumePolynomial};
use crate::rational::{factorial, Rational};

/// Signature `(n_plus, n_zero, n_minus)` of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    /// Exactly one positive direction and no kernel.
    pub fn is_lorentzian_signature(&self) -> bool {
        self.n_plus == 1 && self.n_zero == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// `(u, w) -> mixed_value(f, [u, w, v_3, ..., v_d])` as a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedForm {
    pub matrix: Matrix,
    pub contraction_dirs: Vec<Direction>,
}

impl ContractedForm {
    pub fn apply(&self, u: &Direction, w: &Direction) -> Rational {
        let mu = linalg::mat_vec(&self.matrix, &w.0);
        u.0.iter()
            .zip(&mu)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

pub fn contracted_form(f: &VolumePolynomial, dirs: &[Direction]) -> Result<ContractedForm> {
    let d = f.degree() as usize;
    if d < 2 || dirs.len() != d - 2 {
        return Err(Error::input(format!(
            "contracted form of a degree-{d} polynomial needs {} directions, got {}",
            d.saturating_sub(2),
            dirs.len()
        )));
    }
    let mut g = f.clone();
    for v in dirs {
        g = g.directional_derivative(v)?;
    }
    let s = f.nvars();
    let scale = Rational::from_integer(factorial(d as u32));
    let mut m = vec![vec![Rational::zero(); s]; s];
    for (e, c) in g.terms() {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c * Rational::from_integer(2.into()) / &scale;
        } else {
            m[i][j] = c / &scale;
            m[j][i] = c / &scale;
        }
    }
    Ok(ContractedForm {
        matrix: m,
        contraction_dirs: dirs.to_vec(),
    })
}

/// Exact inertia by symmetric congruence elimination.
pub fn inertia(q: &ContractedForm) -> Inertia {
    inertia_of_matrix(&q.matrix)
}

pub fn inertia_of_matrix(m: &Matrix) -> Inertia {
    let n = m.len();
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // zero diagonal: add row/column j to row/column i where a[i][j] != 0
                let Some((i, j)) = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                else {
                    break;
                };
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &piv;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
            for r in k..n {
                let delta = &factor * &a[r][k];
                a[r][i] -= delta;
            }
        }
        k += 1;
    }
    Inertia {
        n_plus: pos,
        n_zero: n - pos - neg,
        n_minus: neg,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    StrictlyLorentzian,
    Lorentzian,
    NotLorentzian,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::StrictlyLorentzian => "strictly-lorentzian",
            Verdict::Lorentzian => "lorentzian",
            Verdict::NotLorentzian => "not-lorentzian",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// A checked tuple: the directions, the inertia of the form they contract
/// to, and what was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub dirs: Vec<Direction>,
    pub inertia: Option<Inertia>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorentzCertificate {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub support_m_convex: Option<bool>,
}

impl LorentzCertificate {
    fn fail(witness: Witness, m_convex: Option<bool>) -> Self {
        LorentzCertificate {
            verdict: Verdict::NotLorentzian,
            witnesses: vec![witness],
            support_m_convex: m_convex,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(
            self.verdict,
            Verdict::Lorentzian | Verdict::StrictlyLorentzian
        )
    }
}

/// Exchange axiom: for `a, b` in the support and `a_i > b_i` there is
/// `j` with `a_j < b_j` and `a - e_i + e_j` in the support.
pub fn is_m_convex(support: &[Exponent]) -> bool {
    let set: BTreeSet<&Exponent> = support.iter().collect();
    for a in support {
        for b in support {
            for i in 0..a.len() {
                if a[i] <= b[i] {
                    continue;
                }
                let ok = (0..a.len()).any(|j| {
                    if a[j] >= b[j] {
                        return false;
                    }
                    let mut c = a.clone();
                    c[i] -= 1;
                    c[j] += 1;
                    set.contains(&c)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn basis_dirs(s: usize, ms: &[usize]) -> Vec<Direction> {
    ms.iter().map(|&i| Direction::unit(s, i)).collect()
}

/// Lorentzian on the open positive orthant: nonnegative coefficients,
/// M-convex support, and every `(d-2)`-fold basis derivative has at most
/// one positive eigenvalue.
pub fn check_positive_orthant_lorentzian(f: &VolumePolynomial) -> LorentzCertificate {
    let s = f.nvars();
    if f.is_zero() {
        return LorentzCertificate::fail(
            Witness {
                dirs: vec![],
                inertia: None,
                note: "identically zero".into(),
            },
            None,
        );
    }
    if let Some((e, c)) = f.terms().find(|(_, c)| c.is_negative()) {
        return LorentzCertificate::fail(
            Witness {
                dirs: vec![],
                inertia: None,
                note: format!(
                    "negative coefficient {} at exponent {:?}",
                    crate::rational::fmt_rational(c),
                    e
                ),
            },
            None,
        );
    }
    let m_convex = is_m_convex(&f.support());
    if !m_convex {
        return LorentzCertificate::fail(
            Witness {
                dirs: vec![],
                inertia: None,
                note: "support is not M-convex".into(),
            },
            Some(false),
        );
    }
    let d = f.degree() as usize;
    if d >= 2 {
        for ms in multisets(s, d - 2) {
            let dirs = basis_dirs(s, &ms);
            let form = contracted_form(f, &dirs).expect("arity matches");
            let inr = inertia(&form);
            if inr.n_plus > 1 {
                return LorentzCertificate::fail(
                    Witness {
                        dirs,
                        inertia: Some(inr),
                        note: "contracted form has more than one positive direction".into(),
                    },
                    Some(true),
                );
            }
        }
    }
    LorentzCertificate {
        verdict: Verdict::Lorentzian,
        witnesses: vec![],
        support_m_convex: Some(true),
    }
}

fn generators_span(cone: &ConeModel) -> bool {
    let m: Matrix = cone.generators.iter().map(|g| g.0.clone()).collect();
    linalg::rank(&m) == cone.dim()
}

/// Sampled tuples `(p_i, p_{i+1}, ..., p_{i+d-1})` taken cyclically.
fn sample_tuples(plan: &SamplePlan, d: usize) -> Vec<Vec<Direction>> {
    let n = plan.len();
    (0..n)
        .map(|i| (0..d).map(|k| plan.points[(i + k) % n].clone()).collect())
        .collect()
}

/// Lorentzian on the interior of `cone`: exact check of the substituted
/// polynomial when the generators span, plus sampled positivity and
/// signature checks.
pub fn check_cone_lorentzian(
    f: &VolumePolynomial,
    cone: &ConeModel,
    sampler: &SamplePlan,
) -> Result<LorentzCertificate> {
    if cone.generators.is_empty() {
        return Err(Error::input("empty cone"));
    }
    if cone.dim() != f.nvars() {
        return Err(Error::input(format!(
            "cone lives in dimension {} but the polynomial has {} variables",
            cone.dim(),
            f.nvars()
        )));
    }
    let d = f.degree() as usize;
    let spans = generators_span(cone);
    let mut exact: Option<LorentzCertificate> = None;
    if spans {
        let g = f.substitute_cone(&cone.generators)?;
        let mut cert = check_positive_orthant_lorentzian(&g);
        // express witnesses in the ambient coordinates
        for w in cert.witnesses.iter_mut() {
            w.dirs = w
                .dirs
                .iter()
                .map(|y| {
                    let i = y.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
                    cone.generators[i].clone()
                })
                .collect();
        }
        if cert.verdict == Verdict::NotLorentzian {
            return Ok(cert);
        }
        exact = Some(cert);
    }
    for dirs in sample_tuples(sampler, d) {
        let value = f.mixed_value(&dirs)?;
        if !value.is_positive() {
            return Ok(LorentzCertificate::fail(
                Witness {
                    dirs,
                    inertia: None,
                    note: format!(
                        "mixed value {} is not positive",
                        crate::rational::fmt_rational(&value)
                    ),
                },
                exact.as_ref().and_then(|c| c.support_m_convex),
            ));
        }
        if d >= 2 {
            let contraction = dirs[..d - 2].to_vec();
            let inr = inertia(&contracted_form(f, &contraction)?);
            if inr.n_plus > 1 {
                return Ok(LorentzCertificate::fail(
                    Witness {
                        dirs: contraction,
                        inertia: Some(inr),
                        note: "contracted form has more than one positive direction".into(),
                    },
                    exact.as_ref().and_then(|c| c.support_m_convex),
                ));
            }
        }
    }
    Ok(match exact {
        Some(cert) => cert,
        None => LorentzCertificate {
            verdict: Verdict::Indeterminate,
            witnesses: vec![Witness {
                dirs: vec![],
                inertia: None,
                note: "generators do not span; only sampled checks passed".into(),
            }],
            support_m_convex: None,
        },
    })
}

/// Strictness per sample: every sampled interior `omega` must give a
/// contracted form `omega^(d-2)` of signature `(1, 0, s-1)`.
///
/// A degenerate form at an interior sample certifies non-strictness, so the
/// verdict is then `Lorentzian` with that sample as witness.
pub fn check_strict(
    f: &VolumePolynomial,
    cone: &ConeModel,
    sampler: &SamplePlan,
) -> Result<LorentzCertificate> {
    let base = check_cone_lorentzian(f, cone, sampler)?;
    if base.verdict != Verdict::Lorentzian {
        return Err(Error::Precondition(format!(
            "strictness needs a certified Lorentzian polynomial, verdict was {}",
            base.verdict
        )));
    }
    let d = f.degree() as usize;
    let mut witnesses = Vec::new();
    let mut degenerate = None;
    for omega in &sampler.points {
        let dirs = vec![omega.clone(); d - 2];
        let inr = inertia(&contracted_form(f, &dirs)?);
        if inr.n_plus != 1 {
            return Ok(LorentzCertificate {
                verdict: Verdict::NotLorentzian,
                witnesses: vec![Witness {
                    dirs: vec![omega.clone()],
                    inertia: Some(inr),
                    note: "positive index differs from one".into(),
                }],
                support_m_convex: base.support_m_convex,
            });
        }
        let w = Witness {
            dirs: vec![omega.clone()],
            inertia: Some(inr),
            note: if inr.n_zero > 0 {
                "degenerate".into()
            } else {
                "nondegenerate".into()
            },
        };
        if inr.n_zero > 0 && degenerate.is_none() {
            degenerate = Some(w.clone());
        }
        witnesses.push(w);
    }
    Ok(match degenerate {
        Some(w) => LorentzCertificate {
            verdict: Verdict::Lorentzian,
            witnesses: vec![w],
            support_m_convex: base.support_m_convex,
        },
        None => LorentzCertificate {
            verdict: Verdict::StrictlyLorentzian,
            witnesses,
            support_m_convex: base.support_m_convex,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::DEFAULT_SAMPLES;
    use crate::rational::{int, rat};

    fn poly(s: usize, terms: &[(&[u32], i64)]) -> VolumePolynomial {
        VolumePolynomial::from_int_terms(s, terms).unwrap()
    }

    fn orthant_plan(s: usize) -> (ConeModel, SamplePlan) {
        let c = ConeModel::positive_orthant(s);
        let p = c.sample_plan(DEFAULT_SAMPLES);
        (c, p)
    }

    #[test]
    fn contracted_form_examples() {
        let xy = poly(2, &[(&[1, 1], 1)]);
        let q = contracted_form(&xy, &[]).unwrap();
        assert_eq!(q.matrix, vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]]);
        let sq = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let q = contracted_form(&sq, &[]).unwrap();
        assert_eq!(q.matrix, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let x2y = poly(2, &[(&[2, 1], 1)]);
        let q = contracted_form(&x2y, &[Direction::from_ints(&[1, 1])]).unwrap();
        assert_eq!(q.matrix[0][1], rat(1, 3));
        assert_eq!(q.matrix[0][0], rat(1, 3));
        assert_eq!(q.matrix[1][1], int(0));
        assert!(contracted_form(&x2y, &[]).is_err());
    }

    #[test]
    fn inertia_examples() {
        let m = |rows: &[&[i64]]| -> Matrix {
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
        };
        let hyper = vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]];
        assert_eq!(inertia_of_matrix(&hyper), Inertia { n_plus: 1, n_zero: 0, n_minus: 1 });
        assert_eq!(
            inertia_of_matrix(&m(&[&[1, 0], &[0, 1]])),
            Inertia { n_plus: 2, n_zero: 0, n_minus: 0 }
        );
        assert_eq!(
            inertia_of_matrix(&m(&[&[1, 1], &[1, 1]])),
            Inertia { n_plus: 1, n_zero: 1, n_minus: 0 }
        );
        assert_eq!(
            inertia_of_matrix(&m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]])),
            Inertia { n_plus: 1, n_zero: 1, n_minus: 1 }
        );
    }

    #[test]
    fn orthant_examples() {
        assert_eq!(
            check_positive_orthant_lorentzian(&poly(2, &[(&[1, 1], 1)])).verdict,
            Verdict::Lorentzian
        );
        let cert = check_positive_orthant_lorentzian(&poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]));
        assert_eq!(cert.verdict, Verdict::NotLorentzian);
        let cert2 =
            check_positive_orthant_lorentzian(&poly(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(cert2.verdict, Verdict::Lorentzian);
        let neg = poly(2, &[(&[2, 1], 1), (&[1, 2], -1)]);
        assert_eq!(check_positive_orthant_lorentzian(&neg).verdict, Verdict::NotLorentzian);
        let zero = VolumePolynomial::zero(2, 2);
        let cert = check_positive_orthant_lorentzian(&zero);
        assert_eq!(cert.witnesses[0].note, "identically zero");
    }

    #[test]
    fn x2_plus_y2_witness_inertia() {
        // the support {(2,0),(0,2)} is not M-convex; the cone check reports it
        let (c, p) = orthant_plan(2);
        let cert = check_cone_lorentzian(&poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]), &c, &p).unwrap();
        assert_eq!(cert.verdict, Verdict::NotLorentzian);
        let q = contracted_form(&poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]), &[]).unwrap();
        assert_eq!(inertia(&q), Inertia { n_plus: 2, n_zero: 0, n_minus: 0 });
    }

    #[test]
    fn cone_examples() {
        let (c, p) = orthant_plan(2);
        let xy = poly(2, &[(&[1, 1], 1)]);
        assert_eq!(check_cone_lorentzian(&xy, &c, &p).unwrap().verdict, Verdict::Lorentzian);
        let sq_tri = VolumePolynomial::new(
            2,
            2,
            vec![(vec![2, 0], int(1)), (vec![1, 1], int(2)), (vec![0, 2], rat(1, 2))],
        )
        .unwrap();
        assert_eq!(check_cone_lorentzian(&sq_tri, &c, &p).unwrap().verdict, Verdict::Lorentzian);
    }

    #[test]
    fn strict_examples() {
        let (c, p) = orthant_plan(2);
        let xy = poly(2, &[(&[1, 1], 1)]);
        assert_eq!(check_strict(&xy, &c, &p).unwrap().verdict, Verdict::StrictlyLorentzian);
        let sq = poly(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let cert = check_strict(&sq, &c, &p).unwrap();
        assert_eq!(cert.verdict, Verdict::Lorentzian);
        assert_eq!(cert.witnesses[0].inertia, Some(Inertia { n_plus: 1, n_zero: 1, n_minus: 0 }));
        let x2y = poly(2, &[(&[2, 1], 1)]);
        let q = contracted_form(&x2y, &[Direction::from_ints(&[1, 1])]).unwrap();
        assert!(linalg::det(&q.matrix).is_negative());
        assert_eq!(check_strict(&x2y, &c, &p).unwrap().verdict, Verdict::StrictlyLorentzian);
        let bad = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(matches!(check_strict(&bad, &c, &p), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_spanning_cone_is_indeterminate() {
        let c = ConeModel::from_generators("ray", vec![Direction::from_ints(&[1, 1])]).unwrap();
        let p = c.sample_plan(4);
        let xy = poly(2, &[(&[1, 1], 1)]);
        assert_eq!(check_cone_lorentzian(&xy, &c, &p).unwrap().verdict, Verdict::Indeterminate);
    }
}
