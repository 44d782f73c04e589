//! The shipped corpus and the batch runner.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::model::{load_model, parse_model, Model, ModelKind};
use super::report::{certify, combine_bodies, CertifySection};
use crate::bodies::{fmp_bodies_check, FmpBodiesRecord};
use crate::deficits::{deficit_report, empirical_constants, is_flat, DeficitReport, EmpiricalReport, Instance};
use crate::error::{Error, Result};
use crate::interval::Decision;
use crate::poly::Direction;

/// Model files compiled into the binary, by name.
pub const SHIPPED: &[(&str, &str)] = &[
    ("boolean3", include_str!("../../corpus/boolean3.json")),
    ("cube-box", include_str!("../../corpus/cube-box.json")),
    ("cube-oct-simplex", include_str!("../../corpus/cube-oct-simplex.json")),
    ("cube-simplex", include_str!("../../corpus/cube-simplex.json")),
    ("e2-three", include_str!("../../corpus/e2-three.json")),
    ("e3-four", include_str!("../../corpus/e3-four.json")),
    ("k4", include_str!("../../corpus/k4.json")),
    ("lorentz-cone", include_str!("../../corpus/lorentz-cone.json")),
    ("pentagon-diamond", include_str!("../../corpus/pentagon-diamond.json")),
    ("sq-rect", include_str!("../../corpus/sq-rect.json")),
    ("sq-tri", include_str!("../../corpus/sq-tri.json")),
    ("squares", include_str!("../../corpus/squares.json")),
    ("tesseract-box", include_str!("../../corpus/tesseract-box.json")),
    ("tri-hex-seg", include_str!("../../corpus/tri-hex-seg.json")),
    ("u34", include_str!("../../corpus/u34.json")),
    ("u34-submodular", include_str!("../../corpus/u34-submodular.json")),
    ("u35", include_str!("../../corpus/u35.json")),
    ("u45", include_str!("../../corpus/u45.json")),
    ("xyplusxz", include_str!("../../corpus/xyplusxz.json")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The shipped models, compiled, in name order.
pub fn shipped_models() -> Vec<(String, Result<Model>)> {
    SHIPPED.iter().map(|(n, t)| (n.to_string(), parse_model(t, n))).collect()
}

/// Every `*.json` model in `dir`, in file-name order.
pub fn read_dir(dir: &Path) -> Result<Vec<(String, Result<Model>)>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::input(format!("no model files in {}", dir.display())));
    }
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
            (name, load_model(&p.to_string_lossy()))
        })
        .collect())
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub bits: u32,
    pub samples: usize,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance: String,
    pub kind: Option<ModelKind>,
    pub d: Option<usize>,
    pub s: Option<usize>,
    pub certificate: Option<CertifySection>,
    pub log_concave: Option<bool>,
    pub flat: Option<bool>,
    pub deficits: Option<DeficitReport>,
    pub fmp_bodies: Option<FmpBodiesRecord>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub instances: usize,
    pub errors: usize,
    pub not_lorentzian: usize,
    pub not_log_concave: usize,
    /// Panel disagreements on strictly certified instances.
    pub panel_disagreements: usize,
    /// Panels flagging a non-strict instance.
    pub panel_non_strict: usize,
    pub battery_holds: usize,
    pub battery_fails: usize,
    pub battery_indeterminate: usize,
}

impl Totals {
    /// A verdict-level failure somewhere in the corpus.
    pub fn has_failures(&self) -> bool {
        self.errors + self.not_lorentzian + self.not_log_concave + self.panel_disagreements + self.battery_fails > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub format: u32,
    pub totals: Totals,
    pub instances: Vec<InstanceRecord>,
    pub empirical: Option<EmpiricalReport>,
}

/// The deficit instance of a model: its default classes, or `e1`, `e2`.
pub fn instance_of(model: &Model, alpha: Option<Direction>, beta: Option<Direction>, omega: Option<Direction>) -> Result<Instance> {
    let s = model.nvars();
    if s < 2 && (alpha.is_none() || beta.is_none()) {
        return Err(Error::input("a one-variable model needs explicit alpha and beta"));
    }
    let pick = |given: Option<Direction>, default: &Option<Direction>, unit: usize| {
        given.or_else(|| default.clone()).unwrap_or_else(|| Direction::unit(s, unit))
    };
    let alpha = pick(alpha, &model.alpha, 0);
    let beta = pick(beta, &model.beta, 1.min(s - 1));
    for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
        if v.dim() != s {
            return Err(Error::input(format!("{name} has {} coordinates, expected {s}", v.dim())));
        }
    }
    Ok(Instance {
        name: model.name.clone(),
        f: model.f.clone(),
        alpha,
        beta,
        omega: omega.unwrap_or_else(|| model.default_omega()),
        nef: model.nef.clone(),
        psef: model.psef.clone(),
    })
}

/// The planar body check for two-dimensional polytope models.
pub fn planar_bodies(model: &Model, inst: &Instance, bits: u32) -> Result<Option<FmpBodiesRecord>> {
    match &model.bodies {
        Some(family) if family.dim() == 2 => {
            let a = combine_bodies(&family.bodies, &inst.alpha)?;
            let b = combine_bodies(&family.bodies, &inst.beta)?;
            Ok(Some(fmp_bodies_check(&a, &b, bits)?))
        }
        _ => Ok(None),
    }
}

fn run_instance(name: &str, model: &Result<Model>, opts: CorpusOptions) -> InstanceRecord {
    let mut rec = InstanceRecord {
        instance: name.to_string(),
        kind: None,
        d: None,
        s: None,
        certificate: None,
        log_concave: None,
        flat: None,
        deficits: None,
        fmp_bodies: None,
        error: None,
    };
    let model = match model {
        Ok(m) => m,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.instance = model.name.clone();
    rec.kind = Some(model.kind);
    rec.d = Some(model.f.degree() as usize);
    rec.s = Some(model.nvars());
    let result = (|| -> Result<()> {
        rec.certificate = Some(certify(model, opts.samples)?);
        let inst = instance_of(model, None, None, None)?;
        let seq = model.f.sequence_sk(&inst.alpha, &inst.beta)?;
        rec.log_concave = Some(seq.is_log_concave());
        rec.flat = Some(is_flat(&seq));
        rec.deficits = Some(deficit_report(&inst, opts.bits)?);
        rec.fmp_bodies = planar_bodies(model, &inst, opts.bits)?;
        Ok(())
    })();
    if let Err(e) = result {
        rec.error = Some(e.to_string());
    }
    rec
}

/// Runs every instance on up to `opts.jobs` threads; the report is
/// assembled in input order.
pub fn run_corpus(models: &[(String, Result<Model>)], opts: CorpusOptions) -> Result<CorpusReport> {
    if models.is_empty() {
        return Err(Error::input("empty corpus"));
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<InstanceRecord>>> = models.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.clamp(1, models.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, model)) = models.get(i) else { break };
                let rec = run_instance(name, model, opts);
                *slots[i].lock().expect("slot lock") = Some(rec);
            });
        }
    });
    let instances: Vec<InstanceRecord> = slots
        .into_iter()
        .map(|s| s.into_inner().expect("slot lock").expect("every slot filled"))
        .collect();
    let mut totals = Totals {
        instances: instances.len(),
        ..Totals::default()
    };
    for rec in &instances {
        totals.errors += usize::from(rec.error.is_some());
        if let Some(c) = &rec.certificate {
            totals.not_lorentzian += usize::from(!c.cone.is_certified() && c.cone.verdict != crate::lorentz::Verdict::Indeterminate);
        }
        totals.not_log_concave += usize::from(rec.log_concave == Some(false));
        let strict = rec
            .certificate
            .as_ref()
            .is_some_and(|c| c.verdict == crate::lorentz::Verdict::StrictlyLorentzian);
        if let Some(d) = &rec.deficits {
            totals.panel_disagreements += usize::from(strict && !d.panel.agree);
            totals.panel_non_strict += usize::from(d.panel.implies_non_strict);
            for item in &d.battery {
                match item.verdict {
                    Decision::Holds => totals.battery_holds += 1,
                    Decision::Fails => totals.battery_fails += 1,
                    Decision::Indeterminate => totals.battery_indeterminate += 1,
                }
            }
        }
    }
    let reports: Vec<DeficitReport> = instances.iter().filter_map(|r| r.deficits.clone()).collect();
    let empirical = if reports.is_empty() {
        None
    } else {
        Some(empirical_constants(&reports, opts.bits)?)
    };
    Ok(CorpusReport {
        format: 1,
        totals,
        instances,
        empirical,
    })
}

/// CSV cells are decimals for plotting; exact values live in the report.
fn cell(q: &crate::rational::Rational) -> String {
    crate::rational::to_f64(q).to_string()
}

fn interval_cells(i: Option<&crate::interval::Interval>) -> [String; 2] {
    match i {
        Some(i) => [cell(&i.lo), cell(&i.hi)],
        None => ["inf".into(), "inf".into()],
    }
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Writes `deficits.csv`, `battery.csv` and `empirical.csv` into `dir`.
pub fn write_csvs(report: &CorpusReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(csv_error)?;
    let q = cell;
    let mut w = csv::Writer::from_path(dir.join("deficits.csv")).map_err(csv_error)?;
    w.write_record([
        "instance", "d", "s", "a_squared", "b_lo", "b_hi", "k_lo", "k_hi", "sigma_lo", "sigma_hi", "r", "r_out",
        "f_lo", "f_hi",
    ])
    .map_err(csv_error)?;
    for rec in &report.instances {
        let Some(d) = &rec.deficits else { continue };
        let [b0, b1] = interval_cells(Some(&d.b));
        let [k0, k1] = interval_cells(Some(&d.k));
        let [s0, s1] = interval_cells(Some(&d.sigma));
        let [f0, f1] = match &d.fmp {
            Some(f) => interval_cells(Some(&f.asymmetry.f)),
            None => [String::new(), String::new()],
        };
        w.write_record([
            d.instance.clone(),
            d.d.to_string(),
            d.s.to_string(),
            q(&d.a_squared),
            b0,
            b1,
            k0,
            k1,
            s0,
            s1,
            q(&d.radii.r_in),
            d.radii.r_out.as_ref().map_or("inf".into(), q),
            f0,
            f1,
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)?;

    let mut w = csv::Writer::from_path(dir.join("battery.csv")).map_err(csv_error)?;
    w.write_record(["instance", "item", "verdict", "slack_lo", "slack_hi"]).map_err(csv_error)?;
    for d in report.instances.iter().filter_map(|r| r.deficits.as_ref()) {
        for item in &d.battery {
            let [a, b] = interval_cells(item.slack.as_ref());
            w.write_record([d.instance.clone(), item.id.clone(), format!("{:?}", item.verdict), a, b])
                .map_err(csv_error)?;
        }
    }
    w.flush().map_err(csv_error)?;

    let mut w = csv::Writer::from_path(dir.join("empirical.csv")).map_err(csv_error)?;
    w.write_record(["theorem", "d", "exponent", "min_lo", "min_hi", "instance", "samples", "excluded"])
        .map_err(csv_error)?;
    if let Some(e) = &report.empirical {
        for row in e.rows.iter().chain(&e.diskant_sweep) {
            let [a, b] = interval_cells(row.min_ratio.as_ref());
            w.write_record([
                row.theorem.clone(),
                row.d.to_string(),
                row.exponent.to_string(),
                a,
                b,
                row.instance.clone().unwrap_or_default(),
                row.samples.to_string(),
                row.excluded.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    w.flush().map_err(csv_error)?;
    Ok(())
}
