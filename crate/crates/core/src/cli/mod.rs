//! Command-line surface. Exit codes: 0 computed, 1 verdict-level failure,
//! 2 input error.

pub mod corpus;
pub mod model;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cone::DEFAULT_SAMPLES;
use crate::deficits::{deficit_report, fmp_radii_chain, inequality_battery, is_flat, radii};
use crate::error::{Error, Result};
use crate::interval::{Decision, DEFAULT_PRECISION_BITS};
use crate::lorentz::Verdict;
use crate::numdim::{hall_rado, kernel_face, maximal_index_set, nd_collection, nd_omega, NefCollection};
use corpus::{instance_of, planar_bodies, read_dir, run_corpus, shipped_models, write_csvs, CorpusOptions};
use model::{load_model, parse_collection, parse_vector, Model};
use report::{certify, to_json, to_text, NdEntry, NdSection, RunReport, SequenceSection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lorentzkit", version, about = "Exact Lorentzian certification and deficit inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expectation {
    Lorentzian,
    Strict,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Model file, or the name of a shipped model.
    #[arg(long)]
    pub model: String,
    /// A class such as `e1`, `2*e1+1/2*e3` or `1,1/2,0`; defaults to the model's.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Second class, same syntax as `--alpha`.
    #[arg(long)]
    pub beta: Option<String>,
    /// Reference class; defaults to the sum of the nef generators.
    #[arg(long)]
    pub omega: Option<String>,
    /// Vectors separated by `;`, or basis names such as `e2,e3`.
    #[arg(long)]
    pub collection: Option<String>,
    /// Starting precision for irrational enclosures; doubled on demand.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    /// Interior sample points of the nef cone.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify (strict) Lorentzian-ness on the nef cone.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Exit 1 unless the verdict meets this level.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Numerical dimension of `--alpha` or of each class in `--collection`.
    Nd(Common),
    /// Hall-Rado comparison for `--collection`.
    HallRado(Common),
    /// Kernel face of `--collection` (d - 1 classes) in the nef cone.
    KernelFace(Common),
    /// The sequence `s_k` of `--alpha`, `--beta`.
    Sequence(Common),
    /// All deficits, radii and the inequality battery.
    Deficits(Common),
    /// In- and out-radii in both directions.
    Radii(Common),
    /// The inequality battery alone.
    Stability(Common),
    /// The asymmetry-radius chain, plus the planar body check for
    /// two-dimensional polytope models.
    Fmp(Common),
    /// Runs every model of a directory (or the shipped corpus).
    Corpus {
        /// Directory of model files; the shipped corpus when omitted.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving deficits.csv, battery.csv and empirical.csv.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(value: &impl serde::Serialize, format: OutputFormat, out: &Option<PathBuf>) -> Result<()> {
    let text = match format {
        OutputFormat::Structured => to_json(value)?,
        OutputFormat::Text => to_text(value)?,
    };
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

struct Ctx {
    model: Model,
    common: Common,
}

impl Ctx {
    fn new(common: Common) -> Result<Self> {
        Ok(Ctx {
            model: load_model(&common.model)?,
            common,
        })
    }

    fn vector(&self, text: &Option<String>) -> Result<Option<crate::poly::Direction>> {
        text.as_deref().map(|t| parse_vector(t, self.model.nvars())).transpose()
    }

    fn omega(&self) -> Result<crate::poly::Direction> {
        Ok(self.vector(&self.common.omega)?.unwrap_or_else(|| self.model.default_omega()))
    }

    fn collection(&self) -> Result<NefCollection> {
        let text = self
            .common
            .collection
            .as_deref()
            .ok_or_else(|| Error::input("--collection is required"))?;
        let classes = parse_collection(text, self.model.nvars())?;
        NefCollection::new(classes, self.omega()?)
    }

    fn instance(&self) -> Result<crate::deficits::Instance> {
        instance_of(
            &self.model,
            self.vector(&self.common.alpha)?,
            self.vector(&self.common.beta)?,
            self.vector(&self.common.omega)?,
        )
    }

    fn report(&self, command: &str) -> RunReport {
        RunReport {
            format: model::FORMAT_VERSION,
            command: command.into(),
            instance: self.model.name.clone(),
            ..RunReport::default()
        }
    }

    fn emit(&self, report: &RunReport) -> Result<()> {
        emit(report, self.common.format, &self.common.out)
    }
}

fn verdict_code(failed: bool) -> i32 {
    if failed {
        EXIT_VERDICT
    } else {
        EXIT_OK
    }
}

fn battery_failed(items: &[crate::deficits::BatteryItem]) -> bool {
    items.iter().any(|i| i.verdict == Decision::Fails)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Certify { common, expect } => {
            let ctx = Ctx::new(common)?;
            let section = certify(&ctx.model, ctx.common.samples)?;
            let met = match expect {
                None => true,
                Some(Expectation::Lorentzian) => {
                    matches!(section.verdict, Verdict::Lorentzian | Verdict::StrictlyLorentzian)
                }
                Some(Expectation::Strict) => section.verdict == Verdict::StrictlyLorentzian,
            };
            let mut r = ctx.report("certify");
            r.certificate = Some(section);
            ctx.emit(&r)?;
            Ok(verdict_code(!met))
        }
        Command::Nd(common) => {
            let ctx = Ctx::new(common)?;
            let f = &ctx.model.f;
            let omega = ctx.omega()?;
            let mut section = NdSection {
                omega: omega.clone(),
                classes: Vec::new(),
                collection_nd: None,
                maximal_index_set: None,
            };
            if let Some(a) = ctx.vector(&ctx.common.alpha)? {
                section.classes.push(NdEntry {
                    nd: nd_omega(f, &a, &omega)?,
                    class: a,
                });
            }
            if ctx.common.collection.is_some() {
                let coll = ctx.collection()?;
                for c in &coll.classes {
                    section.classes.push(NdEntry {
                        class: c.clone(),
                        nd: nd_omega(f, c, &omega)?,
                    });
                }
                let nd = nd_collection(f, &coll)?;
                section.collection_nd = Some(nd);
                if nd == coll.len() {
                    section.maximal_index_set = maximal_index_set(f, &coll).ok();
                }
            }
            if section.classes.is_empty() {
                return Err(Error::input("nd needs --alpha or --collection"));
            }
            let mut r = ctx.report("nd");
            r.nd = Some(section);
            ctx.emit(&r)?;
            Ok(EXIT_OK)
        }
        Command::HallRado(common) => {
            let ctx = Ctx::new(common)?;
            let coll = ctx.collection()?;
            let plan = ctx.model.sample_plan(ctx.common.samples);
            let hr = hall_rado(&ctx.model.f, &coll, &plan.points)?;
            let failed = !hr.agree;
            let mut r = ctx.report("hall-rado");
            r.hall_rado = Some(hr);
            ctx.emit(&r)?;
            Ok(verdict_code(failed))
        }
        Command::KernelFace(common) => {
            let ctx = Ctx::new(common)?;
            let coll = ctx.collection()?;
            let kf = kernel_face(&ctx.model.f, &coll, &ctx.model.nef)?;
            let mut r = ctx.report("kernel-face");
            r.kernel_face = Some(kf);
            ctx.emit(&r)?;
            Ok(EXIT_OK)
        }
        Command::Sequence(common) => {
            let ctx = Ctx::new(common)?;
            let inst = ctx.instance()?;
            let sequence = ctx.model.f.sequence_sk(&inst.alpha, &inst.beta)?;
            let section = SequenceSection {
                log_concave: sequence.is_log_concave(),
                flat: is_flat(&sequence),
                alpha: inst.alpha,
                beta: inst.beta,
                sequence,
            };
            let failed = !section.log_concave;
            let mut r = ctx.report("sequence");
            r.sequence = Some(section);
            ctx.emit(&r)?;
            Ok(verdict_code(failed))
        }
        Command::Deficits(common) => {
            let ctx = Ctx::new(common)?;
            let inst = ctx.instance()?;
            let d = deficit_report(&inst, ctx.common.precision_bits)?;
            let failed = battery_failed(&d.battery);
            let mut r = ctx.report("deficits");
            r.deficits = Some(d);
            ctx.emit(&r)?;
            Ok(verdict_code(failed))
        }
        Command::Radii(common) => {
            let ctx = Ctx::new(common)?;
            let inst = ctx.instance()?;
            let mut r = ctx.report("radii");
            r.radii = Some(radii(&inst.f, &inst.alpha, &inst.beta, &inst.nef)?);
            r.radii_reverse = Some(radii(&inst.f, &inst.beta, &inst.alpha, &inst.nef)?);
            ctx.emit(&r)?;
            Ok(EXIT_OK)
        }
        Command::Stability(common) => {
            let ctx = Ctx::new(common)?;
            let inst = ctx.instance()?;
            let items = inequality_battery(&inst, ctx.common.precision_bits)?;
            let failed = battery_failed(&items);
            let mut r = ctx.report("stability");
            r.battery = Some(items);
            ctx.emit(&r)?;
            Ok(verdict_code(failed))
        }
        Command::Fmp(common) => {
            let ctx = Ctx::new(common)?;
            let inst = ctx.instance()?;
            let bits = ctx.common.precision_bits;
            let chain = fmp_radii_chain(&inst.f, &inst.alpha, &inst.beta, &inst.omega, &inst.nef, bits)?;
            let failed = chain.first_step == Decision::Fails || chain.second_step == Decision::Fails;
            let mut r = ctx.report("fmp");
            r.fmp = Some(chain);
            r.fmp_bodies = planar_bodies(&ctx.model, &inst, bits)?;
            ctx.emit(&r)?;
            Ok(verdict_code(failed))
        }
        Command::Corpus {
            dir,
            precision_bits,
            samples,
            jobs,
            format,
            out,
            csv_dir,
        } => {
            let models = match &dir {
                Some(d) => read_dir(d)?,
                None => shipped_models(),
            };
            let report = run_corpus(
                &models,
                CorpusOptions {
                    bits: precision_bits,
                    samples,
                    jobs,
                },
            )?;
            if let Some(d) = &csv_dir {
                write_csvs(&report, d)?;
            }
            emit(&report, format, &out)?;
            Ok(verdict_code(report.totals.has_failures()))
        }
    }
}
