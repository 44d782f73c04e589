//! Runs the shipped corpus on four threads and prints the totals.

use lorentzkit::cli::corpus::{run_corpus, shipped_models, CorpusOptions};

fn main() -> lorentzkit::error::Result<()> {
    let report = run_corpus(&shipped_models(), CorpusOptions { bits: 128, samples: 8, jobs: 4 })?;
    for rec in &report.instances {
        println!("{:<20} {:<10} {:?}", rec.instance, format!("{:?}", rec.kind), rec.certificate.as_ref().map(|c| c.verdict));
    }
    println!("{}", serde_json::to_string_pretty(&report.totals).expect("totals serialize"));
    Ok(())
}
