//! A seeded experiment suite written as CSV to stdout.
//!
//! `cargo run --release --example random_experiment -- [count]`

use map_core::toolkit::experiment::{self, ExperimentSpec, GeneratorKind};

fn main() -> map_core::Result<()> {
    let count = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(24);
    let spec = ExperimentSpec {
        generator: GeneratorKind::Random,
        sizes: vec![6, 8, 10, 12],
        count,
        seed: 42,
        extra_heavy: None,
        matching_fraction: 0.7,
        oracle: true,
        oracle_budget: Some(2_000_000),
        diagnostics: true,
        unguided: true,
        record_timing: false,
        threads: None,
    };
    let report = experiment::run_experiment(&spec)?;
    print!("{}", report.to_csv()?);
    eprintln!("{}", serde_json::to_string_pretty(&report.summary).expect("summary serializes"));
    Ok(())
}
