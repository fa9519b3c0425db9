//! Runs the inversion suite in-process and writes the rows as CSV.

use std::fs::File;

use homtree::harness::{suite_inversion, write_rows, ExperimentConfig, OutputFormat};
use homtree::Result;

fn main() -> Result<()> {
    let config = ExperimentConfig { depth: 10, trials: 2, ..Default::default() };
    config.validate()?;
    let rows = suite_inversion(&config)?;
    let path = std::env::temp_dir().join("homtree_inversion.csv");
    write_rows(&rows, OutputFormat::Csv, File::create(&path)?)?;
    let failed = rows.iter().filter(|r| r.failed()).count();
    println!("{} rows written to {}, {failed} failed", rows.len(), path.display());
    Ok(())
}
