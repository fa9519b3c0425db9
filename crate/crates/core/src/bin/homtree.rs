use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homtree::harness::{self, ExperimentConfig, OutputFormat, ResultRow};
use homtree::{Complex64, Error, Exponent, Result};

#[derive(Parser)]
#[command(name = "homtree", version, about = "Experiment suites on homogeneous trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenfunctions and H^r_p bounds on the families z = α + iδ_{p'}
    TheoremP(Common),
    /// H^r_* bounds for real z, normalized by |c(z)|
    TheoremStar(Common),
    /// Recovery of F from the averaging operator T_n
    Inversion(Common),
    /// Normalized radial convergence of P_zF
    Radial(Common),
    /// γ(z), c(z) and φ_z(n) tables with cross-checks
    Tables(Common),
    /// All oracle-equality checks at q = 2, 3 and depth 10
    Selftest(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Level m of the random boundary data
    #[arg(long, default_value_t = 2)]
    level: usize,
    /// Spectral parameter, e.g. `tau/8`, `-i/2`, `0.3+0.2i` (repeatable)
    #[arg(long = "z", allow_hyphen_values = true)]
    z: Vec<String>,
    /// Lebesgue index p in [1, 2], e.g. `4/3` (repeatable)
    #[arg(long = "p")]
    p: Vec<String>,
    /// Exponent r in [1, inf] (repeatable)
    #[arg(long = "r")]
    r: Vec<Exponent>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn parse_fraction(s: &str) -> Result<f64> {
    let bad = || Error::Config(format!("bad number {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => Ok(a.trim().parse::<f64>().map_err(|_| bad())? / b.trim().parse::<f64>().map_err(|_| bad())?),
        None => s.trim().parse().map_err(|_| bad()),
    }
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let z_grid = if self.z.is_empty() {
            None
        } else {
            Some(self.z.iter().map(|s| harness::parse_complex(s, self.q)).collect::<Result<Vec<Complex64>>>()?)
        };
        let p_grid = if self.p.is_empty() {
            None
        } else {
            Some(self.p.iter().map(|s| parse_fraction(s)).collect::<Result<Vec<f64>>>()?)
        };
        let config = ExperimentConfig {
            q: self.q,
            depth: self.depth,
            level: self.level,
            z_grid,
            p_grid,
            r_grid: (!self.r.is_empty()).then(|| self.r.clone()),
            trials: self.trials,
            seed: self.seed,
        };
        config.validate()?;
        Ok(config)
    }

    fn emit(&self, rows: &[ResultRow]) -> Result<()> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                harness::write_rows(rows, self.format, &mut w)?;
                w.flush()?;
            }
            None => harness::write_rows(rows, self.format, io::stdout().lock())?,
        }
        Ok(())
    }
}

type Suite = fn(&ExperimentConfig) -> Result<Vec<ResultRow>>;

fn run(cli: Cli) -> Result<bool> {
    let (common, suite): (&Common, Suite) = match &cli.command {
        Command::TheoremP(c) => (c, harness::suite_theorem_p),
        Command::TheoremStar(c) => (c, harness::suite_theorem_star),
        Command::Inversion(c) => (c, harness::suite_inversion),
        Command::Radial(c) => (c, harness::suite_radial),
        Command::Tables(c) => (c, harness::table_special_functions),
        Command::Selftest(c) => (c, harness::suite_selftest),
    };
    let rows = suite(&common.config()?)?;
    common.emit(&rows)?;
    let failed = rows.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed", rows.len());
    }
    Ok(failed == 0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
