//! Experiment suites, seeded boundary data and tabular output.

mod config;
mod parse;
mod rng;
mod rows;
mod suites;

pub use config::{ExperimentConfig, OutputFormat};
pub use parse::parse_complex;
pub use rng::{random_ball_nonneg, random_cyl_function, random_martingale, trial_seed, Distribution};
pub use rows::{sort_rows, write_rows, ResultRow};
pub use suites::{suite_inversion, suite_radial, suite_selftest, suite_theorem_p, suite_theorem_star, table_special_functions};
