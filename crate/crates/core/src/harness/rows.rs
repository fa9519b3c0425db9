use std::cmp::Ordering;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::config::OutputFormat;
use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// One output line: `suite,q,z_re,z_im,p,r,n,seed,metric,value,bound,tol,pass`.
///
/// Rows that assert carry `bound`, `tol` and `pass`; informational rows leave them empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub suite: String,
    pub q: u32,
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub p: Option<f64>,
    pub r: Option<Exponent>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub metric: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub tol: Option<f64>,
    pub pass: Option<bool>,
}

impl ResultRow {
    pub fn new(suite: &str, q: u32, metric: &str, value: f64) -> Self {
        ResultRow {
            suite: suite.to_string(),
            q,
            z_re: None,
            z_im: None,
            p: None,
            r: None,
            n: None,
            seed: None,
            metric: metric.to_string(),
            value,
            bound: None,
            tol: None,
            pass: None,
        }
    }

    pub fn z(mut self, z: Complex64) -> Self {
        self.z_re = Some(z.re);
        self.z_im = Some(z.im);
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn r(mut self, r: Exponent) -> Self {
        self.r = Some(r);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Assert `value ≤ bound + tol`.
    pub fn at_most(mut self, bound: f64, tol: f64) -> Self {
        self.pass = Some(self.value <= bound + tol);
        self.bound = Some(bound);
        self.tol = Some(tol);
        self
    }

    /// Assert `value ≥ bound − tol`.
    pub fn at_least(mut self, bound: f64, tol: f64) -> Self {
        self.pass = Some(self.value >= bound - tol);
        self.bound = Some(bound);
        self.tol = Some(tol);
        self
    }

    /// Assert `|value − bound| ≤ tol`.
    pub fn close_to(mut self, bound: f64, tol: f64) -> Self {
        self.pass = Some((self.value - bound).abs() <= tol);
        self.bound = Some(bound);
        self.tol = Some(tol);
        self
    }

    /// Record a pass flag decided elsewhere.
    pub fn verdict(mut self, bound: Option<f64>, tol: Option<f64>, pass: bool) -> Self {
        self.bound = bound;
        self.tol = tol;
        self.pass = Some(pass);
        self
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

fn cmp_opt_f64(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    }
}

/// Sort by `(suite, q, z, p, r, n, seed, metric)`; ties keep insertion order.
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        a.suite
            .cmp(&b.suite)
            .then(a.q.cmp(&b.q))
            .then(cmp_opt_f64(a.z_re, b.z_re))
            .then(cmp_opt_f64(a.z_im, b.z_im))
            .then(cmp_opt_f64(a.p, b.p))
            .then(cmp_opt_f64(a.r.map(Exponent::value), b.r.map(Exponent::value)))
            .then(a.n.cmp(&b.n))
            .then(a.seed.cmp(&b.seed))
            .then(a.metric.cmp(&b.metric))
    });
}

pub fn write_rows<W: Write>(rows: &[ResultRow], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| Error::Io(std::io::Error::other(e)))?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
