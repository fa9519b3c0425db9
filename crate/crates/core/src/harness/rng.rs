//! Seeded boundary data.
//!
//! The generator is ChaCha8 (`rand_chacha`) seeded with `seed_from_u64(seed)`;
//! values are drawn in sphere-index order. Trial `t` of a run with base seed
//! `s` uses seed `s + t`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{CylFunction, Martingale};
use crate::error::Result;
use crate::transform::BallFunction;
use crate::tree::{sphere_len, TreeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    /// Uniform on the closed unit disc.
    ComplexDisc,
    /// Uniform on `[−1, 1]`.
    RealUniform,
    /// Independent `{0, 1}` values with probability `1/2`, never all zero.
    Indicator,
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

pub fn random_cyl_function(seed: u64, params: TreeParams, level: usize, dist: Distribution) -> Result<CylFunction> {
    params.check_level(level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = sphere_len(params.q(), level);
    let mut values: Vec<Complex64> = (0..len)
        .map(|_| match dist {
            Distribution::ComplexDisc => {
                let radius = rng.random::<f64>().sqrt();
                let angle = 2.0 * PI * rng.random::<f64>();
                Complex64::from_polar(radius, angle)
            }
            Distribution::RealUniform => Complex64::new(rng.random_range(-1.0..=1.0), 0.0),
            Distribution::Indicator => Complex64::new(if rng.random::<bool>() { 1.0 } else { 0.0 }, 0.0),
        })
        .collect();
    if dist == Distribution::Indicator && values.iter().all(|v| v.re == 0.0) {
        let k = rng.random_range(0..len);
        values[k] = Complex64::new(1.0, 0.0);
    }
    CylFunction::new(params, level, values)
}

/// `{E_n(F)}_{n ≤ horizon}` for a random level-`horizon` function `F`.
pub fn random_martingale(seed: u64, params: TreeParams, horizon: usize, dist: Distribution) -> Result<Martingale> {
    let params = params.with_depth(params.depth().max(horizon))?;
    let f = random_cyl_function(seed, params, horizon, dist)?;
    Martingale::from_function(&f, horizon)
}

/// Independent uniform `[0, 1)` values on the ball.
pub fn random_ball_nonneg(seed: u64, params: TreeParams) -> BallFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BallFunction::from_fn(params, |_, _| Complex64::new(rng.random::<f64>(), 0.0))
}
