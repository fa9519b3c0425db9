//! Operators and norms on the tree side.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::{gamma, phi_explicit, LebesgueIndex, SpectralParam};
use crate::transform::BallFunction;
use crate::tree::{ancestor_index, descendant_range, sphere_len};

/// `ℒu(x) = u(x) − (q+1)^{−1} Σ_{d(x,y)=1} u(y)` on `B(o, depth − 1)`.
pub fn laplacian(u: &BallFunction) -> Result<BallFunction> {
    let params = u.params();
    if params.depth() == 0 {
        return Err(Error::domain("the Laplacian needs a ball of radius at least 1"));
    }
    let q = params.q();
    let inner = params.with_depth(params.depth() - 1)?;
    let scale = 1.0 / (q as f64 + 1.0);
    Ok(BallFunction::from_fn(inner, |n, i| {
        let mut sum: Complex64 = u.sphere(n + 1)[descendant_range(q, n, i, n + 1)].iter().sum();
        if n > 0 {
            sum += u.value(n - 1, ancestor_index(q, n, i, n - 1));
        }
        u.value(n, i) - sum * scale
    }))
}

/// `max_{|x| < depth} |ℒu(x) − γ(z)u(x)|`.
pub fn eigen_residual(u: &BallFunction, sp: &SpectralParam) -> Result<f64> {
    let g = gamma(sp);
    let lu = laplacian(u)?;
    Ok(lu
        .values()
        .iter()
        .zip(u.values())
        .fold(0.0, |m, (l, v)| m.max((l - g * v).norm())))
}

/// Block averages of `values` (level `level`) over groups sharing the level-`n` ancestor.
fn block_means(q: u32, level: usize, values: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..sphere_len(q, n))
        .map(|a| {
            let block = descendant_range(q, n, a, level);
            let len = block.len() as f64;
            values[block].iter().sum::<Complex64>() / len
        })
        .collect()
}

/// `ε_nu`: averages over `𝒮(n, x) = {y : |y| = |x|, y_n = x_n}` when `|x| > n`.
pub fn epsilon_n(u: &BallFunction, n: usize) -> BallFunction {
    let params = u.params();
    let q = params.q();
    let mut out = u.clone();
    for level in (n + 1)..=params.depth() {
        let means = block_means(q, level, u.sphere(level), n);
        for (i, v) in out.sphere_mut(level).iter_mut().enumerate() {
            *v = means[ancestor_index(q, level, i, n)];
        }
    }
    out
}

/// `ε*u(x) = max_{0 ≤ n ≤ |x|} |ε_nu(x)|`.
pub fn epsilon_star(u: &BallFunction) -> BallFunction {
    let params = u.params();
    let q = params.q();
    let mut out = u.map(|v| Complex64::new(v.norm(), 0.0));
    for level in 1..=params.depth() {
        let values = u.sphere(level).to_vec();
        let target = out.sphere_mut(level);
        for n in 0..level {
            let means = block_means(q, level, &values, n);
            for (i, t) in target.iter_mut().enumerate() {
                let m = means[ancestor_index(q, level, i, n)].norm();
                if m > t.re {
                    *t = Complex64::new(m, 0.0);
                }
            }
        }
    }
    out
}

/// `((1/#S(o,n)) Σ_{|y|=n} |u(y)|^r)^{1/r}`, the max for `r = ∞`.
pub fn sphere_lr_average(u: &BallFunction, n: usize, r: Exponent) -> f64 {
    let values = u.sphere(n);
    let w = 1.0 / values.len() as f64;
    r.weighted_norm(values.iter().map(|v| (w, v.norm())))
}

/// Counting pairing `Σ_{|x| = n} u(x) v(x)`.
pub fn sphere_pairing(u: &BallFunction, v: &BallFunction, n: usize) -> Complex64 {
    u.sphere(n).iter().zip(v.sphere(n)).map(|(a, b)| a * b).sum()
}

/// A supremum over levels together with the level where it is attained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelSup {
    pub value: f64,
    pub level: usize,
}

fn level_sup(profile: &[f64]) -> LevelSup {
    profile
        .iter()
        .enumerate()
        .fold(LevelSup { value: 0.0, level: 0 }, |best, (level, &value)| {
            if value > best.value {
                LevelSup { value, level }
            } else {
                best
            }
        })
}

/// `φ_{iδ_p}(n)^{−1} ‖u‖_{L^r(S(o,n))}` for `n = 0..=depth`.
pub fn hardy_profile_p(u: &BallFunction, li: &LebesgueIndex, r: Exponent) -> Vec<f64> {
    let sp = SpectralParam::new(u.q(), Complex64::new(0.0, li.delta)).expect("finite parameter");
    (0..=u.radius())
        .map(|n| sphere_lr_average(u, n, r) / phi_explicit(&sp, n).re)
        .collect()
}

/// `‖u‖_{H^r_p}` truncated to the ball.
pub fn hardy_norm_p(u: &BallFunction, li: &LebesgueIndex, r: Exponent) -> LevelSup {
    level_sup(&hardy_profile_p(u, li, r))
}

/// `q^{n/2} ‖u‖_{L^r(S(o,n))}` for `n = 0..=depth`.
pub fn hardy_profile_star(u: &BallFunction, r: Exponent) -> Vec<f64> {
    let q = u.q() as f64;
    (0..=u.radius())
        .map(|n| q.powf(n as f64 / 2.0) * sphere_lr_average(u, n, r))
        .collect()
}

/// `‖u‖_{H^r_*}` truncated to the ball.
pub fn hardy_norm_star(u: &BallFunction, r: Exponent) -> LevelSup {
    level_sup(&hardy_profile_star(u, r))
}

/// For each `λ`: `λ · #{x ∈ S(o,m) : ε*|u|(x) > λ} ≤ Σ_{x ∈ S(o,m)} |u(x)|`.
pub fn weak_type_check(u: &BallFunction, m: usize, lambdas: &[f64]) -> Result<Vec<bool>> {
    u.params().check_level(m)?;
    if lambdas.iter().any(|&l| l.is_nan() || l <= 0.0) {
        return Err(Error::domain("weak-type levels must be positive"));
    }
    let abs = u.map(|v| Complex64::new(v.norm(), 0.0));
    let star = epsilon_star(&abs);
    let mass: f64 = abs.sphere(m).iter().map(|v| v.re).sum();
    Ok(lambdas
        .iter()
        .map(|&l| {
            let count = star.sphere(m).iter().filter(|v| v.re > l).count();
            l * count as f64 <= mass
        })
        .collect())
}
