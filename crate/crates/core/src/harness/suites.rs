use num_complex::Complex64;

use super::config::ExperimentConfig;
use super::rng::{random_cyl_function, random_martingale, trial_seed, Distribution};
use super::rows::{sort_rows, ResultRow};
use crate::boundary::CylFunction;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::inversion::{
    coefficients, inversion_error, k_closed, k_literal, parseval_error, t_n_bruteforce, t_n_closedform, dual_lower_bound,
    TnRoute,
};
use crate::spectral::{cfun, classify, delta_index, phi_explicit, phi_integral, tau, Branch, LebesgueIndex, SpectralParam};
use crate::transform::{
    poisson_of_difference, poisson_transform, poisson_transform_martingale, poisson_transform_reference, pointwise_majorant,
    radial_error, radial_pairing, BallFunction,
};
use crate::tree::TreeParams;
use crate::treeops::{eigen_residual, epsilon_n, hardy_norm_p, hardy_norm_star};

const EIGEN_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-12;
const TN_TOL: f64 = 1e-10;

fn config_error(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}

fn finalize(mut rows: Vec<ResultRow>) -> Vec<ResultRow> {
    sort_rows(&mut rows);
    rows
}

/// `φ_{i Im z}(n)`, a positive majorant of `|φ_z(n)|`.
fn phi_scale(q: u32, z: Complex64, n: usize) -> f64 {
    let sp = SpectralParam::new(q, Complex64::new(0.0, z.im)).expect("finite parameter");
    phi_explicit(&sp, n).re
}

fn eigen_row(suite: &str, u: &BallFunction, sp: &SpectralParam) -> Result<ResultRow> {
    let res = eigen_residual(u, sp)?;
    Ok(ResultRow::new(suite, sp.q(), "eigen_residual", res)
        .z(sp.z())
        .at_most(0.0, EIGEN_TOL * (1.0 + u.max_abs())))
}

/// The `(p, α)` families `z = α + iδ_{p′}`: `α` real, and `α ∈ (τ/2)ℤ` when `p = 2`.
fn hardy_families(config: &ExperimentConfig) -> Result<Vec<(LebesgueIndex, SpectralParam)>> {
    let q = config.q;
    let t = tau(q);
    let mut out = Vec::new();
    for p in config.p_values() {
        let li = delta_index(p).map_err(config_error)?;
        let alphas: Vec<f64> = match &config.z_grid {
            Some(grid) => grid
                .iter()
                .map(|a| {
                    if a.im != 0.0 {
                        Err(Error::Config(format!("shift α must be real, got {a}")))
                    } else {
                        Ok(a.re)
                    }
                })
                .collect::<Result<_>>()?,
            None if p < 2.0 => vec![0.0, t / 8.0, t / 2.0],
            None => vec![0.0, t / 2.0],
        };
        for alpha in alphas {
            if p == 2.0 && classify(q, Complex64::new(alpha, 0.0)) == Branch::Generic {
                return Err(Error::Config(format!("p = 2 needs α ∈ (τ/2)Z, got {alpha}")));
            }
            let sp = SpectralParam::new(q, Complex64::new(alpha, -li.delta)).map_err(config_error)?;
            out.push((li, sp));
        }
    }
    Ok(out)
}

fn real_generic_grid(config: &ExperimentConfig) -> Result<Vec<SpectralParam>> {
    config
        .real_grid()
        .into_iter()
        .map(|z| {
            if z.im != 0.0 {
                return Err(Error::Config(format!("this suite needs real z, got {z}")));
            }
            let sp = SpectralParam::new(config.q, z).map_err(config_error)?;
            sp.require_generic().map_err(config_error)?;
            Ok(sp)
        })
        .collect()
}

fn open_r_grid(config: &ExperimentConfig) -> Result<Vec<Exponent>> {
    let rs = config.r_values();
    for r in &rs {
        match r {
            Exponent::Finite(v) if *v > 1.0 => {}
            _ => return Err(Error::Config(format!("this suite needs 1 < r < inf, got {r}"))),
        }
    }
    Ok(rs)
}

fn trial_functions(config: &ExperimentConfig, params: TreeParams, dist: Distribution) -> Result<Vec<(u64, CylFunction)>> {
    (0..config.trials)
        .map(|t| {
            let seed = trial_seed(config.seed, t);
            Ok((seed, random_cyl_function(seed, params, config.level, dist)?))
        })
        .collect()
}

/// Eigenfunction property and the `H^r_p` two-sided bound for `u = P_zF`.
pub fn suite_theorem_p(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "theorem-p";
    config.validate()?;
    let params = config.params()?;
    let families = hardy_families(config)?;
    let rs = config.r_values();
    let data = trial_functions(config, params, Distribution::ComplexDisc)?;
    let one = CylFunction::constant(params, Complex64::new(1.0, 0.0));
    let mut rows = Vec::new();
    for (li, sp) in families {
        let q = sp.q();
        let transforms: Vec<BallFunction> = data.iter().map(|(_, f)| poisson_transform(f, &sp)).collect();
        for ((seed, _), u) in data.iter().zip(&transforms) {
            rows.push(eigen_row(S, u, &sp)?.p(li.p).seed(*seed));
        }
        let u_one = poisson_transform(&one, &sp);
        for &r in &rs {
            let mut min_ratio = f64::INFINITY;
            for ((seed, f), u) in data.iter().zip(&transforms) {
                let h = hardy_norm_p(u, &li, r);
                let ratio = h.value / f.lr_norm(r);
                min_ratio = min_ratio.min(ratio);
                rows.push(ResultRow::new(S, q, "hardy_ratio", ratio).z(sp.z()).p(li.p).r(r).seed(*seed).at_most(1.0, 1e-10));
                rows.push(
                    ResultRow::new(S, q, "hardy_argmax_level", h.level as f64).z(sp.z()).p(li.p).r(r).seed(*seed),
                );
            }
            rows.push(ResultRow::new(S, q, "hardy_ratio_min", min_ratio).z(sp.z()).p(li.p).r(r).at_least(0.05, 0.0));
            let const_ratio = hardy_norm_p(&u_one, &li, r).value;
            let row = ResultRow::new(S, q, "hardy_ratio_const", const_ratio).z(sp.z()).p(li.p).r(r);
            rows.push(if sp.z().re == 0.0 { row.close_to(1.0, 1e-12) } else { row.at_most(1.0, 1e-10) });
            if let (Exponent::Finite(_), Some((seed, f))) = (r, data.first()) {
                for n in config.level..=config.depth {
                    if let Ok(e) = radial_error(f, &sp, r, n) {
                        rows.push(ResultRow::new(S, q, "radial_error", e).z(sp.z()).p(li.p).r(r).n(n).seed(*seed));
                    }
                }
            }
        }
    }
    Ok(finalize(rows))
}

/// Normalized radial convergence `φ_z(n)^{−1}P_zF → F` on the Hardy families.
pub fn suite_radial(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "radial";
    config.validate()?;
    let params = config.params()?;
    let families = hardy_families(config)?;
    let data = trial_functions(config, params, Distribution::Indicator)?;
    let test_fn = CylFunction::indicator(params, &crate::tree::Vertex::canonical(config.level))?;
    let mut rows = Vec::new();
    for (li, sp) in families {
        let q = sp.q();
        for r in config.r_values() {
            for (seed, f) in &data {
                if r.is_infinite() {
                    let (lhs, rhs) = radial_pairing(f, &test_fn, &sp, config.depth)?;
                    rows.push(
                        ResultRow::new(S, q, "weak_star_gap", (lhs - rhs).norm())
                            .z(sp.z())
                            .p(li.p)
                            .r(r)
                            .n(config.depth)
                            .seed(*seed),
                    );
                    continue;
                }
                let mut first = None;
                let mut last = 0.0;
                for n in config.level..=config.depth {
                    let e = match radial_error(f, &sp, r, n) {
                        Ok(e) => e,
                        Err(Error::DegenerateNormalization { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    first.get_or_insert(e);
                    last = e;
                    rows.push(ResultRow::new(S, q, "radial_error", e).z(sp.z()).p(li.p).r(r).n(n).seed(*seed));
                }
                if let Some(first) = first.filter(|&e| e > 0.0) {
                    rows.push(
                        ResultRow::new(S, q, "radial_error_last_over_first", last / first)
                            .z(sp.z())
                            .p(li.p)
                            .r(r)
                            .seed(*seed)
                            .at_most(1.0, 0.0),
                    );
                }
            }
        }
    }
    Ok(finalize(rows))
}

/// `‖P_zF‖_{H^r_*} / (|c(z)| ‖F‖_r)` across the real grid, with the pointwise majorant check.
pub fn suite_theorem_star(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "theorem-star";
    config.validate()?;
    let params = config.params()?;
    let grid = real_generic_grid(config)?;
    let rs = open_r_grid(config)?;
    let data = trial_functions(config, params, Distribution::ComplexDisc)?;
    let one = CylFunction::constant(params, Complex64::new(1.0, 0.0));
    let q = config.q;
    let mut rows = Vec::new();
    let mut brackets = vec![(f64::INFINITY, 0.0f64); rs.len()];
    for sp in &grid {
        let c = cfun(sp)?.norm();
        let transforms: Vec<BallFunction> = data.iter().map(|(_, f)| poisson_transform(f, sp)).collect();
        for ((seed, f), u) in data.iter().zip(&transforms) {
            rows.push(eigen_row(S, u, sp)?.seed(*seed));
            let mut excess: f64 = 0.0;
            for n in 0..=config.depth {
                let maj = pointwise_majorant(f, sp, n)?;
                for (v, m) in u.sphere(n).iter().zip(&maj) {
                    if *m > 0.0 {
                        excess = excess.max(v.norm() / m);
                    } else if v.norm() > 0.0 {
                        excess = f64::INFINITY;
                    }
                }
            }
            rows.push(ResultRow::new(S, q, "majorant_ratio_max", excess).z(sp.z()).seed(*seed).at_most(1.0, 1e-12));
        }
        for (k, &r) in rs.iter().enumerate() {
            for ((seed, f), u) in data.iter().zip(&transforms) {
                let h = hardy_norm_star(u, r);
                let ratio = h.value / (c * f.lr_norm(r));
                brackets[k].0 = brackets[k].0.min(ratio);
                brackets[k].1 = brackets[k].1.max(ratio);
                rows.push(ResultRow::new(S, q, "hardy_star_ratio", ratio).z(sp.z()).r(r).n(h.level).seed(*seed));
                let d = dual_lower_bound(f, sp, r, config.depth)?;
                rows.push(ResultRow::new(S, q, "dual_pairing_ratio", d.pairing_ratio).z(sp.z()).r(r).n(config.depth).seed(*seed));
                rows.push(ResultRow::new(S, q, "dual_lower_ratio", d.lower_bound_ratio).z(sp.z()).r(r).seed(*seed));
            }
            let h = hardy_norm_star(&poisson_transform(&one, sp), r);
            rows.push(ResultRow::new(S, q, "hardy_star_ratio_const", h.value / c).z(sp.z()).r(r).n(h.level));
        }
    }
    for (k, &r) in rs.iter().enumerate() {
        let (lo, hi) = brackets[k];
        rows.push(ResultRow::new(S, q, "bracket_lower", lo).r(r));
        rows.push(ResultRow::new(S, q, "bracket_upper", hi).r(r));
        rows.push(ResultRow::new(S, q, "bracket_spread", hi / lo).r(r).at_most(20.0, 0.0));
    }
    Ok(finalize(rows))
}

/// Error of `λT_nF` against `F`, coefficient identities and the closed-form oracle.
pub fn suite_inversion(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "inversion";
    config.validate()?;
    let params = config.params()?;
    let grid = real_generic_grid(config)?;
    let rs = open_r_grid(config)?;
    let data = trial_functions(config, params, Distribution::ComplexDisc)?;
    let one = CylFunction::constant(params, Complex64::new(1.0, 0.0));
    let q = config.q;
    let m = config.level;
    let mut rows = Vec::new();
    for sp in &grid {
        for n in 1..=config.depth {
            for j in 0..=m.min(n) {
                let lit = k_literal(j, n, sp)?;
                let gap = (k_closed(j, n, sp)? - lit).abs() / (1.0 + lit.abs());
                rows.push(ResultRow::new(S, q, &format!("k{j}_identity"), gap).z(sp.z()).n(n).at_most(0.0, ORACLE_TOL));
            }
            let co = coefficients(n, sp, m)?;
            if n > m {
                let v = 2.0 * n as f64 * co.max_abs_a_positive();
                rows.push(ResultRow::new(S, q, "decay_2n_max_a", v).z(sp.z()).n(n).at_most(co.b, 0.0));
                rows.push(ResultRow::new(S, q, "decay_2n_a0", 2.0 * n as f64 * co.a[0].abs()).z(sp.z()).n(n));
            }
            let e1 = inversion_error(&one, sp, n, Exponent::Finite(2.0), TnRoute::ClosedForm)?;
            rows.push(ResultRow::new(S, q, "inversion_error_const", e1.error).z(sp.z()).n(n));
        }
        for (seed, f) in &data {
            for n in 1..=config.depth.min(8) {
                let brute = t_n_bruteforce(f, sp, n)?;
                let closed = t_n_closedform(f, sp, n)?;
                let gap = brute.max_abs_diff(&closed) / (1.0 + closed.max_abs());
                rows.push(ResultRow::new(S, q, "tn_oracle_gap", gap).z(sp.z()).n(n).seed(*seed).at_most(0.0, TN_TOL));
            }
            for &r in &rs {
                let mut errors = vec![0.0; config.depth + 1];
                let mut rate_constant: f64 = 0.0;
                for n in 1..=config.depth {
                    let rep = inversion_error(f, sp, n, r, TnRoute::ClosedForm)?;
                    errors[n] = rep.error;
                    rate_constant = rate_constant.max(n as f64 * rep.error);
                    rows.push(ResultRow::new(S, q, "inversion_error", rep.error).z(sp.z()).r(r).n(n).seed(*seed));
                    rows.push(
                        ResultRow::new(S, q, "identity_residual", rep.identity_residual)
                            .z(sp.z())
                            .r(r)
                            .n(n)
                            .seed(*seed)
                            .at_most(0.0, TN_TOL),
                    );
                    if r == Exponent::Finite(2.0) && rep.error > 0.0 {
                        let par = parseval_error(f, sp, n)?;
                        rows.push(
                            ResultRow::new(S, q, "parseval_rel_gap", (par - rep.error).abs() / rep.error)
                                .z(sp.z())
                                .r(r)
                                .n(n)
                                .seed(*seed)
                                .at_most(0.0, 0.05),
                        );
                    }
                }
                rows.push(ResultRow::new(S, q, "rate_constant", rate_constant).z(sp.z()).r(r).seed(*seed));
                for n in 8..=config.depth / 2 {
                    let ratio = errors[2 * n] / errors[n];
                    rows.push(
                        ResultRow::new(S, q, "rate_ratio", ratio)
                            .z(sp.z())
                            .r(r)
                            .n(n)
                            .seed(*seed)
                            .verdict(Some(0.5), Some(0.2), (0.3..=0.7).contains(&ratio)),
                    );
                }
            }
        }
    }
    Ok(finalize(rows))
}

fn default_table_grid(q: u32) -> Vec<Complex64> {
    let t = tau(q);
    vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(t / 8.0, 0.0),
        Complex64::new(t / 4.0, 0.0),
        Complex64::new(t / 2.0, 0.0),
        Complex64::new(3.0 * t / 8.0, 0.0),
        Complex64::new(0.0, -0.5),
        Complex64::new(0.3, 0.2),
    ]
}

/// `γ(z)`, `c(z)` and `φ_z(n)` over the grid, with cross-check rows.
pub fn table_special_functions(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "tables";
    config.validate()?;
    let q = config.q;
    let grid = config.z_grid.clone().unwrap_or_else(|| default_table_grid(q));
    let mut rows = Vec::new();
    for z in grid {
        let sp = SpectralParam::new(q, z).map_err(config_error)?;
        let g = crate::spectral::gamma(&sp);
        rows.push(ResultRow::new(S, q, "gamma_re", g.re).z(z));
        rows.push(ResultRow::new(S, q, "gamma_im", g.im).z(z));
        match cfun(&sp) {
            Ok(c) => {
                rows.push(ResultRow::new(S, q, "c_re", c.re).z(z));
                rows.push(ResultRow::new(S, q, "c_im", c.im).z(z));
                if sp.is_real() {
                    let cm = cfun(&sp.negated())?;
                    rows.push(ResultRow::new(S, q, "c_sum_gap", (c + cm - 1.0).norm()).z(z).at_most(0.0, ORACLE_TOL));
                    rows.push(ResultRow::new(S, q, "c_conj_gap", (c.conj() - cm).norm()).z(z).at_most(0.0, ORACLE_TOL));
                }
            }
            Err(Error::Pole { .. }) => rows.push(ResultRow::new(S, q, "c_pole", 1.0).z(z)),
            Err(e) => return Err(e),
        }
        for n in 0..=config.depth {
            let phi = phi_explicit(&sp, n);
            rows.push(ResultRow::new(S, q, "phi_re", phi.re).z(z).n(n));
            rows.push(ResultRow::new(S, q, "phi_im", phi.im).z(z).n(n));
            let gap = (phi - phi_integral(&sp, n)).norm() / phi_scale(q, z, n);
            rows.push(ResultRow::new(S, q, "phi_cross_gap", gap).z(z).n(n).at_most(0.0, ORACLE_TOL));
        }
        rows.push(
            ResultRow::new(S, q, "phi_origin_gap", (phi_explicit(&sp, 0) - 1.0).norm())
                .z(z)
                .n(0)
                .at_most(0.0, 1e-15),
        );
    }
    Ok(finalize(rows))
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Every oracle-equality invariant at `q ∈ {2, 3}`, depth 10.
pub fn suite_selftest(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "selftest";
    const DEPTH: usize = 10;
    const LEVEL: usize = 3;
    if config.trials < 1 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let trials = config.trials.min(3);
    let mut rows = Vec::new();
    for q in [2u32, 3] {
        let t = tau(q);
        let params = TreeParams::new(q, DEPTH)?;
        let zs = [
            Complex64::new(0.0, 0.0),
            Complex64::new(t / 2.0, 0.0),
            Complex64::new(t / 8.0, 0.0),
            Complex64::new(0.3, -0.2),
            Complex64::new(0.0, -0.5),
        ];
        let sps: Vec<SpectralParam> = zs.iter().map(|&z| SpectralParam::new(q, z)).collect::<Result<_>>()?;
        for sp in &sps {
            let gap = (0..=DEPTH)
                .map(|n| (phi_explicit(sp, n) - phi_integral(sp, n)).norm() / phi_scale(q, sp.z(), n))
                .fold(0.0, f64::max);
            rows.push(ResultRow::new(S, q, "phi_cross_gap", gap).z(sp.z()).at_most(0.0, ORACLE_TOL));
        }
        let real = SpectralParam::real(q, t / 8.0)?;
        for n in 1..=DEPTH {
            let gap = (0..=LEVEL.min(n))
                .map(|j| Ok((k_closed(j, n, &real)? - k_literal(j, n, &real)?).abs()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            rows.push(ResultRow::new(S, q, "k_identity_gap", gap).z(real.z()).n(n).at_most(0.0, ORACLE_TOL));
        }
        for trial in 0..trials {
            let seed = trial_seed(config.seed, trial);
            let f = random_cyl_function(seed, params, LEVEL, Distribution::ComplexDisc)?;
            let small = f.with_params(params.with_depth(6)?)?;
            for sp in &sps {
                let u = poisson_transform(&f, sp);
                rows.push(eigen_row(S, &u, sp)?.seed(seed));
                let fast = poisson_transform(&small, sp);
                let slow = poisson_transform_reference(&small, sp);
                rows.push(
                    ResultRow::new(S, q, "transform_reference_gap", fast.max_abs_diff(&slow) / (1.0 + slow.max_abs()))
                        .z(sp.z())
                        .seed(seed)
                        .at_most(0.0, ORACLE_TOL),
                );
                if sp.branch() == Branch::Generic {
                    let mut gap: f64 = 0.0;
                    for j in 0..=LEVEL {
                        let uj = poisson_transform(&f.difference(j), sp);
                        for l in 0..=6 {
                            gap = gap.max(max_gap(&poisson_of_difference(&f, j, sp, l)?, uj.sphere(l)));
                        }
                    }
                    rows.push(ResultRow::new(S, q, "difference_formula_gap", gap).z(sp.z()).seed(seed).at_most(0.0, ORACLE_TOL));
                }
            }
            let mart = random_martingale(seed, params, DEPTH, Distribution::ComplexDisc)?;
            let sp = &sps[3];
            let u = poisson_transform_martingale(&mart, sp)?;
            let gap = (0..=DEPTH)
                .map(|n| epsilon_n(&u, n).max_abs_diff(&poisson_transform(mart.term(n), sp)))
                .fold(0.0, f64::max);
            rows.push(ResultRow::new(S, q, "epsilon_martingale_gap", gap).z(sp.z()).seed(seed).at_most(0.0, ORACLE_TOL));
            let n_max = if q == 2 { 8 } else { 7 };
            for n in 1..=n_max {
                let brute = t_n_bruteforce(&f, &real, n)?;
                let closed = t_n_closedform(&f, &real, n)?;
                let gap = brute.max_abs_diff(&closed) / (1.0 + closed.max_abs());
                rows.push(ResultRow::new(S, q, "tn_oracle_gap", gap).z(real.z()).n(n).seed(seed).at_most(0.0, TN_TOL));
            }
            for n in 1..=DEPTH {
                let rep = inversion_error(&f, &real, n, Exponent::Finite(2.0), TnRoute::ClosedForm)?;
                rows.push(
                    ResultRow::new(S, q, "identity_residual", rep.identity_residual)
                        .z(real.z())
                        .n(n)
                        .seed(seed)
                        .at_most(0.0, TN_TOL),
                );
                let par = parseval_error(&f, &real, n)?;
                rows.push(
                    ResultRow::new(S, q, "parseval_gap", (par - rep.error).abs())
                        .z(real.z())
                        .n(n)
                        .seed(seed)
                        .at_most(0.0, TN_TOL * (1.0 + par)),
                );
            }
        }
    }
    Ok(finalize(rows))
}
