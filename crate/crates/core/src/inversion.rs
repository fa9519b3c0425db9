//! The averaging operator
//!
//! ```text
//! T_nF(ω) = (1/n) Σ_{x ∈ B(o,n)} p^{1/2−iz}(x, ω) P_zF(x)
//! ```
//!
//! for real `z ∉ (τ/2)ℤ`, and the recovery of `F` from `λ T_nF`,
//! `λ = q/(2(q+1)|c(z)|²)`.
//!
//! On level-`m` data, `T_nF = Σ_{j ≤ min(m,n)} K_j Δ_jF` with
//! `K_j = (1/n) Σ_{l=j..n} #S(o,l) q^{−l} |B(j,l,z)|²`. With `w = q^{2iz}` and
//! `S_N = w(1 − w^N)/(1 − w)` these sums close up as
//!
//! ```text
//! K_0 = (1/n)[1 + ((q+1)/q)(2n|c|² + 2 Re(c² S_n))]
//! K_j = ((q+1)/q)(|c|²/n)(2N − 2 Re S_N),   N = n − j + 1.
//! ```
//!
//! The error `λT_nF − F` is `a_0 E_0F + Σ_{j=1..m} a_j Δ_jF` with
//! `a_j = λK_j − 1`, and `a_j = −1` for `j > min(m, n)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::CylFunction;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::{bfun, cfun, SpectralParam};
use crate::transform::{poisson_transform, BallFunction};
use crate::tree::sphere_len;
use crate::treeops::hardy_norm_star;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn require_real(sp: &SpectralParam) -> Result<()> {
    if !sp.is_real() {
        return Err(Error::domain(format!("the inversion operator needs real z, got {}", sp.z())));
    }
    sp.require_generic()
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("T_n needs n ≥ 1"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InversionCoefficients {
    pub q: u32,
    pub z: f64,
    pub n: usize,
    pub m: usize,
    /// `c(z)`.
    pub c: Complex64,
    /// `λ = q/(2(q+1)|c(z)|²)`.
    pub lambda: f64,
    /// `K_j` for `j = 0..=min(m, n)`.
    pub k: Vec<f64>,
    /// `a_j` for `j = 0..=m`.
    pub a: Vec<f64>,
    /// `b = 2m + 4/|1 − q^{2iz}|`.
    pub b: f64,
}

impl InversionCoefficients {
    /// `max_j |a_j|`.
    pub fn max_abs_a(&self) -> f64 {
        self.a.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// `max_{j ≥ 1} |a_j|`.
    pub fn max_abs_a_positive(&self) -> f64 {
        self.a.iter().skip(1).fold(0.0, |m, a| m.max(a.abs()))
    }
}

/// `S_N = w(1 − w^N)/(1 − w)`.
fn geometric(w: Complex64, big_n: usize) -> Complex64 {
    w * (Complex64::new(1.0, 0.0) - w.powu(big_n as u32)) / (Complex64::new(1.0, 0.0) - w)
}

/// Closed-form `K_j(n, z)`.
pub fn k_closed(j: usize, n: usize, sp: &SpectralParam) -> Result<f64> {
    require_real(sp)?;
    require_n(n)?;
    if j > n {
        return Err(Error::domain(format!("K_j needs j ≤ n, got j = {j}, n = {n}")));
    }
    let q = sp.q() as f64;
    let c = cfun(sp)?;
    let c2 = c.norm_sqr();
    let w = sp.qpow(Complex64::new(0.0, 2.0) * sp.z());
    let nf = n as f64;
    let ratio = (q + 1.0) / q;
    if j == 0 {
        Ok((1.0 + ratio * (2.0 * nf * c2 + 2.0 * (c * c * geometric(w, n)).re)) / nf)
    } else {
        let big_n = n - j + 1;
        Ok(ratio * c2 / nf * (2.0 * big_n as f64 - 2.0 * geometric(w, big_n).re))
    }
}

/// `K_j(n, z) = (1/n) Σ_{l=j..n} #S(o,l) q^{−l} |B(j,l,z)|²`, summed term by term.
pub fn k_literal(j: usize, n: usize, sp: &SpectralParam) -> Result<f64> {
    require_real(sp)?;
    require_n(n)?;
    let q = sp.q() as f64;
    let mut sum = 0.0;
    for l in j..=n {
        sum += sphere_len(sp.q(), l) as f64 * q.powi(-(l as i32)) * bfun(j, l, sp)?.norm_sqr();
    }
    Ok(sum / n as f64)
}

/// `K_j`, `a_j` and `b` for `T_n` acting on level-`m` data.
pub fn coefficients(n: usize, sp: &SpectralParam, m: usize) -> Result<InversionCoefficients> {
    require_real(sp)?;
    require_n(n)?;
    let q = sp.q();
    let c = cfun(sp)?;
    let lambda = normalization(sp)?;
    let top = m.min(n);
    let k = (0..=top).map(|j| k_closed(j, n, sp)).collect::<Result<Vec<_>>>()?;
    let a = (0..=m).map(|j| if j <= top { lambda * k[j] - 1.0 } else { -1.0 }).collect();
    let w = sp.qpow(Complex64::new(0.0, 2.0) * sp.z());
    let b = 2.0 * m as f64 + 4.0 / (Complex64::new(1.0, 0.0) - w).norm();
    Ok(InversionCoefficients { q, z: sp.z().re, n, m, c, lambda, k, a, b })
}

/// `λ = q/(2(q+1)|c(z)|²)`.
pub fn normalization(sp: &SpectralParam) -> Result<f64> {
    require_real(sp)?;
    let q = sp.q() as f64;
    Ok(q / (2.0 * (q + 1.0) * cfun(sp)?.norm_sqr()))
}

/// `a_j(n, z)` straight from the literal `K_j` sums.
pub fn a_explicit(j: usize, n: usize, sp: &SpectralParam, m: usize) -> Result<f64> {
    if j > m {
        return Err(Error::domain(format!("a_j needs j ≤ m, got j = {j}, m = {m}")));
    }
    if j > n.min(m) {
        return Ok(-1.0);
    }
    Ok(normalization(sp)? * k_literal(j, n, sp)? - 1.0)
}

/// `T_nF` at level `n` by the double sum over `x ∈ B(o, n)` and level-`n` sectors.
pub fn t_n_bruteforce(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<CylFunction> {
    require_real(sp)?;
    require_n(n)?;
    let params = f.params().with_depth(n.max(f.level()))?;
    let f = f.with_params(params)?;
    let q = params.q();
    let u = poisson_transform(&f, sp);
    let sbar = Complex64::new(0.5, 0.0) - Complex64::new(0.0, 1.0) * sp.z();
    // kernel[e + n] = q^{(1/2 − iz) e}, e = 2ℓ − |x| ∈ [−n, n]
    let kernel: Vec<Complex64> = (0..=2 * n).map(|e| sp.qpow(sbar * (e as f64 - n as f64))).collect();
    let pows: Vec<usize> = (0..=n).map(|k| (q as usize).pow(k as u32)).collect();
    let values = (0..sphere_len(q, n))
        .into_par_iter()
        .map(|leaf| {
            let mut acc = ZERO;
            for k in 0..=n {
                let target = if k == 0 { 0 } else { leaf / pows[n - k] };
                for (x, &px) in u.sphere(k).iter().enumerate() {
                    let l = common_prefix_same_level(&pows, k, x, target);
                    acc += kernel[2 * l + n - k] * px;
                }
            }
            acc / n as f64
        })
        .collect();
    CylFunction::new(params, n, values)
}

/// Common-prefix length of two level-`k` vertices, scanned from the root.
#[inline]
fn common_prefix_same_level(pows: &[usize], k: usize, a: usize, b: usize) -> usize {
    for l in 1..=k {
        if a / pows[k - l] != b / pows[k - l] {
            return l - 1;
        }
    }
    k
}

/// `T_nF = Σ_{j ≤ min(m,n)} K_j Δ_jF`, at level `n`.
pub fn t_n_closedform(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<CylFunction> {
    let coeff = coefficients(n, sp, f.level())?;
    let params = f.params().with_depth(f.params().depth().max(n))?;
    let mut out = CylFunction::zero(params, n)?;
    for (j, &k) in coeff.k.iter().enumerate() {
        out = &out + &f.difference(j).scale(Complex64::new(k, 0.0));
    }
    if out.level() < n {
        out = out.refine(n)?;
    }
    Ok(out)
}

/// How `T_nF` is evaluated inside [`inversion_error`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TnRoute {
    BruteForce,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InversionReport {
    /// `‖λT_nF − F‖_{L^r(Ω)}`.
    pub error: f64,
    /// Sup-norm gap between `λT_nF − F` and `a_0E_0F + Σ a_jΔ_jF`.
    pub identity_residual: f64,
    pub coefficients: InversionCoefficients,
}

/// `‖λT_nF − F‖_{L^r}` together with the coefficient-expansion check.
pub fn inversion_error(f: &CylFunction, sp: &SpectralParam, n: usize, r: Exponent, route: TnRoute) -> Result<InversionReport> {
    match r {
        Exponent::Finite(v) if v > 1.0 => {}
        _ => return Err(Error::domain(format!("inversion error needs 1 < r < inf, got {r}"))),
    }
    let coefficients = coefficients(n, sp, f.level())?;
    let tn = match route {
        TnRoute::BruteForce => t_n_bruteforce(f, sp, n)?,
        TnRoute::ClosedForm => t_n_closedform(f, sp, n)?,
    };
    let err = &tn.scale(Complex64::new(coefficients.lambda, 0.0)) - f;
    let mut expansion = f.cond_expect(0).scale(Complex64::new(coefficients.a[0], 0.0));
    for j in 1..=f.level() {
        expansion = &expansion + &f.difference(j).scale(Complex64::new(coefficients.a[j], 0.0));
    }
    Ok(InversionReport {
        error: err.lr_norm(r),
        identity_residual: err.max_abs_diff(&expansion),
        coefficients,
    })
}

/// `(Σ_j |a_j|² ‖Δ_jF‖_2²)^{1/2}`, the `L²` error by orthogonality of the differences.
pub fn parseval_error(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<f64> {
    let coeff = coefficients(n, sp, f.level())?;
    let two = Exponent::Finite(2.0);
    Ok((0..=f.level())
        .map(|j| (coeff.a[j] * f.difference(j).lr_norm(two)).powi(2))
        .sum::<f64>()
        .sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualBound {
    /// `|∫ λT_nF · G dν| / (‖G‖_{r′} ‖P_zF‖_{H^r_*})` for the norming function `G` of `F`.
    pub pairing_ratio: f64,
    /// `‖F‖_r |c(z)| / ‖P_zF‖_{H^r_*}`.
    pub lower_bound_ratio: f64,
    /// `‖P_zF‖_{H^r_*}` on the ball of `F`.
    pub hardy_star: f64,
}

/// Duality certificate for the lower bound `‖F‖_r |c(z)| ≲ ‖P_zF‖_{H^r_*}`.
///
/// `G = |F|^{r−1} conj(sgn F) / ‖F‖_r^{r−1}` has `‖G‖_{r′} = 1` and `∫ F G dν = ‖F‖_r`.
pub fn dual_lower_bound(f: &CylFunction, sp: &SpectralParam, r: Exponent, n: usize) -> Result<DualBound> {
    let rv = match r {
        Exponent::Finite(v) if v > 1.0 => v,
        _ => return Err(Error::domain(format!("duality bound needs 1 < r < inf, got {r}"))),
    };
    require_real(sp)?;
    let c = cfun(sp)?.norm();
    let norm = f.lr_norm(r);
    if norm == 0.0 {
        return Err(Error::domain("duality bound needs F ≠ 0"));
    }
    let u: BallFunction = poisson_transform(f, sp);
    let hardy_star = hardy_norm_star(&u, r).value;
    let g = f.map(|v| {
        if v.norm() == 0.0 {
            ZERO
        } else {
            v.conj() / v.norm() * (v.norm() / norm).powf(rv - 1.0)
        }
    });
    let lambda = normalization(sp)?;
    let tn = t_n_closedform(f, sp, n)?;
    let g_norm = g.lr_norm(r.conjugate());
    Ok(DualBound {
        pairing_ratio: (tn.pair(&g) * lambda).norm() / (g_norm * hardy_star),
        lower_bound_ratio: norm * c / hardy_star,
        hardy_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::tau;
    use crate::tree::{TreeParams, Vertex};

    fn sp(q: u32, z: f64) -> SpectralParam {
        SpectralParam::real(q, z).unwrap()
    }

    fn sample(params: TreeParams, level: usize) -> CylFunction {
        CylFunction::from_fn(params, level, |i| Complex64::new(((i * 5 + 1) % 7) as f64 - 3.0, ((i * 2) % 3) as f64)).unwrap()
    }

    #[test]
    fn quarter_tau_n1() {
        let z = sp(2, tau(2) / 4.0);
        assert!((k_closed(0, 1, &z).unwrap() - 1.0).abs() < 1e-14);
        assert!((k_literal(0, 1, &z).unwrap() - 1.0).abs() < 1e-14);
        let p = TreeParams::new(2, 3).unwrap();
        let one = CylFunction::constant(p, Complex64::new(1.0, 0.0));
        let t = t_n_bruteforce(&one, &z, 1).unwrap();
        assert!(t.values().iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-14));
        assert!((normalization(&z).unwrap() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn closed_k_matches_literal() {
        for q in [2u32, 3, 4] {
            for z in [tau(q) / 8.0, tau(q) / 6.0, tau(q) / 5.0, 3.0 * tau(q) / 8.0, 0.77] {
                let s = sp(q, z);
                for n in 1..=16 {
                    for j in 0..=n.min(4) {
                        let a = k_closed(j, n, &s).unwrap();
                        let b = k_literal(j, n, &s).unwrap();
                        assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "q {q} z {z} n {n} j {j}: {a} vs {b}");
                        assert!(b >= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_bruteforce() {
        for q in [2u32, 3] {
            let p = TreeParams::new(q, 6).unwrap();
            for m in 0..=3 {
                let f = sample(p, m);
                for z in [tau(q) / 8.0, 0.5] {
                    let s = sp(q, z);
                    for n in 1..=5 {
                        let a = t_n_bruteforce(&f, &s, n).unwrap();
                        let b = t_n_closedform(&f, &s, n).unwrap();
                        assert_eq!(a.level(), n);
                        assert!(a.max_abs_diff(&b) < 1e-10 * (1.0 + b.max_abs()));
                    }
                }
            }
        }
    }

    #[test]
    fn error_expansion_and_parseval() {
        let p = TreeParams::new(2, 10).unwrap();
        let f = sample(p, 2);
        let s = sp(2, tau(2) / 8.0);
        for n in 1..=10 {
            let rep = inversion_error(&f, &s, n, Exponent::Finite(2.0), TnRoute::ClosedForm).unwrap();
            assert!(rep.identity_residual < 1e-10);
            let par = parseval_error(&f, &s, n).unwrap();
            assert!((par - rep.error).abs() < 1e-10 * (1.0 + par));
        }
    }

    #[test]
    fn decay_bound_positive_indices() {
        for z in [tau(2) / 8.0, tau(2) / 6.0, tau(2) / 5.0, 3.0 * tau(2) / 8.0] {
            let s = sp(2, z);
            for m in 1..=3 {
                for n in (m + 1)..=40 {
                    let co = coefficients(n, &s, m).unwrap();
                    assert!(2.0 * n as f64 * co.max_abs_a_positive() <= co.b);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let p = TreeParams::new(2, 4).unwrap();
        let f = CylFunction::indicator(p, &Vertex::new(2, vec![0]).unwrap()).unwrap();
        let complex = SpectralParam::new(2, Complex64::new(0.3, 0.1)).unwrap();
        assert!(t_n_bruteforce(&f, &complex, 2).is_err());
        assert!(matches!(coefficients(2, &sp(2, 0.0), 1), Err(Error::Pole { .. })));
        assert!(coefficients(0, &sp(2, 0.3), 1).is_err());
        assert!(inversion_error(&f, &sp(2, 0.3), 2, Exponent::Infinity, TnRoute::ClosedForm).is_err());
    }

    #[test]
    fn dual_bound_positive() {
        let p = TreeParams::new(2, 10).unwrap();
        let f = sample(p, 2);
        let d = dual_lower_bound(&f, &sp(2, tau(2) / 8.0), Exponent::Finite(2.0), 10).unwrap();
        assert!(d.lower_bound_ratio > 0.0 && d.pairing_ratio > 0.0);
    }
}
