//! Scalar spectral functions of `z`.
//!
//! `τ = 2π/ln q`, `s = 1/2 + iz`. The c-function has poles on `(τ/2)ℤ`, where the
//! spherical function switches to its confluent form.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::boundary::confluence_profile;
use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// Absolute tolerance for classifying `z` against `(τ/2)ℤ`.
pub const BRANCH_EPS: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Branch {
    /// `z ∈ τℤ`.
    TauZ,
    /// `z ∈ τ/2 + τℤ`.
    HalfTauShift,
    /// `z ∉ (τ/2)ℤ`.
    Generic,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::TauZ => "tauZ",
            Branch::HalfTauShift => "halfTauShift",
            Branch::Generic => "generic",
        })
    }
}

/// `τ = 2π / ln q`.
pub fn tau(q: u32) -> f64 {
    2.0 * PI / (q as f64).ln()
}

/// Branch of `z` for the tree of branching `q`.
pub fn classify(q: u32, z: Complex64) -> Branch {
    let half = tau(q) / 2.0;
    let k = (z.re / half).round();
    if (z.re - k * half).abs() <= BRANCH_EPS && z.im.abs() <= BRANCH_EPS {
        if k.rem_euclid(2.0) == 0.0 {
            Branch::TauZ
        } else {
            Branch::HalfTauShift
        }
    } else {
        Branch::Generic
    }
}

/// A spectral parameter `z` together with the tree it acts on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParam {
    q: u32,
    z: Complex64,
    ln_q: f64,
    branch: Branch,
}

impl SpectralParam {
    pub fn new(q: u32, z: Complex64) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain(format!("q must be at least 2, got {q}")));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain(format!("z must be finite, got {z}")));
        }
        Ok(SpectralParam { q, z, ln_q: (q as f64).ln(), branch: classify(q, z) })
    }

    pub fn real(q: u32, z: f64) -> Result<Self> {
        SpectralParam::new(q, Complex64::new(z, 0.0))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn tau(&self) -> f64 {
        tau(self.q)
    }

    /// `s = 1/2 + iz`.
    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5, 0.0) + I * self.z
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn is_real(&self) -> bool {
        self.z.im == 0.0
    }

    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    /// `q^w` through the real logarithm of `q`.
    #[inline]
    pub fn qpow(&self, w: Complex64) -> Complex64 {
        (w * self.ln_q).exp()
    }

    /// The parameter `−z`.
    pub fn negated(&self) -> SpectralParam {
        SpectralParam::new(self.q, -self.z).expect("negation keeps z finite")
    }

    /// Fail with a pole error unless `z ∉ (τ/2)ℤ`.
    pub fn require_generic(&self) -> Result<()> {
        match self.branch {
            Branch::Generic => Ok(()),
            _ => Err(Error::Pole { z: self.z, eps: BRANCH_EPS }),
        }
    }
}

/// `γ(z) = 1 − (q^{1/2+iz} + q^{1/2−iz})/(q+1)`.
pub fn gamma(sp: &SpectralParam) -> Complex64 {
    let q = sp.q as f64;
    let half = Complex64::new(0.5, 0.0);
    Complex64::new(1.0, 0.0) - (sp.qpow(half + I * sp.z) + sp.qpow(half - I * sp.z)) / (q + 1.0)
}

/// Harish-Chandra c-function.
pub fn cfun(sp: &SpectralParam) -> Result<Complex64> {
    sp.require_generic()?;
    Ok(c_unchecked(sp.q, sp.ln_q, sp.z))
}

fn c_unchecked(q: u32, ln_q: f64, z: Complex64) -> Complex64 {
    let q = q as f64;
    let pw = |w: Complex64| (w * ln_q).exp();
    let half = Complex64::new(0.5, 0.0);
    let num = pw(half + I * z) - pw(-half - I * z);
    let den = pw(I * z) - pw(-I * z);
    q.sqrt() / (q + 1.0) * num / den
}

/// `φ_z(n)` from its closed form.
pub fn phi_explicit(sp: &SpectralParam, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let q = sp.q as f64;
    let nf = n as f64;
    match sp.branch {
        Branch::TauZ | Branch::HalfTauShift => {
            let v = ((q - 1.0) / (q + 1.0) * nf + 1.0) * q.powf(-nf / 2.0);
            let sign = if sp.branch == Branch::HalfTauShift && n % 2 == 1 { -1.0 } else { 1.0 };
            Complex64::new(sign * v, 0.0)
        }
        Branch::Generic => {
            let c = c_unchecked(sp.q, sp.ln_q, sp.z);
            let cm = c_unchecked(sp.q, sp.ln_q, -sp.z);
            let half = Complex64::new(0.5, 0.0);
            c * sp.qpow((I * sp.z - half) * nf) + cm * sp.qpow((-I * sp.z - half) * nf)
        }
    }
}

/// `φ_z(n) = Σ_j q^{s(2j−n)} μ_j`, the Poisson transform of `1` at a level-`n` vertex.
pub fn phi_integral(sp: &SpectralParam, n: usize) -> Complex64 {
    let s = sp.s();
    confluence_profile(sp.q, n)
        .into_iter()
        .enumerate()
        .map(|(j, mu)| sp.qpow(s * (2.0 * j as f64 - n as f64)) * mu)
        .sum()
}

/// `[φ_z(0), …, φ_z(n_max)]`.
pub fn phi_profile(sp: &SpectralParam, n_max: usize) -> Vec<Complex64> {
    (0..=n_max).map(|n| phi_explicit(sp, n)).collect()
}

/// `B(j, l, z)` for `0 ≤ j ≤ l`.
pub fn bfun(j: usize, l: usize, sp: &SpectralParam) -> Result<Complex64> {
    if j > l {
        return Err(Error::domain(format!("B(j, l, z) needs j ≤ l, got j = {j}, l = {l}")));
    }
    let c = cfun(sp)?;
    let iz = I * sp.z;
    if j == 0 {
        let cm = c_unchecked(sp.q, sp.ln_q, -sp.z);
        Ok(c * sp.qpow(iz * l as f64) + cm * sp.qpow(-iz * l as f64))
    } else {
        let k = (l - j + 1) as f64;
        Ok(c * sp.qpow(iz * (j as f64 - 1.0)) * (sp.qpow(iz * k) - sp.qpow(-iz * k)))
    }
}

/// A Lebesgue index `p ∈ [1, 2]` with its conjugate and `δ_p = 1/p − 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LebesgueIndex {
    pub p: f64,
    pub conjugate: Exponent,
    pub delta: f64,
}

impl LebesgueIndex {
    /// `1/p′`, zero for `p = 1`.
    pub fn conjugate_reciprocal(&self) -> f64 {
        self.conjugate.reciprocal()
    }
}

pub fn delta_index(p: f64) -> Result<LebesgueIndex> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::domain(format!("p must lie in [1, 2], got {p}")));
    }
    let exp = Exponent::new(p)?;
    Ok(LebesgueIndex { p, conjugate: exp.conjugate(), delta: 1.0 / p - 0.5 })
}
