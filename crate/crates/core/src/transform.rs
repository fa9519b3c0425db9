//! Poisson kernel and Poisson transform.
//!
//! For `|y| = n` write `I_k(y) = ∫_{E(y_k)} F dν`, where `y_k` is the level-`k`
//! ancestor of `y`. Since `p(y, ω) = q^{2j−n}` on `E(y_j) \ E(y_{j+1})`,
//!
//! ```text
//! P_zF(y) = Σ_{j=0..n} q^{s(2j−n)} (I_j(y) − I_{j+1}(y)),   I_{n+1} = 0.
//! ```
//!
//! [`poisson_transform`] evaluates this sphere by sphere, carrying the partial
//! sum `R(y) = Σ_{j<n} q^{2sj}(I_j − I_{j+1})` from parent to child, so the
//! cost is `O(1)` per vertex after `O(#S(o, m))` setup.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundary::{confluence_measures_in_sector, sector_measure_at_level, CylFunction, Martingale};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::spectral::{bfun, cfun, phi_explicit, SpectralParam};
use crate::tree::{ancestor_index, ball_len, sphere_len, TreeParams, Vertex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A complex function on the ball `B(o, depth)`, stored sphere by sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct BallFunction {
    params: TreeParams,
    values: Vec<Complex64>,
}

impl BallFunction {
    pub fn new(params: TreeParams, values: Vec<Complex64>) -> Result<Self> {
        let expected = params.ball_size();
        if values.len() != expected {
            return Err(Error::domain(format!(
                "ball of radius {} has {expected} vertices, got {} values",
                params.depth(),
                values.len()
            )));
        }
        Ok(BallFunction { params, values })
    }

    pub fn zeros(params: TreeParams) -> Self {
        BallFunction { params, values: vec![ZERO; params.ball_size()] }
    }

    /// Build from `f(level, index)`.
    pub fn from_fn(params: TreeParams, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let q = params.q();
        let mut values = Vec::with_capacity(params.ball_size());
        for n in 0..=params.depth() {
            values.extend((0..sphere_len(q, n)).map(|i| f(n, i)));
        }
        BallFunction { params, values }
    }

    /// Radial function `x ↦ f(|x|)`.
    pub fn radial(params: TreeParams, mut f: impl FnMut(usize) -> Complex64) -> Self {
        let q = params.q();
        let mut values = Vec::with_capacity(params.ball_size());
        for n in 0..=params.depth() {
            let v = f(n);
            values.extend(std::iter::repeat_n(v, sphere_len(q, n)));
        }
        BallFunction { params, values }
    }

    /// Assemble from per-sphere value vectors `spheres[n]`, `n = 0..=depth`.
    pub fn from_spheres(params: TreeParams, spheres: Vec<Vec<Complex64>>) -> Result<Self> {
        if spheres.len() != params.depth() + 1 {
            return Err(Error::domain("one value vector per sphere is required"));
        }
        BallFunction::new(params, spheres.concat())
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn q(&self) -> u32 {
        self.params.q()
    }

    pub fn radius(&self) -> usize {
        self.params.depth()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn offset(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            ball_len(self.q(), n - 1)
        }
    }

    /// Values on `S(o, n)` in sphere order.
    pub fn sphere(&self, n: usize) -> &[Complex64] {
        let start = self.offset(n);
        &self.values[start..start + sphere_len(self.q(), n)]
    }

    pub fn sphere_mut(&mut self, n: usize) -> &mut [Complex64] {
        let start = self.offset(n);
        let len = sphere_len(self.q(), n);
        &mut self.values[start..start + len]
    }

    #[inline]
    pub fn value(&self, level: usize, index: usize) -> Complex64 {
        self.values[self.offset(level) + index]
    }

    pub fn value_at(&self, v: &Vertex) -> Result<Complex64> {
        self.params.check_level(v.len())?;
        Ok(self.value(v.len(), v.index(self.q())))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &BallFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// The restriction to `B(o, radius)`.
    pub fn restrict(&self, radius: usize) -> Result<BallFunction> {
        self.params.check_level(radius)?;
        let params = self.params.with_depth(radius)?;
        Ok(BallFunction { params, values: self.values[..params.ball_size()].to_vec() })
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> BallFunction {
        BallFunction { params: self.params, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn linear_combination(&self, a: Complex64, other: &BallFunction, b: Complex64) -> Result<BallFunction> {
        if self.params != other.params {
            return Err(Error::domain("ball functions live on different balls"));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(BallFunction { params: self.params, values })
    }
}

/// `p(x, ω) = q^{2j − |x|}` for `j = |c(x, ω)|`.
pub fn poisson_kernel(q: u32, x: &Vertex, j: usize) -> Result<f64> {
    if j > x.len() {
        return Err(Error::domain(format!("confluence depth {j} exceeds |x| = {}", x.len())));
    }
    Ok((q as f64).powi(2 * j as i32 - x.len() as i32))
}

/// `∫_{E(y)} p^s(x, ω) dν(ω)`.
pub fn sector_kernel_integral(params: &TreeParams, x: &Vertex, y: &Vertex, s: Complex64) -> Complex64 {
    let ln_q = (params.q() as f64).ln();
    let n = x.len() as f64;
    confluence_measures_in_sector(params, x, y)
        .into_iter()
        .map(|(j, mu)| (s * (2.0 * j as f64 - n) * ln_q).exp() * mu)
        .sum()
}

/// Per-level tables `ν_k E_k(F)` for `k = 0..=m`.
struct SectorIntegrals {
    q: u32,
    m: usize,
    tables: Vec<Vec<Complex64>>,
    finest: Vec<Complex64>,
}

impl SectorIntegrals {
    fn new(f: &CylFunction) -> Self {
        let q = f.q();
        let m = f.level();
        let tables = (0..=m)
            .map(|k| {
                let w = sector_measure_at_level(q, k);
                f.cond_expect(k).values().iter().map(|v| v * w).collect()
            })
            .collect();
        SectorIntegrals { q, m, tables, finest: f.values().to_vec() }
    }

    /// `I_k(y)` for `y = (n, i)`, `k ≤ n`.
    #[inline]
    fn get(&self, k: usize, n: usize, i: usize) -> Complex64 {
        if k <= self.m {
            self.tables[k][ancestor_index(self.q, n, i, k)]
        } else {
            self.finest[ancestor_index(self.q, n, i, self.m)] * sector_measure_at_level(self.q, k)
        }
    }
}

/// `P_zF` on `B(o, depth)`, `depth = F.params().depth()`.
pub fn poisson_transform(f: &CylFunction, sp: &SpectralParam) -> BallFunction {
    let params = f.params();
    let q = params.q();
    let s = sp.s();
    let table = SectorIntegrals::new(f);
    let mut spheres = Vec::with_capacity(params.depth() + 1);
    spheres.push(vec![table.get(0, 0, 0)]);
    let mut partial = vec![ZERO];
    for n in 1..=params.depth() {
        let up = sp.qpow(s * (2.0 * (n - 1) as f64));
        let down = sp.qpow(-s * n as f64);
        let out = sp.qpow(s * n as f64);
        let (next, values): (Vec<Complex64>, Vec<Complex64>) = (0..sphere_len(q, n))
            .into_par_iter()
            .map(|i| {
                let parent = ancestor_index(q, n, i, n - 1);
                let r = partial[parent] + up * (table.get(n - 1, n - 1, parent) - table.get(n, n, i));
                (r, down * r + out * table.get(n, n, i))
            })
            .unzip();
        partial = next;
        spheres.push(values);
    }
    BallFunction::from_spheres(params, spheres).expect("sphere sizes match the ball")
}

/// `P_zF` on `S(o, n)` from the telescoped sector integrals, `O(n)` per vertex.
pub fn poisson_transform_on_sphere(f: &CylFunction, sp: &SpectralParam, n: usize) -> Vec<Complex64> {
    let q = f.q();
    let s = sp.s();
    let table = SectorIntegrals::new(f);
    let weights: Vec<Complex64> = (0..=n).map(|j| sp.qpow(s * (2.0 * j as f64 - n as f64))).collect();
    (0..sphere_len(q, n))
        .into_par_iter()
        .map(|i| {
            let mut acc = ZERO;
            let mut current = table.get(0, n, i);
            for (j, w) in weights.iter().enumerate() {
                let next = if j < n { table.get(j + 1, n, i) } else { ZERO };
                acc += w * (current - next);
                current = next;
            }
            acc
        })
        .collect()
}

/// `P_zF(x) = Σ_{|y| = m} F(y) ∫_{E(y)} p^s(x, ω) dν(ω)`, summed literally.
pub fn poisson_transform_reference(f: &CylFunction, sp: &SpectralParam) -> BallFunction {
    let params = f.params();
    let q = params.q();
    let s = sp.s();
    let m = f.level();
    let sectors: Vec<Vertex> = (0..sphere_len(q, m)).map(|i| Vertex::from_index(q, m, i)).collect();
    BallFunction::from_fn(params, |n, i| {
        let x = Vertex::from_index(q, n, i);
        sectors
            .iter()
            .zip(f.values())
            .map(|(y, v)| v * sector_kernel_integral(&params, &x, y, s))
            .sum()
    })
}

/// `P_z𝐅(x) = P_zF_{|x|}(x)` on `B(o, depth)`; needs horizon ≥ depth.
pub fn poisson_transform_martingale(mart: &Martingale, sp: &SpectralParam) -> Result<BallFunction> {
    let params = mart.params();
    if mart.horizon() < params.depth() {
        return Err(Error::domain(format!(
            "martingale horizon {} is below the ball radius {}",
            mart.horizon(),
            params.depth()
        )));
    }
    let spheres = (0..=params.depth())
        .map(|n| poisson_transform_on_sphere(mart.term(n), sp, n))
        .collect();
    BallFunction::from_spheres(params, spheres)
}

/// `P_z(Δ_jF)` on `S(o, l)` from `q^{−l/2} B(j, l, z) Δ_jF`.
pub fn poisson_of_difference(f: &CylFunction, j: usize, sp: &SpectralParam, l: usize) -> Result<Vec<Complex64>> {
    if j > f.level() {
        return Err(Error::domain(format!("difference index {j} exceeds the level {} of F", f.level())));
    }
    sp.require_generic()?;
    let q = f.q();
    let len = sphere_len(q, l);
    if l < j {
        return Ok(vec![ZERO; len]);
    }
    let factor = bfun(j, l, sp)? * (q as f64).powf(-(l as f64) / 2.0);
    let d = f.difference(j);
    Ok((0..len).map(|i| factor * d.value_on(l, i)).collect())
}

/// Sphere values of `φ_z(n)^{−1} P_zF` for `n ≥ F.level`, or a degenerate-normalization error.
fn normalized_sphere(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<Vec<Complex64>> {
    if n < f.level() {
        return Err(Error::domain(format!("radial level {n} is below the level {} of F", f.level())));
    }
    let phi = phi_explicit(sp, n);
    if phi.norm() < 1e-14 {
        return Err(Error::DegenerateNormalization { n, value: phi.norm() });
    }
    Ok(poisson_transform_on_sphere(f, sp, n).into_iter().map(|v| v / phi).collect())
}

/// `‖φ_z(n)^{−1} P_zF(k·ω_n) − F(k·ω_o)‖_{L^r(K)}` as a sphere average.
pub fn radial_error(f: &CylFunction, sp: &SpectralParam, r: Exponent, n: usize) -> Result<f64> {
    let values = normalized_sphere(f, sp, n)?;
    let w = 1.0 / values.len() as f64;
    Ok(r.weighted_norm(values.iter().enumerate().map(|(i, v)| (w, (v - f.value_on(n, i)).norm()))))
}

/// `(avg_{|y|=n} G(y) φ_z(n)^{−1} P_zF(y), ∫ G F dν)` for `G` of level `≤ n`.
pub fn radial_pairing(f: &CylFunction, g: &CylFunction, sp: &SpectralParam, n: usize) -> Result<(Complex64, Complex64)> {
    if g.level() > n {
        return Err(Error::domain("test function must have level at most n"));
    }
    let values = normalized_sphere(f, sp, n)?;
    let len = values.len() as f64;
    let lhs = values.iter().enumerate().map(|(i, v)| v * g.value_on(n, i)).sum::<Complex64>() / len;
    Ok((lhs, f.pair(g)))
}

/// `a_j = q^{2izj}`, `j = 1..=m`.
pub fn oscillating_multiplier(sp: &SpectralParam, m: usize) -> Vec<Complex64> {
    let i2z = Complex64::new(0.0, 2.0) * sp.z();
    (1..=m).map(|j| sp.qpow(i2z * j as f64)).collect()
}

/// `P_zF` on `S(o, n)` via
/// `q^{−(1/2+iz)n}(c(−z)E_0F + c(z)w^n E_nF − c(z)w^{−1}E_n(T_aF))`, `w = q^{2iz}`, `a_j = w^j`.
pub fn pointwise_representation(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<Vec<Complex64>> {
    let c = cfun(sp)?;
    let cm = cfun(&sp.negated())?;
    let w = sp.qpow(Complex64::new(0.0, 2.0) * sp.z());
    let ta = f.multiplier(&oscillating_multiplier(sp, f.level()))?;
    let e0 = f.integral();
    let en = f.cond_expect(n);
    let ent = ta.cond_expect(n);
    let pre = sp.qpow(-sp.s() * n as f64);
    let wn = w.powu(n as u32);
    Ok((0..sphere_len(f.q(), n))
        .map(|i| pre * (cm * e0 + c * wn * en.value_on(n, i) - c / w * ent.value_on(n, i)))
        .collect())
}

/// `q^{−n/2}|c(z)|(|E_0F| + E*_nF + E*_n(T_aF))` on `S(o, n)`, `E*_n = max_{k≤n}|E_k|`.
pub fn pointwise_majorant(f: &CylFunction, sp: &SpectralParam, n: usize) -> Result<Vec<f64>> {
    let c = cfun(sp)?.norm();
    let ta = f.multiplier(&oscillating_multiplier(sp, f.level()))?;
    let e0 = f.integral().norm();
    let q = f.q();
    let scale = (q as f64).powf(-(n as f64) / 2.0) * c;
    let maximal = |g: &CylFunction| -> Vec<f64> {
        let mut best = vec![0.0f64; sphere_len(q, n)];
        for k in 0..=n {
            let e = g.cond_expect(k);
            for (i, b) in best.iter_mut().enumerate() {
                *b = b.max(e.value_on(n, i).norm());
            }
        }
        best
    };
    let mf = maximal(f);
    let mt = maximal(&ta);
    Ok(mf.iter().zip(&mt).map(|(a, b)| scale * (e0 + a + b)).collect())
}
