//! The boundary `Ω` through its sector algebra.
//!
//! Sectors `E(y)` with `|y| = m` partition `Ω`; `ν(E(y)) = 1/((q+1)q^(m-1))`.
//! A [`CylFunction`] of level `m` stores one value per level-`m` sector, in
//! sphere-index order. Conditional expectations, differences, the martingale
//! maximal function and the multiplier `T_a` all reduce to block averages over
//! contiguous index ranges.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::tree::{self, ancestor_index, common_prefix_len, descendant_range, sphere_len, TreeParams, Vertex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `ν(E(x))` for any `|x| = level`.
pub fn sector_measure_at_level(q: u32, level: usize) -> f64 {
    if level == 0 {
        1.0
    } else {
        1.0 / ((q as f64 + 1.0) * (q as f64).powi(level as i32 - 1))
    }
}

/// `ν(E(x))`.
pub fn sector_measure(params: &TreeParams, x: &Vertex) -> f64 {
    debug_assert!(x.len() <= params.depth());
    sector_measure_at_level(params.q(), x.len())
}

/// Exact `ν(E(x))` for `|x| = level` as a ratio of integers.
pub fn sector_measure_exact(q: u32, level: usize) -> Result<Ratio<i64>> {
    exact_denominator(q, level).map(|d| Ratio::new(1, d))
}

fn exact_denominator(q: u32, level: usize) -> Result<i64> {
    if level == 0 {
        return Ok(1);
    }
    (q as i64)
        .checked_pow(level as u32 - 1)
        .and_then(|p| p.checked_mul(q as i64 + 1))
        // leave headroom for the differences taken below
        .filter(|d| d.checked_mul(q as i64 * (q as i64 + 1)).is_some())
        .ok_or_else(|| Error::domain(format!("exact sector measure overflows at q = {q}, level = {level}")))
}

trait Measure: Copy + Sub<Output = Self> {
    fn sector(q: u32, level: usize) -> Self;
}

impl Measure for f64 {
    fn sector(q: u32, level: usize) -> Self {
        sector_measure_at_level(q, level)
    }
}

impl Measure for Ratio<i64> {
    fn sector(q: u32, level: usize) -> Self {
        Ratio::new(1, exact_denominator(q, level).expect("exact measure envelope checked by caller"))
    }
}

fn profile<T: Measure>(q: u32, len: usize) -> Vec<T> {
    (0..=len)
        .map(|j| if j == len { T::sector(q, j) } else { T::sector(q, j) - T::sector(q, j + 1) })
        .collect()
}

fn in_sector<T: Measure>(q: u32, x: &Vertex, y: &Vertex) -> BTreeMap<usize, T> {
    let l = common_prefix_len(x, y);
    let mut out = BTreeMap::new();
    if l < x.len().min(y.len()) {
        out.insert(l, T::sector(q, y.len()));
    } else if l == x.len() {
        out.insert(x.len(), T::sector(q, y.len()));
    } else {
        for j in y.len()..x.len() {
            out.insert(j, T::sector(q, j) - T::sector(q, j + 1));
        }
        out.insert(x.len(), T::sector(q, x.len()));
    }
    out
}

/// `μ_j = ν{ω : |c(x, ω)| = j}` for a vertex with `|x| = len`, `j = 0..=len`.
pub fn confluence_profile(q: u32, len: usize) -> Vec<f64> {
    profile(q, len)
}

/// Exact version of [`confluence_profile`].
pub fn confluence_profile_exact(q: u32, len: usize) -> Result<Vec<Ratio<i64>>> {
    exact_denominator(q, len)?;
    Ok(profile(q, len))
}

/// `μ_j = ν(E_j(x) \ E_{j+1}(x))`, `j = 0..=|x|`.
pub fn confluence_measures(params: &TreeParams, x: &Vertex) -> Vec<f64> {
    debug_assert!(x.len() <= params.depth());
    confluence_profile(params.q(), x.len())
}

/// The measure of `{ω ∈ E(y) : |c(x, ω)| = j}` for every `j` where it is nonzero.
pub fn confluence_measures_in_sector(params: &TreeParams, x: &Vertex, y: &Vertex) -> BTreeMap<usize, f64> {
    in_sector(params.q(), x, y)
}

/// Exact version of [`confluence_measures_in_sector`].
pub fn confluence_measures_in_sector_exact(q: u32, x: &Vertex, y: &Vertex) -> Result<BTreeMap<usize, Ratio<i64>>> {
    exact_denominator(q, x.len().max(y.len()))?;
    Ok(in_sector(q, x, y))
}

/// A cylindrical function `F ∈ K_m(Ω)`: one value per level-`m` sector.
#[derive(Clone, Debug, PartialEq)]
pub struct CylFunction {
    params: TreeParams,
    level: usize,
    values: Vec<Complex64>,
}

impl CylFunction {
    pub fn new(params: TreeParams, level: usize, values: Vec<Complex64>) -> Result<Self> {
        params.check_level(level)?;
        let expected = sphere_len(params.q(), level);
        if values.len() != expected {
            return Err(Error::domain(format!(
                "level-{level} cylindrical function needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(CylFunction { params, level, values })
    }

    pub fn constant(params: TreeParams, c: Complex64) -> Self {
        CylFunction { params, level: 0, values: vec![c] }
    }

    pub fn zero(params: TreeParams, level: usize) -> Result<Self> {
        CylFunction::new(params, level, vec![ZERO; sphere_len(params.q(), level)])
    }

    /// `χ_{E(y)}`, represented at level `|y|`.
    pub fn indicator(params: TreeParams, y: &Vertex) -> Result<Self> {
        let mut f = CylFunction::zero(params, y.len())?;
        f.values[y.index(params.q())] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn from_fn(params: TreeParams, level: usize, mut f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        params.check_level(level)?;
        let values = (0..sphere_len(params.q(), level)).map(&mut f).collect();
        Ok(CylFunction { params, level, values })
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn q(&self) -> u32 {
        self.params.q()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value on the sector containing `E(v)`; needs `|v| ≥ level`.
    pub fn value_at(&self, v: &Vertex) -> Result<Complex64> {
        if v.len() < self.level {
            return Err(Error::domain(format!(
                "F has level {} and is not constant on E({v})",
                self.level
            )));
        }
        Ok(self.value_on(v.len(), v.index(self.q())))
    }

    /// Value on `E(y)` for `y = (level, index)` with `level ≥ self.level()`.
    #[inline]
    pub fn value_on(&self, level: usize, index: usize) -> Complex64 {
        self.values[ancestor_index(self.q(), level, index, self.level)]
    }

    /// The same function re-expressed at a finer level.
    pub fn refine(&self, level: usize) -> Result<CylFunction> {
        if level < self.level {
            return Err(Error::domain(format!("cannot refine level {} down to {level}", self.level)));
        }
        let params = if level > self.params.depth() { self.params.with_depth(level)? } else { self.params };
        let values = (0..sphere_len(self.q(), level)).map(|i| self.value_on(level, i)).collect();
        Ok(CylFunction { params, level, values })
    }

    /// Restrict the recorded truncation depth (values are unchanged).
    pub fn with_params(&self, params: TreeParams) -> Result<CylFunction> {
        if params.q() != self.q() {
            return Err(Error::domain("branching parameter mismatch"));
        }
        CylFunction::new(params, self.level, self.values.clone())
    }

    /// `∫ F dν`.
    pub fn integral(&self) -> Complex64 {
        let w = sector_measure_at_level(self.q(), self.level);
        self.values.iter().sum::<Complex64>() * w
    }

    /// Bilinear pairing `∫ F·G dν`.
    pub fn pair(&self, other: &CylFunction) -> Complex64 {
        let level = self.level.max(other.level);
        let w = sector_measure_at_level(self.q(), level);
        (0..sphere_len(self.q(), level))
            .map(|i| self.value_on(level, i) * other.value_on(level, i))
            .sum::<Complex64>()
            * w
    }

    /// Hermitian inner product `∫ F·conj(G) dν`.
    pub fn inner(&self, other: &CylFunction) -> Complex64 {
        let level = self.level.max(other.level);
        let w = sector_measure_at_level(self.q(), level);
        (0..sphere_len(self.q(), level))
            .map(|i| self.value_on(level, i) * other.value_on(level, i).conj())
            .sum::<Complex64>()
            * w
    }

    /// `‖F‖_{L^r(Ω)}`.
    pub fn lr_norm(&self, r: Exponent) -> f64 {
        let w = sector_measure_at_level(self.q(), self.level);
        r.weighted_norm(self.values.iter().map(|v| (w, v.norm())))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// `E_n(F)`, represented at level `min(n, level)`.
    pub fn cond_expect(&self, n: usize) -> CylFunction {
        if n >= self.level {
            return self.clone();
        }
        let q = self.q();
        let values = (0..sphere_len(q, n))
            .map(|i| {
                let block = descendant_range(q, n, i, self.level);
                let len = block.len() as f64;
                self.values[block].iter().sum::<Complex64>() / len
            })
            .collect();
        CylFunction { params: self.params, level: n, values }
    }

    /// `Δ_n(F) = E_n(F) − E_{n−1}(F)` with `E_{−1} = 0`, at level `min(n, level)`.
    pub fn difference(&self, n: usize) -> CylFunction {
        if n == 0 {
            return self.cond_expect(0);
        }
        if n > self.level {
            return CylFunction {
                params: self.params,
                level: self.level,
                values: vec![ZERO; self.values.len()],
            };
        }
        let fine = self.cond_expect(n);
        let coarse = self.cond_expect(n - 1);
        let values = fine
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v - coarse.value_on(n, i))
            .collect();
        CylFunction { params: self.params, level: n, values }
    }

    /// `T_a(F) = Σ_{j=1..level} a_j Δ_j(F)`, where `a[j-1] = a_j`.
    pub fn multiplier(&self, a: &[Complex64]) -> Result<CylFunction> {
        if a.len() < self.level {
            return Err(Error::domain(format!(
                "multiplier needs {} coefficients, got {}",
                self.level,
                a.len()
            )));
        }
        let mut out = vec![ZERO; self.values.len()];
        for (j, &aj) in (1..=self.level).zip(a) {
            let d = self.difference(j);
            for (i, o) in out.iter_mut().enumerate() {
                *o += aj * d.value_on(self.level, i);
            }
        }
        Ok(CylFunction { params: self.params, level: self.level, values: out })
    }

    /// `E*(F) = sup_n |E_n(F)|` at level `level` (real, nonnegative values).
    pub fn martingale_maximal(&self) -> CylFunction {
        let expectations: Vec<CylFunction> = (0..=self.level).map(|n| self.cond_expect(n)).collect();
        let values = (0..self.values.len())
            .map(|i| {
                let m = expectations
                    .iter()
                    .map(|e| e.value_on(self.level, i).norm())
                    .fold(0.0, f64::max);
                Complex64::new(m, 0.0)
            })
            .collect();
        CylFunction { params: self.params, level: self.level, values }
    }

    pub fn scale(&self, c: Complex64) -> CylFunction {
        CylFunction {
            params: self.params,
            level: self.level,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> CylFunction {
        CylFunction {
            params: self.params,
            level: self.level,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_with(&self, other: &CylFunction, f: impl Fn(Complex64, Complex64) -> Complex64) -> CylFunction {
        assert_eq!(self.q(), other.q(), "cylindrical functions on different trees");
        let level = self.level.max(other.level);
        let params = if self.params.depth() >= other.params.depth() { self.params } else { other.params };
        let values = (0..sphere_len(self.q(), level))
            .map(|i| f(self.value_on(level, i), other.value_on(level, i)))
            .collect();
        CylFunction { params, level, values }
    }

    /// Largest pointwise deviation from `other` on the common refinement.
    pub fn max_abs_diff(&self, other: &CylFunction) -> f64 {
        (self - other).max_abs()
    }
}

impl Add for &CylFunction {
    type Output = CylFunction;
    fn add(self, rhs: &CylFunction) -> CylFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &CylFunction {
    type Output = CylFunction;
    fn sub(self, rhs: &CylFunction) -> CylFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<Complex64> for &CylFunction {
    type Output = CylFunction;
    fn mul(self, rhs: Complex64) -> CylFunction {
        self.scale(rhs)
    }
}

/// A finite-horizon boundary martingale `{F_0, …, F_M}`, `F_n ∈ K_n(Ω)`.
#[derive(Clone, Debug)]
pub struct Martingale {
    params: TreeParams,
    terms: Vec<CylFunction>,
}

/// Relative tolerance for the compatibility check `E_n(F_{n+1}) = F_n`.
pub const MARTINGALE_TOL: f64 = 1e-12;

impl Martingale {
    pub fn new(params: TreeParams, terms: Vec<CylFunction>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("martingale needs at least F_0"));
        }
        for (n, f) in terms.iter().enumerate() {
            if f.level() != n || f.q() != params.q() {
                return Err(Error::domain(format!("term {n} must be a level-{n} function on the same tree")));
            }
            if n > 0 {
                let scale = 1.0 + f.max_abs();
                let gap = f.cond_expect(n - 1).max_abs_diff(&terms[n - 1]);
                if gap > MARTINGALE_TOL * scale {
                    return Err(Error::domain(format!(
                        "E_{}(F_{n}) differs from F_{} by {gap:e}",
                        n - 1,
                        n - 1
                    )));
                }
            }
        }
        let depth = params.depth().max(terms.len() - 1);
        let params = params.with_depth(depth)?;
        let terms = terms.into_iter().map(|f| f.with_params(params)).collect::<Result<_>>()?;
        Ok(Martingale { params, terms })
    }

    /// `{E_n(F)}_{n = 0..=horizon}`.
    pub fn from_function(f: &CylFunction, horizon: usize) -> Result<Self> {
        if horizon < f.level() {
            return Err(Error::domain(format!("horizon {horizon} below the level {} of F", f.level())));
        }
        let mut terms = Vec::with_capacity(horizon + 1);
        for n in 0..=horizon {
            let e = f.cond_expect(n);
            terms.push(if e.level() == n { e } else { e.refine(n)? });
        }
        Martingale::new(f.params(), terms)
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }

    pub fn horizon(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> &CylFunction {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[CylFunction] {
        &self.terms
    }

    /// `sup_n ‖F_n‖_r` over the horizon.
    pub fn sup_lr_norm(&self, r: Exponent) -> f64 {
        self.terms.iter().map(|f| f.lr_norm(r)).fold(0.0, f64::max)
    }
}

/// Number of level-`m` sectors, re-exported for callers iterating over values.
pub fn sector_count(q: u32, m: usize) -> usize {
    tree::sphere_len(q, m)
}
