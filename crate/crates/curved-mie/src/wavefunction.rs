//! Uniform grids, sampled eigenfunctions, and residual diagnostics.
//!
//! Everything numeric in this crate lives on Dirichlet grids: `N` intervals
//! over a span `L`, interior nodes `x_i = i·h` (`h = L/N`, `i = 1..N−1`).
//! The angular grid spans `(0, π)` in `ψ`; the radial grid spans
//! `(0, r_max)` for the flat reference problem.
//!
//! A bound state of channel `m`, level `n`, is sampled as
//!
//! `Ψ_n(ψ) = e^{−αₙψ/2} · (sinψ)^j · [sin^{n−1}ψ · P_{n−1}^{(𝐚,𝐛)}(−i·cotψ)]`
//!
//! where the bracket is evaluated projectively (see
//! [`crate::specfun::jacobi_eval_homogeneous`]) so nothing overflows at the
//! poles. The same family is reachable through the substitution chain
//! `Ψ → φ = Ψ·sinψ → F = e^{+αψ/2}·φ → f = sin^{β−1}ψ·F`, which strips the
//! measure, the exponential envelope, and the sine power in turn, leaving
//! the bare Jacobi polynomial — each step is exposed here with its inverse.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{v_curved, PhysicalParams};
use crate::spectrum::Level;
use crate::specfun::jacobi_eval_homogeneous;

/// Domain of a [`Grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// Angular grid over `(0, π)` in `ψ`.
    Angular,
    /// Radial grid over `(0, r_max)` in `r`.
    Radial {
        /// Box size of the truncated radial domain.
        r_max: f64,
    },
}

/// A uniform Dirichlet grid: `N` intervals, interior nodes `x_i = i·h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n_intervals: usize,
    kind: GridKind,
}

impl Grid {
    /// Angular grid over `(0, π)` with `ψᵢ = i·h`, `h = π/N`. Needs `N ≥ 2`
    /// (at least one interior node).
    pub fn angular(n_intervals: usize) -> Result<Self> {
        if n_intervals < 2 {
            return Err(Error::InvalidGrid {
                detail: "need at least 2 intervals",
                value: n_intervals,
            });
        }
        Ok(Self { n_intervals, kind: GridKind::Angular })
    }

    /// Radial grid over `(0, r_max)` with `rᵢ = i·h`, `h = r_max/N`.
    pub fn radial(n_intervals: usize, r_max: f64) -> Result<Self> {
        if n_intervals < 2 {
            return Err(Error::InvalidGrid {
                detail: "need at least 2 intervals",
                value: n_intervals,
            });
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r_max",
                value: r_max,
                requirement: "must be finite and > 0",
            });
        }
        Ok(Self { n_intervals, kind: GridKind::Radial { r_max } })
    }

    /// Number of intervals `N`.
    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    /// Domain kind.
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Total span of the domain.
    pub fn span(&self) -> f64 {
        match self.kind {
            GridKind::Angular => std::f64::consts::PI,
            GridKind::Radial { r_max } => r_max,
        }
    }

    /// Step `h = span/N`.
    pub fn h(&self) -> f64 {
        self.span() / self.n_intervals as f64
    }

    /// Number of interior nodes, `N − 1`.
    pub fn interior_len(&self) -> usize {
        self.n_intervals - 1
    }

    /// The `k`-th interior node (0-based): `x = (k+1)·h`.
    pub fn point(&self, k: usize) -> f64 {
        (k + 1) as f64 * self.h()
    }

    /// All interior nodes in order.
    pub fn interior(&self) -> Vec<f64> {
        (0..self.interior_len()).map(|k| self.point(k)).collect()
    }

    /// The grid with twice as many intervals over the same span.
    pub fn doubled(&self) -> Self {
        Self { n_intervals: 2 * self.n_intervals, kind: self.kind }
    }
}

/// Composite-Simpson quadrature of interior samples, with the Dirichlet
/// zeros at both ends supplying the endpoint values. Needs an even `N`.
fn simpson_interior(grid: &Grid, f: impl Fn(usize) -> f64) -> Result<f64> {
    if grid.n_intervals() % 2 != 0 {
        return Err(Error::InvalidGrid {
            detail: "Simpson quadrature needs an even interval count",
            value: grid.n_intervals(),
        });
    }
    let mut acc = 0.0;
    for k in 0..grid.interior_len() {
        // Node index i = k + 1 in 0..=N; odd i weighs 4, even interior i weighs 2.
        let w = if (k + 1) % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(k);
    }
    Ok(acc * grid.h() / 3.0)
}

/// A wavefunction sampled on the interior of an angular grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSample {
    /// The grid the values live on.
    pub grid: Grid,
    /// `Ψ(ψᵢ)` at the interior nodes.
    pub values: Vec<Complex64>,
    /// Current `sin²ψ`-measure norm `√∫|Ψ|² sin²ψ dψ` (updated by
    /// [`WaveSample::normalize`]).
    pub norm: f64,
    /// Set when `n + j ≤ 1`: the state does not vanish at the poles (the
    /// free ground state is the marginal case), so pole-decay diagnostics
    /// do not apply.
    pub boundary_soft: bool,
}

impl WaveSample {
    /// `√∫|Ψ|² sin²ψ dψ` by composite Simpson.
    pub fn measure_norm(&self) -> Result<f64> {
        let norm2 = simpson_interior(&self.grid, |k| {
            let s = self.grid.point(k).sin();
            self.values[k].norm_sqr() * s * s
        })?;
        Ok(norm2.sqrt())
    }

    /// Scales to unit `sin²ψ`-measure norm and fixes the global phase so the
    /// value at the first interior maximum of `|Ψ|` is real and positive.
    ///
    /// Idempotent, and invariant under any complex rescaling of the input.
    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.measure_norm()?;
        if !(norm > 1e-150) || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let peak = self
            .first_interior_peak()
            .ok_or(Error::ZeroNorm)?;
        let anchor = self.values[peak];
        if anchor.norm() == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let phase = anchor.conj() / anchor.norm();
        let factor = phase / norm;
        for v in self.values.iter_mut() {
            *v *= factor;
        }
        self.norm = 1.0;
        Ok(())
    }

    /// Index of the first interior node where `|Ψ|` is no smaller than both
    /// neighbors (ends compare against the Dirichlet zeros).
    fn first_interior_peak(&self) -> Option<usize> {
        let n = self.values.len();
        (0..n).find(|&k| {
            let here = self.values[k].norm();
            let left = if k > 0 { self.values[k - 1].norm() } else { 0.0 };
            let right = if k + 1 < n { self.values[k + 1].norm() } else { 0.0 };
            here > 0.0 && here >= left && here >= right
        })
    }
}

/// Samples the analytic eigenfunction of `level` on `grid`.
///
/// The `sinψ` powers split as `sin^j · sin^{n−1}`, with the integer part
/// folded into the projectivized Jacobi recurrence, so the evaluation stays
/// finite arbitrarily close to the poles for any `j > 0`.
pub fn eval_eigenfunction(
    p: &PhysicalParams,
    level: &Level,
    grid: Grid,
) -> Result<WaveSample> {
    if !matches!(grid.kind(), GridKind::Angular) {
        return Err(Error::InvalidGrid {
            detail: "eigenfunctions are sampled on angular grids",
            value: grid.n_intervals(),
        });
    }
    let _ = p;
    let degree = level.n - 1;
    let mut values = Vec::with_capacity(grid.interior_len());
    for psi in grid.interior() {
        let (s, c) = (psi.sin(), psi.cos());
        let poly = jacobi_eval_homogeneous(
            degree,
            &level.jacobi,
            Complex64::new(0.0, -c),
            Complex64::new(s, 0.0),
        )?;
        let envelope = (-0.5 * level.alpha_n * psi).exp() * s.powf(level.j);
        values.push(envelope * poly);
    }
    let mut sample = WaveSample {
        grid,
        values,
        norm: 0.0,
        boundary_soft: level.u() <= 1.0 + 1e-12,
    };
    if grid.n_intervals() % 2 == 0 {
        sample.norm = sample.measure_norm()?;
    }
    Ok(sample)
}

/// `φ = Ψ·sinψ`: the reduced wave the oracle diagonalizes.
pub fn psi_to_phi(values: &[Complex64], grid: &Grid) -> Vec<Complex64> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v * grid.point(k).sin())
        .collect()
}

/// Inverse of [`psi_to_phi`] (interior nodes only, where `sinψ > 0`).
pub fn phi_to_psi(values: &[Complex64], grid: &Grid) -> Vec<Complex64> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v / grid.point(k).sin())
        .collect()
}

/// `F = e^{+αψ/2}·φ`: strips the exponential envelope.
pub fn phi_to_big_f(values: &[Complex64], grid: &Grid, alpha: f64) -> Vec<Complex64> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v * (0.5 * alpha * grid.point(k)).exp())
        .collect()
}

/// Inverse of [`phi_to_big_f`].
pub fn big_f_to_phi(values: &[Complex64], grid: &Grid, alpha: f64) -> Vec<Complex64> {
    phi_to_big_f(values, grid, -alpha)
}

/// `f = sin^{β−1}ψ·F`: strips the sine power, leaving the bare polynomial
/// `P_{n−1}^{(𝐚,𝐛)}(−i·cotψ)`.
pub fn big_f_to_f(values: &[Complex64], grid: &Grid, beta: f64) -> Vec<Complex64> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v * grid.point(k).sin().powf(beta - 1.0))
        .collect()
}

/// Inverse of [`big_f_to_f`].
pub fn f_to_big_f(values: &[Complex64], grid: &Grid, beta: f64) -> Vec<Complex64> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| v * grid.point(k).sin().powf(1.0 - beta))
        .collect()
}

/// Overlap `∫ Ψ̄_a Ψ_b sin²ψ dψ` of two samples on the same grid.
pub fn overlap(a: &WaveSample, b: &WaveSample) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch {
            detail: format!(
                "samples live on different grids: N={} vs N={}",
                a.grid.n_intervals(),
                b.grid.n_intervals()
            ),
        });
    }
    if a.grid.n_intervals() % 2 != 0 {
        return Err(Error::InvalidGrid {
            detail: "Simpson quadrature needs an even interval count",
            value: a.grid.n_intervals(),
        });
    }
    let re = simpson_interior(&a.grid, |k| {
        let s = a.grid.point(k).sin();
        (a.values[k].conj() * b.values[k]).re * s * s
    })?;
    let im = simpson_interior(&a.grid, |k| {
        let s = a.grid.point(k).sin();
        (a.values[k].conj() * b.values[k]).im * s * s
    })?;
    Ok(Complex64::new(re, im))
}

/// Least-squares slope of `ln|Ψ|` against `ln ψ` over the first `points`
/// interior nodes: the measured pole exponent of the sample.
pub fn boundary_exponent(sample: &WaveSample, points: usize) -> Result<f64> {
    let n = points.min(sample.values.len());
    if n < 2 {
        return Err(Error::InvalidGrid {
            detail: "need at least 2 points to fit a pole exponent",
            value: n,
        });
    }
    let xs: Vec<f64> = (0..n).map(|k| sample.grid.point(k).ln()).collect();
    let ys: Vec<f64> = (0..n).map(|k| sample.values[k].norm().ln()).collect();
    let xm = xs.iter().sum::<f64>() / n as f64;
    let ym = ys.iter().sum::<f64>() / n as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    Ok(sxy / sxx)
}

/// Relative residual of the full radial equation at energy `energy`:
///
/// `res_i = −s·ΔΨ_i + [s·m(m+1)/sin²ψᵢ + V(ψᵢ) − E]·Ψᵢ`,
///
/// with `Δ` the conservative-flux discrete Laplacian
/// `ΔΨ_i = [S²_{i+½}(Ψ_{i+1}−Ψ_i) − S²_{i−½}(Ψ_i−Ψ_{i−1})] / (h²·S²_i)`,
/// `S = sinψ`, and `s = ħ²/(2μR²)`. The first and last five interior nodes
/// are excluded (the fractional pole power `ψ^j` is outside any polynomial
/// stencil's reach), and the remaining residual two-norm is normalized by
/// the two-norm of `|s·ΔΨ| + |coefficient·Ψ|` over the same nodes.
///
/// Needs `N ≥ 512` so the exclusion never eats a meaningful fraction of the
/// domain.
pub fn equation_residual(
    sample: &WaveSample,
    energy: f64,
    p: &PhysicalParams,
    m: u32,
) -> Result<f64> {
    let grid = &sample.grid;
    if !matches!(grid.kind(), GridKind::Angular) {
        return Err(Error::InvalidGrid {
            detail: "equation residual is defined on angular grids",
            value: grid.n_intervals(),
        });
    }
    if grid.n_intervals() < 512 {
        return Err(Error::InvalidGrid {
            detail: "equation residual needs at least 512 intervals",
            value: grid.n_intervals(),
        });
    }
    let h = grid.h();
    let scale = p.energy_scale();
    let centrifugal = f64::from(m) * (f64::from(m) + 1.0);
    let v = &sample.values;
    let len = v.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut num2 = 0.0;
    let mut den2 = 0.0;
    // 0-based interior offsets 5 ..= len-6 == 1-based nodes 6 ..= N-6.
    for k in 5..len - 5 {
        let psi = grid.point(k);
        let s_mid = psi.sin();
        let s_plus = (psi + 0.5 * h).sin();
        let s_minus = (psi - 0.5 * h).sin();
        let left = if k > 0 { v[k - 1] } else { zero };
        let right = if k + 1 < len { v[k + 1] } else { zero };
        let lap = (s_plus * s_plus * (right - v[k]) - s_minus * s_minus * (v[k] - left))
            / (h * h * s_mid * s_mid);
        let coefficient =
            scale * centrifugal / (s_mid * s_mid) + v_curved(psi, p)? - energy;
        let residual = -scale * lap + coefficient * v[k];
        num2 += residual.norm_sqr();
        let witness = (scale * lap).norm() + (coefficient * v[k]).norm();
        den2 += witness * witness;
    }
    if den2 == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((num2 / den2).sqrt())
}
