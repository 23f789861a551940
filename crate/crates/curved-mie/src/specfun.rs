//! Jacobi polynomials `P_n^{(a,b)}(z)` over the complex plane.
//!
//! The bound-state eigenfunctions need Jacobi polynomials with
//! complex-conjugate parameters evaluated on the imaginary axis
//! (`z = −i·cotψ`), so everything here works in `Complex64` and uses the
//! standard three-term recurrence in the degree. Normalization follows the
//! hypergeometric convention `P_n^{(a,b)}(1) = C(n+a, n)`.
//!
//! Near the poles `cotψ` overflows; [`jacobi_eval_homogeneous`] therefore
//! evaluates the projectivized combination `den^n · P_n(num/den)` directly,
//! which is a polynomial in `(num, den)` and stays finite as `den → 0`.
//! The wavefunction module calls it with `num = −i·cosψ`, `den = sinψ`, which
//! folds the `sin^{n-1}ψ` envelope into the polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parameter pair `(a, b)` of a Jacobi polynomial `P_n^{(a,b)}`.
///
/// The physical levels carry complex-conjugate pairs
/// `a = (2β − iα − 2)/2`, `b = (2β + iα − 2)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    /// First (upper) parameter `a`.
    pub a_param: Complex64,
    /// Second (lower) parameter `b`.
    pub b_param: Complex64,
}

impl JacobiParams {
    /// Bundles the two parameters.
    pub fn new(a_param: Complex64, b_param: Complex64) -> Self {
        Self { a_param, b_param }
    }

    /// Real-parameter convenience constructor.
    pub fn real(a: f64, b: f64) -> Self {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }
}

/// How close a recurrence denominator may get to zero before the degree is
/// declared degenerate. The physical parameter combinations stay well away
/// from this (the smallest denominator seen across the working parameter
/// range is ~0.2).
const DEGENERACY_GUARD: f64 = 1e-12;

fn check_degeneracy(k: u32, jp: &JacobiParams) -> Result<()> {
    let s = jp.a_param + jp.b_param;
    let kf = f64::from(k);
    // c1 and c3 of the recurrence both carry (2k + a + b - 2) and
    // (k + a + b); either vanishing collapses the recurrence at degree k.
    let sum_k = s + Complex64::new(kf, 0.0);
    let two_k = s + Complex64::new(2.0 * kf - 2.0, 0.0);
    if sum_k.norm() < DEGENERACY_GUARD {
        return Err(Error::DegenerateRecurrence {
            degree: k,
            detail: format!("k + a + b = {sum_k} vanishes"),
        });
    }
    if two_k.norm() < DEGENERACY_GUARD {
        return Err(Error::DegenerateRecurrence {
            degree: k,
            detail: format!("2k + a + b - 2 = {two_k} vanishes"),
        });
    }
    Ok(())
}

/// Evaluates `P_n^{(a,b)}(z)` by the three-term recurrence in the degree.
///
/// Errors with [`Error::DegenerateRecurrence`] naming the offending degree if
/// a recurrence denominator vanishes (parameter combinations like
/// `a + b = −k` for small integer `k`).
pub fn jacobi_eval(n: u32, jp: &JacobiParams, z: Complex64) -> Result<Complex64> {
    Ok(jacobi_eval_homogeneous(n, jp, z, Complex64::new(1.0, 0.0))?)
}

/// Evaluates the homogenized polynomial `den^n · P_n^{(a,b)}(num/den)`.
///
/// This is the numerically safe route to `sin^n ψ · P_n(−i·cotψ)`: pass
/// `num = −i·cosψ`, `den = sinψ` and no intermediate ever overflows, even at
/// the poles where `cotψ` itself would.
pub fn jacobi_eval_homogeneous(
    n: u32,
    jp: &JacobiParams,
    num: Complex64,
    den: Complex64,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (a, b) = (jp.a_param, jp.b_param);
    // Homogenized P_0 = 1 and P_1; each recurrence step multiplies the
    // implicit degree of `den` by one, so p_prev is padded with one factor
    // of `den` before use.
    let mut p_prev = one; // den^0 * P_0
    if n == 0 {
        return Ok(p_prev);
    }
    let mut p = 0.5 * ((a - b) * den + (a + b + 2.0 * one) * num); // den^1 * P_1
    for k in 2..=n {
        check_degeneracy(k, jp)?;
        let kf = f64::from(k);
        let s = a + b;
        let c1 = 2.0 * kf * (s + kf) * (s + 2.0 * kf - 2.0);
        let c2 = (s + 2.0 * kf - 1.0) * (a * a - b * b);
        let c3 = (s + 2.0 * kf - 1.0) * (s + 2.0 * kf) * (s + 2.0 * kf - 2.0);
        let c4 = 2.0 * (a + (kf - 1.0)) * (b + (kf - 1.0)) * (s + 2.0 * kf);
        // den^k * P_k = [(c2*den + c3*num) * den^{k-1} P_{k-1}
        //               - c4 * den^2 * den^{k-2} P_{k-2}] / c1
        let next = ((c2 * den + c3 * num) * p - c4 * den * den * p_prev) / c1;
        p_prev = p;
        p = next;
    }
    Ok(p)
}

/// Derivative `d/dz P_n^{(a,b)}(z) = ((n + a + b + 1)/2) · P_{n−1}^{(a+1,b+1)}(z)`.
pub fn jacobi_deriv(n: u32, jp: &JacobiParams, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let shifted = JacobiParams::new(
        jp.a_param + Complex64::new(1.0, 0.0),
        jp.b_param + Complex64::new(1.0, 0.0),
    );
    let factor = 0.5 * (jp.a_param + jp.b_param + Complex64::new(f64::from(n) + 1.0, 0.0));
    Ok(factor * jacobi_eval(n - 1, &shifted, z)?)
}

/// Second derivative, by the same parameter-shift identity applied twice.
pub fn jacobi_deriv2(n: u32, jp: &JacobiParams, z: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let shifted = JacobiParams::new(
        jp.a_param + Complex64::new(1.0, 0.0),
        jp.b_param + Complex64::new(1.0, 0.0),
    );
    let factor = 0.5 * (jp.a_param + jp.b_param + Complex64::new(f64::from(n) + 1.0, 0.0));
    Ok(factor * jacobi_deriv(n - 1, &shifted, z)?)
}

/// Raw residual of the Jacobi differential equation at `z`:
///
/// `(1−z²)·y″ + [b − a − (a+b+2)z]·y′ + n(n+a+b+1)·y`,
///
/// with `y = P_n^{(a,b)}`. Exactly zero in exact arithmetic; callers decide
/// how to normalize before comparing against a tolerance.
pub fn jacobi_ode_residual(n: u32, jp: &JacobiParams, z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (a, b) = (jp.a_param, jp.b_param);
    let y = jacobi_eval(n, jp, z)?;
    let dy = jacobi_deriv(n, jp, z)?;
    let ddy = jacobi_deriv2(n, jp, z)?;
    let nf = Complex64::new(f64::from(n), 0.0);
    Ok((one - z * z) * ddy + (b - a - (a + b + 2.0 * one) * z) * dy
        + nf * (nf + a + b + one) * y)
}
