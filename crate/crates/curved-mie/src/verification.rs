//! Cross-validation report: every analytic claim checked against an
//! independent numerical route.
//!
//! The report is organized as suites of named checks.  Each check computes
//! one scalar `measured` and compares it against a frozen `tolerance`; a
//! row passes when `measured ≤ tolerance`.  The tolerances are calibrated —
//! tight enough to catch a wrong sign, branch, or offset, loose enough to
//! survive honest discretization error at the pinned grid sizes.
//!
//! On top of the suites sits the [`arbitrate`] step: the two closed-form
//! spectra (the original published derivation and the one rederived from
//! first principles) disagree, so both are scored against the
//! finite-difference oracle over a 24-point parameter grid and the winner
//! is named.  The arbitration is the one place where the library takes a
//! side, and it takes it on numbers rather than authority.

use serde::Serialize;

use crate::algebra::{
    apply_ladder, casimir_eigencheck, commutator_residual, factorization_residual,
    factorization_residual_with_scalar, ground_state_annihilation, level_indexed_phi,
    level_ladder_params, CasimirRoute, CommutatorPair, FactorizationIdentity, LadderBranch,
    LadderDirection,
};
use crate::error::Result;
use crate::model::{
    derive_constants, embed, psi_of_r, r_of_psi, v_curved, v_flat, PhysicalParams, SpherePoint,
};
use crate::oracle::{assemble_flat, extrapolate, extrapolated_curved, lowest_k};
use crate::parallel::{map_ordered, Parallelism};
use crate::specfun::{jacobi_deriv, jacobi_eval, jacobi_eval_homogeneous, jacobi_ode_residual, JacobiParams};
use crate::spectrum::{
    compute_j, flat_limit_energy, flat_limit_from_u, level, quantization_residual, SolvabilityMode,
};
use crate::wavefunction::{
    boundary_exponent, equation_residual, eval_eigenfunction, overlap, psi_to_phi, Grid,
};
use num_complex::Complex64;

/// One named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Chart maps, embedding, and the two potential forms.
    Geometry,
    /// The complex-parameter Jacobi recurrences.
    SpecFun,
    /// Closed-form energies and the quantities derived from them.
    Spectrum,
    /// Sampled eigenfunctions against the differential equation and oracle.
    Wavefunction,
    /// Shift-operator factorizations and the index-shifting realization.
    Algebra,
    /// Flat-space limits, on both the analytic and the oracle side.
    Limits,
}

impl Suite {
    /// Every suite, in report order.
    pub const ALL: [Suite; 6] = [
        Suite::Geometry,
        Suite::SpecFun,
        Suite::Spectrum,
        Suite::Wavefunction,
        Suite::Algebra,
        Suite::Limits,
    ];

    /// Stable lowercase name used in report rows.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::SpecFun => "specfun",
            Suite::Spectrum => "spectrum",
            Suite::Wavefunction => "wavefunction",
            Suite::Algebra => "algebra",
            Suite::Limits => "limits",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One check: a measured scalar against its frozen tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    /// Owning suite's name.
    pub suite: &'static str,
    /// What was measured, in snake_case.
    pub check: &'static str,
    /// `"pass"` when `measured ≤ tolerance` (and finite), else `"fail"`.
    pub status: &'static str,
    /// The measured scalar (a residual, deviation, or error).
    pub measured: f64,
    /// The frozen ceiling the measurement must stay under.
    pub tolerance: f64,
}

impl CheckRow {
    fn new(suite: Suite, check: &'static str, measured: f64, tolerance: f64) -> Self {
        let pass = measured.is_finite() && measured <= tolerance;
        CheckRow {
            suite: suite.name(),
            check,
            status: if pass { "pass" } else { "fail" },
            measured,
            tolerance,
        }
    }

    /// A measurement recorded for the reader without a pass/fail verdict
    /// (the tolerance is reported as infinite).
    fn info(suite: Suite, check: &'static str, measured: f64) -> Self {
        CheckRow {
            suite: suite.name(),
            check,
            status: "info",
            measured,
            tolerance: f64::INFINITY,
        }
    }

    /// Whether the row counts against the report (informational rows never
    /// do).
    pub fn passed(&self) -> bool {
        self.status != "fail"
    }
}

/// Outcome of scoring both closed-form spectra against the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct Arbitration {
    /// Name of the spectrum with the smaller worst-case error.
    pub winner: &'static str,
    /// Worst floored relative error of the rederived spectrum.
    pub rederived_worst_rel_err: f64,
    /// Worst floored relative error of the published closed form.
    pub paper_literal_worst_rel_err: f64,
    /// Ceiling the winner must stay under for the report to pass.
    pub tolerance: f64,
    /// Number of parameter-grid points scored.
    pub points: usize,
    /// Bound levels compared at each point.
    pub levels_per_point: usize,
}

/// The full report: all suite rows plus the arbitration verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Every check row, in suite order.
    pub rows: Vec<CheckRow>,
    /// The mode arbitration.
    pub arbitration: Arbitration,
    /// True when every row passed and the winning mode beat the tolerance.
    pub passed: bool,
}

fn defaults() -> PhysicalParams {
    PhysicalParams::dimensionless_defaults()
}

fn free_particle() -> PhysicalParams {
    PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 0.0).expect("valid free parameters")
}

fn geometry_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let radius = 2.0;

    let mut norm_dev = 0.0f64;
    for (psi, theta, phi) in [
        (0.3, 0.7, 1.1),
        (1.5, 2.9, 4.4),
        (2.8, 0.1, 6.0),
        (0.05, 1.6, 3.3),
    ] {
        let pt = SpherePoint::new(psi, theta, phi)?;
        let z = embed(&pt, radius);
        norm_dev = norm_dev.max((z.norm_squared() - radius * radius).abs());
    }
    rows.push(CheckRow::new(
        Suite::Geometry,
        "embedding_norm_squared",
        norm_dev,
        1e-12,
    ));

    let mut chart_dev = 0.0f64;
    for k in 1..40 {
        let r = 0.1 * f64::from(k);
        chart_dev = chart_dev.max((r_of_psi(psi_of_r(r, radius)?, radius)? - r).abs() / r);
    }
    rows.push(CheckRow::new(
        Suite::Geometry,
        "chart_round_trip",
        chart_dev,
        1e-12,
    ));

    rows.push(CheckRow::new(
        Suite::Geometry,
        "equator_potential_vanishes",
        v_curved(std::f64::consts::FRAC_PI_2, &defaults())?.abs(),
        1e-14,
    ));

    // Under the arc-length identification ψ = r/R, the curved potential
    // approaches the flat form at the O(R⁻²) rate; the deviation ratio
    // between R = 10 and R = 20 must therefore sit near 4.
    let p10 = PhysicalParams::new(1.0, 1.0, 10.0, 1.0, 1.0)?;
    let p20 = PhysicalParams::new(1.0, 1.0, 20.0, 1.0, 1.0)?;
    let deviation = |p: &PhysicalParams| -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 1..=30 {
            let r = 0.5 + 1.5 * f64::from(k) / 30.0;
            worst = worst.max((v_curved(r / p.radius, p)? - v_flat(r, p)?).abs());
        }
        Ok(worst)
    };
    let ratio = deviation(&p10)? / deviation(&p20)?;
    rows.push(CheckRow::new(
        Suite::Geometry,
        "flat_recovery_is_second_order_in_curvature",
        (ratio / 4.0 - 1.0).abs(),
        0.05,
    ));

    Ok(rows)
}

fn specfun_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();

    let legendre = JacobiParams::real(0.0, 0.0);
    let p2 = jacobi_eval(2, &legendre, Complex64::new(0.5, 0.0))?;
    rows.push(CheckRow::new(
        Suite::SpecFun,
        "legendre_value",
        (p2 - Complex64::new(-0.125, 0.0)).norm(),
        1e-14,
    ));

    // Complex-conjugate parameter pairs drawn from an actual level.
    let lv = level(&defaults(), 0, 3, SolvabilityMode::Rederived)?;
    let mut worst_ode = 0.0f64;
    let mut worst_deriv = 0.0f64;
    for n in 1..=8u32 {
        for t in [-0.7, -0.2, 0.4, 0.8] {
            let z = Complex64::new(t, 0.3 * t);
            let res = jacobi_ode_residual(n, &lv.jacobi, z)?;
            let scale = jacobi_eval(n, &lv.jacobi, z)?.norm().max(1.0);
            worst_ode = worst_ode.max(res.norm() / scale);

            let h = 1e-5;
            let fd = (jacobi_eval(n, &lv.jacobi, z + Complex64::new(h, 0.0))?
                - jacobi_eval(n, &lv.jacobi, z - Complex64::new(h, 0.0))?)
                / Complex64::new(2.0 * h, 0.0);
            let d = jacobi_deriv(n, &lv.jacobi, z)?;
            worst_deriv = worst_deriv.max((d - fd).norm() / d.norm().max(1.0));
        }
    }
    rows.push(CheckRow::new(
        Suite::SpecFun,
        "differential_equation_residual",
        worst_ode,
        1e-9,
    ));
    rows.push(CheckRow::new(
        Suite::SpecFun,
        "derivative_matches_finite_difference",
        worst_deriv,
        1e-7,
    ));

    let mut worst_hom = 0.0f64;
    for n in 1..=6u32 {
        let num = Complex64::new(0.3, -1.1);
        let den = Complex64::new(1.7, 0.4);
        let direct = jacobi_eval(n, &lv.jacobi, num / den)? * den.powu(n);
        let hom = jacobi_eval_homogeneous(n, &lv.jacobi, num, den)?;
        worst_hom = worst_hom.max((hom - direct).norm() / direct.norm().max(1.0));
    }
    rows.push(CheckRow::new(
        Suite::SpecFun,
        "homogeneous_form_consistency",
        worst_hom,
        1e-10,
    ));

    Ok(rows)
}

fn spectrum_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let p = defaults();

    let e1 = level(&p, 0, 1, SolvabilityMode::Rederived)?.energy;
    let golden = (5.0f64.sqrt() - 2.0) / 2.0;
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "default_ground_state_closed_form",
        (e1 - golden).abs(),
        1e-12,
    ));

    let free = free_particle();
    let exact = [0.0, 1.5, 4.0, 7.5, 12.0];
    let mut worst_free = 0.0f64;
    for (k, e_exact) in exact.iter().enumerate() {
        let e = level(&free, 0, (k + 1) as u32, SolvabilityMode::Rederived)?.energy;
        worst_free = worst_free.max((e - e_exact).abs());
    }
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "free_spectrum_exact",
        worst_free,
        1e-12,
    ));

    // The published worked example: unit channel constant gives the pole
    // exponent 1.1583123951777 under the published closed form.
    let unit = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 1.0)?;
    let j_printed = compute_j(&derive_constants(&unit, 0), SolvabilityMode::PaperLiteral)?;
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "published_exponent_worked_example",
        (j_printed - 1.158_312_395_177_7).abs(),
        1e-10,
    ));

    let mut worst_quant = 0.0f64;
    let mut worst_env = 0.0f64;
    let dc = derive_constants(&p, 0);
    for n in 1..=4 {
        let lv = level(&p, 0, n, SolvabilityMode::Rederived)?;
        worst_quant = worst_quant.max(quantization_residual(n, lv.beta_n, lv.j));
        let alpha_dev = (lv.alpha_n * lv.u() - dc.c3).abs() / (1.0 + dc.c3.abs());
        let beta_dev = (lv.beta_n - (1.0 - lv.u())).abs() / (1.0 + lv.u());
        worst_env = worst_env.max(alpha_dev.max(beta_dev));
    }
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "series_termination_residual",
        worst_quant,
        1e-10,
    ));
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "envelope_constants_consistent",
        worst_env,
        1e-12,
    ));

    let unit_u2 = flat_limit_from_u(&unit, 2.0);
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "flat_limit_closed_forms_at_u_two",
        (unit_u2.curvature_limit + 0.125)
            .abs()
            .max((unit_u2.literal + 0.25).abs()),
        1e-14,
    ));

    // E(R) − E_flat must scale exactly as R⁻²: the products across a factor
    // of 2 in R agree to rounding.
    let mut worst_slope = 0.0f64;
    for r in [5.0, 10.0] {
        let pa = PhysicalParams::new(1.0, 1.0, r, 1.0, 1.0)?;
        let pb = PhysicalParams::new(1.0, 1.0, 2.0 * r, 1.0, 1.0)?;
        let ea = level(&pa, 0, 1, SolvabilityMode::Rederived)?.energy
            - flat_limit_from_u(&pa, level(&pa, 0, 1, SolvabilityMode::Rederived)?.u())
                .curvature_limit;
        let eb = level(&pb, 0, 1, SolvabilityMode::Rederived)?.energy
            - flat_limit_from_u(&pb, level(&pb, 0, 1, SolvabilityMode::Rederived)?.u())
                .curvature_limit;
        worst_slope = worst_slope.max((ea * r * r - eb * 4.0 * r * r).abs() / ea.abs().max(1e-300));
    }
    rows.push(CheckRow::new(
        Suite::Spectrum,
        "curvature_correction_scales_inverse_square",
        worst_slope,
        1e-9,
    ));

    Ok(rows)
}

fn wavefunction_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let p = defaults();
    let free = free_particle();

    let grid = Grid::angular(512)?;
    let lv_free = level(&free, 0, 1, SolvabilityMode::Rederived)?;
    let ground = eval_eigenfunction(&free, &lv_free, grid)?;
    let mean = ground.values.iter().sum::<Complex64>() / ground.values.len() as f64;
    let mut flatness = 0.0f64;
    for v in &ground.values {
        flatness = flatness.max((v - mean).norm() / mean.norm());
    }
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "free_ground_state_is_constant",
        flatness,
        1e-10,
    ));

    let lv2 = level(&free, 0, 2, SolvabilityMode::Rederived)?;
    let second = eval_eigenfunction(&free, &lv2, grid)?;
    let anchor = second.values[10] / Complex64::new(grid.point(10).cos(), 0.0);
    let mut cos_dev = 0.0f64;
    for (k, psi) in grid.interior().into_iter().enumerate() {
        cos_dev = cos_dev.max(
            (second.values[k] - anchor * Complex64::new(psi.cos(), 0.0)).norm() / anchor.norm(),
        );
    }
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "free_second_level_is_cosine",
        cos_dev,
        1e-10,
    ));

    let lv = level(&p, 0, 1, SolvabilityMode::Rederived)?;
    let fine = Grid::angular(8192)?;
    let sample = eval_eigenfunction(&p, &lv, fine)?;
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "pole_exponent_matches_j",
        (boundary_exponent(&sample, 20)? - lv.j).abs(),
        0.1,
    ));

    let mut a = eval_eigenfunction(&p, &lv, fine)?;
    let mut b = eval_eigenfunction(&p, &level(&p, 0, 2, SolvabilityMode::Rederived)?, fine)?;
    a.normalize()?;
    b.normalize()?;
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "eigenfunctions_orthogonal",
        overlap(&a, &b)?.norm(),
        1e-4,
    ));

    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "satisfies_radial_equation",
        equation_residual(&sample, lv.energy, &p, 0)?,
        1e-3,
    ));

    // Convergence order of that residual.  At fractional pole exponent j
    // the normalized residual plateaus (the first included node sits at a
    // fixed relative truncation), so the defaults-channel order is recorded
    // for the reader; the order requirement is asserted where it is
    // measurable — on a smooth free channel, as a shortfall below 1.8.
    let coarse = eval_eigenfunction(&p, &lv, Grid::angular(4096)?)?;
    let order_defaults = (equation_residual(&coarse, lv.energy, &p, 0)?
        / equation_residual(&sample, lv.energy, &p, 0)?)
    .log2();
    rows.push(CheckRow::info(
        Suite::Wavefunction,
        "radial_equation_order_at_fractional_exponent",
        order_defaults,
    ));
    let lv_smooth = level(&free, 1, 1, SolvabilityMode::Rederived)?;
    let res_at = |n: usize| -> Result<f64> {
        let g = Grid::angular(n)?;
        equation_residual(
            &eval_eigenfunction(&free, &lv_smooth, g)?,
            lv_smooth.energy,
            &free,
            1,
        )
    };
    let order_free = (res_at(1024)? / res_at(2048)?).log2();
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "radial_equation_order_shortfall_smooth_channel",
        1.8 - order_free,
        0.0,
    ));

    // Shape agreement with the oracle eigenvector, both sides normalized
    // the trapezoid way the oracle uses.
    let grid_o = Grid::angular(1024)?;
    let op = crate::oracle::assemble_curved(&p, 0, grid_o)?;
    let eig = lowest_k(&op, 1)?;
    let vec = crate::oracle::eigenvector(&op, eig.eigenvalues[0])?;
    let phi = psi_to_phi(&eval_eigenfunction(&p, &lv, grid_o)?.values, &grid_o);
    let h = grid_o.h();
    let norm = (h * phi.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
    let mut shape_dev = 0.0f64;
    for (k, v) in vec.iter().enumerate() {
        shape_dev = shape_dev.max((phi[k].re / norm - v).abs() + (phi[k].im / norm).abs());
    }
    rows.push(CheckRow::new(
        Suite::Wavefunction,
        "matches_oracle_eigenvector",
        shape_dev,
        1e-3,
    ));

    Ok(rows)
}

fn algebra_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let p = defaults();
    let grid = Grid::angular(4096)?;
    let mode = SolvabilityMode::Rederived;

    let mut worst_lower = 0.0f64;
    let mut worst_raise = 0.0f64;
    for n in 1..=3 {
        let lv = level(&p, 0, n, mode)?;
        let phi = psi_to_phi(&eval_eigenfunction(&p, &lv, grid)?.values, &grid);
        for branch in [LadderBranch::Mode1, LadderBranch::Mode2] {
            let fp = level_ladder_params(&p, 0, n, mode, branch)?;
            worst_lower = worst_lower.max(factorization_residual(
                &phi,
                grid,
                &fp,
                FactorizationIdentity::LowerThenRaise,
            )?);
            worst_raise = worst_raise.max(factorization_residual(
                &phi,
                grid,
                &fp,
                FactorizationIdentity::RaiseThenLower,
            )?);
        }
    }
    rows.push(CheckRow::new(
        Suite::Algebra,
        "factorization_lower_then_raise",
        worst_lower,
        1e-5,
    ));
    rows.push(CheckRow::new(
        Suite::Algebra,
        "factorization_raise_then_lower",
        worst_raise,
        1e-5,
    ));

    // The same identity read with the equation constant ε = U² − A²/U² in
    // place of λ = (j + 1/2)² — a tempting mis-reading that shows up as an
    // O(1) residual.  Recorded for the reader, not asserted.
    let lv1 = level(&p, 0, 1, mode)?;
    let phi1 = psi_to_phi(&eval_eigenfunction(&p, &lv1, grid)?.values, &grid);
    let fp1 = level_ladder_params(&p, 0, 1, mode, LadderBranch::Mode2)?;
    rows.push(CheckRow::info(
        Suite::Algebra,
        "factorization_scalar_epsilon_reading",
        factorization_residual_with_scalar(
            &phi1,
            grid,
            &fp1,
            FactorizationIdentity::LowerThenRaise,
            Complex64::new(fp1.epsilon, 0.0),
        )?,
    ));

    rows.push(CheckRow::new(
        Suite::Algebra,
        "lowering_annihilates_ground_state",
        ground_state_annihilation(&p, 0, mode, grid)?,
        1e-6,
    ));

    let mut worst_casimir = 0.0f64;
    for n in 1..=3 {
        let lv = level(&p, 0, n, mode)?;
        let f = level_indexed_phi(&p, 0, n, mode, grid)?;
        worst_casimir = worst_casimir.max(casimir_eigencheck(&f, lv.j, CasimirRoute::ViaO1)?);
    }
    rows.push(CheckRow::new(
        Suite::Algebra,
        "casimir_eigenvalue",
        worst_casimir,
        1e-4,
    ));

    let small = Grid::angular(256)?;
    let f = level_indexed_phi(&p, 0, 2, mode, small)?;
    let mut worst_exact = 0.0f64;
    let mut worst_deriv = 0.0f64;
    for pair in CommutatorPair::ALL {
        let res = commutator_residual(&f, pair)?;
        match pair {
            CommutatorPair::O1RaiseWithO1Lower | CommutatorPair::O2RaiseWithO2Lower => {
                worst_deriv = worst_deriv.max(res);
            }
            _ => worst_exact = worst_exact.max(res),
        }
    }
    rows.push(CheckRow::new(
        Suite::Algebra,
        "index_brackets_exact",
        worst_exact,
        1e-13,
    ));
    let f_mid = level_indexed_phi(&p, 0, 2, mode, Grid::angular(1024)?)?;
    let deriv_mid = commutator_residual(&f_mid, CommutatorPair::O1RaiseWithO1Lower)?
        .max(commutator_residual(&f_mid, CommutatorPair::O2RaiseWithO2Lower)?);
    let _ = worst_deriv;
    rows.push(CheckRow::new(
        Suite::Algebra,
        "ladder_brackets_close",
        deriv_mid,
        1e-6,
    ));

    // Adjointness under the csc²ψ dψ pairing on smooth counterparts.
    let grid_adj = Grid::angular(2048)?;
    let fp = level_ladder_params(&p, 0, 2, mode, LadderBranch::Mode1)?;
    let fvals: Vec<Complex64> = grid_adj
        .interior()
        .into_iter()
        .map(|psi| {
            let s = psi.sin();
            Complex64::new(s * s * (psi + 0.3).sin().exp(), s * s * (2.0 * psi + 0.5).cos())
        })
        .collect();
    let gvals: Vec<Complex64> = grid_adj
        .interior()
        .into_iter()
        .map(|psi| {
            let s = psi.sin();
            Complex64::new(s * s * (1.7 * psi).cos(), -0.4 * s * s * psi.cos())
        })
        .collect();
    let raised = apply_ladder(&fvals, grid_adj, &fp, fp.j, LadderDirection::Raise)?;
    let lowered = apply_ladder(&gvals, grid_adj, &fp, fp.j, LadderDirection::Lower)?;
    let pair = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
        let h = grid_adj.h();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, psi) in grid_adj.interior().into_iter().enumerate() {
            let w = if k % 2 == 0 { 4.0 } else { 2.0 };
            acc += w / (psi.sin() * psi.sin()) * u[k] * v[k];
        }
        acc * (h / 3.0)
    };
    let lhs = pair(&raised, &gvals);
    let rhs = pair(&fvals, &lowered);
    rows.push(CheckRow::new(
        Suite::Algebra,
        "shift_operators_adjoint",
        (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0),
        1e-9,
    ));

    Ok(rows)
}

fn limits_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();

    // Unit-strength well: the flat bound state has the closed form
    // E = −(3 − √5)/4 ≈ −0.190983, reached as R → ∞.
    let exact_flat = -(3.0 - 5.0f64.sqrt()) / 4.0;
    let p40 = PhysicalParams::new(1.0, 1.0, 40.0, 1.0, 1.0)?;
    let p80 = PhysicalParams::new(1.0, 1.0, 80.0, 1.0, 1.0)?;

    let flat_coarse = lowest_k(&assemble_flat(&p40, 0, Grid::radial(2048, 40.0)?)?, 1)?;
    let flat_fine = lowest_k(&assemble_flat(&p40, 0, Grid::radial(4096, 40.0)?)?, 1)?;
    let flat = extrapolate(&flat_coarse, &flat_fine)?.eigenvalues[0];
    rows.push(CheckRow::new(
        Suite::Limits,
        "flat_oracle_reaches_closed_form",
        (flat - exact_flat).abs() / exact_flat.abs(),
        1e-5,
    ));

    // Both closed-form flat limits next to that oracle number: the limit
    // the rederived spectrum reaches as R → ∞ (which the row above pins the
    // flat solver to) and the value of the published flat formula at the
    // same U.  Their gap is recorded for the reader, not judged here — the
    // arbitration grid is where the disagreement is scored.
    let forms = flat_limit_energy(&p40, 0, 1, SolvabilityMode::Rederived)?;
    rows.push(CheckRow::info(
        Suite::Limits,
        "flat_limit_rederived_form",
        forms.curvature_limit,
    ));
    rows.push(CheckRow::info(
        Suite::Limits,
        "flat_limit_published_form",
        forms.literal,
    ));
    rows.push(CheckRow::info(
        Suite::Limits,
        "flat_limit_forms_discrepancy",
        (forms.literal - forms.curvature_limit).abs(),
    ));

    let e40 = extrapolated_curved(&p40, 0, 8192, 1)?.eigenvalues[0];
    let e80 = extrapolated_curved(&p80, 0, 16384, 1)?.eigenvalues[0];
    let lv40 = level(&p40, 0, 1, SolvabilityMode::Rederived)?;
    rows.push(CheckRow::new(
        Suite::Limits,
        "curved_oracle_matches_analytic_at_large_radius",
        (e40 - lv40.energy).abs() / lv40.energy.abs().max(1e-3),
        1e-5,
    ));

    let ratio = (e40 - exact_flat) / (e80 - exact_flat);
    rows.push(CheckRow::new(
        Suite::Limits,
        "oracle_curvature_gap_scales_inverse_square",
        (ratio / 4.0 - 1.0).abs(),
        0.1,
    ));

    Ok(rows)
}

/// Runs one suite, returning its rows in a fixed order.
pub fn run_suite(suite: Suite) -> Result<Vec<CheckRow>> {
    match suite {
        Suite::Geometry => geometry_rows(),
        Suite::SpecFun => specfun_rows(),
        Suite::Spectrum => spectrum_rows(),
        Suite::Wavefunction => wavefunction_rows(),
        Suite::Algebra => algebra_rows(),
        Suite::Limits => limits_rows(),
    }
}

/// Scores both closed-form spectra against the Richardson-extrapolated
/// oracle over a 24-point parameter grid (V₀ ∈ {0.5, 1, 2} × a ∈ {0.5, 1} ×
/// R ∈ {1, 2} × m ∈ {0, 1}), four lowest levels each.
///
/// Relative errors are floored: the denominator is
/// `max(|E_oracle|, 10⁻³·max_k |E_oracle,k|)`, so a level that crosses zero
/// (the default ground state sits at exactly 0 for V₀ = 2) cannot blow the
/// quotient up.
pub fn arbitrate(parallelism: Parallelism) -> Result<Arbitration> {
    let mut cases = Vec::new();
    for v0 in [0.5, 1.0, 2.0] {
        for a in [0.5, 1.0] {
            for radius in [1.0, 2.0] {
                for m in [0u32, 1] {
                    cases.push((v0, a, radius, m));
                }
            }
        }
    }
    let levels = 4usize;

    let scored: Vec<Result<(f64, f64)>> =
        map_ordered(&cases, parallelism, |&(v0, a, radius, m)| {
            let p = PhysicalParams::new(1.0, 1.0, radius, a, v0)?;
            let oracle = extrapolated_curved(&p, m, 8192, levels)?;
            let peak = oracle
                .eigenvalues
                .iter()
                .fold(0.0f64, |acc, e| acc.max(e.abs()));
            let floor = 1e-3 * peak;
            let mut worst = (0.0f64, 0.0f64);
            for (k, e_oracle) in oracle.eigenvalues.iter().enumerate() {
                let n = (k + 1) as u32;
                let den = e_oracle.abs().max(floor);
                let red = level(&p, m, n, SolvabilityMode::Rederived)?.energy;
                worst.0 = worst.0.max((red - e_oracle).abs() / den);
                let pap = level(&p, m, n, SolvabilityMode::PaperLiteral)?.energy;
                worst.1 = worst.1.max((pap - e_oracle).abs() / den);
            }
            Ok(worst)
        });

    let mut rederived_worst = 0.0f64;
    let mut paper_worst = 0.0f64;
    for item in scored {
        let (r, p) = item?;
        rederived_worst = rederived_worst.max(r);
        paper_worst = paper_worst.max(p);
    }

    Ok(Arbitration {
        winner: if rederived_worst <= paper_worst {
            SolvabilityMode::Rederived.name()
        } else {
            SolvabilityMode::PaperLiteral.name()
        },
        rederived_worst_rel_err: rederived_worst,
        paper_literal_worst_rel_err: paper_worst,
        tolerance: 1e-4,
        points: cases.len(),
        levels_per_point: levels,
    })
}

/// Runs every suite and the arbitration, assembling the full report.
pub fn run_all(parallelism: Parallelism) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for suite in Suite::ALL {
        rows.extend(run_suite(suite)?);
    }
    let arbitration = arbitrate(parallelism)?;
    let winner_err = arbitration
        .rederived_worst_rel_err
        .min(arbitration.paper_literal_worst_rel_err);
    let passed = rows.iter().all(CheckRow::passed) && winner_err <= arbitration.tolerance;
    Ok(VerificationReport {
        rows,
        arbitration,
        passed,
    })
}
