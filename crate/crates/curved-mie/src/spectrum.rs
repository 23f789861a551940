//! Closed-form bound-state spectrum of the curved Mie problem.
//!
//! Substituting `Ψ = φ/sinψ` into the radial equation and peeling off the
//! envelope `e^{−αψ/2}(sinψ)^{n+j−1}` terminates the remaining series at a
//! Jacobi polynomial of degree `n−1`, which quantizes the energy:
//!
//! `E_n = (ħ²/2μR²)·[(n+j)² − C₃²/(4(n+j)²) − 1 − μa²V₀/ħ²]`,  `n ≥ 1`,
//!
//! with `j = −1/2 + √(C₂ + 1/4)` the regular-branch exponent at the poles.
//! That is [`SolvabilityMode::Rederived`], the form this crate derives from
//! scratch and the one the finite-difference oracle confirms.
//!
//! [`SolvabilityMode::PaperLiteral`] instead transcribes the original
//! published closed form verbatim (`j = −1/2 + √(C₂ + 7/4)`, bracket ending
//! in `−μa²V₀/ħ² − 9/4`). It is kept selectable so the two can be arbitrated
//! against the oracle; the verification suite reports both, and the
//! rederived branch is the one that wins.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{derive_constants, DerivedConstants, PhysicalParams};
use crate::specfun::JacobiParams;

/// Which closed-form solution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolvabilityMode {
    /// The constants exactly as printed in the original closed-form
    /// derivation: `j = −1/2 + √(C₂ + 7/4)`, energy bracket `… − 9/4`.
    PaperLiteral,
    /// The corrected solution rederived from the radial equation:
    /// `j = −1/2 + √(C₂ + 1/4)`, energy bracket `… − 1`.
    Rederived,
}

impl SolvabilityMode {
    /// Both modes, in arbitration order.
    pub const ALL: [SolvabilityMode; 2] = [SolvabilityMode::PaperLiteral, SolvabilityMode::Rederived];

    /// The stable identifier used in reports and CSV columns.
    pub fn name(self) -> &'static str {
        match self {
            SolvabilityMode::PaperLiteral => "paper_literal",
            SolvabilityMode::Rederived => "rederived",
        }
    }
}

impl fmt::Display for SolvabilityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolvabilityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper_literal" => Ok(SolvabilityMode::PaperLiteral),
            "rederived" => Ok(SolvabilityMode::Rederived),
            _ => Err(Error::InvalidParameter {
                name: "mode",
                value: f64::NAN,
                requirement: "one of: paper, paper_literal, rederived",
            }),
        }
    }
}

/// One bound level of channel `m`: quantum numbers, envelope constants, the
/// Jacobi parameter pair of its polynomial factor, and the energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    /// Radial quantum number, `n ≥ 1`.
    pub n: u32,
    /// Angular quantum number of the channel.
    pub m: u32,
    /// Pole exponent `j` of the channel (mode-dependent).
    pub j: f64,
    /// Envelope decay rate `αₙ = C₃/(n+j)`.
    pub alpha_n: f64,
    /// Envelope power parameter `βₙ = 1 − (n+j)`.
    pub beta_n: f64,
    /// Jacobi parameters `((2β − iα − 2)/2, (2β + iα − 2)/2)` of the
    /// degree-`n−1` polynomial factor.
    pub jacobi: JacobiParams,
    /// Bound-state energy `Eₙ`.
    pub energy: f64,
}

impl Level {
    /// The combination `U = n + j` that carries the whole level.
    pub fn u(&self) -> f64 {
        f64::from(self.n) + self.j
    }
}

/// Both flat-limit (`R → ∞`) readings of a level's energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatLimit {
    /// `−μa²V₀²/(2ħ²U²)`: the genuine `R → ∞` limit of the curved energy,
    /// and the flat Kratzer/Mie bound-state energy.
    pub curvature_limit: f64,
    /// `−μ²a²V₀²/(ħ⁴U²)`: the flat-limit expression exactly as printed in
    /// the original derivation (kept for side-by-side reporting).
    pub literal: f64,
}

/// Pole exponent `j` of channel `m` under the chosen mode.
///
/// `j` solves `j(j+1) = C₂ + δ` with `δ = 0` (rederived) or `δ = 3/2`
/// (literal transcription), i.e. `j = −1/2 + √(C₂ + 1/4 + δ)`. A negative
/// discriminant means the centrifugal-plus-interaction core is too
/// attractive for a regular solution: [`Error::NoBoundChannel`].
pub fn compute_j(constants: &DerivedConstants, mode: SolvabilityMode) -> Result<f64> {
    let discriminant = match mode {
        SolvabilityMode::Rederived => constants.c2 + 0.25,
        SolvabilityMode::PaperLiteral => constants.c2 + 1.75,
    };
    if discriminant < 0.0 {
        return Err(Error::NoBoundChannel { m: constants.m, discriminant });
    }
    Ok(-0.5 + discriminant.sqrt())
}

/// Builds level `n ≥ 1` of channel `m`.
pub fn level(p: &PhysicalParams, m: u32, n: u32, mode: SolvabilityMode) -> Result<Level> {
    if n == 0 {
        return Err(Error::InvalidRadialIndex { n });
    }
    let constants = derive_constants(p, m);
    let j = compute_j(&constants, mode)?;
    let u = f64::from(n) + j;
    if u.abs() < 1e-12 {
        return Err(Error::SingularLevel { n_plus_j: u });
    }
    let alpha_n = constants.c3 / u;
    let beta_n = 1.0 - u;
    let jacobi = JacobiParams::new(
        Complex64::new(beta_n - 1.0, -0.5 * alpha_n),
        Complex64::new(beta_n - 1.0, 0.5 * alpha_n),
    );
    let strength = p.dimensionless_strength();
    let bracket = match mode {
        SolvabilityMode::Rederived => {
            u * u - constants.c3 * constants.c3 / (4.0 * u * u) - 1.0 - strength
        }
        SolvabilityMode::PaperLiteral => {
            u * u - constants.c3 * constants.c3 / (4.0 * u * u) - strength - 2.25
        }
    };
    Ok(Level {
        n,
        m,
        j,
        alpha_n,
        beta_n,
        jacobi,
        energy: p.energy_scale() * bracket,
    })
}

/// The first `n_max` levels of channel `m`, sorted by energy.
pub fn enumerate_levels(
    p: &PhysicalParams,
    m: u32,
    n_max: u32,
    mode: SolvabilityMode,
) -> Result<Vec<Level>> {
    let mut levels = (1..=n_max)
        .map(|n| level(p, m, n, mode))
        .collect::<Result<Vec<_>>>()?;
    levels.sort_by(|a, b| a.energy.partial_cmp(&b.energy).expect("finite energies"));
    Ok(levels)
}

/// Flat-limit energies for the combination `U = n + j`.
pub fn flat_limit_from_u(p: &PhysicalParams, u: f64) -> FlatLimit {
    let h2 = p.hbar * p.hbar;
    let common = p.mu * p.a * p.a * p.v0 * p.v0 / (u * u);
    FlatLimit {
        curvature_limit: -0.5 * common / h2,
        literal: -common * p.mu / (h2 * h2),
    }
}

/// Flat-limit energies of level `n` in channel `m`.
///
/// `j` depends on `R` only through nothing — `C₂` is radius-free — so the
/// limit is evaluated at the same `U = n + j` as the curved level.
pub fn flat_limit_energy(
    p: &PhysicalParams,
    m: u32,
    n: u32,
    mode: SolvabilityMode,
) -> Result<FlatLimit> {
    if n == 0 {
        return Err(Error::InvalidRadialIndex { n });
    }
    let constants = derive_constants(p, m);
    let j = compute_j(&constants, mode)?;
    Ok(flat_limit_from_u(p, f64::from(n) + j))
}

/// Residual of the series-termination (quantization) condition at radial
/// index `n` with envelope power `β` and pole exponent `j`:
///
/// `|(n−1)(n + 2β − 2) − [β(1−β) + j(j+1)]|`.
///
/// The left side is the coefficient that must kill the Jacobi series at
/// degree `n−1`; the right side is what the pole analysis demands of it.
/// Vanishes identically when `β = 1 − (n+j)`.
pub fn quantization_residual(n: u32, beta: f64, j: f64) -> f64 {
    let nf = f64::from(n);
    let lhs = (nf - 1.0) * (nf + 2.0 * beta - 2.0);
    let rhs = beta * (1.0 - beta) + j * (j + 1.0);
    (lhs - rhs).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn defaults() -> PhysicalParams {
        PhysicalParams::dimensionless_defaults()
    }

    #[test]
    fn default_channel_ground_state_hits_the_golden_ratio_values() {
        // C2 = 1 => j = (sqrt(5) - 1)/2 and E1 = (sqrt(5) - 2)/2.
        let lv = level(&defaults(), 0, 1, SolvabilityMode::Rederived).unwrap();
        let golden = (5.0f64.sqrt() - 1.0) / 2.0;
        assert!((lv.j - golden).abs() < 1e-15, "j = {}", lv.j);
        assert!(
            (lv.energy - (5.0f64.sqrt() - 2.0) / 2.0).abs() < 1e-15,
            "E1 = {}",
            lv.energy
        );
    }

    #[test]
    fn literal_mode_reproduces_the_printed_exponent() {
        // C2 = 1: j = -1/2 + sqrt(1 + 7/4) = 1.1583123951777...
        let c = derive_constants(&defaults(), 0);
        let j = compute_j(&c, SolvabilityMode::PaperLiteral).unwrap();
        assert!((j - 1.1583123951777).abs() < 1e-12, "j = {j}");
    }

    #[test]
    fn ground_state_energy_vanishes_exactly_at_strength_two() {
        // V0 = 2, a = R = 1, m = 0: C2 = 2, j = 1, U = 2, C3 = 4 and the
        // bracket [4 - 1 - 1 - 2] closes to zero with no rounding.
        let p = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 2.0).unwrap();
        let lv = level(&p, 0, 1, SolvabilityMode::Rederived).unwrap();
        assert_eq!(lv.j, 1.0);
        assert_eq!(lv.energy, 0.0);
    }

    #[test]
    fn free_channel_reproduces_the_round_sphere_spectrum() {
        // V0 = 0: j = m (rederived), U = n + m, E = (U^2 - 1)/2 on the unit
        // sphere, i.e. m = 0 gives 0, 1.5, 4, 7.5, 12.
        let p = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        for (i, want) in [0.0, 1.5, 4.0, 7.5, 12.0].iter().enumerate() {
            let lv = level(&p, 0, i as u32 + 1, SolvabilityMode::Rederived).unwrap();
            assert!((lv.energy - want).abs() < 1e-14, "n={} E={}", i + 1, lv.energy);
        }
        let c = derive_constants(&p, 3);
        assert_eq!(compute_j(&c, SolvabilityMode::Rederived).unwrap(), 3.0);
    }

    #[test]
    fn rejects_the_zeroth_radial_index() {
        assert!(matches!(
            level(&defaults(), 0, 0, SolvabilityMode::Rederived),
            Err(Error::InvalidRadialIndex { n: 0 })
        ));
    }

    #[test]
    fn overcritical_attraction_reports_no_bound_channel() {
        // m = 0 with strongly negative well strength drives C2 + 1/4 < 0.
        let p = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, -1.0).unwrap();
        let c = derive_constants(&p, 0);
        match compute_j(&c, SolvabilityMode::Rederived) {
            Err(Error::NoBoundChannel { m: 0, discriminant }) => {
                assert!(discriminant < 0.0);
            }
            other => panic!("expected NoBoundChannel, got {other:?}"),
        }
    }

    #[test]
    fn envelope_constants_satisfy_their_defining_identities() {
        for &(v0, a, radius, m) in
            &[(1.0, 1.0, 1.0, 0u32), (0.5, 0.5, 2.0, 1), (2.0, 1.0, 2.0, 3)]
        {
            let p = PhysicalParams::new(1.0, 1.0, radius, a, v0).unwrap();
            let c = derive_constants(&p, m);
            for n in 1..=5 {
                let lv = level(&p, m, n, SolvabilityMode::Rederived).unwrap();
                let alpha_defect = (lv.alpha_n * lv.u() - c.c3).abs();
                assert!(
                    alpha_defect <= 2.0 * f64::EPSILON * c.c3.abs().max(1.0),
                    "alpha * U = C3 broken by {alpha_defect}"
                );
                let beta_defect = (lv.beta_n + lv.u() - 1.0).abs();
                assert!(
                    beta_defect <= 2.0 * f64::EPSILON * lv.u().abs().max(1.0),
                    "beta + U = 1 broken by {beta_defect}"
                );
            }
        }
    }

    #[test]
    fn quantization_residual_vanishes_on_physical_levels() {
        for &(v0, m) in &[(1.0, 0u32), (0.5, 1), (2.0, 2)] {
            let p = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, v0).unwrap();
            for n in 1..=6 {
                let lv = level(&p, m, n, SolvabilityMode::Rederived).unwrap();
                let res = quantization_residual(n, lv.beta_n, lv.j);
                assert!(res < 1e-11 * lv.u().powi(2).max(1.0), "n={n} residual {res}");
            }
        }
    }

    #[test]
    fn quantization_residual_detects_a_wrong_envelope() {
        let lv = level(&defaults(), 0, 2, SolvabilityMode::Rederived).unwrap();
        assert!(quantization_residual(2, lv.beta_n + 0.1, lv.j) > 1e-2);
    }

    #[test]
    fn levels_enumerate_in_energy_order() {
        let p = PhysicalParams::new(1.0, 1.0, 2.0, 0.8, 1.7).unwrap();
        let levels = enumerate_levels(&p, 1, 8, SolvabilityMode::Rederived).unwrap();
        assert_eq!(levels.len(), 8);
        for w in levels.windows(2) {
            assert!(w[0].energy < w[1].energy);
        }
        // Energies grow with the channel at fixed n (monotone centrifugal term).
        let e_m0 = level(&p, 0, 1, SolvabilityMode::Rederived).unwrap().energy;
        let e_m1 = level(&p, 1, 1, SolvabilityMode::Rederived).unwrap().energy;
        let e_m2 = level(&p, 2, 1, SolvabilityMode::Rederived).unwrap().energy;
        assert!(e_m0 < e_m1 && e_m1 < e_m2);
    }

    #[test]
    fn flat_limit_example_values_for_u_two() {
        // mu = hbar = a = V0 = 1, U = 2: curvature-limit -1/8, literal -1/4.
        let fl = flat_limit_from_u(&defaults(), 2.0);
        assert_eq!(fl.curvature_limit, -0.125);
        assert_eq!(fl.literal, -0.25);
    }

    #[test]
    fn curvature_correction_scales_as_inverse_square_radius() {
        // E_n(R) - E_flat = (hbar^2 / 2 mu R^2) (U^2 - 1 - strength): the
        // product with R^2 must be radius-independent to rounding.
        let mut products = Vec::new();
        for &radius in &[10.0, 20.0, 40.0, 80.0] {
            let p = PhysicalParams::new(1.0, 1.0, radius, 1.0, 1.0).unwrap();
            let lv = level(&p, 0, 1, SolvabilityMode::Rederived).unwrap();
            let fl = flat_limit_energy(&p, 0, 1, SolvabilityMode::Rederived).unwrap();
            products.push((lv.energy - fl.curvature_limit) * radius * radius);
        }
        for w in products.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-12 * w[0].abs());
        }
        // And the gap's log-log slope against R is -2.
        let p10 = PhysicalParams::new(1.0, 1.0, 10.0, 1.0, 1.0).unwrap();
        let p80 = PhysicalParams::new(1.0, 1.0, 80.0, 1.0, 1.0).unwrap();
        let gap10 = level(&p10, 0, 1, SolvabilityMode::Rederived).unwrap().energy
            - flat_limit_energy(&p10, 0, 1, SolvabilityMode::Rederived)
                .unwrap()
                .curvature_limit;
        let gap80 = level(&p80, 0, 1, SolvabilityMode::Rederived).unwrap().energy
            - flat_limit_energy(&p80, 0, 1, SolvabilityMode::Rederived)
                .unwrap()
                .curvature_limit;
        let slope = (gap80.abs() / gap10.abs()).ln() / (8.0f64).ln();
        assert!((-2.000001..=-1.999999).contains(&slope), "slope {slope}");
    }

    #[test]
    fn mode_names_round_trip_through_parsing() {
        assert_eq!(SolvabilityMode::from_str("paper").unwrap(), SolvabilityMode::PaperLiteral);
        assert_eq!(
            SolvabilityMode::from_str("paper_literal").unwrap(),
            SolvabilityMode::PaperLiteral
        );
        assert_eq!(SolvabilityMode::from_str("rederived").unwrap(), SolvabilityMode::Rederived);
        assert!(SolvabilityMode::from_str("exact").is_err());
        assert_eq!(SolvabilityMode::Rederived.to_string(), "rederived");
        assert_eq!(SolvabilityMode::PaperLiteral.to_string(), "paper_literal");
    }

    proptest! {
        #[test]
        fn discriminant_keeps_a_quarter_margin_for_attractive_wells(
            v0 in 0.0f64..6.0,
            a in 0.2f64..3.0,
            radius in 0.2f64..3.0,
            m in 0u32..4,
        ) {
            let p = PhysicalParams::new(1.0, 1.0, radius, a, v0).unwrap();
            let c = derive_constants(&p, m);
            prop_assert!(c.c2 + 0.25 >= 0.25);
            prop_assert!(compute_j(&c, SolvabilityMode::Rederived).is_ok());
        }

        #[test]
        fn jacobi_parameters_are_complex_conjugates(
            v0 in 0.1f64..4.0,
            radius in 0.3f64..3.0,
            n in 1u32..6,
            m in 0u32..3,
        ) {
            let p = PhysicalParams::new(1.0, 1.0, radius, 1.0, v0).unwrap();
            let lv = level(&p, m, n, SolvabilityMode::Rederived).unwrap();
            prop_assert_eq!(lv.jacobi.a_param.re, lv.jacobi.b_param.re);
            prop_assert_eq!(lv.jacobi.a_param.im, -lv.jacobi.b_param.im);
            prop_assert!((lv.jacobi.a_param.re - (lv.beta_n - 1.0)).abs() < 1e-15);
        }
    }
}
