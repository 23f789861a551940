//! Physical parameters, sphere geometry, and the Mie potential in its flat
//! and curved forms.
//!
//! The configuration space is a 3-sphere of radius `R` embedded in ℝ⁴ with
//! polar angle `ψ ∈ (0, π)`. The flat chart `r = R·tanψ` maps the half-sphere
//! `ψ < π/2` onto the plane; composing the flat Mie interaction
//! `V(r) = V₀(a²/2r² − a/r)` with that chart produces a trigonometric
//! potential in `ψ` of csc²/cot type. Everything downstream consumes three
//! dimensionless combinations of the inputs:
//!
//! * `C₂ = m(m+1) + μV₀a²/ħ²` — centrifugal strength of channel `m`,
//! * `C₃ = 2μRaV₀/ħ²` — strength of the odd `cotψ` term,
//! * `A = −C₃/2` — the cotangent coupling used by the ladder algebra.

use crate::error::{Error, Result};

/// The dimensional backbone of every formula: `ħ`, `μ`, sphere radius `R`,
/// interaction length `a`, and well-strength `V₀`.
///
/// `V₀` may also be supplied as a well depth `ε` and stiffness `k` via
/// [`PhysicalParams::from_well_depth`], which stores `V₀ = 2εk` canonically.
/// `V₀ = 0` is the free particle on the sphere — accepted, but flagged by
/// [`PhysicalParams::is_free`] so front-ends can note the degenerate case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Reduced Planck constant (action > 0).
    pub hbar: f64,
    /// Reduced mass `μ` (> 0).
    pub mu: f64,
    /// Sphere radius `R` (length > 0).
    pub radius: f64,
    /// Interaction length `a` of the Mie pair (length > 0).
    pub a: f64,
    /// Well strength `V₀` (energy; `V₀ = 2εk` in well-depth form).
    pub v0: f64,
}

impl PhysicalParams {
    /// Validates and builds a parameter set.
    pub fn new(hbar: f64, mu: f64, radius: f64, a: f64, v0: f64) -> Result<Self> {
        let positive = [
            ("hbar", hbar),
            ("mu", mu),
            ("radius", radius),
            ("a", a),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: "must be finite and > 0",
                });
            }
        }
        if !v0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "V0",
                value: v0,
                requirement: "must be finite",
            });
        }
        Ok(Self { hbar, mu, radius, a, v0 })
    }

    /// `ħ = μ = R = a = V₀ = 1`: the dimensionless working point.
    pub fn dimensionless_defaults() -> Self {
        Self { hbar: 1.0, mu: 1.0, radius: 1.0, a: 1.0, v0: 1.0 }
    }

    /// Builds the parameter set from a well depth `ε` and stiffness `k`,
    /// storing `V₀ = 2εk`.
    pub fn from_well_depth(
        hbar: f64,
        mu: f64,
        radius: f64,
        a: f64,
        epsilon_depth: f64,
        k: f64,
    ) -> Result<Self> {
        Self::new(hbar, mu, radius, a, 2.0 * epsilon_depth * k)
    }

    /// True for the free-particle degenerate case `V₀ = 0`.
    pub fn is_free(&self) -> bool {
        self.v0 == 0.0
    }

    /// The curvature energy scale `ħ²/(2μR²)` that prefixes every level.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mu * self.radius * self.radius)
    }

    /// The dimensionless well strength `μV₀a²/ħ²`.
    pub fn dimensionless_strength(&self) -> f64 {
        self.mu * self.v0 * self.a * self.a / (self.hbar * self.hbar)
    }
}

/// A point on S³ in polar coordinates `(ψ, θ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    /// Radial angle `ψ ∈ (0, π)`.
    pub psi: f64,
    /// Polar angle `θ ∈ [0, π]`.
    pub theta: f64,
    /// Azimuth `φ ∈ [0, 2π)`.
    pub phi: f64,
}

impl SpherePoint {
    /// Validates the angular ranges.
    pub fn new(psi: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(psi > 0.0 && psi < std::f64::consts::PI) {
            return Err(Error::OutOfDomain { name: "psi", value: psi, domain: "(0, pi)" });
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::OutOfDomain { name: "theta", value: theta, domain: "[0, pi]" });
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::OutOfDomain { name: "phi", value: phi, domain: "[0, 2*pi)" });
        }
        Ok(Self { psi, theta, phi })
    }
}

/// Cartesian coordinates of a sphere point in the ambient ℝ⁴,
/// `ζ₁² + ζ₂² + ζ₃² + ζ₄² = R²`.
///
/// The pole coordinate is stored last (`zeta[3] = R·cosψ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedPoint {
    /// `(ζ₁, ζ₂, ζ₃, ζ₄)`, each a length.
    pub zeta: [f64; 4],
}

impl EmbeddedPoint {
    /// `ζ₁² + ζ₂² + ζ₃² + ζ₄²`.
    pub fn norm_squared(&self) -> f64 {
        self.zeta.iter().map(|z| z * z).sum()
    }
}

/// The derived channel constants consumed by the spectrum, the oracle, and
/// the ladder algebra. `C₁` is energy-dependent and lives in
/// [`c1_of_energy`]/[`energy_of_c1`] instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// Centrifugal strength `C₂ = m(m+1) + μV₀a²/ħ²`.
    pub c2: f64,
    /// Odd-term strength `C₃ = 2μRaV₀/ħ²`.
    pub c3: f64,
    /// Cotangent coupling `A = −μRaV₀/ħ² = −C₃/2`.
    pub a_const: f64,
    /// Angular quantum number of the channel (enters as `m(m+1)`).
    pub m: u32,
}

/// Flat-space Mie interaction `V(r) = V₀(a²/(2r²) − a/r)`.
///
/// Minimum `−V₀/2` at `r = a`; vanishes from below as `r → ∞`.
pub fn v_flat(r: f64, p: &PhysicalParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::OutOfDomain { name: "r", value: r, domain: "(0, inf)" });
    }
    let x = p.a / r;
    Ok(p.v0 * (0.5 * x * x - x))
}

/// Curved Mie interaction `V(ψ) = V₀((a/(R·tanψ))²/2 − a/(R·tanψ))` on `(0, π)`.
///
/// This is the signed form that enters the Hamiltonian: `tanψ` changes sign
/// at the equator, so the linear term is attractive on the near hemisphere
/// and repulsive on the far one, and the profile has exactly one interior
/// minimum (`−V₀/2` at `cotψ = R/a`). For the mirror-symmetric well profile
/// obtained by composing the flat interaction with the chart distance
/// `r = R·|tanψ|`, see [`v_curved_embedding`].
pub fn v_curved(psi: f64, p: &PhysicalParams) -> Result<f64> {
    if !(psi > 0.0 && psi < std::f64::consts::PI) {
        return Err(Error::SingularPoint { psi });
    }
    // cot(psi) via cos/sin keeps the sign correct on both hemispheres.
    let x = p.a * psi.cos() / (p.radius * psi.sin());
    Ok(p.v0 * (0.5 * x * x - x))
}

/// Mirror-symmetric curved well: the flat interaction evaluated at the chart
/// distance `r = R·|tanψ|`, i.e. `V₀((a/(R|tanψ|))²/2 − a/(R|tanψ|))`.
///
/// Unlike the signed [`v_curved`], this profile is even about the equator and
/// shows the characteristic two-minimum shape (`−V₀/2` at `cotψ = ±R/a`) of
/// the potential drawn over the whole sphere. Plotting front-ends emit this
/// form; the eigenproblem uses the signed form.
pub fn v_curved_embedding(psi: f64, p: &PhysicalParams) -> Result<f64> {
    if !(psi > 0.0 && psi < std::f64::consts::PI) {
        return Err(Error::SingularPoint { psi });
    }
    let x = (p.a * psi.cos() / (p.radius * psi.sin())).abs();
    Ok(p.v0 * (0.5 * x * x - x))
}

/// Chart angle of a flat radius: `ψ = arctan(r/R) ∈ [0, π/2)`.
pub fn psi_of_r(r: f64, radius: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::OutOfDomain { name: "r", value: r, domain: "[0, inf)" });
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: radius,
            requirement: "must be > 0",
        });
    }
    Ok((r / radius).atan())
}

/// Flat radius of a chart angle: `r = R·tanψ`, valid on `[0, π/2)` only
/// (the flat chart covers the half-sphere).
pub fn r_of_psi(psi: f64, radius: f64) -> Result<f64> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&psi) {
        return Err(Error::ChartRange { psi });
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: radius,
            requirement: "must be > 0",
        });
    }
    Ok(radius * psi.tan())
}

/// Embeds a sphere point into ℝ⁴:
/// `(R sinψ sinθ cosφ, R sinψ sinθ sinφ, R sinψ cosθ, R cosψ)`.
pub fn embed(pt: &SpherePoint, radius: f64) -> EmbeddedPoint {
    let (s_psi, c_psi) = pt.psi.sin_cos();
    let (s_th, c_th) = pt.theta.sin_cos();
    let (s_ph, c_ph) = pt.phi.sin_cos();
    EmbeddedPoint {
        zeta: [
            radius * s_psi * s_th * c_ph,
            radius * s_psi * s_th * s_ph,
            radius * s_psi * c_th,
            radius * c_psi,
        ],
    }
}

/// Computes the channel constants `C₂`, `C₃`, `A` for angular quantum
/// number `m`.
pub fn derive_constants(p: &PhysicalParams, m: u32) -> DerivedConstants {
    let mf = f64::from(m);
    let strength = p.dimensionless_strength();
    let c3 = 2.0 * p.mu * p.radius * p.a * p.v0 / (p.hbar * p.hbar);
    DerivedConstants {
        c2: mf * (mf + 1.0) + strength,
        c3,
        a_const: -0.5 * c3,
        m,
    }
}

/// Energy-dependent constant `C₁ = (2μR²/ħ²)·(E + a²V₀/(2R²))`.
pub fn c1_of_energy(energy: f64, p: &PhysicalParams) -> f64 {
    (energy + p.a * p.a * p.v0 / (2.0 * p.radius * p.radius)) / p.energy_scale()
}

/// Inverse of [`c1_of_energy`]: `E = C₁·ħ²/(2μR²) − a²V₀/(2R²)`.
pub fn energy_of_c1(c1: f64, p: &PhysicalParams) -> f64 {
    c1 * p.energy_scale() - p.a * p.a * p.v0 / (2.0 * p.radius * p.radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn defaults() -> PhysicalParams {
        PhysicalParams::dimensionless_defaults()
    }

    #[test]
    fn flat_potential_bottoms_out_at_minus_half_well_strength() {
        let p = defaults();
        assert_eq!(v_flat(p.a, &p).unwrap(), -0.5 * p.v0);
        // r = a/2 is the inner zero crossing: a²/(2r²) = 2 cancels a/r = 2.
        assert_eq!(v_flat(0.5, &p).unwrap(), 0.0);
    }

    #[test]
    fn flat_potential_vanishes_from_below_at_large_radius() {
        let p = defaults();
        let v = v_flat(1.0e9, &p).unwrap();
        assert!(v < 0.0 && v.abs() < 1.0e-8, "got {v}");
    }

    #[test]
    fn flat_potential_rejects_nonpositive_radius() {
        let p = defaults();
        assert!(v_flat(0.0, &p).is_err());
        assert!(v_flat(-1.0, &p).is_err());
    }

    #[test]
    fn flat_minimum_sits_at_the_interaction_length() {
        // Derivative changes sign from negative to positive across r = a.
        let p = defaults();
        let dv = |r: f64| (v_flat(r + 1e-7, &p).unwrap() - v_flat(r - 1e-7, &p).unwrap()) / 2e-7;
        assert!(dv(p.a - 1e-3) < 0.0);
        assert!(dv(p.a + 1e-3) > 0.0);
    }

    #[test]
    fn curved_potential_vanishes_at_the_equator() {
        let p = defaults();
        assert!(v_curved(FRAC_PI_2, &p).unwrap().abs() < 1e-16);
        assert!(v_curved_embedding(FRAC_PI_2, &p).unwrap().abs() < 1e-16);
    }

    #[test]
    fn curved_potential_matches_flat_through_the_chart() {
        let p = PhysicalParams::new(1.0, 1.0, 2.0, 0.7, 1.3).unwrap();
        for i in 1..200 {
            let psi = FRAC_PI_2 * f64::from(i) / 200.0;
            let flat = v_flat(r_of_psi(psi, p.radius).unwrap(), &p).unwrap();
            let curved = v_curved(psi, &p).unwrap();
            assert!(
                (flat - curved).abs() <= 1e-13 * (1.0 + flat.abs()),
                "psi={psi}: flat={flat} curved={curved}"
            );
        }
    }

    #[test]
    fn curved_potential_at_quarter_turn_is_minus_half() {
        let p = defaults();
        let v = v_curved(FRAC_PI_4, &p).unwrap();
        assert!((v - (-0.5)).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn curved_potential_rejects_poles() {
        let p = defaults();
        assert!(matches!(v_curved(0.0, &p), Err(Error::SingularPoint { .. })));
        assert!(matches!(v_curved(PI, &p), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn flat_limit_recovers_flat_potential_quadratically_in_curvature() {
        // Identify a geodesic distance r with the arc angle psi = r/R. The
        // tangent chart makes the two forms agree identically, so the
        // curvature correction shows up only through this identification:
        // |v_curved(r/R) - v_flat(r)| ~ R^{-2} at fixed r.
        let p0 = defaults();
        let r = 1.37;
        let errs: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&radius| {
                let p = PhysicalParams::new(1.0, 1.0, radius, p0.a, p0.v0).unwrap();
                (v_curved(r / radius, &p).unwrap() - v_flat(r, &p).unwrap()).abs()
            })
            .collect();
        let slope01 = (errs[1] / errs[0]).ln() / (10.0f64).ln();
        let slope12 = (errs[2] / errs[1]).ln() / (10.0f64).ln();
        assert!((-2.3..=-1.7).contains(&slope01), "slope {slope01}");
        assert!((-2.3..=-1.7).contains(&slope12), "slope {slope12}");
    }

    #[test]
    fn signed_well_has_one_minimum_and_mirror_well_has_two() {
        // Scan 10^4 interior points and count strict local minima.
        let p = defaults();
        let n = 10_000;
        let count_minima = |f: &dyn Fn(f64) -> f64| {
            let vals: Vec<f64> = (1..n).map(|i| f(PI * i as f64 / n as f64)).collect();
            vals.windows(3)
                .filter(|w| w[1] < w[0] && w[1] < w[2])
                .count()
        };
        let signed = count_minima(&|psi| v_curved(psi, &p).unwrap());
        let mirror = count_minima(&|psi| v_curved_embedding(psi, &p).unwrap());
        assert_eq!(signed, 1, "signed form must have a single interior minimum");
        assert_eq!(mirror, 2, "mirror form must show the two-well shape");
    }

    #[test]
    fn chart_maps_are_mutually_inverse() {
        assert_eq!(psi_of_r(0.0, 2.0).unwrap(), 0.0);
        assert!((psi_of_r(2.0, 2.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        for i in 0..50 {
            let r = 0.1 + f64::from(i) * 0.37;
            let back = r_of_psi(psi_of_r(r, 3.0).unwrap(), 3.0).unwrap();
            assert!((back - r).abs() < 1e-12 * r.max(1.0));
        }
        assert!(matches!(r_of_psi(FRAC_PI_2, 1.0), Err(Error::ChartRange { .. })));
        assert!(matches!(r_of_psi(1.7, 1.0), Err(Error::ChartRange { .. })));
    }

    #[test]
    fn embedding_hits_the_marked_axes() {
        let eq = embed(&SpherePoint::new(FRAC_PI_2, FRAC_PI_2, 0.0).unwrap(), 2.5);
        assert!((eq.zeta[0] - 2.5).abs() < 1e-15);
        assert!(eq.zeta[1].abs() < 1e-15 && eq.zeta[2].abs() < 1e-15 && eq.zeta[3].abs() < 1e-9);

        // psi -> 0 approaches the pole (0, 0, 0, R).
        let pole = embed(&SpherePoint::new(1e-12, 1.0, 2.0).unwrap(), 2.5);
        assert!((pole.zeta[3] - 2.5).abs() < 1e-12);
        assert!(pole.zeta[0].abs() < 1e-11 && pole.zeta[1].abs() < 1e-11);
    }

    #[test]
    fn embedding_norm_is_the_sphere_radius_for_ten_thousand_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let radius = 1.9;
        for _ in 0..10_000 {
            let pt = SpherePoint::new(
                rng.gen_range(1e-6..PI - 1e-6),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * PI - 1e-9),
            )
            .unwrap();
            let e = embed(&pt, radius);
            assert!((e.norm_squared() - radius * radius).abs() <= 1e-12 * radius * radius);
        }
    }

    #[test]
    fn derived_constants_match_direct_substitution() {
        let p = defaults();
        let c = derive_constants(&p, 0);
        assert_eq!(c.c2, 1.0);
        assert_eq!(c.c3, 2.0);
        assert_eq!(c.a_const, -1.0);

        let p2 = PhysicalParams::new(1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        let c2 = derive_constants(&p2, 1);
        assert_eq!(c2.c2, 3.0);
        assert_eq!(c2.c3, 4.0);
        assert_eq!(c2.a_const, -2.0);
    }

    #[test]
    fn energy_shift_cancels_at_the_reference_point() {
        let p = defaults();
        let e_ref = -p.a * p.a * p.v0 / (2.0 * p.radius * p.radius);
        assert_eq!(c1_of_energy(e_ref, &p), 0.0);
        assert_eq!(c1_of_energy(0.0, &p), 1.0);
    }

    #[test]
    fn well_depth_form_stores_twice_epsilon_k() {
        let p = PhysicalParams::from_well_depth(1.0, 1.0, 1.0, 1.0, 0.75, 2.0).unwrap();
        assert_eq!(p.v0, 3.0);
        assert!(!p.is_free());
        let free = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(free.is_free());
    }

    #[test]
    fn rejects_nonpositive_backbone_parameters() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, 1.0, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn c3_is_always_minus_twice_a(
            mu in 0.1f64..10.0,
            radius in 0.1f64..10.0,
            a in 0.1f64..10.0,
            v0 in -5.0f64..5.0,
        ) {
            let p = PhysicalParams::new(1.0, mu, radius, a, v0).unwrap();
            let c = derive_constants(&p, 2);
            prop_assert_eq!(c.c3, -2.0 * c.a_const);
        }

        #[test]
        fn c1_energy_round_trip(
            e in -100.0f64..100.0,
            radius in 0.1f64..10.0,
            v0 in -5.0f64..5.0,
        ) {
            let p = PhysicalParams::new(1.0, 1.0, radius, 1.0, v0).unwrap();
            let back = energy_of_c1(c1_of_energy(e, &p), &p);
            prop_assert!((back - e).abs() <= 1e-14 * e.abs().max(1.0));
        }

        #[test]
        fn chart_consistency_everywhere_on_the_near_hemisphere(
            psi in 1e-3f64..(FRAC_PI_2 - 1e-3),
            a in 0.2f64..3.0,
            radius in 0.2f64..3.0,
            v0 in 0.1f64..4.0,
        ) {
            let p = PhysicalParams::new(1.0, 1.0, radius, a, v0).unwrap();
            let flat = v_flat(r_of_psi(psi, radius).unwrap(), &p).unwrap();
            let curved = v_curved(psi, &p).unwrap();
            prop_assert!((flat - curved).abs() <= 1e-12 * (1.0 + flat.abs()));
        }
    }
}
