//! Bound states of a Mie-type molecular potential on the three-sphere.
//!
//! A particle of reduced mass `μ` lives on a sphere S³ of radius `R`
//! (constant positive curvature). In the polar chart `r = R·tanψ` the flat
//! Kratzer/Mie interaction `V(r) = V₀(a²/2r² − a/r)` becomes a trigonometric
//! potential in the angle `ψ ∈ (0, π)`, and the radial Schrödinger equation
//! stays exactly solvable: energies are closed-form in a radial index `n`,
//! eigenfunctions are Jacobi polynomials of complex parameters evaluated on
//! the imaginary axis, and the level structure is generated by an so(2,1)
//! ladder algebra.
//!
//! The crate has two halves that deliberately know nothing about each other's
//! algebra, so they can arbitrate:
//!
//! * the **analytic side** — [`model`] (parameters, geometry, potentials),
//!   [`specfun`] (complex-parameter Jacobi polynomials), [`spectrum`]
//!   (closed-form energies in two rival conventions), [`wavefunction`]
//!   (stable eigenfunction evaluation and normalization), and [`algebra`]
//!   (factorization, ladder operators, Casimir checks);
//! * the **numerical side** — [`oracle`], a finite-difference
//!   Sturm–Liouville eigensolver (Sturm-sequence bisection plus inverse
//!   iteration) that discretizes the radial equation directly and never
//!   consumes a closed-form energy.
//!
//! [`verification`] runs both sides against each other and reports which
//! closed-form convention survives; [`parallel`] provides the data-parallel
//! driver used by sweeps and the verification grid (rayon behind the
//! `parallel` feature, with a sequential fallback).

pub mod algebra;
pub mod error;
pub mod model;
pub mod oracle;
pub mod parallel;
pub mod specfun;
pub mod spectrum;
pub mod verification;
pub mod wavefunction;

pub use error::{Error, Result};
