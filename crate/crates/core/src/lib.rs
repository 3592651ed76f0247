//! Radial atomic-structure laboratory.
//!
//! Everything here lives on a shared logarithmic radial grid in atomic
//! (Hartree) units. The crate provides
//!
//! - spherically symmetric electrostatics: Newton potentials, screened
//!   nuclear potentials, the Coulomb inner product and norm, radial
//!   smearing convolutions, and charge radii ([`electrostatics`], [`smear`]);
//! - Thomas-Fermi atoms (neutral, ionic, and the exterior problem posed on
//!   `r >= r_cut`) together with the Sommerfeld tail bounds ([`tf`]);
//! - a Numerov bound-state eigensolver per angular-momentum channel with
//!   3-d spectrum assembly and Cwikel-Lieb-Rozenblum / Lieb-Thirring
//!   eigenvalue-bound checks ([`schrodinger`]);
//! - restricted (central-field) Hartree-Fock with exact exchange through
//!   Slater screening integrals ([`hf`]);
//! - semiclassical phase-space energies and two-sided eigenvalue-sum
//!   bounds ([`semiclassics`]);
//! - an orchestration layer that sweeps nuclear charges and emits
//!   machine-readable bound reports ([`verify`]).
//!
//! The crate is `no_std`-compatible (allocation required): disable the
//! default `std` feature to build against `core` + `alloc` with math
//! routed through `libm`. Solvers are pure functions of immutable inputs,
//! so independent solves may run concurrently.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub(crate) mod num;

pub mod error;
pub mod grid;
pub mod radial;
pub mod electrostatics;
pub mod smear;
pub mod report;
pub mod prng;
pub mod tf;
pub mod schrodinger;
pub mod hf;
pub mod semiclassics;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{NumericsSettings, RadialGrid};
pub use radial::{ChargeProfile, Meaning, RadialFunction};
pub use report::{BoundReport, Sample, Verdict};
