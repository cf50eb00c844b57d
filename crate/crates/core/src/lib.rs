//! Energy-preserving Oren-Nayar (EON) diffuse reflectance.
//!
//! The crate evaluates the QON, FON and EON rough-diffuse BRDFs with their
//! analytic albedos, importance samples EON with clipped linearly transformed
//! cosines (CLTC) combined with a uniform lobe, and ships the numerical
//! oracles used to check all of it: hemispherical quadrature, sampler
//! statistics, a chi-square sampler test, furnace tests and a small sphere
//! path tracer.

pub mod bench;
pub mod brdf;
pub mod cli;
mod atomic;
mod error;
pub mod math;
pub mod render;
pub mod sampling;
mod spectrum;
pub mod validation;

pub use brdf::{AlbedoFlavor, FonRoughness, Material, Model, QonRoughness, QonVariant};
pub use error::{Error, Result};
pub use math::{Direction, Vec3};
pub use spectrum::Spectrum;
