//! Decoding toolkit for stabilizer codes: quaternary belief propagation
//! (BP₄/MBP₄), ordered-statistics post-processing driven by quaternary
//! reliability (OSD₄-w, mOSD₄-w), and a depolarizing-channel Monte Carlo
//! harness with threshold estimation.
//!
//! The probability-carrying pieces are generic over [`Real`] (`f32` or
//! `f64`); the aliases below fix the common `f64` instantiation.
//!
//! ```
//! use bposd_core::codes::surface_code;
//! use bposd_core::pauli_algebra::{syndrome_of, Pauli, PauliVector};
//! use bposd_core::simulator::DecoderConfig;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let code = surface_code(5)?;
//! let pipeline = bposd_core::Pipeline::new(&code, &DecoderConfig::default(), 0.05)?;
//! let error = PauliVector::from_sparse(code.n, &[(6, Pauli::X), (26, Pauli::Z)]);
//! let out = pipeline.decode(&syndrome_of(&code.check, &error)?)?;
//! assert!(!code.is_logical_error(&out.estimate.mul(&error)));
//! # Ok(())
//! # }
//! ```

pub mod bp4;
pub mod codes;
pub mod osd4;
pub mod pauli_algebra;
pub mod scalar;
pub mod simulator;

pub use scalar::Real;

pub type Bp4Decoder = bp4::Bp4Decoder<f64>;
pub type Bp4DecoderF32 = bp4::Bp4Decoder<f32>;
pub type QuaternaryDist = bp4::QuaternaryDist<f64>;
pub type DecodeOutcome = bp4::DecodeOutcome<f64>;
pub type Pipeline = simulator::Pipeline<f64>;
pub type PipelineF32 = simulator::Pipeline<f32>;
