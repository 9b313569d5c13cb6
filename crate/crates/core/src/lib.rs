//! Exact torus localization for genus-zero real Gromov-Witten invariants of
//! `P^(2M-1)` with conjugate pairs of point-class insertions.

pub mod error;
pub mod euler;
pub mod exactmath;
pub mod graphgen;
pub mod localizer;
pub mod verify;
pub mod modulipoint;
pub mod weights;

pub use error::{Error, Result};
