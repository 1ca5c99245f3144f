//! Standoff-inspection guidance by geometric look-angle shaping.
//!
//! The crate is `no_std` (with `alloc` for trace buffers) and contains:
//!
//! - [`curve`]: desired standoff paths `d = r(γ)` (circle, ellipse, Lamé curve)
//! - [`glass`]: the tanh shaping law, its closed-form look-angle solution and
//!   the reduced error dynamics / tube-entry analytics
//! - [`arcsine`]: the arcsine look-angle baseline and the heading-matching gain map
//! - [`planar`]: planar engagement simulation with ideal or rate-limited course channels
//! - [`quad`]: a 6DOF quadrotor with the guidance law embedded in a cascaded controller
//!
//! All angles are radians and wrapped into `(-π, π]` with [`angle::wrap`].
#![no_std]

extern crate alloc;

pub mod angle;
pub mod arcsine;
pub mod curve;
mod error;
pub mod glass;
pub mod integrate;
pub mod planar;
pub mod quad;

pub use error::{GuidanceError, SimError};
