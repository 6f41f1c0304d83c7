//! Metric projections onto closed balls and second-order cones in R^m,
//! their Fréchet and Gâteaux derivatives with full region analysis, and
//! independent numerical oracles for checking them.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use metproj_core::{ball::Ball, Vector};
//!
//! let ball = Ball::origin(2, 1.0).unwrap();
//! let x = Vector::from_slice(&[2.0, 0.0]).unwrap();
//! assert_eq!(ball.project(&x).unwrap().as_slice(), &[1.0, 0.0]);
//! let d = ball.frechet_derivative(&x, 1e-9).unwrap();
//! assert_eq!(d.operator().unwrap().as_matrix().rows(), vec![vec![0.0, 0.0], vec![0.0, 0.5]]);
//! ```
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod ball;
mod error;
mod linalg;
mod linop;
pub mod soc;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{orthogonal_part, radial_coefficient, Matrix, Vector};
pub use linop::{Frechet, LinOp, OpForm};
