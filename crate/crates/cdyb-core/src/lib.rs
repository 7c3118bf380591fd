//! Exact symbolic core: root systems, Chevalley bases, rational functions in
//! exponential variables, sparse tensors over U(g), dynamical r-matrices and
//! the residuals of the coupled dynamical Yang-Baxter and reflection equations.
#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod cartan;
pub mod coeffs;
pub mod env;
pub mod error;
pub mod fold;
pub mod linalg;
pub mod ops;
pub mod perturb;
pub mod radial;
pub mod rational;
pub mod rmat;
pub mod uea;
pub mod verify;

pub use env::Env;
pub use error::{Error, Result};
pub use rational::Rat;
