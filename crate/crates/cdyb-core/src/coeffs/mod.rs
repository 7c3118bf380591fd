//! The coefficient field: rational functions in `z_k = e^{(gamma_k, lambda)}`.

mod context;
mod exprat;
mod poly;

pub use context::CoeffContext;
pub use exprat::ExpRational;
pub use poly::{render_mono, Mono, Poly};
