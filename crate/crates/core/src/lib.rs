pub mod bodies;
pub mod cli;
pub mod cone;
pub mod deficits;
pub mod error;
pub mod interval;
pub mod linalg;
pub mod lorentz;
pub mod matroid;
pub mod numdim;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
