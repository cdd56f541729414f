//! Exact computation of Gerstenhaber brackets on the cohomology of finite
//! dimensional Hopf algebras through homotopy lifting on a projective
//! resolution of the trivial module.

pub mod error;
pub mod exactla;
pub mod functor;
pub mod bracket;
pub mod complexes;
pub mod hopf;
pub mod resolutions;
pub mod report;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Elem, Field, FieldSpec, Scalar};
