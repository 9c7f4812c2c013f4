//! Exact computer algebra for root-of-unity quantum tori and quantum affine
//! spaces: regular and reduced traces, specialization Poisson orders,
//! discriminant ideals and Cayley–Hamilton identities.

pub mod cayham;
pub mod cyclotomic;
pub mod discriminant;
pub mod error;
pub mod lattice;
pub mod parse;
pub mod poisson;
pub mod qtorus;
pub mod groebner;
pub mod report;
pub mod sampling;
pub mod specfile;
pub mod suites;
pub mod trace;

pub use error::{Error, Result};
