//! Exact computations around Nakajima quiver varieties.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactalg`]: exact fields and dense linear algebra.
//! - [`quiver`]: quivers, their doubles and framings, adjacency and Cartan
//!   matrices, closed-form dimension counts.
//! - [`roots`]: root combinatorics, regularity of parameters, component
//!   analysis of preprojective fibers, weights and multiplicities.
//! - [`reps`]: concrete representations, moment maps, stability.
//! - [`adhm`]: the Jordan quiver with one-dimensional framing, i.e. the
//!   Hilbert scheme of points in the plane and Calogero–Moser space.
//! - [`mckay`]: McKay quivers of finite subgroups of SL₂.
//! - [`convolution`]: convolution algebras of kernels on finite sets.
//! - [`acceptance`]: the end-to-end checks run by `qv selftest`.
//!
//! A guide with worked examples lives in the `book/` directory of the
//! repository; its code listings are compiled as doc-tests of this crate.

pub mod acceptance;
pub mod adhm;
pub mod convolution;
mod error;
pub mod exactalg;
pub mod mckay;
pub mod quiver;
pub mod reps;
pub mod roots;

pub use error::{Error, Result};
pub use exactalg::{FieldSpec, Mat, Scalar};
pub use quiver::{DimVector, Quiver};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/hilbert.md")]
    mod hilbert {}
    #[doc = include_str!("../../../book/src/mckay.md")]
    mod mckay {}
    #[doc = include_str!("../../../book/src/convolution.md")]
    mod convolution {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
