//! Counting and polynomial bookkeeping for SL(2)-character varieties of an
//! elliptic curve with two marked points.
//!
//! The crate has two independent halves that meet in [`polyfit`]:
//!
//! * an exact counting engine over prime fields ([`field`], [`sl2`],
//!   [`classes`], [`count`]) that computes the number of `F_p`-points of the
//!   solution sets `{(A, B, C1, C2) : [A,B] C1 C2 = Id}` and their slices, with
//!   a fast class-function path and a brute-force oracle;
//! * a symbolic layer ([`poly`], [`strata`], [`hodge`]) that rebuilds every
//!   stratified E-polynomial sum, the quotient polynomials and the compactly
//!   supported Hodge tables compatible with a Poincaré polynomial.
//!
//! The crate is `no_std` (with `alloc`) when built without the `std` feature.
//! The `parallel` feature partitions enumeration domains across rayon workers;
//! results are identical to the sequential path.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classes;
pub mod count;
pub mod error;
pub mod field;
pub mod hodge;
mod par;
pub mod poly;
pub mod polyfit;
pub mod sl2;
pub mod strata;

pub use classes::{ClassKind, ClassLabel, ClassTable, GeometricClassSpec};
pub use count::{
    ClassDistribution, CountEngine, CountMethod, CountRecord, FiberTarget, Limits, TargetSpec,
    ZbarCase, ZbarRegime,
};
pub use error::{Error, Result};
pub use field::{FieldElement, Prime, SquareClass};
pub use hodge::{BettiVector, HodgeOptions, HodgeTable};
pub use poly::EPolynomial;
pub use polyfit::{FitReport, FitStatus};
pub use sl2::Sl2Element;
pub use strata::{CaseId, CaseResult};
