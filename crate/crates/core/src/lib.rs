//! Exact computation of the minimal degree of a morphism from a curve to an
//! elliptic curve with complex multiplication, through the Rosati lattice of
//! `Hom(J(X), E)`, together with the explicit bounds that control it.
//!
//! - [`cm_algebra`]: imaginary quadratic orders and Hermitian forms over them.
//! - [`lattice`]: Gram-matrix lattices, LLL, enumeration, minima and cosets.
//! - [`rosati`]: the Rosati form on `O^r` and the minimal degree `μ`.
//! - [`bounds`]: `κ`, discriminant and covolume bounds, certification.
//! - [`cli`]: instance files, reports and the property battery behind the
//!   `mindeg` binary.

pub mod bounds;
pub mod cli;
pub mod cm_algebra;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod rosati;

pub use bounds::{certify, CertificationReport, CurveBoundData, LogValue};
pub use cm_algebra::{HermitianForm, Order, OrderElement};
pub use error::{Error, Result};
pub use lattice::{GramLattice, SubgroupCoset};
pub use rosati::{minimal_degree, CaseTag, DegreeResult, DegreeValue, HomInstance};
