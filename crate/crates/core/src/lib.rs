//! Exact census of intersections of plane curves over small finite fields.

pub mod classify;
pub mod classnum;
pub mod closed_forms;
pub mod codes;
pub mod configs;
pub mod engine;
pub mod enumerator;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod mask;
pub mod verify;

pub use codes::{build_code, dual_code, CodeKind, Codeword, Evaluation, LinearCode};
pub use error::{Error, Result};
pub use geometry::{HomogeneousForm, Plane, ProjectiveCurveClass, ProjectivePoint};
pub use gf::{Extension, Field, FieldElement};
pub use mask::SupportMask;
