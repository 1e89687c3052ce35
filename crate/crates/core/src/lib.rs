//! A unitary 2-dimensional TQFT on decorated cobordisms, built from the
//! Temperley–Lieb subfactor planar algebra with exact rational arithmetic,
//! together with the reverse direction: recovering the planar algebra from the
//! functor.

pub mod cobordism;
pub mod colors;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod reconstruct;
mod strands;
pub mod suites;
pub mod tangle;
pub mod tl_backend;
pub mod tqft;

pub use colors::{BaseColor, Color, ObjectSignature};
pub use linalg::{RationalMatrix, Q};
pub use tl_backend::{DualTLElement, Modulus, TLDiagram, TLElement, TemperleyLieb};
