//! Clifford algebras, their morphisms and real representations, orthogonal
//! multiplications, and existence checks for compact Clifford–Klein forms.

pub mod catalog;
pub mod clifford;
pub mod error;
pub mod hurwitz;
pub mod lie;
pub mod linalg;
pub mod morphisms;

pub use error::{Error, Result};
