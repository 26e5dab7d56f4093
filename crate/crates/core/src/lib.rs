//! Affine symplectic Grassmann codes over small finite fields.

pub mod code;
pub mod combinatorics;
pub mod dual;
pub mod error;
pub mod field;
pub mod io;
pub mod lemmas;
pub mod linalg;
pub mod minors;
pub mod poly;
pub mod symmetric;
pub mod weights;

pub use code::{LinearCode, Mode, Variant};
pub use error::{Error, Result};
pub use field::GaloisField;
pub use minors::MinorCombination;
pub use symmetric::{Matrix, MinorPair, SymMatrix, DEFAULT_BUDGET};
