//! Two-term silting complexes over finite-dimensional algebras, computed
//! with exact linear algebra over `F_p` or `Q`.

pub mod algebra;
pub mod complex;
pub mod dg;
pub mod endo;
pub mod error;
pub mod heart;
pub mod linalg;
pub mod project;
pub mod suite;
pub mod torsion;

pub use error::{Error, Result};
