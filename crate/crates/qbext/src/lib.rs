//! Exact symbolic computation in the bosonic extension of a finite-type
//! quantum group: Laurent/fraction scalar arithmetic, Cartan data and root
//! combinatorics, Weyl-group and positive-braid (Garside) machinery, the
//! algebra of level-graded generators `f[i,p]` with its canonical normal
//! form and bilinear form, braid-group operators, and PBW bases.

pub mod algebra;
pub mod braid;
pub mod braidaction;
pub(crate) mod cache;
pub mod cartan;
pub mod pbw;
pub mod verify;
pub mod coeffs;
pub mod error;
pub mod weyl;

pub use algebra::{Algebra, Elem, Letter, SliceBasis, Word};
pub use braid::{BraidWord, GarsideForm};
pub use cartan::{CartanDatum, CartanType, Root};
pub use coeffs::{Frac, LaurentScalar};
pub use error::{QbError, QbResult};
pub use weyl::WeylElement;
