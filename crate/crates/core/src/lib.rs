//! Exact evaluation of obstruction-design invariants of tensors, and signed
//! enumeration of Latin cubes and squares.
//!
//! An obstruction design is a finite set of boxes in `Z₊ᵏ`. Cutting it into
//! slices along each axis gives a polynomial on `k`-fold tensors: label the
//! boxes with rank-one summands, take one determinant per slice, and sum over
//! all labelings. The crate evaluates these polynomials on
//! matrix-multiplication, unit and Vandermonde tensors with exact integer
//! and rational arithmetic.
//!
//! ```
//! use obstruction::valuation::{evaluate_matmul, SearchOptions};
//!
//! let f = evaluate_matmul(2, 2, 2, &SearchOptions::default()).unwrap();
//! assert_eq!(f.classes.len(), 3);
//! assert_eq!(f.oriented_value, 864.into());
//! ```

mod budget;
mod checkpoint;
pub mod count;
pub mod design;
pub mod error;
pub mod latin;
pub mod kron;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod run;
pub mod sample;
pub mod serde_big;
pub mod tensor;
pub mod valuation;
pub mod verify;

pub use count::SignedCount;
pub use design::{Diagonal, DesignSpec, ObstructionDesign};
pub use error::{Error, Result};
pub use partition::Partition;
pub use tensor::TensorDecomposition;

// The guide's snippets run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/designs.md")]
    mod designs {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/matmul.md")]
    mod matmul {}
    #[doc = include_str!("../../../book/src/latin.md")]
    mod latin {}
    #[doc = include_str!("../../../book/src/kronecker.md")]
    mod kronecker {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/reproducing.md")]
    mod reproducing {}
}
