//! Clocked Böhm, Lévy-Longo and Berarducci trees for the untyped λ-calculus.

pub mod error;
pub mod term;

pub use error::{Error, Result};
pub use term::{parse, DefinitionTable, Position, Term};
pub mod reduction;
pub mod trees;
pub mod compare;
pub mod fpc;
pub mod repro;

/// The book chapters, compiled as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/terms.md")]
    struct Terms;
    #[doc = include_str!("../../../book/src/clocked-trees.md")]
    struct ClockedTrees;
    #[doc = include_str!("../../../book/src/atomic-clocks.md")]
    struct AtomicClocks;
    #[doc = include_str!("../../../book/src/discrimination.md")]
    struct Discrimination;
    #[doc = include_str!("../../../book/src/fpc.md")]
    struct Fpc;
    #[doc = include_str!("../../../book/src/repro.md")]
    struct Repro;
}
