pub mod algebra;
pub mod battery;
pub mod corpus;
pub mod error;
pub mod group;
pub mod hochschild;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod module;
pub mod morita;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    mod contexts {}
    #[doc = include_str!("../../../book/src/hochschild.md")]
    mod hochschild {}
    #[doc = include_str!("../../../book/src/skew.md")]
    mod skew {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
}
