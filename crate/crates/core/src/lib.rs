pub mod algebra;
pub mod assembly;
pub mod error;
pub mod higgs;
pub mod io;
pub mod label;

pub use error::{Error, Result};
pub mod polytope;
pub mod sample;
pub mod stability;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/higgs.md")]
    mod higgs {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/assembly.md")]
    mod assembly {}
}
