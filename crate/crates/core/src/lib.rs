//! Exact Hecke algebras of weight-2 modular symbols, semi-simplicity
//! certificates, filtered phi-module polygons and Petersson heights.

pub mod arith;
pub mod error;
pub mod exactlin;
pub mod heckealg;
pub mod heights;
pub mod modsym;
pub mod phimod;
pub mod semisimple;
pub mod shell;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/modular-symbols.md")]
    mod modular_symbols {}
    #[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
    mod exact_linear_algebra {}
    #[doc = include_str!("../../../book/src/semisimplicity.md")]
    mod semisimplicity {}
    #[doc = include_str!("../../../book/src/polygons.md")]
    mod polygons {}
    #[doc = include_str!("../../../book/src/discriminants.md")]
    mod discriminants {}
    #[doc = include_str!("../../../book/src/heights.md")]
    mod heights {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
