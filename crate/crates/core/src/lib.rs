pub mod calculus;
pub mod diagnostics;
pub mod engine;
pub mod fixtures;
pub mod frontend;
pub mod model;
pub mod names;
pub mod rules;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/expansion.md")]
    mod expansion {}
    #[doc = include_str!("../../../book/src/cls.md")]
    mod cls {}
    #[doc = include_str!("../../../book/src/psys.md")]
    mod psys {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
