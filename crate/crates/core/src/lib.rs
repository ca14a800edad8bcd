pub mod exactlin;
pub mod fingroup;
pub mod cochain;
pub mod barcomplex;
pub mod mpcomplex;
pub mod kac;
pub mod cosimplicial;
pub mod liecohomology;
pub mod cli;

/// The guide in `book/`, compiled here so its code blocks run as doctests.
#[doc(hidden)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod chapter0 {}
    #[doc = include_str!("../../../book/src/groups.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/group-cohomology.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/matched-pairs.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/kac.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/lie.md")]
    pub mod chapter6 {}
    #[doc = include_str!("../../../book/src/cosimplicial.md")]
    pub mod chapter7 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod chapter8 {}
}
