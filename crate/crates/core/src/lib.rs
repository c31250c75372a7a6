//! Exact computations for eight-dimensional real quadratic division
//! algebras: octonions and vector products, dissident maps and triples,
//! the polynomial lifting of the induced projective map and its degree.
//!
//! Everything is exact over `Q`. The crate is `no_std` and only needs
//! `alloc`.

#![no_std]

extern crate alloc;

pub mod dissident;
pub mod exact;
pub mod lifting;
pub mod octonion;
pub mod qda;
pub mod sample;
