//! Gröbner-Shirshov bases in free associative algebras, applied to
//! presentations of Schreier extensions and HNN extensions of groups.
//!
//! The crate is layered bottom-up: [`word`] (letters, words, polynomials),
//! [`order`] (deg-lex, tower and HNN orders), [`engine`] (compositions,
//! reduction, completion), [`group`] (finite groups and their data),
//! then the two applications [`schreier`] and [`hnn`].

pub mod engine;
pub mod group;
pub mod hnn;
pub mod order;
pub mod schreier;
pub mod word;
