//! Exact polynomial machinery and certificate logic for divisibility of torsion
//! orders of very general complete intersections.
//!
//! The crate is organised bottom-up: [`polyring`] supplies polynomials over
//! `Q(params)`, [`ordering`] graded monomial orders, [`groebner`] division,
//! Buchberger and the closure/isomorphism checks, [`constructions`] the explicit
//! families, and [`certify`] the arithmetic criteria.

pub mod certify;
pub mod constructions;
pub mod error;
pub mod groebner;
pub mod ordering;
pub mod polyring;

pub use error::{Error, Result};
