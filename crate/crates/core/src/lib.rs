//! Exact finite models of Grothendieck rings of spaces with finite group
//! actions, higher-order orbifold Euler characteristics, power structures
//! and their motivic refinements for equivariant bundles.

pub mod axioms;
pub mod bundle;
pub mod descriptor;
pub mod error;
pub mod euler;
pub mod grp;
pub mod gset;
pub mod k0;
pub mod limits;
pub mod lpoly;
pub mod power;
pub mod selftest;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use limits::Limits;
