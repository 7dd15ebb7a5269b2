//! Exact arithmetic for Drinfeld modules over F_q(T): heights, canonical
//! heights, supersingular reduction, auxiliary polynomials and explicit bounds.

pub mod algebra;
pub mod apoly;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod fq;
pub mod heights;
pub mod irreducible;
pub mod ore;
pub mod parse;
pub mod point;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod resultant;
pub mod supersingular;
pub mod transcendence;

pub use apoly::{APoly, Degree};
pub use error::{Error, Result};
pub use fq::Fq;
pub use poly::{KPoly, UPoly, XPoly};
pub use ratfn::RationalFn;
pub use ore::{DrinfeldModule, OrePoly, OreRing};
pub use point::AlgebraicPoint;
