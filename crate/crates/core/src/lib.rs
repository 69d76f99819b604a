//! Frobenius powers, saturations and graded degree bounds for homogeneous
//! ideals over prime fields.
//!
//! The crate is organised bottom-up: exact arithmetic ([`field`],
//! [`monomial`], [`poly`]), the Gröbner engine ([`groebner`]), ideal calculus
//! in graded quotients `R = S/K` ([`ideal`]), degreewise linear algebra
//! ([`graded`]), and the experiment drivers ([`lc`], [`linkage`],
//! [`tight_closure`]).

pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod ideal;
pub mod lc;
pub mod linkage;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod tight_closure;

pub use error::{Error, Result};
pub use field::Zp;
pub use groebner::{buchberger, gb_membership, GroebnerBasis};
pub use ideal::{CombineOp, HilbertTable, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{ArithOp, PolyRing, Polynomial};
pub use ring::Ring;
