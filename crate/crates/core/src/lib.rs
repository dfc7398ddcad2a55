//! Exact construction, certification and classification of the rational
//! solutions of `P(z) y'' = c y` whose zeros and poles, and those of their
//! derivatives, are all real.
//!
//! The algebra ([`poly`], [`sturm`], [`ratfun`]) is generic over the scalar
//! type; everything else works over exact rationals through the aliases
//! below.

pub mod classifier;
pub mod error;
pub mod expr;
pub mod families;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod scalar;
pub mod sturm;
pub mod tables;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::{int, parse_rat, rat, ExactField, Rat, Scalar};

/// Polynomial over exact rationals.
pub type Poly = poly::Polynomial<Rat>;
/// Reduced rational function over exact rationals.
pub type RatFun = ratfun::RationalFunction<Rat>;
pub type SturmChain = sturm::SturmChain<Rat>;
pub type RootCertificate = sturm::RootCertificate<Rat>;
pub type RootInterval = sturm::RootInterval<Rat>;
pub type Mobius = ratfun::Mobius<Rat>;
