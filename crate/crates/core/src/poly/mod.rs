//! Exact arithmetic: rationals, the ground fields Q and Q(t), variables,
//! monomials, sparse polynomials and term orders.

pub mod ground;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod upoly;
pub mod var;

pub use ground::{GroundElement, GroundField, RatFunc};
pub use monomial::Monomial;
pub use num_rational::BigRational as Rational;
pub use order::MonomialOrder;
pub use polynomial::Polynomial;
pub use upoly::UPoly;
pub use var::Var;
