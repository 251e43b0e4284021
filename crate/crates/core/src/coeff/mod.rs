//! Coefficient field: rational functions in one parameter over the rationals.

pub mod parse;
pub mod qmat;
pub mod poly;
pub mod ratfunc;
pub mod roots;

pub use parse::{parse_ratfunc, parse_rational};
pub use poly::{int, rat, Poly, Rational};
pub use ratfunc::RatFunc;
pub use roots::{rational_roots, RootReport};
