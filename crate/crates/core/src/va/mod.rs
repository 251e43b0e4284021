//! Vertex algebra presentations, canonical elements and their products.

pub mod check;
pub mod derivation;
pub mod element;
mod engine;
pub mod monomial;
pub mod parse;
pub mod presentation;

pub use check::{check_presentation, jacobi_defect, skew_rhs, PresentationReport};
pub use derivation::{check_lie_action, Derivation};
pub use element::{Element, LambdaPoly};
pub use monomial::{Field, Monomial, Vector};
pub use parse::parse_element;
pub use presentation::{
    tensor_product, trivial, AffineData, BracketTable, Component, Generator, Parameter, VAPresentation,
};
