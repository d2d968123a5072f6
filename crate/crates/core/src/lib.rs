//! Graded K-theory of graph C*-algebras computed over exact integers,
//! together with the P-graph combinatorics (products, skew products,
//! crossed products, Z/2-valued cocycles) that produce the examples.

pub mod cli;
pub mod cocycle;
pub mod error;
pub mod fgab;
pub mod gallery;
pub mod gradedk;
pub mod json;
pub mod pgraph;
pub mod zmat;

pub use error::{Error, Result};
