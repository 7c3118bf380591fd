//! Sparse tensor algebra over U(g): PBW words and multi-leg elements.

mod tensor;
mod word;

pub use tensor::{Acc, Key, Tensor};
pub use word::{insert_cartan, is_ordered, normal_order, render, weight, Word};
