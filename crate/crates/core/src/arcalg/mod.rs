//! The signed arc algebra: basis, surgery and multiplication.

pub mod algebra;
pub mod rules;
pub mod surgery;

pub use algebra::{basis, idempotent, mult_basis, mult_basis_with, unit, ArcElement, BasisDiagram};
pub use surgery::{
    classify_reverse, classify_surgery, collapse, is_reflected_c, leftmost_pair, reduce_layer, reduce_layer_with, reverse_step,
    reverse_surgery, surgery, surgery_step, surgery_step_strict, SurgeryKind, Terms,
};
