//! Symbolic Borel half `L+`, its dual `L+^0` and the quantum-double cross
//! relations.
//!
//! `L+` is handled in the extended basis `E(k, m, s) = q^{sN/2} N'^m (a+)^k`
//! with `N' = N - i alpha / gamma`; the generator `A = q^{N/2} a+` is
//! `E(1, 0, 1)` and the dual-basis partners are `e_km = E(k, m, k)`.
//! Functionals are words in the letters of [`DualLetter`], multiplied through
//! the coproduct of `L+`.

mod checks;
mod dual;
mod plus;

pub use checks::{
    dual_bracket_check, dual_hopf_check, pairing_check, pairing_closed_form, pairing_gram,
    quotient_cross_check, straighten_cross, CrossTerm,
};
pub use dual::{DualElement, DualEval, DualLetter};
pub use plus::{Basis, PlusElement, SymCtx, TensorPlus, DEFAULT_DEGREE_CAP};
