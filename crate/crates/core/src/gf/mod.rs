//! Finite-field tower F_p ⊂ F_q ⊂ F_{q^n} and number-theoretic helpers.

mod fp_linalg;
mod fp_poly;
pub mod numtheory;
mod tower;

pub use numtheory::{gcd_power, number_theory, NumberTheory};
pub use tower::{
    build_field, FieldElement, FieldTower, TablePolicy, TowerOptions, DEFAULT_TABLE_BUDGET, MAX_FIELD_ORDER,
};
pub(crate) use fp_linalg::rank as fp_rank;
