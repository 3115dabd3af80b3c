//! Lunardon–Polverino scattered linear sets on the projective line PG(1, q^n).
//!
//! The crate is organized bottom-up:
//!
//! * [`gf`]: the field tower F_p ⊂ F_q ⊂ F_{q^n}, norms, traces, Frobenius
//!   and a few integer helpers.
//! * [`linpoly`]: q-polynomials as F_q-linear maps of F_{q^n}.
//! * [`linset`]: linear sets, weights, and the action of PΓL(2, q^n).
//! * [`equiv`]: closed-form equivalence and automorphism groups of LP sets,
//!   next to exhaustive searches over PΓL(2, q^n).
//! * [`census`]: the number Λ(n, q) of inequivalent LP sets, its bounds and
//!   its oracles.
//! * [`verify`]: the invariant sweeps driven by the CLI and the acceptance suite.

pub mod census;
pub mod equiv;
pub mod error;
pub mod gf;
pub mod linpoly;
pub mod linset;
pub mod verify;

pub use error::{LpError, Result};
pub use gf::{build_field, FieldElement, FieldTower};
pub use linpoly::{LPParams, LinearizedPoly};
pub use linset::{LinearSet, ProjPoint, SemilinearMap};
