//! Exact Ehrhart polynomials for a handful of reflexive polytope families,
//! conversions between the power, magic and h* bases, and independent
//! lattice-point counters used to cross-check every closed form.
//!
//! Everything is exact: scalars are [`Rational`] (arbitrary precision) and
//! no floating point appears on any mathematical path.

pub mod analysis;
pub mod bases;
pub mod counting;
pub mod error;
pub mod exactpoly;
pub mod families;
pub mod report;
pub mod selftest;

pub use analysis::{real_root_report, sequence_checks, RootCountReport, SequenceFlags};
pub use bases::{
    hstar_to_power, is_magic_positive, is_palindromic, magic_to_power, power_to_hstar,
    power_to_magic, HStarVector, MagicForm, MagicVerdict,
};
pub use counting::{CountMethod, CountReport, GraphSpec};
pub use error::{Error, Result};
pub use exactpoly::{big_binom, binom_linear, lagrange_interpolate, Poly, Rational};
pub use families::{FamilyId, FamilyKind};
