//! Twisted homology `H_*(G; Z~)` of finitely generated abelian groups with an
//! orientation character, the Pontryagin product and the inversion map, and
//! the vanishing test for `c ^ j(c)`.
//!
//! The main path works with the small tensor resolution built from the cyclic
//! factors of `G` (see [`chain`]); [`bar`] recomputes the same invariants from
//! the bar construction for small finite groups.

pub mod abelian;
pub mod algebra;
pub mod bar;
pub mod chain;
pub mod criterion;
pub mod error;
pub mod group;
pub mod homology;
pub mod kunneth;
pub mod matrix;
mod segment;
pub mod sharpness;
pub mod snf;

pub use abelian::AbelianGroup;
pub use algebra::{inversion_chain, wedge};
pub use chain::{basis, boundary, differential_matrix, parse_chain, Chain, DifferentialMatrix, Monomial};
pub use criterion::{
    chi_square, class_interpretation, decide, interpret, j_star, theorem_cover, vanishes_for_all, CaseLabel, Verdict, VerdictKind,
    Witness,
};
pub use error::{Error, Result};
pub use group::{format_group_spec, parse_group_spec, CyclicFactor, GroupError, GroupSpec, Order, Sign};
pub use homology::{class_order, enumerate_classes, homology, reduce_cycle, ClassOrder, HomologyClass, HomologyPresentation};
pub use kunneth::{kunneth_predict, predicted_homology};
pub use snf::{smith_normal_form, SmithForm};
