//! Exact-arithmetic Loday realizations of the associahedra.
//!
//! The crate builds weighted Loday realizations `K_ω` of the associahedra
//! over exact rationals, computes the geometric approximation of the diagonal
//! `z ↦ (bm(K ∩ (2z−K)), tp(K ∩ (2z−K)))` pointwise and cellularly, verifies
//! the matching-pair description of the induced subdivision against
//! independent geometric oracles, and realizes the partial compositions that
//! make the family `{K_n}` a nonsymmetric operad.
//!
//! Modules:
//! - [`trees`]: planar trees, the Tamari lattice, grafting, leaf leanings.
//! - [`rat`], [`linalg`]: exact rational scalars/vectors and dense linear algebra.
//! - [`polytope`], [`dd`], [`lp`], [`volume`]: H/V representations, vertex
//!   enumeration and facet recovery, exact linear programming, exact volumes.
//! - [`loday`]: the realizations `K_ω`, their face lattice, the block
//!   embedding of a facet as a product, and products of realizations.
//! - [`diagonal`]: the pointwise diagonal, the matching-pair enumeration and
//!   its two independent oracles, the induced polytopal subdivision, and the
//!   coherent-subdivision machinery it instantiates.
//! - [`operad`]: transition maps between realizations and the partial
//!   composition maps, cellular and pointwise.
//! - [`classics`]: the simplex and cube diagonals in closed form.
//! - [`verify`]: the named invariant checks behind `verify` in the CLI.

pub mod classics;
pub mod dd;
pub mod diagonal;
pub mod linalg;
pub mod loday;
pub mod lp;
pub mod operad;
pub mod polytope;
pub mod rat;
pub mod trees;
pub mod verify;
pub mod volume;


pub use rat::{Q, QPoint, QVector};
pub use trees::{Forest, PlanarTree};
