//! Probabilistic zeta functions of finite groups.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! * [`dirichlet`]: exact arithmetic on Dirichlet polynomials and truncated
//!   formal Dirichlet series,
//! * [`group`], [`lattice`], [`structure`], [`psl2`]: a small permutation group
//!   engine with full subgroup lattices, Möbius values, chief series and the
//!   projective line actions of `PSL(2,q)` and `PGL(2,q)`,
//! * [`zeta`]: `P_G(s)`, `P_{X,S}(s)`, chief factor polynomials, the sets
//!   `Ω(X)` and their minima,
//! * [`rationality`]: valuation helpers, the finiteness conditions for
//!   products `∏(1 - c_i/(q^{r_i})^s)`, the `w`-extraction and a replay of
//!   the argument excluding infinitely many `PSL(2,p)` chief factors.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod builtin;
pub mod dirichlet;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod psl2;
pub mod rationality;
pub mod structure;
pub mod zeta;

pub use dirichlet::{DirichletPolynomial, Index, RationalSeries, TruncatedSeries};
pub use error::{DirichletError, GroupError, RationalityError, ZetaError};
pub use group::PermGroup;
pub use lattice::{Budget, Interrupt, NodeId, SubgroupLattice};
pub use perm::Permutation;
pub use psl2::{AlmostSimpleSpec, Psl2Variant};
