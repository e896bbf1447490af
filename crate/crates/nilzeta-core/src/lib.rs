//! Exact and numerical toolkit for the rank-two distribution on the free
//! graded-nilpotent (2,3,5) group and its compact quotients.
//!
//! The crate is organized bottom-up:
//!
//! * [`rational`] — exact rational scalars and their `"p/q"` string codec;
//! * [`qsqrt2`] — the field ℚ(√2), coefficient field of the symbolic
//!   differential operators;
//! * [`group`] — the 5-dimensional graded nilpotent group `G` in exponential
//!   coordinates, with the exact Baker–Campbell–Hausdorff product;
//! * [`intlat`] — integer-matrix normal forms (Hermite/Smith) used for all
//!   lattice bookkeeping;
//! * [`lattice`] — the two-parameter-family lattices `Γ ⊂ G`, their derived
//!   and central sublattices, and unitary characters;
//! * [`uea`] — the universal enveloping algebra of 𝔤 in the
//!   Poincaré–Birkhoff–Witt basis, formal adjoints, and the five Rumin
//!   differential matrices;
//! * [`repdecomp`] — irreducible unitary representations of `G` and the
//!   exact multiplicities with which they occur in `L²(Γ\G, χ)`;
//! * [`spectral`] — truncated Hermite-basis realizations of the Rumin
//!   differentials and spectra of the associated Rumin–Seshadri operators;
//! * [`zeta`] — Hurwitz and Epstein zeta functions with analytic
//!   continuation, values and derivatives;
//! * [`torsion`] — zeta factorizations per representation class, special
//!   values at `s = 0`, residues, and the analytic torsion itself.
//!
//! Exact results are exact: group arithmetic, lattice membership,
//! multiplicities, and the symbolic operator algebra never touch floating
//! point. Numerical results (truncated spectra, continued zeta values) carry
//! explicit error estimates and provenance markers.

pub mod group;
pub mod intlat;
pub mod lattice;
pub mod qsqrt2;
pub mod rational;
pub mod repdecomp;
pub mod spectral;
pub mod torsion;
pub mod uea;
pub mod zeta_special;

pub use group::GroupElement;
pub use lattice::{Character, LatticeSpec, PlanarLattice};
pub use rational::Rational;
pub use repdecomp::{DecompositionTerm, RepLabel};
