//! Exact-arithmetic kernel and verification suites for the representation
//! theory of simple-current extensions of affine vertex algebras.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point anywhere in the crate. The main layers are
//!
//! - [`ratcore`]: rationals, half-integers, phases mod 2, multivariate
//!   polynomial identity checking,
//! - [`liecore`]: `sl_N` weight-lattice arithmetic (inner products, Sugawara
//!   and minimal-reduction conformal weights, Weyl dimensions, Pieri rule),
//! - [`qseries`]: truncated bivariate character series in a charge variable
//!   `z` and a weight variable `q` with half-integer exponents,
//! - [`freefield`]: Fock and singlet modules with their fusion, braiding and
//!   character identities,
//! - [`extension`]: conformal weights, locality, lower-boundedness and the
//!   classification of ordinary modules of the simple-current extension,
//! - [`qhreduce`]: quantum-Hamiltonian-reduction weight matching and the
//!   polynomial certificates behind it,
//! - [`embedcheck`]: conformal-embedding decomposition bookkeeping and the
//!   Heisenberg Gram-matrix diagonalization,
//! - [`report`]: machine-readable pass/fail reports shared by all suites.

pub mod embedcheck;
pub mod error;
pub mod extension;
pub mod freefield;
pub mod liecore;
pub mod qhreduce;
pub mod qseries;
pub mod ratcore;
pub mod report;

pub use error::{Error, Result};
pub use ratcore::{HalfInt, MPoly, Phase, Rat};
