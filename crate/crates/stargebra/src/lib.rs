//! stargebra: spectral theory of finite-dimensional matrix *-algebras as
//! checkable computation — spectra and functional calculus, Gelfand
//! transforms of commutative algebras, states and their GNS
//! representations, spectral measures, commutants, and one-parameter
//! unitary evolution.
//!
//! Everything acts on dense complex matrices ([`cmat::CMat`]). Algebras
//! are carried as Hilbert–Schmidt-orthonormal bases
//! ([`algebra::StarAlgebra`]); all randomized paths take explicit seeds
//! and all operations are pure, so values can be shared freely across
//! threads.

// Index loops over matrix entries read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cmat;
pub mod commutant;
pub mod eigen;
pub mod error;
pub mod evolution;
pub mod gelfand;
pub mod io;
pub mod measures;
pub mod random;
pub mod spectral;
pub mod states;
pub mod subspace;
pub mod suite;

pub use cmat::{CMat, CVec};
pub use error::{Error, ErrorKind, Result};
