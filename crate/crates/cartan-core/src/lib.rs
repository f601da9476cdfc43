//! Exact Cartan calculus on symplectic phase space.
//!
//! Differential forms on a `2n`-dimensional phase space are stored as vectors
//! of `2^{2n}` polynomial components, and the operators of Cartan calculus —
//! exterior derivative, interior contraction, Lie derivative, codifferential,
//! Hodge star — act on them as sparse matrices whose entries are differential
//! operators. The matrices are assembled from Kronecker strings of 2×2 Pauli
//! factors, one factor per Grassmann generator, so every identity of the
//! calculus becomes a finite matrix identity over exact arithmetic.
//!
//! Layout:
//!
//! * [`scalar`], [`poly`], [`diffop`] — Gaussian-rational numbers, phase-space
//!   polynomials, and normal-ordered differential operators.
//! * [`pauli`], [`grassmann`] — the 2×2 factors, sparse Kronecker products,
//!   and the Grassmann-sector generator matrices plus an independent oracle.
//! * [`forms`], [`cartan`] — form vectors and the operator layer (d, δ, Δ,
//!   ι_V, ℒ_h, ⋆, evolution operator, symmetry charges).
//! * [`evolve`] — exact free evolution and truncated Taylor evolution.
//! * [`superalgebra`] — the 4×4 irreducible representation of the charge
//!   superalgebra over a quadratic extension field, with a commutant-based
//!   irreducibility certificate.
//! * [`verify`] — seeded, reproducible verification suites for all of the
//!   above, including deliberate-mutation negative controls.
//!
//! The crate is `no_std` (with `alloc`); everything IO-shaped lives in the
//! companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod cartan;
pub mod diffop;
pub mod evolve;
pub mod forms;
pub mod grassmann;
pub mod pauli;
pub mod poly;
pub mod scalar;
pub mod superalgebra;
pub mod verify;

pub use cartan::{ChargeKind, OperatorMatrix, Parity};
pub use diffop::DiffOp;
pub use error::{Error, Result};
pub use evolve::{EvolutionMethod, EvolutionResult};
pub use forms::{FormSpec, FormVector, SymplecticForm, VectorField};
pub use grassmann::{BasisIndex, Generator, GrassmannMonomial, OracleState};
pub use pauli::{Grading, Matrix2, Mutation, Pauli, Rep, SparseScalarMatrix};
pub use poly::{MultiIndex, Polynomial, VarIndex};
pub use scalar::GaussianRational;
pub use superalgebra::{
    commutant_dimension, irrep_build, sp2_pauli, superalgebra_verify,
    two_dim_supercharge_nullity, ExtField, ExtMatrix, ExtScalar, IrrepSet,
};
pub use verify::{
    commutator_geometry_check, intertwine_check, kernel_free_check, run_suite, run_suite_in,
    Check, SuiteKind, SuiteOptions, VerificationReport,
};

/// Default ceiling on the number of degrees of freedom.
///
/// The operator matrices have dimension `4^n`, so this is a guard against
/// accidentally gigantic Kronecker products rather than a hard limit; entry
/// points that take `n` accept an explicit override.
pub const DEFAULT_MAX_DOF: usize = 3;

/// Validates a degree-of-freedom count against a ceiling.
pub fn check_dof(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegreesOfFreedom);
    }
    if n > max {
        return Err(Error::DegreesOfFreedomCeiling { n, max });
    }
    Ok(())
}
