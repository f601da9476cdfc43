//! The Grassmann sector: basis bookkeeping, generator matrices, and an
//! independent substitution oracle.
//!
//! A basis monomial is a subset of the generators `c^1, ..., c^{2n}` written
//! in ascending index order. The subset maps to a linear index by giving
//! generator `k` the bit `2n - k`, so the leftmost Kronecker factor is the
//! most significant bit. Multiplication operators `ĉ^k` and left derivatives
//! `c̄̂_k` are built both ways — as Pauli strings and as a direct sign-counting
//! oracle — and the test suites require the two to agree on every basis state.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pauli::{factor_string, Matrix2, Pauli, Rep, SparseScalarMatrix};
use crate::poly::{Polynomial, VarIndex};
use crate::scalar::GaussianRational;

/// A Grassmann basis monomial identified by its linear index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisIndex {
    n: usize,
    linear: usize,
}

impl BasisIndex {
    /// From a linear index in `0..4^n`.
    pub fn from_linear(n: usize, linear: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        let dim = 1usize << (2 * n);
        if linear >= dim {
            return Err(Error::IndexOutOfRange {
                index: linear,
                limit: dim,
            });
        }
        Ok(Self { n, linear })
    }

    /// From a strictly ascending subset of generator indices.
    pub fn from_subset(n: usize, subset: &[VarIndex]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        let mut linear = 0usize;
        let mut prev = 0usize;
        for &v in subset {
            if v.0 == 0 || v.0 > 2 * n {
                return Err(Error::IndexOutOfRange {
                    index: v.0,
                    limit: 2 * n,
                });
            }
            if v.0 <= prev {
                // Repeats and out-of-order input are caller bugs here;
                // `canonical_sign` is the entry point for raw sequences.
                return Err(Error::IndexOutOfRange {
                    index: v.0,
                    limit: 2 * n,
                });
            }
            prev = v.0;
            linear |= 1 << (2 * n - v.0);
        }
        Ok(Self { n, linear })
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The linear index.
    pub fn linear(&self) -> usize {
        self.linear
    }

    /// Form degree: the number of generators present.
    pub fn degree(&self) -> u32 {
        self.linear.count_ones()
    }

    /// True when generator `k` is present.
    pub fn contains(&self, k: VarIndex) -> bool {
        k.0 >= 1 && k.0 <= 2 * self.n && self.linear & (1 << (2 * self.n - k.0)) != 0
    }

    /// The generator indices present, ascending.
    pub fn subset(&self) -> Vec<VarIndex> {
        (1..=2 * self.n)
            .map(VarIndex)
            .filter(|&k| self.contains(k))
            .collect()
    }

    /// Human-readable monomial label, e.g. `1` or `c^p1 c^q1`.
    pub fn label(&self) -> String {
        let subset = self.subset();
        if subset.is_empty() {
            return String::from("1");
        }
        let parts: Vec<String> = subset.iter().map(|v| format!("c^{}", v.label())).collect();
        parts.join(" ")
    }

    /// All basis monomials for `n` degrees of freedom, in linear order.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        Ok((0..1usize << (2 * n))
            .map(|linear| Self { n, linear })
            .collect())
    }
}

/// An ascending-index Grassmann monomial together with the sign picked up
/// while sorting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannMonomial {
    pub indices: Vec<VarIndex>,
    pub sign: i8,
}

/// Sorts a generator product into ascending order, counting transpositions.
///
/// Returns `None` when an index repeats (the product is zero).
pub fn canonical_sign(seq: &[VarIndex]) -> Option<GrassmannMonomial> {
    let mut indices = seq.to_vec();
    let mut sign = 1i8;
    // Bubble sort: each adjacent swap of distinct generators flips the sign.
    for i in 0..indices.len() {
        for j in (i + 1..indices.len()).rev() {
            if indices[j - 1].0 > indices[j].0 {
                indices.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(GrassmannMonomial { indices, sign })
}

/// Left multiplication by `c^k` as a Pauli string.
pub fn c_hat(k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    c_hat_in(&Rep::standard(), k, n)
}

/// [`c_hat`] under an explicit construction recipe.
pub fn c_hat_in(rep: &Rep, k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    factor_string(rep, k, &Matrix2::pauli(Pauli::MinusHalf), n)
}

/// Left derivative with respect to `c^k` as a Pauli string.
pub fn cbar_hat(k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    cbar_hat_in(&Rep::standard(), k, n)
}

/// [`cbar_hat`] under an explicit construction recipe.
pub fn cbar_hat_in(rep: &Rep, k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    factor_string(rep, k, &Matrix2::pauli(Pauli::PlusHalf), n)
}

/// The occupation-number operator `ĉ^k c̄̂_k` (diagonal, eigenvalues 0/1).
pub fn number_op(k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    number_op_in(&Rep::standard(), k, n)
}

/// [`number_op`] under an explicit construction recipe.
pub fn number_op_in(rep: &Rep, k: VarIndex, n: usize) -> Result<SparseScalarMatrix> {
    c_hat_in(rep, k, n)?.matmul(&cbar_hat_in(rep, k, n)?)
}

/// One Grassmann generator in either role.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Left multiplication by `c^k`.
    C(VarIndex),
    /// Left derivative with respect to `c^k`.
    CBar(VarIndex),
}

/// A Grassmann-sector state with polynomial coefficients, stored directly as
/// `basis monomial -> coefficient`. This is the oracle representation: it
/// never touches the Pauli strings, so agreement between [`oracle_apply`] and
/// the matrices is a real two-route check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleState {
    n: usize,
    terms: BTreeMap<usize, Polynomial>,
}

impl OracleState {
    /// The zero state.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    /// A single basis monomial with coefficient 1.
    pub fn from_basis(b: BasisIndex) -> Self {
        let mut s = Self {
            n: b.n(),
            terms: BTreeMap::new(),
        };
        s.add_term(b.linear(), Polynomial::one(2 * b.n()));
        s
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// True for the zero state.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(linear index, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.terms.iter().map(|(&l, p)| (l, p))
    }

    /// Adds `coeff` on a basis monomial, dropping cancelled entries.
    pub fn add_term(&mut self, linear: usize, coeff: Polynomial) {
        debug_assert!(linear < 1usize << (2 * self.n));
        debug_assert_eq!(coeff.nvars(), 2 * self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(linear) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&coeff).expect("same nvars");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// State sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (l, p) in other.terms() {
            out.add_term(l, p.clone());
        }
        Ok(out)
    }
}

/// Applies one generator to an oracle state by direct anticommutation
/// counting: moving `c^k` (or `∂/∂c^k`) past the generators with smaller
/// index contributes a factor `(-1)` each.
pub fn oracle_apply(g: Generator, state: &OracleState) -> Result<OracleState> {
    let n = state.n();
    let k = match g {
        Generator::C(k) | Generator::CBar(k) => k,
    };
    if k.0 == 0 || k.0 > 2 * n {
        return Err(Error::IndexOutOfRange {
            index: k.0,
            limit: 2 * n,
        });
    }
    let bit = 1usize << (2 * n - k.0);
    let mut out = OracleState::zero(n)?;
    for (linear, coeff) in state.terms() {
        // Generators with index < k occupy strictly higher bits.
        let before = (linear >> (2 * n - k.0 + 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1 } else { -1 };
        let target = match g {
            Generator::C(_) => {
                if linear & bit != 0 {
                    continue; // c^k c^k = 0
                }
                linear | bit
            }
            Generator::CBar(_) => {
                if linear & bit == 0 {
                    continue; // derivative of a missing generator
                }
                linear & !bit
            }
        };
        out.add_term(target, coeff.scale(&GaussianRational::from_int(sign)));
    }
    Ok(out)
}

/// Applies a generator matrix to an oracle state by matrix-vector product.
///
/// This is the "matrix route" counterpart of [`oracle_apply`], used by the
/// agreement checks; coefficients ride along unchanged because the matrices
/// are scalar.
pub fn matrix_apply(m: &SparseScalarMatrix, state: &OracleState) -> Result<OracleState> {
    let dim = 1usize << (2 * state.n());
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::ShapeMismatch {
            left_rows: m.rows(),
            left_cols: m.cols(),
            right_rows: dim,
            right_cols: 1,
        });
    }
    let mut out = OracleState::zero(state.n())?;
    for (r, c, v) in m.iter() {
        if let Some(coeff) = state.terms.get(&c) {
            out.add_term(r, coeff.scale(v));
        }
    }
    Ok(out)
}
