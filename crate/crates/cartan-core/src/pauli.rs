//! 2×2 Pauli-type factors and sparse Kronecker products.
//!
//! Operators on the Grassmann sector are strings `A_1 ⊗ A_2 ⊗ ... ⊗ A_{2n}`
//! of 2×2 factors, stored as sparse matrices over Gaussian rationals. The
//! leftmost factor is the most significant: the basis bit for generator `k`
//! is bit `2n - k` of the row/column index.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::VarIndex;
use crate::scalar::GaussianRational;

/// The available 2×2 factors.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
    /// `σ⁺/2 = [[0,1],[0,0]]`.
    PlusHalf,
    /// `σ⁻/2 = [[0,0],[1,0]]`.
    MinusHalf,
    Id,
}

/// A dense 2×2 matrix over Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    entries: [[GaussianRational; 2]; 2],
}

impl Matrix2 {
    /// Builds from rows.
    pub fn new(entries: [[GaussianRational; 2]; 2]) -> Self {
        Self { entries }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows.map(|r| r.map(GaussianRational::from_int)))
    }

    /// Entry at `(row, col)`, both in `{0, 1}`.
    pub fn entry(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row][col]
    }

    /// The named Pauli-type factor.
    pub fn pauli(p: Pauli) -> Self {
        let i = GaussianRational::i;
        match p {
            Pauli::X => Self::from_ints([[0, 1], [1, 0]]),
            Pauli::Y => Self::new([
                [GaussianRational::zero(), -i()],
                [i(), GaussianRational::zero()],
            ]),
            Pauli::Z => Self::from_ints([[1, 0], [0, -1]]),
            Pauli::PlusHalf => Self::from_ints([[0, 1], [0, 0]]),
            Pauli::MinusHalf => Self::from_ints([[0, 0], [1, 0]]),
            Pauli::Id => Self::from_ints([[1, 0], [0, 1]]),
        }
    }
}

/// A sparse matrix over Gaussian rationals with deterministic (row-major)
/// entry order. Rectangular shapes are allowed so that Kronecker products of
/// column vectors work; the operator-level builders only ever produce square
/// matrices of dimension `2^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseScalarMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GaussianRational>,
}

impl SparseScalarMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim, dim);
        for i in 0..dim {
            m.entries.insert((i, i), GaussianRational::one());
        }
        m
    }

    /// A standard basis column vector `e_index` of the given length.
    pub fn basis_column(len: usize, index: usize) -> Result<Self> {
        let mut m = Self::zero(len, 1);
        m.set(index, 0, GaussianRational::one())?;
        Ok(m)
    }

    /// Densifies a 2×2 factor.
    pub fn from_matrix2(m: &Matrix2) -> Self {
        let mut out = Self::zero(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                let v = m.entry(r, c);
                if !v.is_zero() {
                    out.entries.insert((r, c), v.clone());
                }
            }
        }
        out
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix (callers guarantee squareness).
    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes an entry, dropping explicit zeros.
    pub fn set(&mut self, row: usize, col: usize, v: GaussianRational) -> Result<()> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: row,
                limit: self.rows,
            });
        }
        if col >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: col,
                limit: self.cols,
            });
        }
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
        Ok(())
    }

    /// Adds into an entry.
    pub fn add_entry(&mut self, row: usize, col: usize, v: GaussianRational) -> Result<()> {
        let sum = self.entry(row, col) + v;
        self.set(row, col, sum)
    }

    /// Reads an entry (zero when absent).
    pub fn entry(&self, row: usize, col: usize) -> GaussianRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Iterates stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Matrix sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_entry(r, c, v.clone())?;
        }
        Ok(out)
    }

    /// Matrix difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_entry(r, c, -v)?;
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.iter() {
            out.entries.insert((r, c), v * s);
        }
        out
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        // Group the right matrix by row once, then sweep the left entries.
        let mut by_row: BTreeMap<usize, Vec<(usize, &GaussianRational)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (r, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add_entry(r, c, a * b)?;
                }
            }
        }
        Ok(out)
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    /// Kronecker product; `self` is the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for (ra, ca, va) in self.iter() {
            for (rb, cb, vb) in other.iter() {
                out.entries
                    .insert((ra * other.rows + rb, ca * other.cols + cb), va * vb);
            }
        }
        out
    }
}

/// Kronecker product of a list of factors, leftmost most significant.
///
/// The empty product is the 1×1 identity.
pub fn kron(factors: &[SparseScalarMatrix]) -> SparseScalarMatrix {
    let mut acc = SparseScalarMatrix::identity(1);
    for f in factors {
        acc = acc.kron(f);
    }
    acc
}

/// Which 2×2 factor fills the positions before `k` in a generator string.
///
/// `SigmaZ` is the standard grading factor; the other two exist as deliberate
/// mutations for negative-control testing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Grading {
    #[default]
    SigmaZ,
    SigmaX,
    Dropped,
}

/// Named deliberate mutations of the construction, used as negative controls:
/// a correct build must fail verification under each of them.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Builds generator strings with `σ_x` in place of `σ_z`.
    GradingSigmaX,
    /// Drops the grading factors entirely (identity in their place).
    GradingDropped,
    /// Flips the sign of the symplectic form.
    OmegaSignFlip,
}

/// Recipe for assembling the operator representation.
///
/// The default recipe is the correct one; mutated recipes are for
/// negative-control tests only.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct Rep {
    pub grading: Grading,
    pub flip_omega: bool,
}

impl Rep {
    /// The correct construction.
    pub fn standard() -> Self {
        Self::default()
    }

    /// A deliberately broken construction.
    pub fn mutated(m: Mutation) -> Self {
        match m {
            Mutation::GradingSigmaX => Self {
                grading: Grading::SigmaX,
                ..Self::default()
            },
            Mutation::GradingDropped => Self {
                grading: Grading::Dropped,
                ..Self::default()
            },
            Mutation::OmegaSignFlip => Self {
                flip_omega: true,
                ..Self::default()
            },
        }
    }

    /// The 2×2 matrix used in the grading positions.
    pub fn grading_matrix(&self) -> Matrix2 {
        match self.grading {
            Grading::SigmaZ => Matrix2::pauli(Pauli::Z),
            Grading::SigmaX => Matrix2::pauli(Pauli::X),
            Grading::Dropped => Matrix2::pauli(Pauli::Id),
        }
    }

    /// `+1` for the standard symplectic form, `-1` under the sign-flip
    /// mutation.
    pub fn omega_sign(&self) -> i64 {
        if self.flip_omega {
            -1
        } else {
            1
        }
    }
}

/// The string `g^{⊗(k-1)} ⊗ m ⊗ 1^{⊗(2n-k)}` with `g` the grading factor.
pub fn factor_string(rep: &Rep, k: VarIndex, m: &Matrix2, n: usize) -> Result<SparseScalarMatrix> {
    if n == 0 {
        return Err(Error::ZeroDegreesOfFreedom);
    }
    if k.0 == 0 || k.0 > 2 * n {
        return Err(Error::IndexOutOfRange {
            index: k.0,
            limit: 2 * n,
        });
    }
    let g = SparseScalarMatrix::from_matrix2(&rep.grading_matrix());
    let id = SparseScalarMatrix::identity(2);
    let mid = SparseScalarMatrix::from_matrix2(m);
    let mut factors = Vec::with_capacity(2 * n);
    for _ in 0..k.0 - 1 {
        factors.push(g.clone());
    }
    factors.push(mid);
    for _ in k.0..2 * n {
        factors.push(id.clone());
    }
    Ok(kron(&factors))
}
