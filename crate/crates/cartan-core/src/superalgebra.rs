//! The finite-dimensional picture of the charge algebra: a 4×4 irreducible
//! representation labeled by the Casimir value `h`, realized exactly over
//! the quadratic extension ℚ(√h).
//!
//! When `h` happens to be a perfect square, √h is folded into the rational
//! part so the scalars always form a field and Gaussian elimination stays
//! total. Irreducibility is certified by solving `[X, Mᵢ] = 0` for all
//! generators and measuring the solution space: dimension 1 means only
//! scalar matrices commute.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cartan::Parity;
use crate::error::{Error, Result};
use crate::verify::{Check, SuiteKind, VerificationReport};

/// An element `a + b√h` of the quadratic extension; `h` lives in the
/// enclosing [`ExtField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtScalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl ExtScalar {
    /// A purely rational element.
    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }

    /// A small integer.
    pub fn from_int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(v.into()))
    }

    /// Zero.
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// One.
    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// The rational square root of `h`, when one exists.
fn rational_sqrt(h: &BigRational) -> Option<BigRational> {
    if h.is_negative() {
        return None;
    }
    let sn = h.numer().sqrt();
    let sd = h.denom().sqrt();
    (&(&sn * &sn) == h.numer() && &(&sd * &sd) == h.denom())
        .then(|| BigRational::new(sn, sd))
}

/// The field ℚ(√h) for a fixed nonnegative rational `h`.
///
/// For perfect-square `h` every element is normalized to its rational part,
/// so division never meets a zero divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    h: BigRational,
    sqrt_h: Option<BigRational>,
}

impl ExtField {
    /// A field with the given nonnegative `h`.
    pub fn new(h: BigRational) -> Result<Self> {
        if h.is_negative() {
            return Err(Error::NegativeCasimir {
                value: h.to_string(),
            });
        }
        let sqrt_h = rational_sqrt(&h);
        Ok(Self { h, sqrt_h })
    }

    /// The defining parameter.
    pub fn h(&self) -> &BigRational {
        &self.h
    }

    /// The element √h, normalized.
    pub fn sqrt_element(&self) -> ExtScalar {
        self.normalize(ExtScalar {
            a: BigRational::zero(),
            b: BigRational::one(),
        })
    }

    /// Folds the √h part into the rational part when √h is rational.
    pub fn normalize(&self, x: ExtScalar) -> ExtScalar {
        match &self.sqrt_h {
            Some(r) if !x.b.is_zero() => ExtScalar {
                a: x.a + &x.b * r,
                b: BigRational::zero(),
            },
            _ => x,
        }
    }

    /// Sum.
    pub fn add(&self, x: &ExtScalar, y: &ExtScalar) -> ExtScalar {
        ExtScalar {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }

    /// Difference.
    pub fn sub(&self, x: &ExtScalar, y: &ExtScalar) -> ExtScalar {
        ExtScalar {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
        }
    }

    /// Negation.
    pub fn neg(&self, x: &ExtScalar) -> ExtScalar {
        ExtScalar {
            a: -x.a.clone(),
            b: -x.b.clone(),
        }
    }

    /// Product, using `√h · √h = h`.
    pub fn mul(&self, x: &ExtScalar, y: &ExtScalar) -> ExtScalar {
        self.normalize(ExtScalar {
            a: &x.a * &y.a + &x.b * &y.b * &self.h,
            b: &x.a * &y.b + &x.b * &y.a,
        })
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: &ExtScalar) -> Option<ExtScalar> {
        let x = self.normalize(x.clone());
        if x.is_zero() {
            return None;
        }
        // (a + b√h)(a - b√h) = a² - b²h, nonzero for normalized nonzero
        // input: if h is a square b = 0, otherwise √h is irrational.
        let norm = &x.a * &x.a - &x.b * &x.b * &self.h;
        debug_assert!(!norm.is_zero());
        Some(ExtScalar {
            a: &x.a / &norm,
            b: -(&x.b / &norm),
        })
    }

    /// Renders an element like `3`, `sqrt(7)`, `1/2 - 2*sqrt(7)`.
    pub fn render(&self, x: &ExtScalar) -> String {
        let x = self.normalize(x.clone());
        if x.b.is_zero() {
            return x.a.to_string();
        }
        let root = format!("sqrt({})", self.h);
        let b_abs = x.b.abs();
        let b_part = if b_abs.is_one() {
            root
        } else {
            format!("{b_abs}*{root}")
        };
        if x.a.is_zero() {
            if x.b.is_negative() {
                format!("-{b_part}")
            } else {
                b_part
            }
        } else if x.b.is_negative() {
            format!("{} - {b_part}", x.a)
        } else {
            format!("{} + {b_part}", x.a)
        }
    }
}

/// A square matrix over ℚ(√h), stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMatrix {
    field: ExtField,
    dim: usize,
    entries: Vec<ExtScalar>,
}

impl ExtMatrix {
    /// The zero matrix.
    pub fn zero(field: ExtField, dim: usize) -> Self {
        Self {
            field,
            dim,
            entries: vec![ExtScalar::zero(); dim * dim],
        }
    }

    /// The identity matrix.
    pub fn identity(field: ExtField, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ExtScalar::one();
        }
        m
    }

    /// From 0-based `(row, col, value)` triplets.
    pub fn from_triplets(
        field: ExtField,
        dim: usize,
        triplets: &[(usize, usize, ExtScalar)],
    ) -> Result<Self> {
        let mut m = Self::zero(field, dim);
        for (r, c, v) in triplets {
            m.set(*r, *c, v.clone())?;
        }
        Ok(m)
    }

    /// The scalar field.
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &ExtScalar {
        &self.entries[row * self.dim + col]
    }

    /// Overwrites an entry.
    pub fn set(&mut self, row: usize, col: usize, v: ExtScalar) -> Result<()> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: row.max(col),
                limit: self.dim,
            });
        }
        self.entries[row * self.dim + col] = self.field.normalize(v);
        Ok(())
    }

    /// Nonzero entries as 0-based triplets, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, &ExtScalar)> {
        let mut out = Vec::new();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push((r, c, v));
                }
            }
        }
        out
    }

    /// True when all entries vanish.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExtScalar::is_zero)
    }

    fn same_frame(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ExtensionMismatch {
                left: self.field.h.to_string(),
                right: other.field.h.to_string(),
            });
        }
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                left_rows: self.dim,
                left_cols: self.dim,
                right_rows: other.dim,
                right_cols: other.dim,
            });
        }
        Ok(())
    }

    /// Matrix sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.field.add(x, y))
            .collect();
        Ok(Self {
            field: self.field.clone(),
            dim: self.dim,
            entries,
        })
    }

    /// Matrix difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.field.sub(x, y))
            .collect();
        Ok(Self {
            field: self.field.clone(),
            dim: self.dim,
            entries,
        })
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        let mut out = Self::zero(self.field.clone(), self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let left = self.get(r, k);
                if left.is_zero() {
                    continue;
                }
                for c in 0..self.dim {
                    let right = other.get(k, c);
                    if right.is_zero() {
                        continue;
                    }
                    let product = self.field.mul(left, right);
                    let slot = &mut out.entries[r * self.dim + c];
                    *slot = self.field.add(slot, &product);
                }
            }
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &ExtScalar) -> Self {
        Self {
            field: self.field.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|e| self.field.mul(e, s)).collect(),
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }
}

/// The 4×4 representation matrices, labeled by the Casimir value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepSet {
    pub h: BigRational,
    pub q: ExtMatrix,
    pub qbar: ExtMatrix,
    pub i_n: ExtMatrix,
    pub minus_i_nbar: ExtMatrix,
    pub ham: ExtMatrix,
    pub qf: ExtMatrix,
    pub k: ExtMatrix,
    pub kbar: ExtMatrix,
}

impl IrrepSet {
    /// Names of the four module basis states.
    pub const BASIS_LABELS: [&'static str; 4] = ["F1", "F2", "F3", "F4"];

    /// Grassmann parity of each basis state.
    pub const BASIS_PARITY: [Parity; 4] =
        [Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];

    /// The scalar field everything lives in.
    pub fn field(&self) -> &ExtField {
        self.q.field()
    }

    /// All eight generators with display names.
    pub fn named_matrices(&self) -> [(&'static str, &ExtMatrix); 8] {
        [
            ("Q", &self.q),
            ("Qbar", &self.qbar),
            ("iN", &self.i_n),
            ("-iNbar", &self.minus_i_nbar),
            ("H", &self.ham),
            ("Qf", &self.qf),
            ("K", &self.k),
            ("Kbar", &self.kbar),
        ]
    }

    /// The four odd generators with display names.
    pub fn odd_generators(&self) -> [(&'static str, &ExtMatrix); 4] {
        [
            ("Q", &self.q),
            ("Qbar", &self.qbar),
            ("iN", &self.i_n),
            ("-iNbar", &self.minus_i_nbar),
        ]
    }
}

/// Builds the 4×4 representation for Casimir value `h ≥ 0`.
pub fn irrep_build(h: &BigRational) -> Result<IrrepSet> {
    let field = ExtField::new(h.clone())?;
    let s = field.sqrt_element();
    let neg_s = field.neg(&s);
    let one = ExtScalar::one();
    // 1-based (row, col) placements, converted at the call sites below.
    let t = |r: usize, c: usize, v: &ExtScalar| (r - 1, c - 1, v.clone());

    let q = ExtMatrix::from_triplets(field.clone(), 4, &[t(3, 1, &s), t(4, 2, &s)])?;
    let qbar = ExtMatrix::from_triplets(field.clone(), 4, &[t(1, 2, &s), t(3, 4, &neg_s)])?;
    let i_n = ExtMatrix::from_triplets(field.clone(), 4, &[t(2, 1, &s), t(4, 3, &neg_s)])?;
    let minus_i_nbar =
        ExtMatrix::from_triplets(field.clone(), 4, &[t(1, 3, &s), t(2, 4, &s)])?;
    let ham = ExtMatrix::identity(field.clone(), 4).scale(&ExtScalar::rational(h.clone()));
    let two = ExtScalar::from_int(2);
    let qf = ExtMatrix::from_triplets(
        field.clone(),
        4,
        &[t(2, 2, &one), t(3, 3, &one), t(4, 4, &two)],
    )?;
    let k = ExtMatrix::from_triplets(field.clone(), 4, &[t(4, 1, &one)])?;
    let kbar = ExtMatrix::from_triplets(field, 4, &[t(1, 4, &one)])?;

    Ok(IrrepSet {
        h: h.clone(),
        q,
        qbar,
        i_n,
        minus_i_nbar,
        ham,
        qf,
        k,
        kbar,
    })
}

/// The 2×2 triple `(Qf, K, K̄) = (σ_z, σ⁺/2, σ⁻/2)` that already closes the
/// quadratic charge algebra.
pub fn sp2_pauli() -> (ExtMatrix, ExtMatrix, ExtMatrix) {
    let field = ExtField::new(BigRational::zero()).expect("h = 0 is nonnegative");
    let one = ExtScalar::one();
    let qf = ExtMatrix::from_triplets(
        field.clone(),
        2,
        &[(0, 0, one.clone()), (1, 1, ExtScalar::from_int(-1))],
    )
    .expect("static shape");
    let k = ExtMatrix::from_triplets(field.clone(), 2, &[(0, 1, one.clone())])
        .expect("static shape");
    let kbar = ExtMatrix::from_triplets(field, 2, &[(1, 0, one)]).expect("static shape");
    (qf, k, kbar)
}

/// Reduced row echelon rank over the field.
fn row_rank(field: &ExtField, rows: &mut [Vec<ExtScalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field
            .inv(&rows[rank][col].clone())
            .expect("pivot is nonzero in a field");
        for x in rows[rank][col..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, piv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let t = field.mul(&factor, piv);
                *x = field.sub(x, &t);
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of `dim × dim` matrices commuting with every
/// matrix in the set, by exact nullspace computation.
pub fn commutant_dimension(
    field: &ExtField,
    dim: usize,
    matrices: &[ExtMatrix],
) -> Result<usize> {
    for m in matrices {
        if m.field() != field {
            return Err(Error::ExtensionMismatch {
                left: field.h.to_string(),
                right: m.field().h.to_string(),
            });
        }
        if m.dim() != dim {
            return Err(Error::ShapeMismatch {
                left_rows: dim,
                left_cols: dim,
                right_rows: m.dim(),
                right_cols: m.dim(),
            });
        }
    }
    let unknowns = dim * dim;
    let mut rows: Vec<Vec<ExtScalar>> = Vec::new();
    for m in matrices {
        for r in 0..dim {
            for c in 0..dim {
                // ([X, M])_{rc} = Σ_k X_{rk} M_{kc} - M_{rk} X_{kc}
                let mut row = vec![ExtScalar::zero(); unknowns];
                for k in 0..dim {
                    let slot = &mut row[r * dim + k];
                    *slot = field.add(slot, m.get(k, c));
                    let slot = &mut row[k * dim + c];
                    *slot = field.sub(slot, m.get(r, k));
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(unknowns - row_rank(field, &mut rows))
}

/// Certifies that no 2×2 matrix has ghost number one: the linear system
/// `[σ_z, X] = X` over a generic 2×2 unknown admits only the zero solution.
/// Returns the solution-space dimension (zero on a correct build).
pub fn two_dim_supercharge_nullity() -> usize {
    let field = ExtField::new(BigRational::zero()).expect("h = 0 is nonnegative");
    let (sigma_z, _, _) = sp2_pauli();
    let dim = 2usize;
    let unknowns = dim * dim;
    let mut rows: Vec<Vec<ExtScalar>> = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            // ([σ_z, X] - X)_{rc}, coefficient by coefficient.
            let mut row = vec![ExtScalar::zero(); unknowns];
            for k in 0..dim {
                let slot = &mut row[k * dim + c];
                *slot = field.add(slot, sigma_z.get(r, k));
            }
            for k in 0..dim {
                let slot = &mut row[r * dim + k];
                *slot = field.sub(slot, sigma_z.get(k, c));
            }
            let slot = &mut row[r * dim + c];
            *slot = field.sub(slot, &ExtScalar::one());
            if row.iter().any(|e| !e.is_zero()) {
                rows.push(row);
            }
        }
    }
    unknowns - row_rank(&field, &mut rows)
}

/// Formats the first differing entry of two matrices.
fn first_difference(a: &ExtMatrix, b: &ExtMatrix) -> Option<String> {
    let field = a.field();
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            if a.get(r, c) != b.get(r, c) {
                return Some(format!(
                    "entry ({}, {}): got {}, want {}",
                    r + 1,
                    c + 1,
                    field.render(a.get(r, c)),
                    field.render(b.get(r, c))
                ));
            }
        }
    }
    None
}

fn equality_check(label: &str, identity: &str, got: ExtMatrix, want: ExtMatrix) -> Check {
    let counterexample = first_difference(&got, &want);
    Check {
        label: label.into(),
        identity: identity.into(),
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Verifies the full charge algebra in the 4×4 representation: the two
/// Hamiltonian-valued anticommutators, vanishing of every other odd pair,
/// centrality of H, the ten charge relations, and irreducibility.
pub fn superalgebra_verify(h: &BigRational) -> Result<VerificationReport> {
    let irrep = irrep_build(h)?;
    let field = irrep.field().clone();
    let zero = ExtMatrix::zero(field.clone(), 4);
    let mut checks = Vec::new();

    checks.push(equality_check(
        "susy-anticommutator-q",
        "[Q, -iNbar]+ = H",
        irrep.q.anticommutator(&irrep.minus_i_nbar)?,
        irrep.ham.clone(),
    ));
    checks.push(equality_check(
        "susy-anticommutator-qbar",
        "[Qbar, iN]+ = H",
        irrep.qbar.anticommutator(&irrep.i_n)?,
        irrep.ham.clone(),
    ));

    let odd = irrep.odd_generators();
    for i in 0..odd.len() {
        for j in i..odd.len() {
            let (na, a) = odd[i];
            let (nb, b) = odd[j];
            // The two Hamiltonian-valued pairs are asserted above.
            if (na, nb) == ("Q", "-iNbar") || (na, nb) == ("Qbar", "iN") {
                continue;
            }
            checks.push(equality_check(
                &format!("odd-pair-{}-{}", slug(na), slug(nb)),
                &format!("[{na}, {nb}]+ = 0"),
                a.anticommutator(b)?,
                zero.clone(),
            ));
        }
    }

    let mut central_offender = None;
    for (name, m) in irrep.named_matrices() {
        if !irrep.ham.commutator(m)?.is_zero() {
            central_offender = Some(format!("[H, {name}] != 0"));
            break;
        }
    }
    checks.push(Check {
        label: "hamiltonian-central".into(),
        identity: "[H, X]- = 0 for every generator X".into(),
        pass: central_offender.is_none(),
        counterexample: central_offender,
    });

    // The ten charge relations, with the module playing the n = 1 role.
    let two = ExtScalar::from_int(2);
    let nilpotency = [
        ("Q", &irrep.q, "Q", &irrep.q),
        ("Qbar", &irrep.qbar, "Qbar", &irrep.qbar),
        ("Q", &irrep.q, "Qbar", &irrep.qbar),
    ];
    let mut nil_offender = None;
    for (na, a, nb, b) in nilpotency {
        if !a.anticommutator(b)?.is_zero() {
            nil_offender = Some(format!("[{na}, {nb}]+ != 0"));
            break;
        }
    }
    checks.push(Check {
        label: "charge-nilpotency".into(),
        identity: "[Q,Q]+ = [Qbar,Qbar]+ = [Q,Qbar]+ = 0".into(),
        pass: nil_offender.is_none(),
        counterexample: nil_offender,
    });
    checks.push(equality_check(
        "charge-qf-q",
        "[Qf, Q]- = Q",
        irrep.qf.commutator(&irrep.q)?,
        irrep.q.clone(),
    ));
    checks.push(equality_check(
        "charge-qf-qbar",
        "[Qf, Qbar]- = -Qbar",
        irrep.qf.commutator(&irrep.qbar)?,
        irrep.qbar.scale(&ExtScalar::from_int(-1)),
    ));
    checks.push(equality_check(
        "charge-qf-k",
        "[Qf, K]- = 2K",
        irrep.qf.commutator(&irrep.k)?,
        irrep.k.scale(&two),
    ));
    checks.push(equality_check(
        "charge-qf-kbar",
        "[Qf, Kbar]- = -2Kbar",
        irrep.qf.commutator(&irrep.kbar)?,
        irrep.kbar.scale(&ExtScalar::from_int(-2)),
    ));
    checks.push(equality_check(
        "charge-k-kbar",
        "[K, Kbar]- = Qf - 1",
        irrep.k.commutator(&irrep.kbar)?,
        irrep.qf.sub(&ExtMatrix::identity(field.clone(), 4))?,
    ));
    checks.push(equality_check(
        "charge-k-q",
        "[K, Q]- = 0",
        irrep.k.commutator(&irrep.q)?,
        zero.clone(),
    ));
    checks.push(equality_check(
        "charge-k-qbar",
        "[K, Qbar]- = Q",
        irrep.k.commutator(&irrep.qbar)?,
        irrep.q.clone(),
    ));
    checks.push(equality_check(
        "charge-kbar-q",
        "[Kbar, Q]- = Qbar",
        irrep.kbar.commutator(&irrep.q)?,
        irrep.qbar.clone(),
    ));
    checks.push(equality_check(
        "charge-kbar-qbar",
        "[Kbar, Qbar]- = 0",
        irrep.kbar.commutator(&irrep.qbar)?,
        zero,
    ));

    let generators: Vec<ExtMatrix> = irrep
        .named_matrices()
        .iter()
        .map(|(_, m)| (*m).clone())
        .collect();
    let commutant = commutant_dimension(&field, 4, &generators)?;
    checks.push(Check {
        label: "irreducible-commutant".into(),
        identity: "only scalar matrices commute with the charge set".into(),
        pass: commutant == 1,
        counterexample: (commutant != 1).then(|| format!("commutant dimension = {commutant}")),
    });

    Ok(
        VerificationReport::from_checks(SuiteKind::Superalgebra, 1, checks)
            .with_casimir(h.to_string()),
    )
}

fn slug(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_charge, ChargeKind};
    use crate::scalar::GaussianRational;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ext(a: i64, b: i64) -> ExtScalar {
        ExtScalar {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(4, 1)), Some(rat(2, 1)));
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
        assert_eq!(rational_sqrt(&rat(7, 1)), None);
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(4, 3)), None);
    }

    #[test]
    fn extension_arithmetic_with_irrational_root() {
        let field = ExtField::new(rat(2, 1)).unwrap();
        // (1 + 2√2)(3 + √2) = 7 + 7√2.
        assert_eq!(field.mul(&ext(1, 2), &ext(3, 1)), ext(7, 7));
        // (1 + √2)⁻¹ = √2 - 1.
        let inv = field.inv(&ext(1, 1)).unwrap();
        assert_eq!(inv, ext(-1, 1));
        assert_eq!(field.mul(&ext(1, 1), &inv), ExtScalar::one());
        assert!(field.inv(&ExtScalar::zero()).is_none());
    }

    #[test]
    fn perfect_squares_fold_into_rationals() {
        let field = ExtField::new(rat(4, 1)).unwrap();
        assert_eq!(field.sqrt_element(), ext(2, 0));
        assert_eq!(field.normalize(ext(1, 3)), ext(7, 0));
        let field = ExtField::new(rat(9, 4)).unwrap();
        assert_eq!(
            field.sqrt_element(),
            ExtScalar::rational(rat(3, 2))
        );
        let field = ExtField::new(rat(0, 1)).unwrap();
        assert_eq!(field.normalize(ext(5, 11)), ext(5, 0));
        // -2 + √4 folds to zero, so inversion correctly refuses it.
        let folded = ExtField::new(rat(4, 1)).unwrap();
        assert_eq!(folded.inv(&ext(-2, 1)), None);
    }

    #[test]
    fn negative_casimir_is_refused() {
        assert_eq!(
            ExtField::new(rat(-1, 2)).unwrap_err(),
            Error::NegativeCasimir {
                value: "-1/2".into()
            }
        );
        assert!(irrep_build(&rat(-4, 1)).is_err());
    }

    #[test]
    fn rendering_extension_elements() {
        let field = ExtField::new(rat(7, 1)).unwrap();
        assert_eq!(field.render(&ext(3, 0)), "3");
        assert_eq!(field.render(&ext(0, 1)), "sqrt(7)");
        assert_eq!(field.render(&ext(0, -2)), "-2*sqrt(7)");
        assert_eq!(
            field.render(&ExtScalar {
                a: rat(1, 2),
                b: rat(-1, 1)
            }),
            "1/2 - sqrt(7)"
        );
        let folded = ExtField::new(rat(4, 1)).unwrap();
        assert_eq!(folded.render(&ext(0, 1)), "2");
    }

    #[test]
    fn irrep_matrices_have_displayed_entries() {
        let irrep = irrep_build(&rat(4, 1)).unwrap();
        // √4 folds to 2 at the displayed positions (1-based (3,1) and (4,2)).
        assert_eq!(*irrep.q.get(2, 0), ext(2, 0));
        assert_eq!(*irrep.q.get(3, 1), ext(2, 0));
        assert_eq!(irrep.q.triplets().len(), 2);
        for i in 0..4 {
            assert_eq!(*irrep.ham.get(i, i), ext(4, 0));
        }
        assert_eq!(*irrep.qf.get(0, 0), ExtScalar::zero());
        assert_eq!(*irrep.qf.get(1, 1), ExtScalar::one());
        assert_eq!(*irrep.qf.get(2, 2), ExtScalar::one());
        assert_eq!(*irrep.qf.get(3, 3), ext(2, 0));
        assert_eq!(*irrep.k.get(3, 0), ExtScalar::one());
        assert_eq!(*irrep.kbar.get(0, 3), ExtScalar::one());

        let irrep = irrep_build(&rat(7, 1)).unwrap();
        assert_eq!(*irrep.qbar.get(0, 1), ext(0, 1));
        assert_eq!(*irrep.qbar.get(2, 3), ext(0, -1));
        assert_eq!(*irrep.i_n.get(1, 0), ext(0, 1));
        assert_eq!(*irrep.i_n.get(3, 2), ext(0, -1));
        assert_eq!(*irrep.minus_i_nbar.get(0, 2), ext(0, 1));
        assert_eq!(*irrep.minus_i_nbar.get(1, 3), ext(0, 1));
    }

    #[test]
    fn odd_generators_respect_basis_parity() {
        let irrep = irrep_build(&rat(7, 1)).unwrap();
        for (name, m) in irrep.odd_generators() {
            for (r, c, _) in m.triplets() {
                assert_ne!(
                    IrrepSet::BASIS_PARITY[r],
                    IrrepSet::BASIS_PARITY[c],
                    "{name} connects same-parity states at ({r},{c})"
                );
            }
        }
        for (r, c, _) in irrep.k.triplets() {
            assert_eq!(IrrepSet::BASIS_PARITY[r], IrrepSet::BASIS_PARITY[c]);
        }
    }

    #[test]
    fn verify_passes_for_positive_casimir() {
        for h in [rat(1, 1), rat(4, 1), rat(9, 4), rat(7, 1)] {
            let report = superalgebra_verify(&h).unwrap();
            assert!(report.passed, "h = {h}: {report:?}");
            assert_eq!(report.checks.len(), 22, "h = {h}");
        }
    }

    #[test]
    fn zero_casimir_is_reducible() {
        let report = superalgebra_verify(&rat(0, 1)).unwrap();
        assert!(!report.passed);
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].label, "irreducible-commutant");
        assert_eq!(
            failing[0].counterexample.as_deref(),
            Some("commutant dimension = 5")
        );
    }

    #[test]
    fn commutant_dimensions() {
        let field = ExtField::new(rat(0, 1)).unwrap();
        // Empty set: everything commutes.
        assert_eq!(commutant_dimension(&field, 4, &[]).unwrap(), 16);

        let (qf, k, kbar) = sp2_pauli();
        assert_eq!(
            commutant_dimension(&field, 2, &[qf, k, kbar]).unwrap(),
            1
        );

        for h in [rat(4, 1), rat(7, 1)] {
            let irrep = irrep_build(&h).unwrap();
            let gens: Vec<ExtMatrix> = irrep
                .named_matrices()
                .iter()
                .map(|(_, m)| (*m).clone())
                .collect();
            assert_eq!(
                commutant_dimension(irrep.field(), 4, &gens).unwrap(),
                1,
                "h = {h}"
            );
        }
    }

    #[test]
    fn commutant_rejects_mismatched_inputs() {
        let f4 = ExtField::new(rat(4, 1)).unwrap();
        let f7 = ExtField::new(rat(7, 1)).unwrap();
        let m7 = ExtMatrix::identity(f7, 4);
        assert!(matches!(
            commutant_dimension(&f4, 4, core::slice::from_ref(&m7)),
            Err(Error::ExtensionMismatch { .. })
        ));
        let m4_small = ExtMatrix::identity(f4.clone(), 2);
        assert!(matches!(
            commutant_dimension(&f4, 4, core::slice::from_ref(&m4_small)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn sp2_pauli_closes_the_quadratic_algebra() {
        let (qf, k, kbar) = sp2_pauli();
        assert_eq!(
            qf.commutator(&k).unwrap(),
            k.scale(&ExtScalar::from_int(2))
        );
        assert_eq!(
            qf.commutator(&kbar).unwrap(),
            kbar.scale(&ExtScalar::from_int(-2))
        );
        assert_eq!(k.commutator(&kbar).unwrap(), qf);
    }

    #[test]
    fn no_two_dim_supercharge_exists() {
        assert_eq!(two_dim_supercharge_nullity(), 0);
    }

    #[test]
    fn quadratic_charges_match_operator_builders() {
        // The scalar parts of the n = 1 charge builders coincide with the
        // representation matrices entry by entry.
        let irrep = irrep_build(&rat(4, 1)).unwrap();
        let pairs = [
            (&irrep.qf, ChargeKind::QF),
            (&irrep.k, ChargeKind::K),
            (&irrep.kbar, ChargeKind::KBar),
        ];
        for (ext_m, kind) in pairs {
            let scalar = build_charge(kind, None, None, 1)
                .unwrap()
                .to_scalar_matrix()
                .unwrap();
            for r in 0..4 {
                for c in 0..4 {
                    let e = ext_m.get(r, c);
                    assert!(e.b.is_zero());
                    assert_eq!(
                        scalar.entry(r, c),
                        GaussianRational::real(e.a.clone()),
                        "{kind:?} at ({r},{c})"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn extension_ring_axioms(
            a1 in -4i64..=4, b1 in -4i64..=4,
            a2 in -4i64..=4, b2 in -4i64..=4,
            a3 in -4i64..=4, b3 in -4i64..=4,
        ) {
            let field = ExtField::new(rat(7, 1)).unwrap();
            let (x, y, z) = (ext(a1, b1), ext(a2, b2), ext(a3, b3));
            prop_assert_eq!(field.mul(&x, &y), field.mul(&y, &x));
            prop_assert_eq!(
                field.mul(&field.mul(&x, &y), &z),
                field.mul(&x, &field.mul(&y, &z))
            );
            prop_assert_eq!(
                field.mul(&x, &field.add(&y, &z)),
                field.add(&field.mul(&x, &y), &field.mul(&x, &z))
            );
            if !x.is_zero() {
                let inv = field.inv(&x).unwrap();
                prop_assert_eq!(field.mul(&x, &inv), ExtScalar::one());
            }
        }
    }
}
