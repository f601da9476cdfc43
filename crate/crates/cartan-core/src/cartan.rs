//! The operator layer: Cartan calculus and symmetry charges as matrices of
//! differential operators.
//!
//! Every operator here is a `4^n × 4^n` matrix whose entries are
//! [`DiffOp`]s, acting on [`FormVector`]s by entry-wise application. The
//! matrices carry a parity grading (even operators preserve form degree mod
//! 2, odd ones flip it) so that the graded commutator picks the right sign
//! automatically. Builders come in pairs: the plain constructor uses the
//! standard conventions, the `_in` variant threads a [`Rep`] through so the
//! deliberate-mutation controls can disturb the construction.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_rational::BigRational;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::forms::{FormVector, SymplecticForm, VectorField};
use crate::grassmann::{c_hat_in, cbar_hat_in, BasisIndex};
use crate::pauli::{Rep, SparseScalarMatrix};
use crate::poly::{MultiIndex, Polynomial, VarIndex};
use crate::scalar::GaussianRational;

/// Parity of an operator with respect to form degree mod 2.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Preserves degree mod 2.
    Even,
    /// Flips degree mod 2.
    Odd,
    /// No definite parity; graded commutators are refused.
    Mixed,
}

impl Parity {
    /// Parity of a composition.
    pub fn compose(self, other: Self) -> Self {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (Parity::Even, p) | (p, Parity::Even) => p,
            (Parity::Odd, Parity::Odd) => Parity::Even,
        }
    }

    /// Parity of a sum.
    pub fn merge(self, other: Self) -> Self {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }
}

/// A `4^n × 4^n` matrix of differential operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    n: usize,
    parity: Parity,
    entries: BTreeMap<(usize, usize), DiffOp>,
}

impl OperatorMatrix {
    /// The zero operator with a declared parity.
    pub fn zero(n: usize, parity: Parity) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        Ok(Self {
            n,
            parity,
            entries: BTreeMap::new(),
        })
    }

    /// The identity operator.
    pub fn identity(n: usize) -> Result<Self> {
        let mut out = Self::zero(n, Parity::Even)?;
        for b in 0..out.dim() {
            out.set(b, b, DiffOp::identity(2 * n))?;
        }
        Ok(out)
    }

    /// A diagonal operator acting as `op` on every component.
    pub fn diagonal(n: usize, op: &DiffOp) -> Result<Self> {
        if op.nvars() != 2 * n {
            return Err(Error::VariableCountMismatch {
                left: op.nvars(),
                right: 2 * n,
            });
        }
        let mut out = Self::zero(n, Parity::Even)?;
        for b in 0..out.dim() {
            out.set(b, b, op.clone())?;
        }
        Ok(out)
    }

    /// Wraps a scalar matrix, inferring parity from which degree pairs its
    /// entries connect.
    pub fn from_scalar_matrix(n: usize, m: &SparseScalarMatrix) -> Result<Self> {
        let dim = 1usize << (2 * n);
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::ShapeMismatch {
                left_rows: m.rows(),
                left_cols: m.cols(),
                right_rows: dim,
                right_cols: dim,
            });
        }
        let mut parity: Option<Parity> = None;
        let mut out = Self::zero(n, Parity::Even)?;
        for (r, c, v) in m.iter() {
            let p = if (r.count_ones() + c.count_ones()) % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            parity = Some(match parity {
                None => p,
                Some(q) => q.merge(p),
            });
            out.set(r, c, DiffOp::from_scalar(2 * n, v.clone()))?;
        }
        out.parity = parity.unwrap_or(Parity::Even);
        Ok(out)
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension, `4^n`.
    pub fn dim(&self) -> usize {
        1 << (2 * self.n)
    }

    /// Declared parity.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Overrides the declared parity.
    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// True when no entry survives.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry at `(row, col)`, if nonzero.
    pub fn entry(&self, row: usize, col: usize) -> Option<&DiffOp> {
        self.entries.get(&(row, col))
    }

    /// Iterates nonzero entries as `(row, col, op)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &DiffOp)> {
        self.entries.iter().map(|(&(r, c), op)| (r, c, op))
    }

    /// Overwrites one entry (dropping it when zero).
    pub fn set(&mut self, row: usize, col: usize, op: DiffOp) -> Result<()> {
        let dim = self.dim();
        if row >= dim || col >= dim {
            return Err(Error::IndexOutOfRange {
                index: row.max(col),
                limit: dim,
            });
        }
        if op.nvars() != 2 * self.n {
            return Err(Error::VariableCountMismatch {
                left: op.nvars(),
                right: 2 * self.n,
            });
        }
        if op.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), op);
        }
        Ok(())
    }

    /// Adds into one entry, dropping it if the sum cancels.
    pub fn add_entry(&mut self, row: usize, col: usize, op: &DiffOp) -> Result<()> {
        let current = match self.entry(row, col) {
            Some(e) => e.checked_add(op)?,
            None => op.clone(),
        };
        self.set(row, col, current)
    }

    /// Adds `m ⊗ op` — every scalar entry of `m` times the operator.
    pub fn add_scalar_times_op(
        &mut self,
        m: &SparseScalarMatrix,
        op: &DiffOp,
    ) -> Result<()> {
        for (r, c, v) in m.iter() {
            self.add_entry(r, c, &op.scale(v))?;
        }
        Ok(())
    }

    /// Matrix sum. The result keeps the common parity, or becomes mixed.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: 2 * self.n,
                right: 2 * other.n,
            });
        }
        let mut out = self.clone();
        out.parity = self.parity.merge(other.parity);
        for (r, c, op) in other.entries() {
            out.add_entry(r, c, op)?;
        }
        Ok(out)
    }

    /// Matrix difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&GaussianRational::from_int(-1)))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s == &GaussianRational::from_int(0) {
            return Self {
                n: self.n,
                parity: self.parity,
                entries: BTreeMap::new(),
            };
        }
        Self {
            n: self.n,
            parity: self.parity,
            entries: self
                .entries
                .iter()
                .map(|(&k, op)| (k, op.scale(s)))
                .collect(),
        }
    }

    /// Applies the operator to a form.
    pub fn apply(&self, form: &FormVector) -> Result<FormVector> {
        if form.n() != self.n {
            return Err(Error::VariableCountMismatch {
                left: 2 * self.n,
                right: 2 * form.n(),
            });
        }
        let mut out = FormVector::zero(self.n)?;
        for (r, c, op) in self.entries() {
            let src = form.component(c);
            if src.is_zero() {
                continue;
            }
            let applied = op.apply(src)?;
            let updated = out.component(r).checked_add(&applied)?;
            out.set_component(r, updated)?;
        }
        Ok(out)
    }

    /// Operator composition, `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: 2 * self.n,
                right: 2 * other.n,
            });
        }
        // Group the right factor's entries by row for the inner sum.
        let mut by_row: BTreeMap<usize, Vec<(usize, &DiffOp)>> = BTreeMap::new();
        for (r, c, op) in other.entries() {
            by_row.entry(r).or_default().push((c, op));
        }
        let mut out = Self::zero(self.n, self.parity.compose(other.parity))?;
        for (r, m, left) in self.entries() {
            let Some(cols) = by_row.get(&m) else {
                continue;
            };
            for &(c, right) in cols {
                out.add_entry(r, c, &left.compose(right)?)?;
            }
        }
        Ok(out)
    }

    /// The graded commutator: anticommutator when both operators are odd,
    /// commutator otherwise. Mixed-parity operands are refused.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        if self.parity == Parity::Mixed || other.parity == Parity::Mixed {
            return Err(Error::MixedParity);
        }
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        if self.parity == Parity::Odd && other.parity == Parity::Odd {
            ab.checked_add(&ba)
        } else {
            ab.checked_sub(&ba)
        }
    }

    /// True when every nonzero entry is consistent with the declared parity.
    pub fn parity_consistent(&self) -> bool {
        match self.parity {
            Parity::Mixed => true,
            Parity::Even => self
                .entries
                .keys()
                .all(|&(r, c)| (r.count_ones() + c.count_ones()) % 2 == 0),
            Parity::Odd => self
                .entries
                .keys()
                .all(|&(r, c)| (r.count_ones() + c.count_ones()) % 2 == 1),
        }
    }

    /// Collapses to a scalar matrix when every entry is a pure number
    /// (no derivatives, constant coefficient); `None` otherwise.
    pub fn to_scalar_matrix(&self) -> Option<SparseScalarMatrix> {
        let mut m = SparseScalarMatrix::zero(self.dim(), self.dim());
        for (r, c, op) in self.entries() {
            let mut terms = op.terms();
            let (deriv, coeff) = terms.next()?;
            if terms.next().is_some() || !deriv.is_constant() {
                return None;
            }
            let mut coeff_terms = coeff.terms();
            let (mono, value) = coeff_terms.next()?;
            if coeff_terms.next().is_some() || !mono.is_constant() {
                return None;
            }
            m.set(r, c, value.clone()).ok()?;
        }
        Some(m)
    }
}

/// The exterior derivative `d = Σ_k ĉ^k ∂_k`.
pub fn exterior_derivative(n: usize) -> Result<OperatorMatrix> {
    exterior_derivative_in(&Rep::standard(), n)
}

/// [`exterior_derivative`] under an explicit construction recipe.
pub fn exterior_derivative_in(rep: &Rep, n: usize) -> Result<OperatorMatrix> {
    let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
    for k in 1..=2 * n {
        let m = c_hat_in(rep, VarIndex(k), n)?;
        let op = DiffOp::partial(2 * n, VarIndex(k))?;
        out.add_scalar_times_op(&m, &op)?;
    }
    Ok(out)
}

/// The codifferential `δ = -Σ_k c̄̂_k ∂_k`, adjoint to `d`.
pub fn codifferential(n: usize) -> Result<OperatorMatrix> {
    codifferential_in(&Rep::standard(), n)
}

/// [`codifferential`] under an explicit construction recipe.
pub fn codifferential_in(rep: &Rep, n: usize) -> Result<OperatorMatrix> {
    let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
    for k in 1..=2 * n {
        let m = cbar_hat_in(rep, VarIndex(k), n)?;
        let op = DiffOp::partial(2 * n, VarIndex(k))?.scale(&GaussianRational::from_int(-1));
        out.add_scalar_times_op(&m, &op)?;
    }
    Ok(out)
}

/// The Laplacian `Δ = dδ + δd`, built literally from the two halves.
pub fn laplacian(n: usize) -> Result<OperatorMatrix> {
    laplacian_in(&Rep::standard(), n)
}

/// [`laplacian`] under an explicit construction recipe.
pub fn laplacian_in(rep: &Rep, n: usize) -> Result<OperatorMatrix> {
    let d = exterior_derivative_in(rep, n)?;
    let delta = codifferential_in(rep, n)?;
    d.graded_commutator(&delta)
}

/// The Hodge star as a scalar matrix: each basis monomial maps to its
/// complement with a sign from sorting the concatenated index sequence.
pub fn hodge_star(n: usize) -> Result<SparseScalarMatrix> {
    let dim = 1usize << (2 * n);
    let mut m = SparseScalarMatrix::zero(dim, dim);
    for b in BasisIndex::all(n)? {
        let complement = (dim - 1) ^ b.linear();
        // Count inversions between the ascending subset and its ascending
        // complement: pairs (s in S, t not in S) with t < s.
        let mut inversions = 0u32;
        for s in &b.subset() {
            for t in 1..s.0 {
                if !b.contains(VarIndex(t)) {
                    inversions += 1;
                }
            }
        }
        let sign = if (n as u32 + inversions).is_multiple_of(2) {
            1
        } else {
            -1
        };
        m.set(complement, b.linear(), GaussianRational::from_int(sign))?;
    }
    Ok(m)
}

/// [`hodge_star`] wrapped as an operator matrix (it is degree-even because
/// `p` and `2n - p` always share a parity).
pub fn hodge_operator(n: usize) -> Result<OperatorMatrix> {
    let star = hodge_star(n)?;
    Ok(OperatorMatrix::from_scalar_matrix(n, &star)?.with_parity(Parity::Even))
}

/// Interior contraction with a vector field: `ι_V = Σ_j c̄̂_j V^j`.
pub fn interior_contraction(field: &VectorField) -> Result<OperatorMatrix> {
    interior_contraction_in(&Rep::standard(), field)
}

/// [`interior_contraction`] under an explicit construction recipe.
pub fn interior_contraction_in(rep: &Rep, field: &VectorField) -> Result<OperatorMatrix> {
    let n = field.n();
    let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
    for j in 1..=2 * n {
        let component = field.component(VarIndex(j));
        if component.is_zero() {
            continue;
        }
        let m = cbar_hat_in(rep, VarIndex(j), n)?;
        out.add_scalar_times_op(&m, &DiffOp::from_poly(component.clone()))?;
    }
    Ok(out)
}

/// The Lie derivative along the Hamiltonian flow of `h`, built literally as
/// `ℒ_h = d ι_h + ι_h d` with `ι_h` the contraction with the Hamiltonian
/// vector field.
pub fn lie_derivative(h: &Polynomial, n: usize) -> Result<OperatorMatrix> {
    lie_derivative_in(&Rep::standard(), h, n)
}

/// [`lie_derivative`] under an explicit construction recipe.
pub fn lie_derivative_in(rep: &Rep, h: &Polynomial, n: usize) -> Result<OperatorMatrix> {
    let field = VectorField::hamiltonian_in(rep, h, n)?;
    let iota = interior_contraction_in(rep, &field)?;
    let d = exterior_derivative_in(rep, n)?;
    d.graded_commutator(&iota)
}

/// The scalar Liouville operator `L = -i Σ ω^{ab} (∂_b h) ∂_a`.
pub fn liouville_op(h: &Polynomial, n: usize) -> Result<DiffOp> {
    liouville_op_in(&Rep::standard(), h, n)
}

/// [`liouville_op`] under an explicit construction recipe.
pub fn liouville_op_in(rep: &Rep, h: &Polynomial, n: usize) -> Result<DiffOp> {
    if n == 0 {
        return Err(Error::ZeroDegreesOfFreedom);
    }
    if h.nvars() != 2 * n {
        return Err(Error::VariableCountMismatch {
            left: h.nvars(),
            right: 2 * n,
        });
    }
    let omega = SymplecticForm::in_rep(rep, n)?;
    let mut op = DiffOp::zero(2 * n);
    for a in 1..=2 * n {
        for b in 1..=2 * n {
            let w = omega.upper(VarIndex(a), VarIndex(b));
            if w == 0 {
                continue;
            }
            let coeff = h
                .partial(VarIndex(b))?
                .scale(&(GaussianRational::minus_i() * GaussianRational::from_int(w)));
            if coeff.is_zero() {
                continue;
            }
            let term = DiffOp::term(MultiIndex::unit(2 * n, VarIndex(a))?, coeff)?;
            op = op.checked_add(&term)?;
        }
    }
    Ok(op)
}

/// The evolution operator: the Liouville operator on every component plus
/// the Hessian coupling `i Σ ω^{jl} (∂_l ∂_k h) c̄̂_j ĉ^k`.
pub fn evolution_operator(h: &Polynomial, n: usize) -> Result<OperatorMatrix> {
    evolution_operator_in(&Rep::standard(), h, n)
}

/// [`evolution_operator`] under an explicit construction recipe.
pub fn evolution_operator_in(rep: &Rep, h: &Polynomial, n: usize) -> Result<OperatorMatrix> {
    let liouville = liouville_op_in(rep, h, n)?;
    let mut out = OperatorMatrix::zero(n, Parity::Even)?;
    for b in 0..out.dim() {
        out.add_entry(b, b, &liouville)?;
    }
    let omega = SymplecticForm::in_rep(rep, n)?;
    for j in 1..=2 * n {
        for k in 1..=2 * n {
            let mut hessian = Polynomial::zero(2 * n);
            for l in 1..=2 * n {
                let w = omega.upper(VarIndex(j), VarIndex(l));
                if w == 0 {
                    continue;
                }
                let second = h.partial(VarIndex(l))?.partial(VarIndex(k))?;
                hessian = hessian.checked_add(&second.scale(&GaussianRational::from_int(w)))?;
            }
            if hessian.is_zero() {
                continue;
            }
            let m = cbar_hat_in(rep, VarIndex(j), n)?.matmul(&c_hat_in(rep, VarIndex(k), n)?)?;
            let op = DiffOp::from_poly(hessian.scale(&GaussianRational::i()));
            out.add_scalar_times_op(&m, &op)?;
        }
    }
    Ok(out)
}

/// Wedge multiplication by a form, as an operator matrix.
pub fn form_operator(f: &FormVector) -> Result<OperatorMatrix> {
    form_operator_in(&Rep::standard(), f)
}

/// [`form_operator`] under an explicit construction recipe.
pub fn form_operator_in(rep: &Rep, f: &FormVector) -> Result<OperatorMatrix> {
    let n = f.n();
    let dim = f.dim();
    let mut parity: Option<Parity> = None;
    let mut out = OperatorMatrix::zero(n, Parity::Even)?;
    for (linear, coeff) in f.components().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let p = if linear.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        parity = Some(match parity {
            None => p,
            Some(q) => q.merge(p),
        });
        // Wedge by the basis monomial: the product of its generators in
        // ascending order, leftmost applied last.
        let mut wedge = SparseScalarMatrix::identity(dim);
        for k in BasisIndex::from_linear(n, linear)?.subset() {
            wedge = wedge.matmul(&c_hat_in(rep, k, n)?)?;
        }
        out.add_scalar_times_op(&wedge, &DiffOp::from_poly(coeff.clone()))?;
    }
    Ok(out.with_parity(parity.unwrap_or(Parity::Even)))
}

/// The symmetry charges.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChargeKind {
    /// The exterior derivative.
    Q,
    /// The symplectic adjoint of `Q`.
    QBar,
    /// The ghost-number (form-degree) operator.
    QF,
    /// The degree-raising quadratic `½ Σ ω_{ab} ĉ^a ĉ^b`.
    K,
    /// The degree-lowering quadratic `½ Σ ω^{ab} c̄̂_a c̄̂_b`.
    KBar,
    /// `Σ_k ĉ^k (∂_k h)` — needs a Hamiltonian.
    N,
    /// `Σ_{j,l} c̄̂_j ω^{jl} (∂_l h)` — needs a Hamiltonian.
    NBar,
    /// The deformed supercharge `Q - β N`.
    QH,
    /// The deformed supercharge `Q̄ + β N̄`.
    QHBar,
}

impl ChargeKind {
    /// All charge kinds in a fixed order.
    pub const ALL: [ChargeKind; 9] = [
        ChargeKind::Q,
        ChargeKind::QBar,
        ChargeKind::QF,
        ChargeKind::K,
        ChargeKind::KBar,
        ChargeKind::N,
        ChargeKind::NBar,
        ChargeKind::QH,
        ChargeKind::QHBar,
    ];

    /// True when the charge depends on a Hamiltonian.
    pub fn needs_hamiltonian(self) -> bool {
        matches!(
            self,
            ChargeKind::N | ChargeKind::NBar | ChargeKind::QH | ChargeKind::QHBar
        )
    }

    /// True when the charge depends on the deformation parameter β.
    pub fn needs_beta(self) -> bool {
        matches!(self, ChargeKind::QH | ChargeKind::QHBar)
    }
}

/// Builds a symmetry charge.
pub fn build_charge(
    kind: ChargeKind,
    h: Option<&Polynomial>,
    beta: Option<&BigRational>,
    n: usize,
) -> Result<OperatorMatrix> {
    build_charge_in(&Rep::standard(), kind, h, beta, n)
}

/// [`build_charge`] under an explicit construction recipe.
pub fn build_charge_in(
    rep: &Rep,
    kind: ChargeKind,
    h: Option<&Polynomial>,
    beta: Option<&BigRational>,
    n: usize,
) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::ZeroDegreesOfFreedom);
    }
    let get_h = || -> Result<&Polynomial> {
        let h = h.ok_or(Error::MissingHamiltonian)?;
        if h.nvars() != 2 * n {
            return Err(Error::VariableCountMismatch {
                left: h.nvars(),
                right: 2 * n,
            });
        }
        Ok(h)
    };
    let omega = SymplecticForm::in_rep(rep, n)?;
    match kind {
        ChargeKind::Q => exterior_derivative_in(rep, n),
        ChargeKind::QBar => {
            let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
            for j in 1..=2 * n {
                for l in 1..=2 * n {
                    let w = omega.upper(VarIndex(j), VarIndex(l));
                    if w == 0 {
                        continue;
                    }
                    let m = cbar_hat_in(rep, VarIndex(j), n)?;
                    let op = DiffOp::partial(2 * n, VarIndex(l))?
                        .scale(&GaussianRational::from_int(w));
                    out.add_scalar_times_op(&m, &op)?;
                }
            }
            Ok(out)
        }
        ChargeKind::QF => {
            let dim = 1usize << (2 * n);
            let mut total = SparseScalarMatrix::zero(dim, dim);
            for k in 1..=2 * n {
                let number =
                    c_hat_in(rep, VarIndex(k), n)?.matmul(&cbar_hat_in(rep, VarIndex(k), n)?)?;
                total = total.checked_add(&number)?;
            }
            Ok(OperatorMatrix::from_scalar_matrix(n, &total)?.with_parity(Parity::Even))
        }
        ChargeKind::K => {
            let dim = 1usize << (2 * n);
            let mut total = SparseScalarMatrix::zero(dim, dim);
            for a in 1..=2 * n {
                for b in 1..=2 * n {
                    let w = omega.lower(VarIndex(a), VarIndex(b));
                    if w == 0 {
                        continue;
                    }
                    let prod =
                        c_hat_in(rep, VarIndex(a), n)?.matmul(&c_hat_in(rep, VarIndex(b), n)?)?;
                    total = total.checked_add(&prod.scale(&GaussianRational::from_ratio(w, 2)))?;
                }
            }
            Ok(OperatorMatrix::from_scalar_matrix(n, &total)?.with_parity(Parity::Even))
        }
        ChargeKind::KBar => {
            let dim = 1usize << (2 * n);
            let mut total = SparseScalarMatrix::zero(dim, dim);
            for a in 1..=2 * n {
                for b in 1..=2 * n {
                    let w = omega.upper(VarIndex(a), VarIndex(b));
                    if w == 0 {
                        continue;
                    }
                    let prod = cbar_hat_in(rep, VarIndex(a), n)?
                        .matmul(&cbar_hat_in(rep, VarIndex(b), n)?)?;
                    total = total.checked_add(&prod.scale(&GaussianRational::from_ratio(w, 2)))?;
                }
            }
            Ok(OperatorMatrix::from_scalar_matrix(n, &total)?.with_parity(Parity::Even))
        }
        ChargeKind::N => {
            let h = get_h()?;
            let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
            for k in 1..=2 * n {
                let grad = h.partial(VarIndex(k))?;
                if grad.is_zero() {
                    continue;
                }
                let m = c_hat_in(rep, VarIndex(k), n)?;
                out.add_scalar_times_op(&m, &DiffOp::from_poly(grad))?;
            }
            Ok(out)
        }
        ChargeKind::NBar => {
            let h = get_h()?;
            let mut out = OperatorMatrix::zero(n, Parity::Odd)?;
            for j in 1..=2 * n {
                for l in 1..=2 * n {
                    let w = omega.upper(VarIndex(j), VarIndex(l));
                    if w == 0 {
                        continue;
                    }
                    let grad = h.partial(VarIndex(l))?.scale(&GaussianRational::from_int(w));
                    if grad.is_zero() {
                        continue;
                    }
                    let m = cbar_hat_in(rep, VarIndex(j), n)?;
                    out.add_scalar_times_op(&m, &DiffOp::from_poly(grad))?;
                }
            }
            Ok(out)
        }
        ChargeKind::QH => {
            let beta = beta.ok_or(Error::MissingBeta)?;
            let q = build_charge_in(rep, ChargeKind::Q, h, None, n)?;
            let nn = build_charge_in(rep, ChargeKind::N, h, None, n)?;
            q.checked_sub(&nn.scale(&GaussianRational::real(beta.clone())))
        }
        ChargeKind::QHBar => {
            let beta = beta.ok_or(Error::MissingBeta)?;
            let q = build_charge_in(rep, ChargeKind::QBar, h, None, n)?;
            let nn = build_charge_in(rep, ChargeKind::NBar, h, None, n)?;
            q.checked_add(&nn.scale(&GaussianRational::real(beta.clone())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(k: usize) -> VarIndex {
        VarIndex(k)
    }

    fn poly(src: &str, n: usize) -> Polynomial {
        Polynomial::parse(src, 2 * n).unwrap()
    }

    fn partial(n: usize, k: usize) -> DiffOp {
        DiffOp::partial(2 * n, v(k)).unwrap()
    }

    #[test]
    fn exterior_derivative_entries_at_one_dof() {
        let d = exterior_derivative(1).unwrap();
        assert_eq!(d.parity(), Parity::Odd);
        assert!(d.parity_consistent());
        assert_eq!(d.entries().count(), 4);
        assert_eq!(d.entry(1, 0), Some(&partial(1, 2)));
        assert_eq!(d.entry(2, 0), Some(&partial(1, 1)));
        assert_eq!(d.entry(3, 1), Some(&partial(1, 1)));
        assert_eq!(
            d.entry(3, 2),
            Some(&partial(1, 2).scale(&GaussianRational::from_int(-1)))
        );
    }

    #[test]
    fn codifferential_entries_at_one_dof() {
        let delta = codifferential(1).unwrap();
        let minus = |op: DiffOp| op.scale(&GaussianRational::from_int(-1));
        assert_eq!(delta.entry(0, 1), Some(&minus(partial(1, 2))));
        assert_eq!(delta.entry(0, 2), Some(&minus(partial(1, 1))));
        assert_eq!(delta.entry(1, 3), Some(&minus(partial(1, 1))));
        assert_eq!(delta.entry(2, 3), Some(&partial(1, 2)));
        assert_eq!(delta.entries().count(), 4);
    }

    #[test]
    fn derivative_and_codifferential_square_to_zero() {
        for n in 1..=3usize {
            let d = exterior_derivative(n).unwrap();
            assert!(d.compose(&d).unwrap().is_zero(), "d^2 at n={n}");
            let delta = codifferential(n).unwrap();
            assert!(delta.compose(&delta).unwrap().is_zero(), "delta^2 at n={n}");
        }
    }

    #[test]
    fn laplacian_is_flat() {
        // dδ + δd = -Σ_j ∂_j² on every component.
        for n in 1..=2usize {
            let mut expected_op = DiffOp::zero(2 * n);
            for j in 1..=2 * n {
                let second = DiffOp::term(
                    MultiIndex::unit(2 * n, v(j))
                        .unwrap()
                        .plus(&MultiIndex::unit(2 * n, v(j)).unwrap()),
                    Polynomial::constant(2 * n, GaussianRational::from_int(-1)),
                )
                .unwrap();
                expected_op = expected_op.checked_add(&second).unwrap();
            }
            let expected = OperatorMatrix::diagonal(n, &expected_op).unwrap();
            assert_eq!(laplacian(n).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn hodge_star_matrix_at_one_dof() {
        let star = hodge_star(1).unwrap();
        let mut expected = SparseScalarMatrix::zero(4, 4);
        expected.set(3, 0, GaussianRational::from_int(-1)).unwrap();
        expected.set(2, 1, GaussianRational::from_int(1)).unwrap();
        expected.set(1, 2, GaussianRational::from_int(-1)).unwrap();
        expected.set(0, 3, GaussianRational::from_int(-1)).unwrap();
        assert_eq!(star, expected);
    }

    #[test]
    fn hodge_star_orientation_at_two_dof() {
        // The volume coefficient of ⋆1 is +1 for n = 2.
        let star = hodge_star(2).unwrap();
        assert_eq!(star.entry(15, 0), GaussianRational::from_int(1));
    }

    #[test]
    fn hodge_star_squares_to_degree_sign() {
        for n in 1..=3usize {
            let star = hodge_star(n).unwrap();
            let twice = star.matmul(&star).unwrap();
            for b in BasisIndex::all(n).unwrap() {
                let expected = if b.degree() % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    twice.entry(b.linear(), b.linear()),
                    GaussianRational::from_int(expected),
                    "degree {} at n={n}",
                    b.degree()
                );
            }
            assert_eq!(twice.nnz(), 1 << (2 * n));
        }
    }

    #[test]
    fn codifferential_agrees_with_star_route() {
        // δ = -⋆ d ⋆ , checked as an operator identity.
        for n in 1..=3usize {
            let star = hodge_operator(n).unwrap();
            let d = exterior_derivative(n).unwrap();
            let route = star
                .compose(&d)
                .unwrap()
                .compose(&star)
                .unwrap()
                .scale(&GaussianRational::from_int(-1));
            assert_eq!(route, codifferential(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn contraction_with_oscillator_field() {
        // H = (p² + q²)/2 has V = (-q, p); the contraction entries follow
        // the derivative matrices with those coefficients.
        let field = VectorField::hamiltonian(&poly("1/2*p1^2 + 1/2*q1^2", 1), 1).unwrap();
        let iota = interior_contraction(&field).unwrap();
        let mul = |src: &str| DiffOp::from_poly(poly(src, 1));
        assert_eq!(iota.entry(0, 1), Some(&mul("p1")));
        assert_eq!(iota.entry(0, 2), Some(&mul("-q1")));
        assert_eq!(iota.entry(1, 3), Some(&mul("-q1")));
        assert_eq!(iota.entry(2, 3), Some(&mul("-p1")));
        assert_eq!(iota.entries().count(), 4);
        assert!(iota.parity_consistent());
    }

    #[test]
    fn contraction_squares_to_zero() {
        for n in 1..=2usize {
            let h = if n == 1 {
                poly("p1^2*q1 + q1^3", 1)
            } else {
                poly("p1*p2 + q1^2*q2", 2)
            };
            let field = VectorField::hamiltonian(&h, n).unwrap();
            let iota = interior_contraction(&field).unwrap();
            assert!(iota.compose(&iota).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn liouville_operator_of_free_particle() {
        // H = p²/2: L = -i p ∂_q, and i L sends q to p.
        let l = liouville_op(&poly("1/2*p1^2", 1), 1).unwrap();
        let expected = DiffOp::term(
            MultiIndex::unit(2, v(2)).unwrap(),
            poly("-i*p1", 1),
        )
        .unwrap();
        assert_eq!(l, expected);
        let il = l.scale(&GaussianRational::i());
        assert_eq!(il.apply(&poly("q1", 1)).unwrap(), poly("p1", 1));
    }

    #[test]
    fn liouville_operator_of_oscillator() {
        // H = (p² + q²)/2: L = -i(p ∂_q - q ∂_p).
        let l = liouville_op(&poly("1/2*p1^2 + 1/2*q1^2", 1), 1).unwrap();
        let mut expected = DiffOp::term(MultiIndex::unit(2, v(2)).unwrap(), poly("-i*p1", 1))
            .unwrap();
        expected = expected
            .checked_add(
                &DiffOp::term(MultiIndex::unit(2, v(1)).unwrap(), poly("i*q1", 1)).unwrap(),
            )
            .unwrap();
        assert_eq!(l, expected);
    }

    #[test]
    fn evolution_operator_of_free_particle() {
        // Only the (3,2) entry (0-based) survives beyond the diagonal, with
        // value -i; the diagonal carries the Liouville operator.
        let h = poly("1/2*p1^2", 1);
        let ev = evolution_operator(&h, 1).unwrap();
        let l = liouville_op(&h, 1).unwrap();
        for b in 0..4 {
            assert_eq!(ev.entry(b, b), Some(&l));
        }
        let coupling = DiffOp::from_scalar(2, GaussianRational::minus_i());
        assert_eq!(ev.entry(2, 1), Some(&coupling));
        assert_eq!(ev.entries().count(), 5);
        assert!(ev.parity_consistent());
    }

    #[test]
    fn evolution_operator_matches_generic_one_dof_pattern() {
        // For any H at n = 1 the Hessian block is
        //   diag(0, -i H_qp, +i H_pq, 0) + i H_qq e_{12} - i H_pp e_{21}
        // in 0-based indexing of the middle rows.
        let h = poly("p1^2*q1 + 1/3*q1^3 + p1*q1", 1);
        let ev = evolution_operator(&h, 1).unwrap();
        let l = liouville_op(&h, 1).unwrap();
        let hpp = h.partial(v(1)).unwrap().partial(v(1)).unwrap();
        let hqq = h.partial(v(2)).unwrap().partial(v(2)).unwrap();
        let hpq = h.partial(v(1)).unwrap().partial(v(2)).unwrap();

        let diag1 = l
            .checked_add(&DiffOp::from_poly(hpq.scale(&GaussianRational::minus_i())))
            .unwrap();
        let diag2 = l
            .checked_add(&DiffOp::from_poly(hpq.scale(&GaussianRational::i())))
            .unwrap();
        assert_eq!(ev.entry(0, 0), Some(&l));
        assert_eq!(ev.entry(1, 1), Some(&diag1));
        assert_eq!(ev.entry(2, 2), Some(&diag2));
        assert_eq!(ev.entry(3, 3), Some(&l));
        assert_eq!(
            ev.entry(1, 2),
            Some(&DiffOp::from_poly(hqq.scale(&GaussianRational::i())))
        );
        assert_eq!(
            ev.entry(2, 1),
            Some(&DiffOp::from_poly(hpp.scale(&GaussianRational::minus_i())))
        );
        assert_eq!(ev.entries().count(), 6);
    }

    #[test]
    fn lie_derivative_is_i_times_evolution() {
        // Two routes to the same operator: d ι + ι d versus i Ĥ.
        let samples: [(usize, Polynomial); 4] = [
            (1, poly("1/2*p1^2", 1)),
            (1, poly("1/2*p1^2 + 1/2*q1^2", 1)),
            (1, poly("1/3*q1^3 + p1*q1^2", 1)),
            (2, poly("p1*p2 + q1*q2^2 + 1/2*p1^2", 2)),
        ];
        for (n, h) in &samples {
            let lie = lie_derivative(h, *n).unwrap();
            let ev = evolution_operator(h, *n).unwrap().scale(&GaussianRational::i());
            assert_eq!(lie, ev, "h = {h}");
        }
    }

    #[test]
    fn ghost_number_counts_degree() {
        let qf = build_charge(ChargeKind::QF, None, None, 1).unwrap();
        let m = qf.to_scalar_matrix().unwrap();
        for (idx, expected) in [(0usize, 0i64), (1, 1), (2, 1), (3, 2)] {
            assert_eq!(m.entry(idx, idx), GaussianRational::from_int(expected));
        }
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn quadratic_charges_at_one_dof() {
        let k = build_charge(ChargeKind::K, None, None, 1)
            .unwrap()
            .to_scalar_matrix()
            .unwrap();
        let mut expected = SparseScalarMatrix::zero(4, 4);
        expected.set(3, 0, GaussianRational::from_int(1)).unwrap();
        assert_eq!(k, expected);

        let kbar = build_charge(ChargeKind::KBar, None, None, 1)
            .unwrap()
            .to_scalar_matrix()
            .unwrap();
        let mut expected = SparseScalarMatrix::zero(4, 4);
        expected.set(0, 3, GaussianRational::from_int(1)).unwrap();
        assert_eq!(kbar, expected);
    }

    #[test]
    fn charge_q_is_the_exterior_derivative() {
        for n in 1..=2usize {
            assert_eq!(
                build_charge(ChargeKind::Q, None, None, n).unwrap(),
                exterior_derivative(n).unwrap()
            );
        }
    }

    #[test]
    fn deformed_charges_shift_by_gradient() {
        // With H = q and β = 1/2 the deformation only touches the entries
        // that held ∂_q.
        let h = poly("q1", 1);
        let beta = BigRational::new(1.into(), 2.into());
        let qh = build_charge(ChargeKind::QH, Some(&h), Some(&beta), 1).unwrap();
        let half = GaussianRational::from_ratio(1, 2);
        let dq_minus = partial(1, 2)
            .checked_sub(&DiffOp::from_scalar(2, half.clone()))
            .unwrap();
        assert_eq!(qh.entry(1, 0), Some(&dq_minus));
        assert_eq!(qh.entry(2, 0), Some(&partial(1, 1)));
        assert_eq!(qh.entry(3, 1), Some(&partial(1, 1)));
        assert_eq!(
            qh.entry(3, 2),
            Some(&dq_minus.scale(&GaussianRational::from_int(-1)))
        );

        let qhbar = build_charge(ChargeKind::QHBar, Some(&h), Some(&beta), 1).unwrap();
        let dq_plus = partial(1, 2)
            .checked_add(&DiffOp::from_scalar(2, half))
            .unwrap()
            .scale(&GaussianRational::from_int(-1));
        assert_eq!(qhbar.entry(0, 1), Some(&partial(1, 1)));
        assert_eq!(qhbar.entry(0, 2), Some(&dq_plus));
        assert_eq!(qhbar.entry(1, 3), Some(&dq_plus));
        assert_eq!(
            qhbar.entry(2, 3),
            Some(&partial(1, 1).scale(&GaussianRational::from_int(-1)))
        );
    }

    #[test]
    fn charges_report_missing_inputs() {
        assert_eq!(
            build_charge(ChargeKind::N, None, None, 1),
            Err(Error::MissingHamiltonian)
        );
        let h = poly("q1", 1);
        assert_eq!(
            build_charge(ChargeKind::QH, Some(&h), None, 1),
            Err(Error::MissingBeta)
        );
        assert_eq!(
            build_charge(ChargeKind::QHBar, None, None, 1),
            Err(Error::MissingBeta)
        );
    }

    #[test]
    fn sp2_triple_relations() {
        // [QF, K] = 2K, [QF, K̄] = -2K̄, [K, K̄] = QF - n. The n on the
        // right is forced by the per-dof decomposition: each degree of
        // freedom contributes its own occupation numbers minus one.
        for n in 1..=2usize {
            let qf = build_charge(ChargeKind::QF, None, None, n).unwrap();
            let k = build_charge(ChargeKind::K, None, None, n).unwrap();
            let kbar = build_charge(ChargeKind::KBar, None, None, n).unwrap();
            assert_eq!(
                qf.graded_commutator(&k).unwrap(),
                k.scale(&GaussianRational::from_int(2)),
                "n={n}"
            );
            assert_eq!(
                qf.graded_commutator(&kbar).unwrap(),
                kbar.scale(&GaussianRational::from_int(-2)),
                "n={n}"
            );
            let expected = qf
                .checked_sub(
                    &OperatorMatrix::identity(n)
                        .unwrap()
                        .scale(&GaussianRational::from_int(n as i64)),
                )
                .unwrap();
            assert_eq!(k.graded_commutator(&kbar).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn supercharges_are_nilpotent() {
        for n in 1..=2usize {
            let q = build_charge(ChargeKind::Q, None, None, n).unwrap();
            let qbar = build_charge(ChargeKind::QBar, None, None, n).unwrap();
            assert!(q.graded_commutator(&q).unwrap().is_zero());
            assert!(qbar.graded_commutator(&qbar).unwrap().is_zero());
            assert!(q.graded_commutator(&qbar).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_parity_is_refused() {
        // 1 + ĉ^q has no definite parity.
        let mixed = OperatorMatrix::identity(1)
            .unwrap()
            .checked_add(
                &OperatorMatrix::from_scalar_matrix(
                    1,
                    &crate::grassmann::c_hat(v(2), 1).unwrap(),
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(mixed.parity(), Parity::Mixed);
        let d = exterior_derivative(1).unwrap();
        assert_eq!(d.graded_commutator(&mixed), Err(Error::MixedParity));
    }

    #[test]
    fn application_routes_through_entries() {
        // d(q) = c^q and δ(q c^q) = -1.
        let d = exterior_derivative(1).unwrap();
        let f = FormVector::scalar(1, poly("q1", 1)).unwrap();
        let df = d.apply(&f).unwrap();
        assert_eq!(*df.component(1), poly("1", 1));
        assert!(df.component(0).is_zero() && df.component(2).is_zero());

        let delta = codifferential(1).unwrap();
        let mut g = FormVector::zero(1).unwrap();
        g.set_component(1, poly("q1", 1)).unwrap();
        let dg = delta.apply(&g).unwrap();
        assert_eq!(*dg.component(0), poly("-1", 1));
    }

    #[test]
    fn wedge_operator_reproduces_derivative_bracket() {
        // For F = p c^q the graded bracket [d, F̂] equals wedging with
        // dF = c^p c^q.
        let mut f = FormVector::zero(1).unwrap();
        f.set_component(1, poly("p1", 1)).unwrap();
        let f_hat = form_operator(&f).unwrap();
        assert_eq!(f_hat.parity(), Parity::Odd);

        let d = exterior_derivative(1).unwrap();
        let bracket = d.graded_commutator(&f_hat).unwrap();

        let mut df = FormVector::zero(1).unwrap();
        df.set_component(3, poly("1", 1)).unwrap();
        let df_hat = form_operator(&df).unwrap();
        assert_eq!(df_hat.parity(), Parity::Even);
        assert_eq!(bracket, df_hat);
    }

    #[test]
    fn scalar_collapse_detects_derivatives() {
        let qf = build_charge(ChargeKind::QF, None, None, 1).unwrap();
        assert!(qf.to_scalar_matrix().is_some());
        assert!(exterior_derivative(1).unwrap().to_scalar_matrix().is_none());
        let field = VectorField::from_components(1, vec![poly("q1", 1), poly("0", 1)]).unwrap();
        assert!(interior_contraction(&field)
            .unwrap()
            .to_scalar_matrix()
            .is_none());
    }

    #[test]
    fn flipped_convention_negates_omega_charges() {
        let rep = Rep {
            flip_omega: true,
            ..Rep::standard()
        };
        let n = 1;
        for kind in [ChargeKind::QBar, ChargeKind::K, ChargeKind::KBar] {
            let standard = build_charge(kind, None, None, n).unwrap();
            let flipped = build_charge_in(&rep, kind, None, None, n).unwrap();
            assert_eq!(flipped, standard.scale(&GaussianRational::from_int(-1)), "{kind:?}");
        }
        // Q does not involve the symplectic form at all.
        assert_eq!(
            build_charge_in(&rep, ChargeKind::Q, None, None, n).unwrap(),
            build_charge(ChargeKind::Q, None, None, n).unwrap()
        );
        // The evolution operator flips sign wholesale.
        let h = poly("1/2*p1^2 + q1^2", 1);
        assert_eq!(
            evolution_operator_in(&rep, &h, n).unwrap(),
            evolution_operator(&h, n)
                .unwrap()
                .scale(&GaussianRational::from_int(-1))
        );
    }
}
