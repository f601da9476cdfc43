//! Differential forms as component vectors, plus the symplectic form and
//! Hamiltonian vector fields.
//!
//! A form on `2n`-dimensional phase space is a vector of `4^n` polynomial
//! components, one per Grassmann basis monomial, indexed exactly as in
//! [`crate::grassmann`]. [`FormSpec`] is the human-facing representation — a
//! list of generator-index sequences with coefficients — and converting it to
//! a [`FormVector`] applies the anticommutation signs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::grassmann::{canonical_sign, BasisIndex, OracleState};
use crate::pauli::{Rep, SparseScalarMatrix};
use crate::poly::{Polynomial, VarIndex};
use crate::scalar::GaussianRational;

/// A differential form stored densely: one polynomial per basis monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVector {
    n: usize,
    components: Vec<Polynomial>,
}

impl FormVector {
    /// The zero form.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        Ok(Self {
            n,
            components: vec![Polynomial::zero(2 * n); 1 << (2 * n)],
        })
    }

    /// The basis monomial `b` with coefficient 1.
    pub fn basis(b: BasisIndex) -> Self {
        let mut f = Self::zero(b.n()).expect("basis index implies n >= 1");
        f.components[b.linear()] = Polynomial::one(2 * b.n());
        f
    }

    /// From an explicit component vector of length `4^n`.
    pub fn from_components(n: usize, components: Vec<Polynomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        let dim = 1usize << (2 * n);
        if components.len() != dim {
            return Err(Error::ShapeMismatch {
                left_rows: components.len(),
                left_cols: 1,
                right_rows: dim,
                right_cols: 1,
            });
        }
        for c in &components {
            if c.nvars() != 2 * n {
                return Err(Error::VariableCountMismatch {
                    left: c.nvars(),
                    right: 2 * n,
                });
            }
        }
        Ok(Self { n, components })
    }

    /// A zero-form (scalar function) on `n` degrees of freedom.
    pub fn scalar(n: usize, f: Polynomial) -> Result<Self> {
        let mut out = Self::zero(n)?;
        if f.nvars() != 2 * n {
            return Err(Error::VariableCountMismatch {
                left: f.nvars(),
                right: 2 * n,
            });
        }
        out.components[0] = f;
        Ok(out)
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of components, `4^n`.
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// The component on the basis monomial with this linear index.
    pub fn component(&self, linear: usize) -> &Polynomial {
        &self.components[linear]
    }

    /// All components in linear order.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Overwrites one component.
    pub fn set_component(&mut self, linear: usize, value: Polynomial) -> Result<()> {
        if linear >= self.components.len() {
            return Err(Error::IndexOutOfRange {
                index: linear,
                limit: self.components.len(),
            });
        }
        if value.nvars() != 2 * self.n {
            return Err(Error::VariableCountMismatch {
                left: value.nvars(),
                right: 2 * self.n,
            });
        }
        self.components[linear] = value;
        Ok(())
    }

    /// True when every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Component-wise sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: 2 * self.n,
                right: 2 * other.n,
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n: self.n,
            components,
        })
    }

    /// Component-wise difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&GaussianRational::from_int(-1)))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            n: self.n,
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// The degree-`p` part (zero form outside `0..=2n`).
    pub fn degree_part(&self, p: u32) -> Self {
        let mut out = Self::zero(self.n).expect("existing form has n >= 1");
        for (linear, c) in self.components.iter().enumerate() {
            if (linear.count_ones()) == p {
                out.components[linear] = c.clone();
            }
        }
        out
    }

    /// Splits into homogeneous pieces by form degree, index `p` of the
    /// result holding the `p`-form part.
    pub fn degree_decompose(&self) -> Vec<Self> {
        (0..=2 * self.n as u32).map(|p| self.degree_part(p)).collect()
    }

    /// True when only degree-`p` components are present.
    pub fn is_homogeneous(&self, p: u32) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(linear, c)| c.is_zero() || linear.count_ones() == p)
    }

    /// Converts a sparse oracle state into a dense form vector.
    pub fn from_oracle(state: &OracleState) -> Self {
        let mut out = Self::zero(state.n()).expect("oracle state has n >= 1");
        for (linear, coeff) in state.terms() {
            out.components[linear] = coeff.clone();
        }
        out
    }

    /// Converts to the sparse oracle representation.
    pub fn to_oracle(&self) -> OracleState {
        let mut out = OracleState::zero(self.n).expect("form has n >= 1");
        for (linear, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(linear, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for FormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (linear, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            let label = BasisIndex::from_linear(self.n, linear)
                .expect("component index in range")
                .label();
            let coeff = format_coeff(c);
            if label == "1" {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{coeff} {label}")?;
            }
        }
        Ok(())
    }
}

/// Renders a polynomial coefficient, parenthesised when it has several terms.
fn format_coeff(p: &Polynomial) -> String {
    let s = alloc::format!("{p}");
    if p.terms().count() > 1 {
        alloc::format!("({s})")
    } else {
        s
    }
}

impl Polynomial {
    fn is_one(&self) -> bool {
        let mut it = self.terms();
        match it.next() {
            Some((m, c)) => m.is_constant() && c.is_one() && it.next().is_none(),
            None => false,
        }
    }
}

/// A form written the way a person would: generator-index sequences (in any
/// order, repeats allowed) with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormSpec {
    pub terms: Vec<(Vec<VarIndex>, Polynomial)>,
}

impl FormSpec {
    /// An empty spec.
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends one term.
    pub fn push(&mut self, indices: Vec<VarIndex>, coeff: Polynomial) {
        self.terms.push((indices, coeff));
    }
}

/// Assembles a form vector from a spec, applying anticommutation signs.
///
/// Terms with a repeated generator vanish and are dropped silently.
pub fn form_from_spec(n: usize, spec: &FormSpec) -> Result<FormVector> {
    let mut out = FormVector::zero(n)?;
    for (indices, coeff) in &spec.terms {
        if coeff.nvars() != 2 * n {
            return Err(Error::VariableCountMismatch {
                left: coeff.nvars(),
                right: 2 * n,
            });
        }
        let Some(mono) = canonical_sign(indices) else {
            continue;
        };
        let b = BasisIndex::from_subset(n, &mono.indices)?;
        let signed = coeff.scale(&GaussianRational::from_int(i64::from(mono.sign)));
        let current = out.component(b.linear()).checked_add(&signed)?;
        out.set_component(b.linear(), current)?;
    }
    Ok(out)
}

/// Reads a form vector back out as a spec with ascending index sequences.
pub fn form_to_spec(form: &FormVector) -> FormSpec {
    let mut spec = FormSpec::new();
    for (linear, c) in form.components().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let b = BasisIndex::from_linear(form.n(), linear).expect("component index in range");
        spec.push(b.subset(), c.clone());
    }
    spec
}

/// The pointwise inner-product density `Σ_b conj(ψ_b) Φ_b`.
///
/// This is only the integrand of the sesquilinear pairing; no integration
/// over phase space is performed.
pub fn inner_product_density(psi: &FormVector, phi: &FormVector) -> Result<Polynomial> {
    if psi.n() != phi.n() {
        return Err(Error::VariableCountMismatch {
            left: 2 * psi.n(),
            right: 2 * phi.n(),
        });
    }
    let mut out = Polynomial::zero(2 * psi.n());
    for (a, b) in psi.components().iter().zip(phi.components()) {
        out = out.checked_add(&a.conj().checked_mul(b)?)?;
    }
    Ok(out)
}

/// Applies a scalar matrix (dimension `4^n`) to a form vector.
pub fn apply_scalar_matrix(m: &SparseScalarMatrix, form: &FormVector) -> Result<FormVector> {
    let dim = form.dim();
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::ShapeMismatch {
            left_rows: m.rows(),
            left_cols: m.cols(),
            right_rows: dim,
            right_cols: dim,
        });
    }
    let mut out = FormVector::zero(form.n())?;
    for (r, c, v) in m.iter() {
        let contribution = form.component(c).scale(v);
        let updated = out.component(r).checked_add(&contribution)?;
        out.set_component(r, updated)?;
    }
    Ok(out)
}

/// The symplectic form in `(p, q)` block convention, one 2×2 block per
/// degree of freedom.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
    flipped: bool,
}

impl SymplecticForm {
    /// The standard form for `n` degrees of freedom.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        Ok(Self { n, flipped: false })
    }

    /// The form as dictated by a construction recipe (possibly sign-flipped,
    /// for negative-control runs).
    pub fn in_rep(rep: &Rep, n: usize) -> Result<Self> {
        let mut form = Self::standard(n)?;
        form.flipped = rep.omega_sign() < 0;
        Ok(form)
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The contravariant entry `ω^{ab}`; within each degree of freedom the
    /// block over `(p, q)` is `[[0, -1], [1, 0]]`.
    pub fn upper(&self, a: VarIndex, b: VarIndex) -> i64 {
        debug_assert!(a.0 >= 1 && a.0 <= 2 * self.n);
        debug_assert!(b.0 >= 1 && b.0 <= 2 * self.n);
        if a.dof() != b.dof() {
            return 0;
        }
        let raw = if a.is_momentum() && !b.is_momentum() {
            -1
        } else if !a.is_momentum() && b.is_momentum() {
            1
        } else {
            0
        };
        if self.flipped {
            -raw
        } else {
            raw
        }
    }

    /// The covariant entry `ω_{ab}`, the matrix inverse of [`Self::upper`].
    pub fn lower(&self, a: VarIndex, b: VarIndex) -> i64 {
        -self.upper(a, b)
    }

    /// The contravariant entries as a dense `2n × 2n` matrix.
    pub fn upper_matrix(&self) -> SparseScalarMatrix {
        let mut m = SparseScalarMatrix::zero(2 * self.n, 2 * self.n);
        for a in 1..=2 * self.n {
            for b in 1..=2 * self.n {
                let e = self.upper(VarIndex(a), VarIndex(b));
                if e != 0 {
                    m.set(a - 1, b - 1, GaussianRational::from_int(e)).unwrap();
                }
            }
        }
        m
    }
}

/// A vector field on phase space, `components[k-1]` holding `V^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    n: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    /// From explicit components `V^1, ..., V^{2n}`.
    pub fn from_components(n: usize, components: Vec<Polynomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegreesOfFreedom);
        }
        if components.len() != 2 * n {
            return Err(Error::ShapeMismatch {
                left_rows: components.len(),
                left_cols: 1,
                right_rows: 2 * n,
                right_cols: 1,
            });
        }
        for c in &components {
            if c.nvars() != 2 * n {
                return Err(Error::VariableCountMismatch {
                    left: c.nvars(),
                    right: 2 * n,
                });
            }
        }
        Ok(Self { n, components })
    }

    /// The Hamiltonian vector field of `h`: `V^j = ω^{jl} ∂_l h`.
    pub fn hamiltonian(h: &Polynomial, n: usize) -> Result<Self> {
        Self::hamiltonian_in(&Rep::standard(), h, n)
    }

    /// [`Self::hamiltonian`] under an explicit construction recipe.
    pub fn hamiltonian_in(rep: &Rep, h: &Polynomial, n: usize) -> Result<Self> {
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
        let mut components = Vec::with_capacity(2 * n);
        for j in 1..=2 * n {
            let mut v = Polynomial::zero(2 * n);
            for l in 1..=2 * n {
                let w = omega.upper(VarIndex(j), VarIndex(l));
                if w != 0 {
                    let term = h.partial(VarIndex(l))?.scale(&GaussianRational::from_int(w));
                    v = v.checked_add(&term)?;
                }
            }
            components.push(v);
        }
        Ok(Self { n, components })
    }

    /// Degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The component `V^k`.
    pub fn component(&self, k: VarIndex) -> &Polynomial {
        &self.components[k.0 - 1]
    }

    /// All components in index order.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }
}
