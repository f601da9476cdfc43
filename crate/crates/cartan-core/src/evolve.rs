//! Time evolution of forms: exact free-particle flow and truncated Taylor
//! series for general Hamiltonians.
//!
//! The free flow is implemented twice on purpose. The component route splits
//! `exp(-iĤt)` into the coefficient pullback `q_i → q_i - t p_i` times the
//! nilpotent mixing `Π_i (1 + t c̄̂_{q_i} ĉ^{p_i})`; the kernel route rewrites
//! the form symbolically, substituting `c^{q_i} → c^{q_i} - t c^{p_i}` term
//! by term. Agreement between the two (and with a sufficiently long Taylor
//! sum) is what the evolution suite certifies.

use alloc::vec::Vec;
use num_rational::BigRational;

use crate::cartan::{evolution_operator, OperatorMatrix};
use crate::error::{Error, Result};
use crate::forms::{apply_scalar_matrix, form_from_spec, form_to_spec, FormSpec, FormVector};
use crate::grassmann::{c_hat, cbar_hat};
use crate::poly::{Polynomial, VarIndex};
use crate::scalar::GaussianRational;

/// How an evolution result was produced.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EvolutionMethod {
    /// Closed-form free-particle evolution (`H = Σ p_i²/2`).
    ExactFree,
    /// Taylor series `Σ_{m≤order} (-iĤt)^m/m!` for a supplied Hamiltonian.
    Taylor(u32),
}

/// An evolved form together with the time step and method used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionResult {
    pub t: BigRational,
    pub psi: FormVector,
    pub method: EvolutionMethod,
}

/// The free-flow substitution list: `p_i → p_i`, `q_i → q_i - t p_i`.
fn free_flow_map(n: usize, t: &BigRational) -> Result<Vec<Polynomial>> {
    let nvars = 2 * n;
    let minus_t = GaussianRational::real(-t.clone());
    let mut map = Vec::with_capacity(nvars);
    for k in 1..=nvars {
        let var = Polynomial::var(nvars, VarIndex(k))?;
        if VarIndex(k).is_momentum() {
            map.push(var);
        } else {
            let shift = Polynomial::var(nvars, VarIndex(k - 1))?.scale(&minus_t);
            map.push(var.checked_add(&shift)?);
        }
    }
    Ok(map)
}

/// Pulls a phase-space function back along the free flow for time `t`.
///
/// The closed form is stated for one degree of freedom only; other variable
/// counts are refused.
pub fn liouville_flow_free(f: &Polynomial, t: &BigRational) -> Result<Polynomial> {
    if f.nvars() != 2 {
        return Err(Error::DegreesOfFreedomCeiling {
            n: f.nvars().div_ceil(2),
            max: 1,
        });
    }
    f.substitute(&free_flow_map(1, t)?)
}

/// Evolves a form under the free Hamiltonian (one degree of freedom):
/// nilpotent component mixing followed by the coefficient pullback.
pub fn evolve_free(psi: &FormVector, t: &BigRational) -> Result<FormVector> {
    let n = require_one_dof(psi)?;
    let tg = GaussianRational::real(t.clone());
    let m = cbar_hat(VarIndex(2), n)?.matmul(&c_hat(VarIndex(1), n)?)?;
    let mixed = psi.checked_add(&apply_scalar_matrix(&m, psi)?.scale(&tg))?;
    let map = free_flow_map(n, t)?;
    let mut out = FormVector::zero(n)?;
    for (linear, c) in mixed.components().iter().enumerate() {
        if !c.is_zero() {
            out.set_component(linear, c.substitute(&map)?)?;
        }
    }
    Ok(out)
}

/// The free closed form is stated for one degree of freedom only.
fn require_one_dof(psi: &FormVector) -> Result<usize> {
    if psi.n() != 1 {
        return Err(Error::DegreesOfFreedomCeiling {
            n: psi.n(),
            max: 1,
        });
    }
    Ok(1)
}

/// Free evolution by symbolic rewriting: every `c^{q_i}` in the form's
/// spec becomes `c^{q_i} - t c^{p_i}`, and coefficients pull back along the
/// flow. Never touches the generator matrices.
pub fn evolve_free_kernel(psi: &FormVector, t: &BigRational) -> Result<FormVector> {
    let n = require_one_dof(psi)?;
    let map = free_flow_map(n, t)?;
    let minus_t = GaussianRational::real(-t.clone());
    let spec = form_to_spec(psi);
    let mut out = FormSpec::new();
    for (indices, coeff) in &spec.terms {
        let pulled = coeff.substitute(&map)?;
        // Expand the generator product multiplicatively: each q-generator
        // contributes either itself or (-t) times its momentum partner.
        let mut branches: Vec<(Vec<VarIndex>, GaussianRational)> =
            alloc::vec![(Vec::new(), GaussianRational::from_int(1))];
        for &idx in indices {
            let mut next = Vec::with_capacity(branches.len() * 2);
            for (seq, factor) in &branches {
                let mut kept = seq.clone();
                kept.push(idx);
                next.push((kept, factor.clone()));
                if !idx.is_momentum() {
                    let mut replaced = seq.clone();
                    replaced.push(VarIndex(idx.0 - 1));
                    next.push((replaced, factor.clone() * minus_t.clone()));
                }
            }
            branches = next;
        }
        for (seq, factor) in branches {
            out.push(seq, pulled.scale(&factor));
        }
    }
    form_from_spec(n, &out)
}

/// Evolves by the truncated series `Σ_{m=0}^{order} (-it)^m Ĥ^m ψ / m!`,
/// computing each term from the previous one.
pub fn evolve_taylor(
    h: &Polynomial,
    psi: &FormVector,
    t: &BigRational,
    order: u32,
) -> Result<FormVector> {
    let n = psi.n();
    let hamiltonian = evolution_operator(h, n)?;
    evolve_taylor_with(&hamiltonian, psi, t, order)
}

/// [`evolve_taylor`] with a pre-built evolution operator.
pub fn evolve_taylor_with(
    hamiltonian: &OperatorMatrix,
    psi: &FormVector,
    t: &BigRational,
    order: u32,
) -> Result<FormVector> {
    let minus_it = GaussianRational::minus_i() * GaussianRational::real(t.clone());
    let mut term = psi.clone();
    let mut sum = psi.clone();
    for m in 1..=order {
        let inv_m = GaussianRational::from_ratio(1, i64::from(m));
        term = hamiltonian
            .apply(&term)?
            .scale(&(minus_it.clone() * inv_m));
        if term.is_zero() {
            break;
        }
        sum = sum.checked_add(&term)?;
    }
    Ok(sum)
}

/// Dispatcher used by the CLI: picks the method and records it in the
/// result. `ExactFree` ignores the Hamiltonian; `Taylor` requires one.
pub fn evolve(
    h: Option<&Polynomial>,
    psi: &FormVector,
    t: &BigRational,
    method: EvolutionMethod,
) -> Result<EvolutionResult> {
    let evolved = match method {
        EvolutionMethod::ExactFree => evolve_free(psi, t)?,
        EvolutionMethod::Taylor(order) => {
            let h = h.ok_or(Error::MissingHamiltonian)?;
            evolve_taylor(h, psi, t, order)?
        }
    };
    Ok(EvolutionResult {
        t: t.clone(),
        psi: evolved,
        method,
    })
}
