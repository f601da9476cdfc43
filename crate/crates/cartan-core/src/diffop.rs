//! Normal-ordered linear differential operators with polynomial coefficients.
//!
//! A [`DiffOp`] is a finite sum `Σ c_m(φ) ∂^m` with the multiplication
//! coefficients kept strictly to the left of the derivatives. Composition
//! re-normal-orders via the multi-index Leibniz rule, so operator identities
//! can be checked structurally: two operators are equal exactly when their
//! normal forms coincide.

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Polynomial, VarIndex};
use crate::scalar::GaussianRational;

/// A differential operator in normal order: polynomial coefficients on the
/// left, derivative multi-indices on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DiffOp {
    /// The zero operator.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator.
    pub fn identity(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    /// Multiplication by a polynomial.
    pub fn from_poly(p: Polynomial) -> Self {
        let nvars = p.nvars();
        let mut op = Self::zero(nvars);
        op.add_term(MultiIndex::zero(nvars), p);
        op
    }

    /// Multiplication by a scalar constant.
    pub fn from_scalar(nvars: usize, c: GaussianRational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    /// The partial derivative `∂/∂φ^k`.
    pub fn partial(nvars: usize, v: VarIndex) -> Result<Self> {
        let mut op = Self::zero(nvars);
        op.add_term(MultiIndex::unit(nvars, v)?, Polynomial::one(nvars));
        Ok(op)
    }

    /// The translation generator `-i ∂/∂φ^k`.
    pub fn momentum_generator(nvars: usize, v: VarIndex) -> Result<Self> {
        let mut op = Self::zero(nvars);
        op.add_term(
            MultiIndex::unit(nvars, v)?,
            Polynomial::constant(nvars, GaussianRational::minus_i()),
        );
        Ok(op)
    }

    /// A single normal-ordered term `coeff * ∂^deriv`.
    pub fn term(deriv: MultiIndex, coeff: Polynomial) -> Result<Self> {
        if deriv.len() != coeff.nvars() {
            return Err(Error::VariableCountMismatch {
                left: deriv.len(),
                right: coeff.nvars(),
            });
        }
        let mut op = Self::zero(coeff.nvars());
        op.add_term(deriv, coeff);
        Ok(op)
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// True for the zero operator.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(derivative multi-index, coefficient)` pairs in ascending
    /// graded-lex order of the derivative.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    /// Adds `coeff * ∂^deriv` in place, dropping cancelled terms.
    pub fn add_term(&mut self, deriv: MultiIndex, coeff: Polynomial) {
        debug_assert_eq!(deriv.len(), self.nvars);
        debug_assert_eq!(coeff.nvars(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(deriv) {
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

    fn check_same_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Operator sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    /// Operator difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (d, p) in self.terms() {
            out.add_term(d.clone(), p.scale(c));
        }
        out
    }

    /// Left-multiplies by a polynomial (exact, since coefficients sit left).
    pub fn scale_poly(&self, p: &Polynomial) -> Result<Self> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: p.nvars(),
                right: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (d, c) in self.terms() {
            out.add_term(d.clone(), p.checked_mul(c)?);
        }
        Ok(out)
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: f.nvars(),
                right: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (d, c) in self.terms() {
            let df = f.partial_multi(d)?;
            if df.is_zero() {
                continue;
            }
            out = out.checked_add(&c.checked_mul(&df)?)?;
        }
        Ok(out)
    }

    /// Composition `self ∘ other`, re-normal-ordered with the Leibniz rule:
    /// `∂^a (g ·) = Σ_{e ≤ a} C(a, e) (∂^e g) ∂^{a-e}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (da, ca) in self.terms() {
            for (db, cb) in other.terms() {
                for e in sub_indices(da) {
                    let dcb = cb.partial_multi(&e)?;
                    if dcb.is_zero() {
                        continue;
                    }
                    let coeff = ca
                        .checked_mul(&dcb)?
                        .scale(&multi_binomial(da, &e));
                    let deriv = da
                        .minus(&e)
                        .expect("sub_indices stays componentwise below da")
                        .plus(db);
                    out.add_term(deriv, coeff);
                }
            }
        }
        Ok(out)
    }
}

/// All multi-indices componentwise between zero and `bound`.
fn sub_indices(bound: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let exps = bound.exponents();
    let mut current = alloc::vec![0u32; exps.len()];
    loop {
        out.push(MultiIndex::from_exponents(current.clone()));
        // Odometer increment with per-slot limits.
        let mut slot = 0;
        loop {
            if slot == exps.len() {
                return out;
            }
            if current[slot] < exps[slot] {
                current[slot] += 1;
                for c in current.iter_mut().take(slot) {
                    *c = 0;
                }
                break;
            }
            slot += 1;
        }
    }
}

/// Product of per-variable binomial coefficients `Π C(a_i, e_i)`.
fn multi_binomial(a: &MultiIndex, e: &MultiIndex) -> GaussianRational {
    let mut acc = BigInt::one();
    for (&ai, &ei) in a.exponents().iter().zip(e.exponents()) {
        acc *= num_integer::binomial(BigInt::from(ai), BigInt::from(ei));
    }
    GaussianRational::real(BigRational::from_integer(acc))
}

impl fmt::Display for DiffOp {
    /// Terms print in ascending derivative order as `coeff*d_p1^2*d_q1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let multi_term = c.terms().count() > 1;
            if d.is_constant() {
                factors.push(if multi_term {
                    format!("({c})")
                } else {
                    format!("{c}")
                });
            } else {
                if !c.is_one_poly() {
                    factors.push(if multi_term {
                        format!("({c})")
                    } else {
                        format!("{c}")
                    });
                }
                for (pos, &e) in d.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let v = VarIndex(pos + 1);
                    if e == 1 {
                        factors.push(format!("d_{}", v.label()));
                    } else {
                        factors.push(format!("d_{}^{}", v.label(), e));
                    }
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Polynomial {
    /// True for the constant polynomial `1` (display helper).
    fn is_one_poly(&self) -> bool {
        let mut it = self.terms();
        match (it.next(), it.next()) {
            (Some((m, c)), None) => m.is_constant() && c.is_one(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn poly(src: &str) -> Polynomial {
        Polynomial::parse(src, 2).unwrap()
    }

    fn d(v: usize) -> DiffOp {
        DiffOp::partial(2, VarIndex(v)).unwrap()
    }

    #[test]
    fn apply_basic_derivatives() {
        assert_eq!(d(2).apply(&poly("q1^2")).unwrap(), poly("2*q1"));
        // (q * d_p) applied to p gives q.
        let qdp = d(1).scale_poly(&poly("q1")).unwrap();
        assert_eq!(qdp.apply(&poly("p1")).unwrap(), poly("q1"));
    }

    #[test]
    fn translation_generator_carries_minus_i() {
        let lam = DiffOp::momentum_generator(2, VarIndex(2)).unwrap();
        assert_eq!(lam.apply(&poly("q1^2")).unwrap(), poly("-2i*q1"));
    }

    #[test]
    fn compose_derivative_with_multiplication() {
        // d_q ∘ (q ·) = q d_q + 1.
        let dq_q = d(2).compose(&DiffOp::from_poly(poly("q1"))).unwrap();
        let mut expected = DiffOp::from_poly(poly("1"));
        expected.add_term(MultiIndex::unit(2, VarIndex(2)).unwrap(), poly("q1"));
        assert_eq!(dq_q, expected);
    }

    #[test]
    fn compose_second_order_leibniz() {
        // d_q^2 ∘ (q ·) = q d_q^2 + 2 d_q.
        let dq2 = d(2).compose(&d(2)).unwrap();
        let got = dq2.compose(&DiffOp::from_poly(poly("q1"))).unwrap();
        let mut expected = DiffOp::zero(2);
        expected.add_term(
            MultiIndex::from_exponents(vec![0, 2]),
            poly("q1"),
        );
        expected.add_term(MultiIndex::unit(2, VarIndex(2)).unwrap(), poly("2"));
        assert_eq!(got, expected);
    }

    #[test]
    fn compose_two_first_order_fields() {
        // Frozen by hand: (q d_p) ∘ (p d_q) = qp d_p d_q + q d_q.
        let qdp = d(1).scale_poly(&poly("q1")).unwrap();
        let pdq = d(2).scale_poly(&poly("p1")).unwrap();
        let got = qdp.compose(&pdq).unwrap();
        let mut expected = DiffOp::zero(2);
        expected.add_term(MultiIndex::from_exponents(vec![1, 1]), poly("p1*q1"));
        expected.add_term(MultiIndex::unit(2, VarIndex(2)).unwrap(), poly("q1"));
        assert_eq!(got, expected);
    }

    /// Every monomial of degree ≤ 3 in two variables.
    fn small_monomials() -> Vec<Polynomial> {
        let mut out = Vec::new();
        for ep in 0u32..4 {
            for eq in 0u32..4 {
                if ep + eq <= 3 {
                    out.push(
                        Polynomial::monomial(
                            2,
                            MultiIndex::from_exponents(vec![ep, eq]),
                            GaussianRational::one(),
                        )
                        .unwrap(),
                    );
                }
            }
        }
        out
    }

    #[test]
    fn compose_agrees_with_sequential_application() {
        // Independent oracle for the Leibniz re-ordering: on every monomial of
        // degree ≤ 3, (A ∘ B) f must equal A(B(f)).
        let ops = vec![
            d(1),
            d(2),
            DiffOp::from_poly(poly("q1")),
            d(1).scale_poly(&poly("q1")).unwrap(),
            d(2).scale_poly(&poly("p1*q1")).unwrap(),
            d(2).compose(&d(2)).unwrap(),
            DiffOp::momentum_generator(2, VarIndex(1)).unwrap(),
        ];
        for a in &ops {
            for b in &ops {
                let ab = a.compose(b).unwrap();
                for f in small_monomials() {
                    assert_eq!(
                        ab.apply(&f).unwrap(),
                        a.apply(&b.apply(&f).unwrap()).unwrap(),
                        "compose mismatch on {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn partials_commute_as_operators() {
        assert_eq!(d(1).compose(&d(2)).unwrap(), d(2).compose(&d(1)).unwrap());
    }

    #[test]
    fn canonical_commutator_with_coordinate() {
        // [d_a, φ^b ·] = δ_ab as a normal-ordered identity.
        for a in 1..=2usize {
            for b in 1..=2usize {
                let da = d(a);
                let mb = DiffOp::from_poly(Polynomial::var(2, VarIndex(b)).unwrap());
                let comm = da
                    .compose(&mb)
                    .unwrap()
                    .checked_sub(&mb.compose(&da).unwrap())
                    .unwrap();
                let expected = if a == b {
                    DiffOp::identity(2)
                } else {
                    DiffOp::zero(2)
                };
                assert_eq!(comm, expected, "[d_{a}, var {b}]");
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let op = d(1)
            .scale_poly(&poly("q1"))
            .unwrap()
            .checked_add(&DiffOp::from_poly(poly("3")))
            .unwrap();
        assert_eq!(op.to_string(), "3 + q1*d_p1");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_op() -> impl Strategy<Value = DiffOp> {
            proptest::collection::vec(
                (
                    proptest::collection::vec(0u32..3, 2),
                    proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..3),
                ),
                0..4,
            )
            .prop_map(|terms| {
                let mut op = DiffOp::zero(2);
                for (deriv, coeff_terms) in terms {
                    let mut c = Polynomial::zero(2);
                    for (ep, eq, num) in coeff_terms {
                        c.add_term(
                            MultiIndex::from_exponents(vec![ep, eq]),
                            GaussianRational::from_int(num),
                        );
                    }
                    op.add_term(MultiIndex::from_exponents(deriv), c);
                }
                op
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn composition_associates(a in arb_op(), b in arb_op(), c in arb_op()) {
                let left = a.compose(&b).unwrap().compose(&c).unwrap();
                let right = a.compose(&b.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn composition_distributes(a in arb_op(), b in arb_op(), c in arb_op()) {
                let left = a.compose(&b.checked_add(&c).unwrap()).unwrap();
                let right = a.compose(&b).unwrap().checked_add(&a.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn compose_then_apply(a in arb_op(), b in arb_op()) {
                let ab = a.compose(&b).unwrap();
                let f = Polynomial::parse("p1^2*q1 + 2*q1^2 - p1", 2).unwrap();
                prop_assert_eq!(
                    ab.apply(&f).unwrap(),
                    a.apply(&b.apply(&f).unwrap()).unwrap()
                );
            }
        }
    }
}
