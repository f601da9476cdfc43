//! Multivariate polynomials over Gaussian rationals.
//!
//! Phase-space coordinates are numbered 1..=2n with odd indices the momenta
//! and even indices the positions: variable 1 is `p1`, 2 is `q1`, 3 is `p2`,
//! and so on. Terms live in a `BTreeMap` keyed by exponent multi-index under
//! graded-lexicographic order, which makes iteration (and hence printing,
//! serialisation and equality) fully deterministic. Zero coefficients are
//! never stored.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// One-based phase-space variable index; odd = momentum, even = position.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(pub usize);

impl VarIndex {
    /// The raw 1-based index.
    pub fn index(self) -> usize {
        self.0
    }

    /// Zero-based slot into exponent vectors.
    pub(crate) fn pos(self) -> usize {
        debug_assert!(self.0 >= 1);
        self.0 - 1
    }

    /// Which degree of freedom this variable belongs to (1-based).
    pub fn dof(self) -> usize {
        self.0.div_ceil(2)
    }

    /// True for `p`-type (momentum) variables.
    pub fn is_momentum(self) -> bool {
        self.0 % 2 == 1
    }

    /// Conventional name, e.g. `p1` or `q3`.
    pub fn label(self) -> String {
        format!("{}{}", if self.is_momentum() { 'p' } else { 'q' }, self.dof())
    }

    /// Parses a name like `p1` or `q2`.
    pub fn from_label(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let kind = chars.next()?;
        let dof: usize = chars.as_str().parse().ok()?;
        if dof == 0 {
            return None;
        }
        match kind {
            'p' => Some(VarIndex(2 * dof - 1)),
            'q' => Some(VarIndex(2 * dof)),
            _ => None,
        }
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Exponent (or derivative-order) vector with graded-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// The zero multi-index over `len` variables.
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The unit multi-index for one variable.
    pub fn unit(len: usize, var: VarIndex) -> Result<Self> {
        if var.0 == 0 || var.0 > len {
            return Err(Error::IndexOutOfRange {
                index: var.0,
                limit: len,
            });
        }
        let mut e = vec![0; len];
        e[var.pos()] = 1;
        Ok(Self(e))
    }

    /// Wraps an explicit exponent vector.
    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    /// The exponent vector.
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of variable slots.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when there are no variable slots at all.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True for the constant (all-zero) multi-index.
    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum. Panics on length mismatch (internal use only).
    pub(crate) fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, if `other <= self` everywhere.
    pub(crate) fn minus(&self, other: &Self) -> Option<Self> {
        if !other.leq(self) {
            return None;
        }
        Some(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Componentwise `<=`.
    pub(crate) fn leq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the `2n` phase-space variables with Gaussian-rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    /// The constant `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    /// The coordinate polynomial for one variable.
    pub fn var(nvars: usize, v: VarIndex) -> Result<Self> {
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex::unit(nvars, v)?, GaussianRational::one());
        Ok(p)
    }

    /// A single monomial `c * φ^m`.
    pub fn monomial(nvars: usize, m: MultiIndex, c: GaussianRational) -> Result<Self> {
        if m.len() != nvars {
            return Err(Error::VariableCountMismatch {
                left: m.len(),
                right: nvars,
            });
        }
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        Ok(p)
    }

    /// Number of variables (always `2n` in phase-space contexts).
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Degree in a single variable; zero polynomial reports 0.
    pub fn degree_in(&self, v: VarIndex) -> Result<u32> {
        if v.0 == 0 || v.0 > self.nvars {
            return Err(Error::IndexOutOfRange {
                index: v.0,
                limit: self.nvars,
            });
        }
        Ok(self
            .terms
            .keys()
            .map(|m| m.exponents()[v.pos()])
            .max()
            .unwrap_or(0))
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    /// Adds `c * φ^m` in place, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, m: MultiIndex, c: GaussianRational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
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

    /// Sum, failing on mismatched variable counts.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference, failing on mismatched variable counts.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product, failing on mismatched variable counts.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.plus(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v.conj());
        }
        out
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.checked_mul(self).expect("same nvars by construction");
        }
        out
    }

    /// Partial derivative with respect to one variable.
    pub fn partial(&self, v: VarIndex) -> Result<Self> {
        if v.0 == 0 || v.0 > self.nvars {
            return Err(Error::IndexOutOfRange {
                index: v.0,
                limit: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            let e = m.exponents()[v.pos()];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[v.pos()] -= 1;
            out.add_term(
                MultiIndex::from_exponents(exps),
                c * &GaussianRational::from_int(i64::from(e)),
            );
        }
        Ok(out)
    }

    /// Iterated partial derivative `∂^m`.
    pub fn partial_multi(&self, m: &MultiIndex) -> Result<Self> {
        if m.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: m.len(),
                right: self.nvars,
            });
        }
        let mut out = self.clone();
        for (pos, &order) in m.exponents().iter().enumerate() {
            for _ in 0..order {
                if out.is_zero() {
                    return Ok(out);
                }
                out = out.partial(VarIndex(pos + 1))?;
            }
        }
        Ok(out)
    }

    /// Substitutes `replacements[k-1]` for variable `k`, for every variable at
    /// once. All replacement polynomials must share a variable count, which
    /// becomes the variable count of the result.
    pub fn substitute(&self, replacements: &[Polynomial]) -> Result<Self> {
        if replacements.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: replacements.len(),
                right: self.nvars,
            });
        }
        let target = match replacements.first() {
            Some(r) => r.nvars,
            None => 0,
        };
        for r in replacements {
            if r.nvars != target {
                return Err(Error::VariableCountMismatch {
                    left: r.nvars,
                    right: target,
                });
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in self.terms() {
            let mut term = Self::constant(target, c.clone());
            for (pos, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&replacements[pos].pow(e))?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at a point given as one scalar per variable.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: point.len(),
                right: self.nvars,
            });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in self.terms() {
            let mut v = c.clone();
            for (pos, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = &v * &point[pos];
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Parses the textual syntax, e.g. `1/2*p1^2 - 3i*q1`.
    ///
    /// Variables are `p1,q1,p2,q2,...`; coefficients are rationals with an
    /// optional trailing `i` (so `3/2i` means `(3/2)*i`); `+ - * ^` and
    /// parentheses have their usual meaning.
    pub fn parse(src: &str, nvars: usize) -> Result<Self> {
        parse::parse_polynomial(src, nvars)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; use `checked_add` when unsure.
    fn add(self, rhs: Self) -> Polynomial {
        self.checked_add(rhs).expect("variable counts must match")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; use `checked_sub` when unsure.
    fn sub(self, rhs: Self) -> Polynomial {
        self.checked_sub(rhs).expect("variable counts must match")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; use `checked_mul` when unsure.
    fn mul(self, rhs: Self) -> Polynomial {
        self.checked_mul(rhs).expect("variable counts must match")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Splits a coefficient into (leading minus sign, optional printed factor).
///
/// `None` as the factor means the coefficient is ±1 and can be elided in
/// front of a nonconstant monomial.
fn coeff_pieces(c: &GaussianRational) -> (bool, Option<String>) {
    if c.im.is_zero() {
        let neg = c.re.is_negative();
        let mag = if neg { -c.re.clone() } else { c.re.clone() };
        if mag.is_one() {
            (neg, None)
        } else {
            (neg, Some(mag.to_string()))
        }
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let mag = if neg { -c.im.clone() } else { c.im.clone() };
        let s = if mag.is_one() {
            String::from("i")
        } else {
            format!("{mag}i")
        };
        (neg, Some(s))
    } else {
        (false, Some(format!("({c})")))
    }
}

impl fmt::Display for Polynomial {
    /// Terms print highest graded-lex order first, factors joined with `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, coeff) = coeff_pieces(c);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if let Some(cs) = coeff {
                factors.push(cs);
            }
            for (pos, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = VarIndex(pos + 1);
                if e == 1 {
                    factors.push(v.label());
                } else {
                    factors.push(format!("{}^{}", v.label(), e));
                }
            }
            if factors.is_empty() {
                factors.push(String::from("1"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

mod parse {
    //! Recursive-descent parser for the polynomial text syntax.

    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    enum Tok {
        Num(BigRational),
        ImagUnit,
        Var(usize),
        Plus,
        Minus,
        Star,
        Caret,
        LParen,
        RParen,
    }

    fn err(at: usize, message: &str) -> Error {
        Error::Parse {
            at,
            message: message.to_string(),
        }
    }

    fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    toks.push((Tok::Plus, i));
                    i += 1;
                }
                b'-' => {
                    toks.push((Tok::Minus, i));
                    i += 1;
                }
                b'*' => {
                    toks.push((Tok::Star, i));
                    i += 1;
                }
                b'^' => {
                    toks.push((Tok::Caret, i));
                    i += 1;
                }
                b'(' => {
                    toks.push((Tok::LParen, i));
                    i += 1;
                }
                b')' => {
                    toks.push((Tok::RParen, i));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let numer: num_bigint::BigInt = src[start..i]
                        .parse()
                        .map_err(|_| err(start, "invalid integer"))?;
                    let denom = if i < bytes.len() && bytes[i] == b'/' {
                        let dstart = i + 1;
                        i += 1;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if dstart == i {
                            return Err(err(dstart, "expected digits after '/'"));
                        }
                        let d: num_bigint::BigInt = src[dstart..i]
                            .parse()
                            .map_err(|_| err(dstart, "invalid integer"))?;
                        if d.is_zero() {
                            return Err(err(dstart, "zero denominator"));
                        }
                        d
                    } else {
                        num_bigint::BigInt::one()
                    };
                    toks.push((Tok::Num(BigRational::new(numer, denom)), start));
                }
                b'i' => {
                    // Bare imaginary unit; `i3` etc. is not a variable name.
                    toks.push((Tok::ImagUnit, i));
                    i += 1;
                }
                b'p' | b'q' => {
                    let start = i;
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(err(start, "variable names look like p1, q2, ..."));
                    }
                    let label = &src[start..i];
                    let v = VarIndex::from_label(label)
                        .ok_or_else(|| err(start, "variable names look like p1, q2, ..."))?;
                    toks.push((Tok::Var(v.0), start));
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        Ok(toks)
    }

    struct Parser<'a> {
        toks: &'a [(Tok, usize)],
        cursor: usize,
        nvars: usize,
        end: usize,
    }

    impl Parser<'_> {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.cursor).map(|(t, _)| t)
        }

        fn pos(&self) -> usize {
            self.toks
                .get(self.cursor)
                .map(|&(_, p)| p)
                .unwrap_or(self.end)
        }

        fn bump(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.cursor).map(|(t, _)| t.clone());
            if t.is_some() {
                self.cursor += 1;
            }
            t
        }

        fn expr(&mut self) -> Result<Polynomial> {
            let mut negate = false;
            match self.peek() {
                Some(Tok::Minus) => {
                    negate = true;
                    self.bump();
                }
                Some(Tok::Plus) => {
                    self.bump();
                }
                _ => {}
            }
            let mut acc = self.term()?;
            if negate {
                acc = -acc;
            }
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.bump();
                        let t = self.term()?;
                        acc = acc.checked_add(&t)?;
                    }
                    Some(Tok::Minus) => {
                        self.bump();
                        let t = self.term()?;
                        acc = acc.checked_sub(&t)?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Polynomial> {
            let mut acc = self.power()?;
            while matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                let f = self.power()?;
                acc = acc.checked_mul(&f)?;
            }
            Ok(acc)
        }

        fn power(&mut self) -> Result<Polynomial> {
            let base = self.atom()?;
            if matches!(self.peek(), Some(Tok::Caret)) {
                self.bump();
                let at = self.pos();
                match self.bump() {
                    Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => {
                        let e: u32 = r
                            .to_integer()
                            .try_into()
                            .map_err(|_| err(at, "exponent too large"))?;
                        Ok(base.pow(e))
                    }
                    _ => Err(err(at, "expected a nonnegative integer exponent")),
                }
            } else {
                Ok(base)
            }
        }

        fn atom(&mut self) -> Result<Polynomial> {
            let at = self.pos();
            match self.bump() {
                Some(Tok::Num(r)) => {
                    // A number directly followed by `i` is an imaginary literal.
                    if matches!(self.peek(), Some(Tok::ImagUnit)) {
                        self.bump();
                        Ok(Polynomial::constant(
                            self.nvars,
                            GaussianRational::imaginary(r),
                        ))
                    } else {
                        Ok(Polynomial::constant(self.nvars, GaussianRational::real(r)))
                    }
                }
                Some(Tok::ImagUnit) => {
                    Ok(Polynomial::constant(self.nvars, GaussianRational::i()))
                }
                Some(Tok::Var(k)) => {
                    if k > self.nvars {
                        return Err(Error::IndexOutOfRange {
                            index: k,
                            limit: self.nvars,
                        });
                    }
                    Polynomial::var(self.nvars, VarIndex(k))
                }
                Some(Tok::LParen) => {
                    let inner = self.expr()?;
                    match self.bump() {
                        Some(Tok::RParen) => Ok(inner),
                        _ => Err(err(at, "unclosed parenthesis")),
                    }
                }
                _ => Err(err(at, "expected a number, variable, or parenthesis")),
            }
        }
    }

    pub(super) fn parse_polynomial(src: &str, nvars: usize) -> Result<Polynomial> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks: &toks,
            cursor: 0,
            nvars,
            end: src.len(),
        };
        let poly = p.expr()?;
        if p.cursor != toks.len() {
            return Err(err(p.pos(), "trailing input"));
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn parse(src: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(src, nvars).unwrap()
    }

    #[test]
    fn variable_naming_convention() {
        assert_eq!(VarIndex(1).label(), "p1");
        assert_eq!(VarIndex(2).label(), "q1");
        assert_eq!(VarIndex(3).label(), "p2");
        assert_eq!(VarIndex(4).label(), "q2");
        assert_eq!(VarIndex::from_label("q3"), Some(VarIndex(6)));
        assert_eq!(VarIndex::from_label("x1"), None);
        assert_eq!(VarIndex::from_label("p0"), None);
    }

    #[test]
    fn graded_lex_orders_by_degree_first() {
        let a = MultiIndex::from_exponents(vec![0, 3]);
        let b = MultiIndex::from_exponents(vec![2, 0]);
        assert!(a > b); // degree 3 beats degree 2
        let c = MultiIndex::from_exponents(vec![1, 1]);
        assert!(b > c); // same degree, lex on exponents
    }

    #[test]
    fn parse_spec_syntax() {
        let p = parse("1/2*p1^2 - 3i*q1", 2);
        let mut expected = Polynomial::zero(2);
        expected.add_term(
            MultiIndex::from_exponents(vec![2, 0]),
            GaussianRational::from_ratio(1, 2),
        );
        expected.add_term(
            MultiIndex::from_exponents(vec![0, 1]),
            GaussianRational::imaginary(BigRational::from_integer((-3).into())),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn sum_of_conjugate_linear_forms() {
        let sum = &parse("q1+p1", 2) + &parse("q1-p1", 2);
        assert_eq!(sum, parse("2*q1", 2));
    }

    #[test]
    fn product_expands() {
        let prod = &parse("1/2*q1", 2) * &parse("q1+2*p1", 2);
        assert_eq!(prod, parse("p1*q1 + 1/2*q1^2", 2));
    }

    #[test]
    fn imaginary_coefficient_squares_negative() {
        let p = parse("i*q1", 2);
        assert_eq!(&p * &p, parse("-q1^2", 2));
    }

    #[test]
    fn partial_derivatives() {
        let h = parse("1/2*p1^2", 2);
        assert_eq!(h.partial(VarIndex(1)).unwrap(), parse("p1", 2));
        assert_eq!(h.partial(VarIndex(2)).unwrap(), Polynomial::zero(2));
        let qp = parse("p1*q1", 2);
        assert_eq!(qp.partial(VarIndex(2)).unwrap(), parse("p1", 2));
        assert!(matches!(
            qp.partial(VarIndex(5)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn substitute_free_flow() {
        // q -> q - p (the free flow at t = 1) applied to q^2.
        let reps = vec![parse("p1", 2), parse("q1 - p1", 2)];
        let out = parse("q1^2", 2).substitute(&reps).unwrap();
        assert_eq!(out, parse("q1^2 - 2*p1*q1 + p1^2", 2));
    }

    #[test]
    fn substitute_identity_map_is_identity() {
        let reps = vec![parse("p1", 2), parse("q1", 2)];
        let p = parse("1/2*p1^2 - 3i*q1 + 4", 2);
        assert_eq!(p.substitute(&reps).unwrap(), p);
    }

    #[test]
    fn substitute_oracle_qp_shift() {
        // Frozen by hand: qp under q -> q - 2p becomes (q - 2p)p = qp - 2p^2.
        let reps = vec![parse("p1", 2), parse("q1 - 2*p1", 2)];
        let out = parse("p1*q1", 2).substitute(&reps).unwrap();
        assert_eq!(out, parse("p1*q1 - 2*p1^2", 2));
    }

    #[test]
    fn eval_at_rational_point() {
        let p = parse("p1*q1 + q1^2", 2);
        let point = vec![GaussianRational::from_int(3), GaussianRational::from_int(2)];
        assert_eq!(p.eval(&point).unwrap(), GaussianRational::from_int(10));
    }

    #[test]
    fn eval_rejects_wrong_arity() {
        let p = parse("q1", 2);
        assert!(matches!(
            p.eval(&[GaussianRational::one()]),
            Err(Error::VariableCountMismatch { .. })
        ));
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let a = parse("q1", 2);
        let b = parse("q1", 4);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::VariableCountMismatch { left: 2, right: 4 })
        ));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Polynomial::parse("q1 +", 2).is_err());
        assert!(Polynomial::parse("x1", 2).is_err());
        assert!(Polynomial::parse("q1^-1", 2).is_err());
        assert!(Polynomial::parse("1/0", 2).is_err());
        assert!(Polynomial::parse("p2", 2).is_err()); // index 3 > nvars 2
        assert!(Polynomial::parse("(q1", 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        let cases = [
            "0",
            "1",
            "-3/2",
            "q1",
            "p1*q1 + 1/2*q1^2",
            "1/2*p1^2 - 3i*q1",
            "-q1^3 + i*p1",
            "(1+2i)*q1 + 5",
        ];
        for src in cases {
            let p = parse(src, 2);
            assert_eq!(p.to_string(), src, "canonical form of {src}");
            assert_eq!(parse(&p.to_string(), 2), p);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_coeff() -> impl Strategy<Value = GaussianRational> {
            (-4i64..5, 1i64..4, -4i64..5, 1i64..4).prop_map(|(a, b, c, d)| {
                GaussianRational::new(
                    BigRational::new(a.into(), b.into()),
                    BigRational::new(c.into(), d.into()),
                )
            })
        }

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec(
                (proptest::collection::vec(0u32..3, 2), arb_coeff()),
                0..5,
            )
            .prop_map(|terms| {
                let mut p = Polynomial::zero(2);
                for (exps, c) in terms {
                    p.add_term(MultiIndex::from_exponents(exps), c);
                }
                p
            })
        }

        proptest! {
            #[test]
            fn addition_commutes(a in arb_poly(), b in arb_poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
            }

            #[test]
            fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }

            #[test]
            fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }

            #[test]
            fn partials_commute(a in arb_poly()) {
                let pq = a.partial(VarIndex(1)).unwrap().partial(VarIndex(2)).unwrap();
                let qp = a.partial(VarIndex(2)).unwrap().partial(VarIndex(1)).unwrap();
                prop_assert_eq!(pq, qp);
            }

            #[test]
            fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
                let d = |p: &Polynomial| p.partial(VarIndex(2)).unwrap();
                prop_assert_eq!(
                    d(&(&a * &b)),
                    &(&d(&a) * &b) + &(&a * &d(&b))
                );
            }

            #[test]
            fn eval_commutes_with_substitution(a in arb_poly()) {
                // Substituting then evaluating equals evaluating the
                // substituted point directly.
                let reps = [
                    Polynomial::parse("p1 + q1", 2).unwrap(),
                    Polynomial::parse("q1 - 2*p1", 2).unwrap(),
                ];
                let point = [GaussianRational::from_int(2), GaussianRational::from_ratio(1, 3)];
                let substituted = a.substitute(&reps).unwrap();
                let lhs = substituted.eval(&point).unwrap();
                let moved = [
                    reps[0].eval(&point).unwrap(),
                    reps[1].eval(&point).unwrap(),
                ];
                let rhs = a.eval(&moved).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn display_parse_round_trip(a in arb_poly()) {
                let shown = a.to_string();
                prop_assert_eq!(Polynomial::parse(&shown, 2).unwrap(), a);
            }
        }
    }
}
