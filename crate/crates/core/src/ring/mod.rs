//! Arithmetic in the group ring of a free abelian group and its fraction
//! field.
//!
//! The group ring of `Z^n` over the rationals is the ring of Laurent
//! polynomials in `n` variables `z1, …, zn`. [`LaurentPoly`] stores such a
//! polynomial sparsely as a map from exponent vectors to nonzero rational
//! coefficients. [`RationalFunction`] is a quotient of two Laurent
//! polynomials; it is the coefficient field for every homology dimension
//! computed by this crate.
//!
//! Fractions are not reduced by multivariate gcd. A fraction is normalized so
//! that its denominator is an ordinary polynomial with no common monomial
//! factor and leading coefficient 1 (graded-lexicographic order); equality is
//! decided by cross-multiplication.

pub(crate) mod modp;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::parse_rational_function;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    EvaluationPole,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exponent vector of a Laurent monomial; one entry per ring variable.
///
/// Ordered graded-lexicographically: first by total degree, ties broken by
/// lexicographic comparison of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<i64>);

impl Exponents {
    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponents(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn plus(&self, rhs: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn minus(&self, rhs: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn negated(&self) -> Exponents {
        Exponents(self.0.iter().map(|a| -a).collect())
    }

    pub(crate) fn min_with(&mut self, rhs: &Exponents) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a = (*a).min(*b);
        }
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// The zero polynomial is the empty term map; no zero coefficient is ever
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponents::zero(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `z{var+1}`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(
            var < nvars,
            "variable index {var} out of range for {nvars} variables"
        );
        Self::monomial(nvars, Exponents::unit(nvars, var), BigRational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.leading().map(|(e, _)| e.total_degree())
    }

    /// Whether the polynomial is a single term, i.e. a unit of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn insert_term(&mut self, exps: Exponents, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Multiply by the monomial `coeff * z^exps`.
    pub fn mul_term(&self, exps: &Exponents, coeff: &BigRational) -> LaurentPoly {
        if coeff.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.plus(exps), c * coeff))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiply by `z^delta`: a unit of the Laurent ring.
    pub fn shift(&self, delta: &Exponents) -> LaurentPoly {
        self.mul_term(delta, &BigRational::one())
    }

    pub fn scale(&self, coeff: &BigRational) -> LaurentPoly {
        self.mul_term(&Exponents::zero(self.nvars), coeff)
    }

    /// Componentwise minimum of all exponent vectors; `None` for the zero
    /// polynomial. Dividing by `z^content` clears negative exponents and any
    /// common monomial factor.
    pub fn content(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut min = it.next()?.clone();
        for e in it {
            min.min_with(e);
        }
        Some(min)
    }

    /// Exact division; returns `None` when `self` is not a multiple of
    /// `divisor` (detected by a step budget, since Laurent monomials impose
    /// no divisibility obstruction).
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (dlead_e, dlead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        let mut budget = 100_000usize;
        while !rem.is_zero() {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let (re, rc) = rem.leading().expect("nonzero remainder has a leading term");
            let qe = re.minus(dlead_e);
            let qc = rc / dlead_c;
            rem = &rem - &divisor.mul_term(&qe, &qc);
            quot.insert_term(qe, qc);
        }
        Some(quot)
    }

    /// Substitute rational values for the variables. Fails when a variable
    /// with a negative exponent is evaluated at zero.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, RingError> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(&exps.0) {
                if e == 0 {
                    continue;
                }
                if x.is_zero() {
                    if e < 0 {
                        return Err(RingError::EvaluationPole);
                    }
                    term = BigRational::zero();
                    break;
                }
                term *= rational_pow(x, e);
            }
            acc += term;
        }
        Ok(acc)
    }
}

fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    debug_assert!(!x.is_zero() || e > 0);
    x.pow(i32::try_from(e).expect("exponent fits in i32"))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let (short, long) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &short.terms {
            for (e2, c2) in &long.terms {
                out.insert_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }
}

/// Element of the fraction field of the Laurent polynomial ring.
///
/// Invariants: the denominator is nonzero, has no negative exponents and no
/// common monomial factor, and its leading coefficient is 1. Zero is stored
/// as `0/1`. Two fractions compare equal when cross-multiplication gives the
/// zero polynomial.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            num: LaurentPoly::zero(nvars),
            den: LaurentPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(nvars, c))
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::from_poly(LaurentPoly::variable(nvars, var))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        let den = LaurentPoly::one(num.nvars());
        Self::normalized(num, den)
    }

    pub fn from_ratio(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert_eq!(num.nvars(), den.nvars());
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        // Shift the denominator's monomial content onto the numerator (a
        // unit move), then rescale so the denominator is monic.
        let content = den.content().expect("nonzero denominator");
        let (num, den) = if content.is_zero() {
            (num, den)
        } else {
            let inv = content.negated();
            (num.shift(&inv), den.shift(&inv))
        };
        let lead = den.leading().expect("nonzero denominator").1.clone();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lead.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one(self.nvars());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Substitute rational values for the variables.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, RingError> {
        let den = self.den.evaluate(point)?;
        if den.is_zero() {
            return Err(RingError::EvaluationPole);
        }
        Ok(self.num.evaluate(point)? / den)
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self, RingError> {
        parse_rational_function(text, nvars)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        // a/b = c/d iff ad - cb = 0; exact since the ring is a domain.
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num - &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Panics on division by zero; use [`RationalFunction::inv`] for a checked path.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

fn write_coeff_mon(
    f: &mut fmt::Formatter<'_>,
    coeff: &BigRational,
    exps: &Exponents,
) -> fmt::Result {
    let mon: Vec<String> = exps
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("z{}", i + 1)
            } else {
                format!("z{}^{}", i + 1, e)
            }
        })
        .collect();
    if mon.is_empty() {
        return write!(f, "{coeff}");
    }
    if coeff.is_one() {
        write!(f, "{}", mon.join("*"))
    } else if (-coeff).is_one() {
        write!(f, "-{}", mon.join("*"))
    } else {
        write!(f, "{}*{}", coeff, mon.join("*"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first.
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                write_coeff_mon(f, coeff, exps)?;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
                write_coeff_mon(f, &-coeff, exps)?;
            } else {
                write!(f, " + ")?;
                write_coeff_mon(f, coeff, exps)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
