//! Exact coefficient fields: the rationals and univariate rational functions
//! over the rationals in one named parameter.
//!
//! Every scalar carries its field tag. Arithmetic between scalars of
//! different fields is an error (`try_*` methods) or a panic (operator
//! impls), the same way shape mismatches behave in dense array crates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("{param} = {value} is a pole")]
    Pole { param: String, value: String },
    #[error("expected a scalar over {expected}, got {found}")]
    WrongField { expected: String, found: String },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("polynomial division by zero").clone();
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if var_part.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var_part}")?;
            } else {
                write!(f, "{abs}*{var_part}")?;
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Element of Q(x): reduced fraction with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    param: Arc<str>,
    num: UPoly,
    den: UPoly,
}

impl RationalFunction {
    pub fn new(param: Arc<str>, num: UPoly, den: UPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(param, num, den))
    }

    pub fn from_poly(param: Arc<str>, num: UPoly) -> Self {
        RationalFunction { param, num, den: UPoly::one() }
    }

    fn normalized(param: Arc<str>, num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RationalFunction { param, num, den: UPoly::one() };
        }
        if den.is_one() {
            return RationalFunction { param, num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { param, num, den }
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.param.clone(), self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalized(self.param.clone(), self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(self.param.clone(), num, self.den.mul(&other.den))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.param.clone(), self.num.mul(&other.num));
        }
        Self::normalized(self.param.clone(), self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn recip(&self) -> Result<Self, CoeffError> {
        if self.num.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(self.param.clone(), self.den.clone(), self.num.clone()))
    }

    fn neg(&self) -> Self {
        RationalFunction { param: self.param.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn eval(&self, value: &Rational) -> Result<Rational, CoeffError> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(CoeffError::Pole { param: self.param.to_string(), value: value.to_string() });
        }
        Ok(self.num.eval(value) / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
}

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Functions(Arc<str>),
}

impl Field {
    pub fn functions(param: &str) -> Self {
        Field::Functions(Arc::from(param))
    }

    pub fn param(&self) -> Option<&str> {
        match self {
            Field::Rationals => None,
            Field::Functions(p) => Some(p),
        }
    }

    pub fn from_rational(&self, c: Rational) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(c),
            Field::Functions(p) => Scalar::Function(RationalFunction::from_poly(p.clone(), UPoly::constant(c))),
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(int(n))
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(Rational::one())
    }

    /// The parameter itself as a scalar, e.g. `tau`.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            Field::Rationals => None,
            Field::Functions(p) => Some(Scalar::Function(RationalFunction::from_poly(
                p.clone(),
                UPoly::monomial(Rational::one(), 1),
            ))),
        }
    }

    pub fn from_poly(&self, poly: UPoly) -> Scalar {
        match self {
            Field::Rationals => {
                assert!(poly.is_constant(), "nonconstant polynomial over Q");
                Scalar::Rational(poly.coeffs().first().cloned().unwrap_or_else(Rational::zero))
            }
            Field::Functions(p) => Scalar::Function(RationalFunction::from_poly(p.clone(), poly)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Functions(p) => write!(f, "Q({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Function(RationalFunction),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Function(r) => Field::Functions(r.param.clone()),
        }
    }

    fn same_field(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Function(a), Scalar::Function(b)) => a.param == b.param,
            _ => false,
        }
    }

    fn mismatch(&self, other: &Self) -> CoeffError {
        CoeffError::FieldMismatch { left: self.field().to_string(), right: other.field().to_string() }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Function(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Function(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoeffError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Function(a), Scalar::Function(b)) if a.param == b.param => Ok(Scalar::Function(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Function(a), Scalar::Function(b)) if a.param == b.param => Ok(Scalar::Function(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CoeffError> {
        if !self.same_field(other) {
            return Err(self.mismatch(other));
        }
        self.try_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self, CoeffError> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(CoeffError::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Function(f) => Ok(Scalar::Function(f.recip()?)),
        }
    }

    /// Evaluates the parameter at `value`. Rationals are returned unchanged.
    pub fn specialize(&self, value: &Rational) -> Result<Rational, CoeffError> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Function(f) => f.eval(value),
        }
    }

    /// Largest of numerator and denominator degree in the parameter.
    pub fn param_degree(&self) -> usize {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Function(f) => f.num.degree().max(f.den.degree()),
        }
    }

    /// Pivot-selection weight: parameter degree first, then coefficient bit size.
    pub fn complexity(&self) -> (usize, u64) {
        fn bits(r: &Rational) -> u64 {
            r.numer().bits() + r.denom().bits()
        }
        match self {
            Scalar::Rational(r) => (0, bits(r)),
            Scalar::Function(f) => (
                f.num.degree() + f.den.degree(),
                f.num.coeffs().iter().chain(f.den.coeffs()).map(bits).sum(),
            ),
        }
    }

    /// The rational value when the scalar does not involve the parameter.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Function(f) if f.is_constant() => Some(
                f.num.coeffs().first().cloned().unwrap_or_else(Rational::zero)
                    / f.den.coeffs().first().cloned().unwrap_or_else(Rational::one),
            ),
            Scalar::Function(_) => None,
        }
    }

    /// True if the textual form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rational(_) => false,
            Scalar::Function(f) => !f.den.is_one() || f.num.term_count() > 1,
        }
    }

    /// Sign of the leading coefficient of the numerator.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Function(f) => f.num.leading().is_some_and(|c| c.is_negative()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Function(f) => Scalar::Function(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Function(rf) => {
                if rf.den.is_one() {
                    return rf.num.fmt_in(&rf.param, f);
                }
                if rf.num.term_count() > 1 {
                    write!(f, "(")?;
                    rf.num.fmt_in(&rf.param, f)?;
                    write!(f, ")")?;
                } else {
                    rf.num.fmt_in(&rf.param, f)?;
                }
                write!(f, "/")?;
                if rf.den.term_count() > 1 || !rf.den.leading().is_some_and(|c| c.is_one()) {
                    write!(f, "(")?;
                    rf.den.fmt_in(&rf.param, f)?;
                    write!(f, ")")
                } else {
                    rf.den.fmt_in(&rf.param, f)
                }
            }
        }
    }
}

/// Total order used only to make outputs deterministic; not a field order.
pub fn canonical_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.to_string().cmp(&b.to_string())
}

/// `-A^2 - A^-2 = -(A^4 + 1)/A^2`, the loop value in terms of the skein variable.
pub fn tau_from_a(param: &str) -> Scalar {
    let p: Arc<str> = Arc::from(param);
    let num = UPoly::from_coeffs(vec![int(-1), int(0), int(0), int(0), int(-1)]);
    let den = UPoly::monomial(Rational::one(), 2);
    Scalar::Function(RationalFunction::normalized(p, num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> Scalar {
        Field::functions("tau").generator().unwrap()
    }

    fn tpoly(coeffs: &[i64]) -> Scalar {
        Field::functions("tau").from_poly(UPoly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect()))
    }

    #[test]
    fn rational_sum() {
        let a = Scalar::Rational(rat(1, 2));
        let b = Scalar::Rational(rat(1, 3));
        assert_eq!(a + b, Scalar::Rational(rat(5, 6)));
    }

    #[test]
    fn tau_times_inverse() {
        let t = tau();
        assert!((&t * &t.recip().unwrap()).is_one());
    }

    #[test]
    fn gcd_cancellation() {
        let q = tpoly(&[-1, 0, 1]).try_div(&tpoly(&[-1, 1])).unwrap();
        assert_eq!(q, tpoly(&[1, 1]));
        assert_eq!(q.to_string(), "tau + 1");
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f = Field::functions("tau");
        assert_eq!(tau().try_div(&f.zero()), Err(CoeffError::DivisionByZero));
        assert!(matches!(tau().try_add(&Scalar::Rational(int(1))), Err(CoeffError::FieldMismatch { .. })));
        let a = Field::functions("A").one();
        assert!(matches!(tau().try_mul(&a), Err(CoeffError::FieldMismatch { .. })));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!((-tau()).specialize(&int(2)).unwrap(), int(-2));
        assert_eq!(tpoly(&[1, 0, 1]).specialize(&int(0)).unwrap(), int(1));
        let pole = tpoly(&[-1, 1]).recip().unwrap();
        match pole.specialize(&int(1)) {
            Err(CoeffError::Pole { param, value }) => {
                assert_eq!(param, "tau");
                assert_eq!(value, "1");
            }
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn tau_from_a_values() {
        let t = tau_from_a("A");
        assert_eq!(t.specialize(&int(1)).unwrap(), int(-2));
        assert_eq!(t.specialize(&int(2)).unwrap(), rat(-17, 4));
        let Scalar::Function(rf) = &t else { panic!() };
        assert_eq!(rf.numerator().coeffs(), &[int(-1), int(0), int(0), int(0), int(-1)]);
        assert_eq!(rf.denominator().coeffs(), &[int(0), int(0), int(1)]);
        assert_eq!(t.to_string(), "(-A^4 - 1)/A^2");
    }

    #[test]
    fn display_forms() {
        assert_eq!((-tau()).to_string(), "-tau");
        assert_eq!(Scalar::Rational(rat(-3, 4)).to_string(), "-3/4");
        let x = tau().try_div(&tpoly(&[0, 2])).unwrap();
        assert_eq!(x.to_string(), "1/2");
        let y = tpoly(&[1]).try_div(&tpoly(&[0, 0, 3])).unwrap();
        assert_eq!(y.to_string(), "1/3/tau^2");
    }
}
