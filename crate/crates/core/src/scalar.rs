//! Exact coefficient ring.
//!
//! A [`ScalarMonomial`] is a Gaussian rational times a product of bases raised
//! to rational exponents. Bases are either named parameters (`beta`, `k`, `E`,
//! ...) or positive integer primes. A [`ScalarSum`] is a canonical sum of such
//! monomials, so two sums are equal exactly when their representations are.
//!
//! Canonical form:
//! - the zero monomial has no bases,
//! - exponents are never zero,
//! - a prime base carries an exponent strictly between 0 and 1; the integer
//!   part is folded into the rational factor (`2^(3/2)` is stored as `2 * 2^(1/2)`).
//!
//! Under these rules the representation of a value is unique, which is what
//! lets the operator and wavefunction layers compare results structurally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("fractional power of non-positive binding `{0}`")]
    NonPositiveBinding(String),
}

/// Symbolic parameter or integer prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Symbol(Arc<str>),
    Prime(u64),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Symbol(s) => f.write_str(s),
            Base::Prime(p) => write!(f, "{p}"),
        }
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

fn gaussian_is_zero(z: &GaussianRational) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

fn gaussian_inverse(z: &GaussianRational) -> Option<GaussianRational> {
    if gaussian_is_zero(z) {
        return None;
    }
    let norm = &z.re * &z.re + &z.im * &z.im;
    Some(gaussian(&z.re / &norm, -&z.im / &norm))
}

fn cmp_gaussian(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Integer power of a rational, negative exponents allowed.
fn rational_powi(base: &Rational, exp: &BigInt) -> Rational {
    let e = exp.to_i64().expect("exponent out of range");
    let mut acc = Rational::one();
    let b = if e < 0 { base.recip() } else { base.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Prime factorisation by trial division. Inputs beyond `u64` are rejected.
fn factorize(n: &BigInt) -> Result<Vec<(u64, i64)>, ScalarError> {
    let mut n = n
        .abs()
        .to_u64()
        .ok_or_else(|| ScalarError::NotRepresentable(format!("{n} is too large to factor")))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Gaussian rational times a product of bases with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMonomial {
    factor: GaussianRational,
    bases: Vec<(Base, Rational)>,
}

impl ScalarMonomial {
    /// Builds a canonical monomial. Composite integer bases are factored.
    pub fn new(factor: GaussianRational, bases: impl IntoIterator<Item = (Base, Rational)>) -> Self {
        let mut merged: BTreeMap<Base, Rational> = BTreeMap::new();
        let mut factor = factor;
        for (base, exp) in bases {
            match base {
                Base::Prime(n) if n <= 1 => {
                    if n == 0 && exp.is_positive() {
                        factor = gaussian(Rational::zero(), Rational::zero());
                    }
                }
                Base::Prime(n) => {
                    for (p, mult) in factorize(&BigInt::from(n)).expect("u64 always factors") {
                        *merged.entry(Base::Prime(p)).or_insert_with(Rational::zero) += &exp * int(mult);
                    }
                }
                Base::Symbol(_) => {
                    *merged.entry(base).or_insert_with(Rational::zero) += exp;
                }
            }
        }
        if gaussian_is_zero(&factor) {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(merged.len());
        for (base, exp) in merged {
            if exp.is_zero() {
                continue;
            }
            match base {
                Base::Prime(p) => {
                    let whole = exp.floor();
                    let frac = &exp - &whole;
                    if !whole.is_zero() {
                        let scale = rational_powi(&int(p as i64), whole.numer());
                        factor = gaussian(&factor.re * &scale, &factor.im * &scale);
                    }
                    if !frac.is_zero() {
                        out.push((Base::Prime(p), frac));
                    }
                }
                sym => out.push((sym, exp)),
            }
        }
        Self { factor, bases: out }
    }

    pub fn zero() -> Self {
        Self {
            factor: gaussian(Rational::zero(), Rational::zero()),
            bases: Vec::new(),
        }
    }

    pub fn constant(factor: GaussianRational) -> Self {
        Self::new(factor, [])
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(gaussian(r, Rational::zero()))
    }

    pub fn symbol(name: &str) -> Self {
        Self::new(gaussian(Rational::one(), Rational::zero()), [(Base::Symbol(name.into()), Rational::one())])
    }

    pub fn factor(&self) -> &GaussianRational {
        &self.factor
    }

    pub fn bases(&self) -> &[(Base, Rational)] {
        &self.bases
    }

    pub fn is_zero(&self) -> bool {
        gaussian_is_zero(&self.factor)
    }

    /// True when the factor is real and strictly positive.
    pub fn is_positive_real(&self) -> bool {
        self.factor.im.is_zero() && self.factor.re.is_positive()
    }

    pub fn mul(&self, other: &ScalarMonomial) -> ScalarMonomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(
            &self.factor * &other.factor,
            self.bases.iter().chain(other.bases.iter()).cloned(),
        )
    }

    pub fn inverse(&self) -> Result<ScalarMonomial, ScalarError> {
        let factor = gaussian_inverse(&self.factor).ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::new(factor, self.bases.iter().map(|(b, e)| (b.clone(), -e))))
    }

    /// Rational power. Integer exponents accept any nonzero monomial;
    /// fractional exponents need a positive real factor.
    pub fn pow(&self, exp: &Rational) -> Result<ScalarMonomial, ScalarError> {
        if exp.is_integer() {
            let e = exp.to_integer();
            if self.is_zero() {
                return if e.is_positive() {
                    Ok(Self::zero())
                } else {
                    Err(ScalarError::DivisionByZero)
                };
            }
            let n = e.to_i64().ok_or_else(|| ScalarError::NotRepresentable("exponent too large".into()))?;
            let base = if n < 0 { self.inverse()? } else { self.clone() };
            let mut acc = ScalarMonomial::rational(Rational::one());
            for _ in 0..n.unsigned_abs() {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        if !self.is_positive_real() {
            return Err(ScalarError::NotRepresentable(format!(
                "fractional power of non-positive factor {}",
                ScalarSum::from(self.clone())
            )));
        }
        let re = &self.factor.re;
        let mut bases: Vec<(Base, Rational)> = self.bases.iter().map(|(b, e)| (b.clone(), e * exp)).collect();
        for (p, v) in factorize(re.numer())? {
            bases.push((Base::Prime(p), int(v) * exp));
        }
        for (p, v) in factorize(re.denom())? {
            bases.push((Base::Prime(p), -int(v) * exp));
        }
        Ok(Self::new(gaussian(Rational::one(), Rational::zero()), bases))
    }

    /// Principal square root of a positive real monomial.
    pub fn sqrt(&self) -> Result<ScalarMonomial, ScalarError> {
        self.pow(&rational(1, 2))
    }

    fn scale(&self, z: &GaussianRational) -> ScalarMonomial {
        if gaussian_is_zero(z) || self.is_zero() {
            return Self::zero();
        }
        Self {
            factor: &self.factor * z,
            bases: self.bases.clone(),
        }
    }

    fn cmp_bases(&self, other: &Self) -> Ordering {
        self.bases.cmp(&other.bases)
    }

    pub fn eval(&self, bindings: &BTreeMap<String, Complex64>) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(
            self.factor.re.to_f64().unwrap_or(f64::NAN),
            self.factor.im.to_f64().unwrap_or(f64::NAN),
        );
        for (base, exp) in &self.bases {
            let value = match base {
                Base::Prime(p) => Complex64::new(*p as f64, 0.0),
                Base::Symbol(s) => *bindings.get(s.as_ref()).ok_or_else(|| ScalarError::Unbound(s.to_string()))?,
            };
            let powered = if exp.is_integer() {
                value.powi(exp.to_integer().to_i32().unwrap_or(i32::MAX))
            } else {
                if value.im != 0.0 || value.re <= 0.0 {
                    return Err(ScalarError::NonPositiveBinding(base.to_string()));
                }
                Complex64::new(value.re.powf(exp.to_f64().unwrap_or(f64::NAN)), 0.0)
            };
            acc *= powered;
        }
        Ok(acc)
    }
}

/// Canonical sum of monomials with pairwise distinct base maps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScalarSum {
    terms: Vec<ScalarMonomial>,
}

impl ScalarSum {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from(ScalarMonomial::rational(Rational::one()))
    }

    pub fn i() -> Self {
        Self::from(ScalarMonomial::constant(gaussian(Rational::zero(), Rational::one())))
    }

    pub fn integer(n: i64) -> Self {
        Self::from(ScalarMonomial::rational(int(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from(ScalarMonomial::rational(rational(n, d)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from(ScalarMonomial::rational(r))
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::from(ScalarMonomial::constant(gaussian(re, im)))
    }

    pub fn symbol(name: &str) -> Self {
        Self::from(ScalarMonomial::symbol(name))
    }

    /// `name^exp` for a symbol.
    pub fn symbol_pow(name: &str, exp: Rational) -> Self {
        Self::from(ScalarMonomial::new(
            gaussian(Rational::one(), Rational::zero()),
            [(Base::Symbol(name.into()), exp)],
        ))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ScalarMonomial>) -> Self {
        let mut acc: BTreeMap<Vec<(Base, Rational)>, GaussianRational> = BTreeMap::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let entry = acc
                .entry(t.bases)
                .or_insert_with(|| gaussian(Rational::zero(), Rational::zero()));
            *entry = &*entry + &t.factor;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, f)| !gaussian_is_zero(f))
            .map(|(bases, factor)| ScalarMonomial { factor, bases })
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[ScalarMonomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The single term, if this sum is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<&ScalarMonomial> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    /// Rational value when the sum is a plain rational constant (zero included).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [m] if m.bases.is_empty() && m.factor.im.is_zero() => Some(m.factor.re.clone()),
            _ => None,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> ScalarSum {
        self.scale_gaussian(&gaussian(r.clone(), Rational::zero()))
    }

    pub fn scale_gaussian(&self, z: &GaussianRational) -> ScalarSum {
        if gaussian_is_zero(z) {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|t| t.scale(z)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ScalarMonomial) -> ScalarSum {
        Self::from_terms(self.terms.iter().map(|t| t.mul(m)))
    }

    pub fn div_monomial(&self, m: &ScalarMonomial) -> Result<ScalarSum, ScalarError> {
        Ok(self.mul_monomial(&m.inverse()?))
    }

    /// Square root; only nonzero positive real monomials are accepted.
    pub fn sqrt(&self) -> Result<ScalarSum, ScalarError> {
        let m = self
            .as_monomial()
            .ok_or_else(|| ScalarError::NotRepresentable(format!("square root of non-monomial {self}")))?;
        Ok(Self::from(m.sqrt()?))
    }

    pub fn pow(&self, n: u32) -> ScalarSum {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, bindings: &BTreeMap<String, Complex64>) -> Result<Complex64, ScalarError> {
        self.terms
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + t.eval(bindings)?))
    }
}

impl From<ScalarMonomial> for ScalarSum {
    fn from(m: ScalarMonomial) -> Self {
        if m.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![m] }
        }
    }
}

impl PartialOrd for ScalarSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScalarSum {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = a.cmp_bases(b).then_with(|| cmp_gaussian(&a.factor, &b.factor));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl<'a> Add<&'a ScalarSum> for &'a ScalarSum {
    type Output = ScalarSum;
    fn add(self, rhs: &ScalarSum) -> ScalarSum {
        ScalarSum::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl<'a> Sub<&'a ScalarSum> for &'a ScalarSum {
    type Output = ScalarSum;
    fn sub(self, rhs: &ScalarSum) -> ScalarSum {
        self + &(-rhs)
    }
}

impl Neg for &ScalarSum {
    type Output = ScalarSum;
    fn neg(self) -> ScalarSum {
        ScalarSum {
            terms: self
                .terms
                .iter()
                .map(|t| ScalarMonomial {
                    factor: -t.factor.clone(),
                    bases: t.bases.clone(),
                })
                .collect(),
        }
    }
}

impl<'a> Mul<&'a ScalarSum> for &'a ScalarSum {
    type Output = ScalarSum;
    fn mul(self, rhs: &ScalarSum) -> ScalarSum {
        if self.is_zero() || rhs.is_zero() {
            return ScalarSum::zero();
        }
        ScalarSum::from_terms(
            self.terms
                .iter()
                .flat_map(|a| rhs.terms.iter().map(move |b| a.mul(b))),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ScalarSum> for ScalarSum {
            type Output = ScalarSum;
            fn $m(self, rhs: ScalarSum) -> ScalarSum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarSum> for ScalarSum {
            type Output = ScalarSum;
            fn $m(self, rhs: &ScalarSum) -> ScalarSum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarSum {
    type Output = ScalarSum;
    fn neg(self) -> ScalarSum {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn fmt_exponent(e: &Rational) -> String {
    if e.is_integer() && e.is_positive() {
        e.numer().to_string()
    } else if e.is_integer() {
        format!("({})", e.numer())
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// Sign and unsigned body of a monomial, written in the operator grammar.
pub(crate) fn fmt_monomial_parts(m: &ScalarMonomial) -> (bool, String) {
    let z = &m.factor;
    let (negative, coeff) = if z.im.is_zero() {
        let neg = z.re.is_negative();
        let a = z.re.abs();
        (neg, if a.is_one() { None } else { Some(fmt_rational(&a)) })
    } else if z.re.is_zero() {
        let neg = z.im.is_negative();
        let a = z.im.abs();
        (neg, Some(if a.is_one() { "i".to_string() } else { format!("{}*i", fmt_rational(&a)) }))
    } else {
        let sign = if z.im.is_negative() { "-" } else { "+" };
        let im = z.im.abs();
        let im_s = if im.is_one() { "i".to_string() } else { format!("{}*i", fmt_rational(&im)) };
        (false, Some(format!("({} {} {})", fmt_rational(&z.re), sign, im_s)))
    };
    let mut parts: Vec<String> = coeff.into_iter().collect();
    for (base, exp) in &m.bases {
        if exp.is_one() {
            parts.push(base.to_string());
        } else {
            parts.push(format!("{base}^{}", fmt_exponent(exp)));
        }
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    (negative, parts.join("*"))
}

impl fmt::Display for ScalarSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            let (neg, body) = fmt_monomial_parts(t);
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScalarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ScalarSum::from(self.clone()).fmt(f)
    }
}

/// Convenience bindings for numeric evaluation.
pub fn bindings<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> BTreeMap<String, Complex64> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), Complex64::new(v, 0.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(name: &str) -> ScalarSum {
        ScalarSum::symbol(name)
    }

    fn pow(name: &str, n: i64, d: i64) -> ScalarSum {
        ScalarSum::symbol_pow(name, rational(n, d))
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let lhs = &pow("E", 1, 2) * &pow("beta", -1, 2);
        let rhs = &pow("E", 1, 2) * &pow("beta", 1, 2);
        assert_eq!(&lhs * &rhs, sym("E"));
    }

    #[test]
    fn zero_annihilates_and_i_squares_to_minus_one() {
        assert!((&ScalarSum::zero() * &sym("beta")).is_zero());
        assert_eq!(&ScalarSum::i() * &ScalarSum::i(), ScalarSum::integer(-1));
    }

    #[test]
    fn sqrt_halves_exponents() {
        let eb = (&sym("E") * &sym("beta")).sqrt().unwrap();
        assert_eq!(eb, &pow("E", 1, 2) * &pow("beta", 1, 2));

        // sqrt(2 k / beta) = 2^(1/2) k^(1/2) beta^(-1/2)
        let arg = &(&ScalarSum::integer(2) * &sym("k")) * &pow("beta", -1, 1);
        let omega = arg.sqrt().unwrap();
        let m = omega.as_monomial().unwrap();
        assert_eq!(m.factor().re, int(1));
        assert_eq!(
            m.bases(),
            &[
                (Base::Symbol("beta".into()), rational(-1, 2)),
                (Base::Symbol("k".into()), rational(1, 2)),
                (Base::Prime(2), rational(1, 2)),
            ]
        );

        assert_eq!(ScalarSum::ratio(9, 4).sqrt().unwrap(), ScalarSum::ratio(3, 2));
    }

    #[test]
    fn sqrt_rejects_unrepresentable_inputs() {
        assert!(ScalarSum::integer(-4).sqrt().is_err());
        assert!(ScalarSum::i().sqrt().is_err());
        assert!((&sym("E") + &sym("beta")).sqrt().is_err());
    }

    #[test]
    fn prime_exponents_fold_integer_parts() {
        let a = ScalarSum::from(ScalarMonomial::new(
            gaussian(int(1), int(0)),
            [(Base::Prime(2), rational(3, 2))],
        ));
        let b = &ScalarSum::integer(2) * &ScalarSum::integer(2).sqrt().unwrap();
        assert_eq!(a, b);
        let c = ScalarSum::integer(2).sqrt().unwrap();
        assert_eq!(&c * &c, ScalarSum::integer(2));
        // 12^(1/2) = 2 * 3^(1/2)
        let twelve = ScalarSum::integer(12).sqrt().unwrap();
        assert_eq!(twelve, &ScalarSum::integer(2) * &ScalarSum::integer(3).sqrt().unwrap());
    }

    #[test]
    fn eval_matches_direct_arithmetic() {
        let omega = (&(&ScalarSum::integer(2) * &sym("k")) * &pow("beta", -1, 1)).sqrt().unwrap();
        let v = omega.eval(&bindings([("k", 1.0), ("beta", 2.0)])).unwrap();
        assert!((v.re - 1.0).abs() < 1e-15 && v.im == 0.0);

        let ib = &ScalarSum::i() * &sym("beta");
        let v = ib.eval(&bindings([("beta", 2.0)])).unwrap();
        assert_eq!(v, Complex64::new(0.0, 2.0));

        assert_eq!(sym("E").eval(&BTreeMap::new()), Err(ScalarError::Unbound("E".into())));
        assert!(matches!(
            pow("beta", 1, 2).eval(&bindings([("beta", -1.0)])),
            Err(ScalarError::NonPositiveBinding(_))
        ));
    }

    #[test]
    fn division_by_monomials() {
        let beta = sym("beta").as_monomial().unwrap().clone();
        let two_beta_e = &(&ScalarSum::integer(2) * &sym("beta")) * &sym("E");
        assert_eq!(two_beta_e.div_monomial(&beta).unwrap(), &ScalarSum::integer(2) * &sym("E"));

        let sum = &sym("E") + &sym("beta");
        let expected = &(&sym("E") * &pow("beta", -1, 1)) + &ScalarSum::one();
        assert_eq!(sum.div_monomial(&beta).unwrap(), expected);

        assert_eq!(sum.div_monomial(&ScalarMonomial::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let a = &sym("beta") + &sym("beta");
        assert_eq!(a, &ScalarSum::integer(2) * &sym("beta"));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let s = &(&ScalarSum::ratio(-1, 2) * &sym("beta")) + &ScalarSum::i();
        assert_eq!(s.to_string(), "i - (1/2)*beta");
        assert_eq!(pow("beta", 1, 2).to_string(), "beta^(1/2)");
        assert_eq!(pow("k", -1, 1).to_string(), "k^(-1)");
    }
}
