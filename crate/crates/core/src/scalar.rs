//! Exact Laurent polynomials in the deformation parameter `q` over the rationals.
//!
//! Equality of two scalars is identity of Laurent polynomials, never equality
//! after substituting a number for `q`. This is what lets every relation
//! checked by the crate hold for all `q` that are not roots of unity at once.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of `Q[q, q^-1]`.
///
/// Stored as a map from `q`-exponent to a nonzero rational coefficient. The
/// empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    terms: BTreeMap<i64, BigRational>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The deformation parameter itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Returns `(c, k)` when the scalar is the single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// Units of `Q[q, q^-1]` are exactly the nonzero single-term scalars.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -k))
    }

    /// Integer power. Negative exponents are only defined for units.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        if let Some((c, k)) = self.as_monomial() {
            let e = i32::try_from(exp).ok()?;
            return Some(Self::monomial(num_traits::pow(c.clone(), e as usize), k * exp));
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Substitutes `q := q0` exactly.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, Error> {
        if q0.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let k32 = i32::try_from(*k).map_err(|_| Error::ExponentOverflow)?;
            acc += c * num_traits::Pow::pow(q0, k32);
        }
        Ok(acc)
    }

    fn add_term(&mut self, exp: i64, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Renders the scalar for use as a factor in a product, parenthesising
    /// sums. Returns `None` for `1` and `Some("-")` for `-1`.
    pub(crate) fn factor_prefix(&self) -> Option<String> {
        if self.is_one() {
            return None;
        }
        if (-self).is_one() {
            return Some("-".to_string());
        }
        if self.num_terms() == 1 {
            Some(format!("{self}*"))
        } else {
            Some(format!("({self})*"))
        }
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(mut self, rhs: QScalar) -> QScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(mut self, rhs: QScalar) -> QScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        &self * &rhs
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_term(exp: i64, coeff: &BigRational) -> String {
    let power = match exp {
        0 => String::new(),
        1 => "q".to_string(),
        k => format!("q^{k}"),
    };
    if power.is_empty() {
        return fmt_rational(coeff);
    }
    if coeff.is_one() {
        power
    } else if (-coeff).is_one() {
        format!("-{power}")
    } else {
        format!("{}*{power}", fmt_rational(coeff))
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                f.write_str(&fmt_term(*k, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(*k, &-c))?;
            } else {
                write!(f, " + {}", fmt_term(*k, c))?;
            }
        }
        Ok(())
    }
}

impl FromStr for QScalar {
    type Err = Error;

    /// Parses the rendering produced by `Display`: a `+`/`-` separated sum of
    /// terms `c`, `q`, `q^k`, `c*q^k`, with `c` an integer or `a/b`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| Error::Syntax {
            pos,
            msg: format!("bad scalar {s:?}: {msg}"),
        };
        if src.is_empty() {
            return Err(err(0, "empty"));
        }
        let mut out = QScalar::zero();
        let mut i = 0;
        while i < src.len() {
            let mut sign = BigRational::one();
            if src[i] == '+' || src[i] == '-' {
                if src[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err(i, "expected '+' or '-'"));
            }
            let mut coeff = BigRational::one();
            let mut saw_number = false;
            if i < src.len() && src[i].is_ascii_digit() {
                let (num, next) = read_uint(&src, i);
                i = next;
                let mut r = BigRational::from_integer(num);
                if i < src.len() && src[i] == '/' {
                    if i + 1 >= src.len() || !src[i + 1].is_ascii_digit() {
                        return Err(err(i, "expected denominator"));
                    }
                    let (den, next) = read_uint(&src, i + 1);
                    if den.is_zero() {
                        return Err(err(i, "zero denominator"));
                    }
                    i = next;
                    r /= BigRational::from_integer(den);
                }
                coeff = r;
                saw_number = true;
                if i < src.len() && src[i] == '*' {
                    i += 1;
                    if i >= src.len() || src[i] != 'q' {
                        return Err(err(i, "expected 'q' after '*'"));
                    }
                }
            }
            let mut exp = 0i64;
            if i < src.len() && src[i] == 'q' {
                i += 1;
                exp = 1;
                if i < src.len() && src[i] == '^' {
                    i += 1;
                    let neg = i < src.len() && src[i] == '-';
                    if neg {
                        i += 1;
                    }
                    if i >= src.len() || !src[i].is_ascii_digit() {
                        return Err(err(i, "expected exponent"));
                    }
                    let (e, next) = read_uint(&src, i);
                    i = next;
                    exp = i64::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                    if neg {
                        exp = -exp;
                    }
                }
            } else if !saw_number {
                return Err(err(i, "expected number or 'q'"));
            }
            out.add_term(exp, &(sign * coeff));
        }
        Ok(out)
    }
}

fn read_uint(src: &[char], mut i: usize) -> (BigInt, usize) {
    let start = i;
    while i < src.len() && src[i].is_ascii_digit() {
        i += 1;
    }
    let digits: String = src[start..i].iter().collect();
    (digits.parse().expect("ascii digits"), i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> QScalar {
        text.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&QScalar::q() * &QScalar::q_pow(-1), QScalar::one());
        assert!((&QScalar::q() + &-QScalar::q()).is_zero());
        let a = s("1 + q");
        let b = s("1 - q");
        assert_eq!(&a * &b, s("1 - q^2"));
    }

    #[test]
    fn equality_is_structural() {
        assert_eq!(&QScalar::q() * &QScalar::q_pow(-1), QScalar::one());
        assert_ne!(QScalar::q_pow(2), QScalar::q_pow(-2));
        let a = s("1 + q");
        assert_eq!(&a * &a, s("1 + 2*q + q^2"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(s("q + q^-1").eval(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(s("q^2").eval(&rat(2, 1)).unwrap(), rat(4, 1));
        assert_eq!(s("1 - q").eval(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(s("q^-1").eval(&rat(1, 3)).unwrap(), rat(3, 1));
        assert!(matches!(s("q").eval(&rat(0, 1)), Err(Error::ZeroSubstitution)));
    }

    #[test]
    fn rendering() {
        assert_eq!(s("3*q^2 - 1/2*q^-1").to_string(), "-1/2*q^-1 + 3*q^2");
        assert_eq!(QScalar::zero().to_string(), "0");
        assert_eq!(s("-q").to_string(), "-q");
        assert_eq!(s("q^-1").to_string(), "q^-1");
        assert_eq!(s("-2 + q - q^3").to_string(), "-2 + q - q^3");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<QScalar>().is_err());
        assert!("q^".parse::<QScalar>().is_err());
        assert!("1/0".parse::<QScalar>().is_err());
        assert!("x".parse::<QScalar>().is_err());
        assert!("2*".parse::<QScalar>().is_err());
    }

    #[test]
    fn powers_and_units() {
        assert_eq!(s("-q").pow(3).unwrap(), s("-q^3"));
        assert_eq!(s("-q").pow(-2).unwrap(), s("q^-2"));
        assert_eq!(s("1 + q").pow(2).unwrap(), s("1 + 2*q + q^2"));
        assert!(s("1 + q").pow(-1).is_none());
        assert_eq!(s("2*q").inverse().unwrap(), s("1/2*q^-1"));
    }
}
