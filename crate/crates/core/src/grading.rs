//! `Z_2^n` degrees and the sign rule attached to them.
//!
//! Coordinate algebras are `Z_2^2`-graded. Forms and operators carry a
//! `Z_2^3` degree whose first entry is the form-degree parity and whose last
//! two entries are the `Z_2^2` degree. Exchanging two homogeneous factors
//! costs `(-1)^<a, b>` with `<a, b>` the componentwise dot product mod 2.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Longest supported grading group.
pub const MAX_BITS: usize = 8;

/// An element of `Z_2^n`. Entry `i` of the tuple is bit `i` of `bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    bits: u8,
    len: u8,
}

impl Degree {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_BITS, "grading length {len} too large");
        Self { bits: 0, len: len as u8 }
    }

    /// Builds a degree from its tuple entries; each entry is taken mod 2.
    pub fn new(entries: &[u8]) -> Self {
        assert!(entries.len() <= MAX_BITS, "grading length {} too large", entries.len());
        let bits = entries
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, e)| acc | ((e & 1) << i));
        Self { bits, len: entries.len() as u8 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entry(&self, i: usize) -> u8 {
        (self.bits >> i) & 1
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Embeds into `Z_2^len` by prepending zero entries.
    pub fn promoted(&self, len: usize) -> Self {
        assert!(len >= self.len() && len <= MAX_BITS);
        let shift = len - self.len();
        Self { bits: self.bits << shift, len: len as u8 }
    }

    fn check_len(&self, other: &Degree) -> Result<(), Error> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::DegreeLength(self.len(), other.len()))
        }
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, other: &Degree) -> Result<Degree, Error> {
        self.check_len(other)?;
        Ok(Self { bits: self.bits ^ other.bits, len: self.len })
    }

    /// `sum_i a_i b_i mod 2`.
    pub fn scalar_product(&self, other: &Degree) -> Result<u8, Error> {
        self.check_len(other)?;
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }

    /// `(-1)^<self, other>` as `+1` or `-1`.
    pub fn koszul_sign(&self, other: &Degree) -> Result<i8, Error> {
        Ok(if self.scalar_product(other)? == 0 { 1 } else { -1 })
    }

    /// Sum after promoting both sides to the longer length.
    pub(crate) fn mixed_add(&self, other: &Degree) -> Degree {
        let n = self.len().max(other.len());
        self.promoted(n).add(&other.promoted(n)).expect("promoted lengths agree")
    }

    /// Scalar product after promoting both sides to the longer length.
    pub(crate) fn mixed_product(&self, other: &Degree) -> u8 {
        let n = self.len().max(other.len());
        self.promoted(n)
            .scalar_product(&other.promoted(n))
            .expect("promoted lengths agree")
    }

    /// All `2^len` degrees in lexicographic tuple order.
    pub fn all(len: usize) -> Vec<Degree> {
        (0..1usize << len)
            .map(|code| {
                let entries: Vec<u8> =
                    (0..len).map(|i| ((code >> (len - 1 - i)) & 1) as u8).collect();
                Degree::new(&entries)
            })
            .collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.entry(i))?;
        }
        f.write_str(")")
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Malformed(format!("degree {s:?} is not a tuple")))?;
        if inner.trim().is_empty() {
            return Ok(Degree::zero(0));
        }
        let entries = inner
            .split(',')
            .map(|p| match p.trim() {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::Malformed(format!("degree entry {other:?} is not a bit"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() > MAX_BITS {
            return Err(Error::Malformed(format!("degree {s:?} is too long")));
        }
        Ok(Degree::new(&entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert_eq!(d("(0,1)").add(&d("(1,0)")).unwrap(), d("(1,1)"));
        assert_eq!(d("(1,1)").add(&d("(1,1)")).unwrap(), d("(0,0)"));
        assert_eq!(d("(1,0,1)").add(&d("(0,0,1)")).unwrap(), d("(1,0,0)"));
        assert!(d("(1,0)").add(&d("(1,0,0)")).is_err());
    }

    #[test]
    fn scalar_products() {
        assert_eq!(d("(0,1)").scalar_product(&d("(1,0)")).unwrap(), 0);
        assert_eq!(d("(1,1)").scalar_product(&d("(1,1)")).unwrap(), 0);
        assert_eq!(d("(0,1)").scalar_product(&d("(1,1)")).unwrap(), 1);
        assert!(d("(0,1)").scalar_product(&d("(0,1,1)")).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(d("(0,1)").koszul_sign(&d("(0,1)")).unwrap(), -1);
        assert_eq!(d("(0,1)").koszul_sign(&d("(1,0)")).unwrap(), 1);
        assert_eq!(d("(1,1)").koszul_sign(&d("(0,1)")).unwrap(), -1);
    }

    #[test]
    fn exhaustive_symmetry_and_bilinearity() {
        let all = Degree::all(2);
        assert_eq!(all.len(), 4);
        for a in &all {
            for b in &all {
                assert_eq!(a.scalar_product(b).unwrap(), b.scalar_product(a).unwrap());
                assert_eq!(a.koszul_sign(b).unwrap() * b.koszul_sign(a).unwrap(), 1);
                for c in &all {
                    let lhs = a.add(b).unwrap().scalar_product(c).unwrap();
                    let rhs = (a.scalar_product(c).unwrap() + b.scalar_product(c).unwrap()) % 2;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn promotion_prepends_zero() {
        let xi = d("(0,1)").promoted(3);
        assert_eq!(xi, d("(0,0,1)"));
        // the form-parity bit pairs with (1,0,0) to give the Leibniz sign
        assert_eq!(d("(1,0,0)").scalar_product(&d("(1,0,1)")).unwrap(), 1);
        assert_eq!(d("(1,0,0)").scalar_product(&xi).unwrap(), 0);
    }

    #[test]
    fn rendering_round_trip() {
        for deg in Degree::all(3) {
            assert_eq!(deg.to_string().parse::<Degree>().unwrap(), deg);
        }
        assert_eq!(Degree::all(2)[1].to_string(), "(0,1)");
    }
}
