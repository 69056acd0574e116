use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::Error;
use crate::grading::Degree;
use crate::scalar::QScalar;

use super::monomial::Monomial;
use super::presentation::Presentation;
use super::words::Letter;

pub(crate) type Terms = BTreeMap<Monomial, QScalar>;

pub(crate) fn accumulate(terms: &mut Terms, m: Monomial, c: &QScalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Presentation {
    /// `a * g^e` for a PBW monomial `a`, reduced to PBW form.
    ///
    /// `g^e` travels leftwards past the highest generator of `a` above `g`.
    /// For a delta-free rule `h^f g^e = c^(f e) g^e h^f`. For a delta rule
    /// (a partial meeting its own coordinate) one copy of `g` at a time:
    /// `h^f g = c^f g h^f + delta (1 + c + ... + c^(f-1)) h^(f-1)`.
    pub(crate) fn mul_gen_power(&self, a: &Monomial, g: usize, e: i32) -> Terms {
        let mut out = Terms::new();
        if e == 0 {
            out.insert(a.clone(), QScalar::one());
            return out;
        }
        let n = self.num_generators();
        let Some(h) = (g + 1..n).rev().find(|&h| a.exponent(h) != 0) else {
            let new = a.exponent(g) + e;
            let gen = self.generator(g);
            if gen.nilpotent && new > 1 {
                return out;
            }
            let mut m = a.clone();
            m.set_exponent(g, new);
            out.insert(m, QScalar::one());
            return out;
        };
        let f = a.exponent(h);
        let rule = self.rule(h, g);
        let mut rest = a.clone();
        rest.set_exponent(h, 0);
        let append = |terms: Terms, power: i32, scale: &QScalar, out: &mut Terms| {
            for (mut m, c) in terms {
                m.set_exponent(h, power);
                accumulate(out, m, &(&c * scale));
            }
        };
        if rule.delta.is_zero() {
            let c = rule
                .coeff
                .pow(i64::from(f) * i64::from(e))
                .expect("Laurent exchange coefficients are units");
            append(self.mul_gen_power(&rest, g, e), f, &c, &mut out);
        } else if e > 1 {
            for (m, c) in self.mul_gen_power(a, g, 1) {
                for (m2, c2) in self.mul_gen_power(&m, g, e - 1) {
                    accumulate(&mut out, m2, &(&c * &c2));
                }
            }
        } else {
            debug_assert!(e == 1 && f > 0);
            let cf = rule.coeff.pow(i64::from(f)).expect("nonnegative power");
            append(self.mul_gen_power(&rest, g, 1), f, &cf, &mut out);
            let mut geometric = QScalar::zero();
            let mut ck = QScalar::one();
            for _ in 0..f {
                geometric += &ck;
                ck = &ck * &rule.coeff;
            }
            let mut shorter = rest;
            shorter.set_exponent(h, f - 1);
            accumulate(&mut out, shorter, &(&rule.delta * &geometric));
        }
        out
    }

    pub(crate) fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Terms {
        let mut acc = Terms::new();
        acc.insert(a.clone(), QScalar::one());
        for (g, &e) in b.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = Terms::new();
            for (m, c) in &acc {
                for (m2, c2) in self.mul_gen_power(m, g, e) {
                    accumulate(&mut next, m2, &(c * &c2));
                }
            }
            acc = next;
        }
        acc
    }
}

/// A finite linear combination of PBW monomials of one presentation.
#[derive(Clone, Debug)]
pub struct Element {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl Element {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        Self { pres: p.clone(), terms: Terms::new() }
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        Self::scalar(p, QScalar::one())
    }

    pub fn scalar(p: &Arc<Presentation>, c: QScalar) -> Self {
        Self::from_monomial(p, Monomial::one(p.num_generators()), c)
    }

    /// `c * m`; `m` must be a valid PBW monomial of `p`.
    pub fn from_monomial(p: &Arc<Presentation>, m: Monomial, c: QScalar) -> Self {
        debug_assert!(m.is_valid_for(p));
        let mut terms = Terms::new();
        accumulate(&mut terms, m, &c);
        Self { pres: p.clone(), terms }
    }

    pub fn try_from_monomial(p: &Arc<Presentation>, m: Monomial, c: QScalar) -> Result<Self, Error> {
        m.validate(p)?;
        Ok(Self::from_monomial(p, m, c))
    }

    pub fn generator(p: &Arc<Presentation>, symbol: &str) -> Result<Self, Error> {
        let g = p
            .index_of(symbol)
            .ok_or_else(|| Error::UnknownGenerator(symbol.to_string()))?;
        Ok(Self::from_word(p, &[Letter::new(g)]))
    }

    /// Product of the letters of `word`, reduced with the PBW product.
    pub fn from_word(p: &Arc<Presentation>, word: &[Letter]) -> Self {
        let mut acc = Terms::new();
        acc.insert(Monomial::one(p.num_generators()), QScalar::one());
        for l in word {
            let e = if l.inverse { -1 } else { 1 };
            let mut next = Terms::new();
            for (m, c) in &acc {
                for (m2, c2) in p.mul_gen_power(m, l.gen, e) {
                    accumulate(&mut next, m2, &(c * &c2));
                }
            }
            acc = next;
        }
        Self { pres: p.clone(), terms: acc }
    }

    pub(crate) fn from_terms(p: &Arc<Presentation>, terms: Terms) -> Self {
        Self { pres: p.clone(), terms }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> QScalar {
        self.coefficient(&Monomial::one(self.pres.num_generators()))
    }

    fn check_same(&self, other: &Element) -> Result<(), Error> {
        if self.pres.same_as(&other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(
                self.pres.name().to_string(),
                other.pres.name().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, Error> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        Ok(Self { pres: self.pres.clone(), terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, Error> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element, Error> {
        self.check_same(other)?;
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, c) in self.pres.mul_monomials(ma, mb) {
                    accumulate(&mut terms, m, &(&cab * &c));
                }
            }
        }
        Ok(Self { pres: self.pres.clone(), terms })
    }

    pub fn scale(&self, c: &QScalar) -> Element {
        let mut terms = Terms::new();
        for (m, k) in &self.terms {
            accumulate(&mut terms, m.clone(), &(k * c));
        }
        Self { pres: self.pres.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(&self.pres);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The common degree of all terms; `None` when the terms disagree.
    /// Zero counts as homogeneous of degree zero.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let mut degrees = self.terms.keys().map(|m| m.degree(&self.pres));
        let first = degrees.next().unwrap_or_else(|| Degree::zero(self.pres.degree_len()));
        degrees.all(|d| d == first).then_some(first)
    }

    /// Re-expresses the element in another presentation by matching
    /// generator symbols.
    pub fn transport(&self, to: &Arc<Presentation>) -> Result<Element, Error> {
        if self.pres.same_as(to) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .pres
            .generators()
            .iter()
            .map(|g| to.index_of(&g.symbol))
            .collect();
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; to.num_generators()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::Unsupported(format!(
                        "{} has no generator {}",
                        to.name(),
                        self.pres.generator(i).symbol
                    ))
                })?;
                exps[j] = e;
            }
            let mono = Monomial::from_exponents(exps);
            // the target must order shared generators the same way
            let sorted = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(i, _)| map[i])
                .collect::<Vec<_>>()
                .windows(2)
                .all(|w| w[0] < w[1]);
            if !sorted {
                return Err(Error::Unsupported(format!(
                    "{} orders generators differently from {}",
                    to.name(),
                    self.pres.name()
                )));
            }
            mono.validate(to)?;
            accumulate(&mut terms, mono, c);
        }
        Ok(Self { pres: to.clone(), terms })
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self { pres: self.pres.clone(), terms }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, mut f: impl FnMut(&QScalar) -> QScalar) -> Element {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            accumulate(&mut terms, m.clone(), &f(c));
        }
        Self { pres: self.pres.clone(), terms }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.pres.same_as(&other.pres) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        self.try_add(&rhs).expect("elements of one presentation")
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("elements of one presentation")
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        self.try_sub(&rhs).expect("elements of one presentation")
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("elements of one presentation")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-QScalar::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        self.try_mul(&rhs).expect("elements of one presentation")
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("elements of one presentation")
    }
}

/// Joins `(monomial text, coefficient)` pairs into `a + c*b - d*e` form.
pub(crate) fn render_sum(terms: &[(String, &QScalar)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in terms.iter().enumerate() {
        let body = if mono == "1" {
            if c.num_terms() > 1 && terms.len() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            }
        } else {
            match c.factor_prefix() {
                None => mono.clone(),
                Some(prefix) => format!("{prefix}{mono}"),
            }
        };
        if i == 0 {
            out.push_str(&body);
        } else if let Some(rest) = body.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&body);
        }
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<(String, &QScalar)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.render(&self.pres), c))
            .collect();
        f.write_str(&render_sum(&rendered))
    }
}
