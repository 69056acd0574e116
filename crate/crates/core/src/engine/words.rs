//! Elements of the free algebra on a presentation's generators.
//!
//! Relations are stated on unreduced words (`x*xi - q*xi*x`), and structure
//! maps such as the coproduct or the de Rham differential are checked against
//! relations by applying them to such words before any reduction happens.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::scalar::QScalar;

use super::element::Element;
use super::presentation::Presentation;
use super::rewrite::{normal_form_with, Strategy};

/// One generator occurrence; `inverse` marks `g^-1` of a Laurent generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Self { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

pub fn render_word(p: &Presentation, word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|l| {
            let sym = &p.generator(l.gen).symbol;
            if l.inverse {
                format!("{sym}^-1")
            } else {
                sym.clone()
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// A finite linear combination of words with `QScalar` coefficients.
#[derive(Clone, Debug)]
pub struct FreeElement {
    pres: Arc<Presentation>,
    terms: BTreeMap<Word, QScalar>,
}

impl FreeElement {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        Self { pres: p.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(p: &Arc<Presentation>, c: QScalar) -> Self {
        Self::word(p, Vec::new(), c)
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        Self::scalar(p, QScalar::one())
    }

    pub fn word(p: &Arc<Presentation>, word: Word, c: QScalar) -> Self {
        let mut out = Self::zero(p);
        out.add_term(word, &c);
        out
    }

    /// A single letter; inverse letters exist only for Laurent generators.
    pub fn letter(p: &Arc<Presentation>, letter: Letter) -> Result<Self, Error> {
        if letter.gen >= p.num_generators() {
            return Err(Error::UnknownGenerator(format!("#{}", letter.gen)));
        }
        if letter.inverse && !p.generator(letter.gen).laurent {
            return Err(Error::Unsupported(format!(
                "{} is not invertible in {}",
                p.generator(letter.gen).symbol,
                p.name()
            )));
        }
        Ok(Self::word(p, vec![letter], QScalar::one()))
    }

    pub fn symbol(p: &Arc<Presentation>, symbol: &str) -> Result<Self, Error> {
        let g = p
            .index_of(symbol)
            .ok_or_else(|| Error::UnknownGenerator(symbol.to_string()))?;
        Self::letter(p, Letter::new(g))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, word: Word, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    fn check_same(&self, other: &FreeElement) -> Result<(), Error> {
        if self.pres.same_as(&other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(
                self.pres.name().to_string(),
                other.pres.name().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &FreeElement) -> Result<FreeElement, Error> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FreeElement) -> Result<FreeElement, Error> {
        self.try_add(&other.scale(&-QScalar::one()))
    }

    /// Concatenation product.
    pub fn try_mul(&self, other: &FreeElement) -> Result<FreeElement, Error> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.pres);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> FreeElement {
        let mut out = Self::zero(&self.pres);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), &(k * c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> FreeElement {
        let mut acc = Self::one(&self.pres);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same presentation");
        }
        acc
    }

    /// Reduces by multiplying out the letters with the PBW product.
    pub fn reduce(&self) -> Element {
        let mut out = Element::zero(&self.pres);
        for (w, c) in &self.terms {
            out = out + Element::from_word(&self.pres, w).scale(c);
        }
        out
    }

    /// Reduces with the word-rewriting kernel under a fixed redex strategy.
    pub fn normal_form(&self, strategy: Strategy) -> Element {
        let start: Vec<(Word, QScalar)> =
            self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        normal_form_with(&self.pres, start, strategy)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, &QScalar)> = self
            .terms
            .iter()
            .map(|(w, c)| (render_word(&self.pres, w), c))
            .collect();
        f.write_str(&super::element::render_sum(&terms))
    }
}
