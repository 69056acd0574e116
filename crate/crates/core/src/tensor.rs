//! Graded tensor products of rank 2 and 3.
//!
//! Multiplication follows `(a (x) b)(c (x) d) = (-1)^<deg b, deg c> ac (x) bd`,
//! iterated over every crossing pair for rank 3. Slots may use different
//! presentations; degrees are promoted to the longest grading group by
//! prepending zero bits, so coordinates sit in `Z_2^3` with form parity 0.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::engine::{Element, Monomial, Presentation};
use crate::error::Error;
use crate::grading::Degree;
use crate::scalar::QScalar;

/// A map applied to one tensor slot by [`TensorElement::map_slot`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotMap {
    Identity,
    DeRham,
    Antipode,
}

impl SlotMap {
    /// Degree of the map as a `Z_2^3` element.
    pub fn degree(self) -> Degree {
        match self {
            SlotMap::DeRham => Degree::new(&[1, 0, 0]),
            SlotMap::Identity | SlotMap::Antipode => Degree::zero(3),
        }
    }

    fn apply(self, e: &Element) -> Result<Element, Error> {
        match self {
            SlotMap::Identity => Ok(e.clone()),
            SlotMap::DeRham => crate::calculus::de_rham(e),
            SlotMap::Antipode => crate::hopf::antipode(e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorElement {
    slots: Vec<Arc<Presentation>>,
    terms: BTreeMap<Vec<Monomial>, QScalar>,
}

fn add_into(terms: &mut BTreeMap<Vec<Monomial>, QScalar>, key: Vec<Monomial>, c: &QScalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
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

impl TensorElement {
    pub fn zero(slots: &[Arc<Presentation>]) -> Self {
        assert!(
            (2..=3).contains(&slots.len()),
            "tensor rank must be 2 or 3, got {}",
            slots.len()
        );
        Self { slots: slots.to_vec(), terms: BTreeMap::new() }
    }

    /// `f_1 (x) ... (x) f_r` expanded over the terms of each factor.
    pub fn pure(factors: &[&Element]) -> Self {
        let slots: Vec<_> = factors.iter().map(|f| f.presentation().clone()).collect();
        let mut out = Self::zero(&slots);
        let mut partial: Vec<(Vec<Monomial>, QScalar)> = vec![(Vec::new(), QScalar::one())];
        for f in factors {
            let mut next = Vec::new();
            for (key, c) in &partial {
                for (m, k) in f.terms() {
                    let mut key = key.clone();
                    key.push(m.clone());
                    next.push((key, c * k));
                }
            }
            partial = next;
        }
        for (key, c) in partial {
            add_into(&mut out.terms, key, &c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Arc<Presentation>] {
        &self.slots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &QScalar)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn grading_len(&self) -> usize {
        self.slots.iter().map(|p| p.degree_len()).max().unwrap_or(0)
    }

    fn slot_degree(&self, slot: usize, m: &Monomial) -> Degree {
        m.degree(&self.slots[slot]).promoted(self.grading_len())
    }

    /// Total degree of each term (slot degrees promoted and summed), if
    /// all terms agree. Zero counts as degree zero.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let len = self.grading_len();
        let mut degrees = self.terms.keys().map(|key| {
            key.iter()
                .enumerate()
                .fold(Degree::zero(len), |acc, (i, m)| acc.mixed_add(&self.slot_degree(i, m)))
        });
        let first = degrees.next().unwrap_or_else(|| Degree::zero(len));
        degrees.all(|d| d == first).then_some(first)
    }

    fn check_shape(&self, other: &TensorElement) -> Result<(), Error> {
        let same = self.slots.len() == other.slots.len()
            && self.slots.iter().zip(&other.slots).all(|(a, b)| a.same_as(b));
        if same {
            Ok(())
        } else {
            Err(Error::PresentationMismatch(self.shape(), other.shape()))
        }
    }

    fn shape(&self) -> String {
        self.slots.iter().map(|p| p.name()).collect::<Vec<_>>().join(" (x) ")
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &QScalar) -> TensorElement {
        let mut out = Self::zero(&self.slots);
        for (k, v) in &self.terms {
            add_into(&mut out.terms, k.clone(), &(v * c));
        }
        out
    }

    /// Graded product: the left factor's slot `i` crosses the right
    /// factor's slot `j` for every `i > j`.
    pub fn try_mul(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_shape(other)?;
        let r = self.rank();
        let mut out = Self::zero(&self.slots);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut parity = 0u8;
                for (i, a) in ka.iter().enumerate() {
                    let da = self.slot_degree(i, a);
                    for (j, b) in kb.iter().enumerate().take(i) {
                        parity ^= da.mixed_product(&self.slot_degree(j, b));
                    }
                }
                let mut c = ca * cb;
                if parity == 1 {
                    c = -c;
                }
                let mut partial: Vec<(Vec<Monomial>, QScalar)> = vec![(Vec::new(), c)];
                for s in 0..r {
                    let prod = self.slots[s].mul_monomials(&ka[s], &kb[s]);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (m, k) in &prod {
                            let mut key = key.clone();
                            key.push(m.clone());
                            next.push((key, c * k));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    add_into(&mut out.terms, key, &c);
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to slot `slot` of each term with the Koszul sign
    /// `(-1)^<deg f, degree of the slots before it>`. The slot's new
    /// presentation is taken from the image of `f`.
    pub fn map_slot_with(
        &self,
        slot: usize,
        f_degree: &Degree,
        mut f: impl FnMut(&Element) -> Result<Element, Error>,
    ) -> Result<TensorElement, Error> {
        if slot >= self.rank() {
            return Err(Error::Unsupported(format!("slot {slot} of a rank {} tensor", self.rank())));
        }
        let mut slots = self.slots.clone();
        let mut images = Vec::with_capacity(self.terms.len());
        for (key, c) in &self.terms {
            let input = Element::from_monomial(&self.slots[slot], key[slot].clone(), QScalar::one());
            let image = f(&input)?;
            let prefix = (0..slot).fold(Degree::zero(0), |acc, i| {
                acc.mixed_add(&self.slot_degree(i, &key[i]))
            });
            let sign = prefix.mixed_product(f_degree);
            images.push((key, if sign == 1 { -c } else { c.clone() }, image));
        }
        if let Some((_, _, img)) = images.first() {
            slots[slot] = img.presentation().clone();
        } else if let Ok(img) = f(&Element::zero(&self.slots[slot])) {
            slots[slot] = img.presentation().clone();
        }
        let mut out = Self::zero(&slots);
        for (key, c, image) in images {
            if !image.presentation().same_as(&slots[slot]) {
                return Err(Error::PresentationMismatch(
                    slots[slot].name().to_string(),
                    image.presentation().name().to_string(),
                ));
            }
            for (m, k) in image.terms() {
                let mut nk = key.clone();
                nk[slot] = m.clone();
                add_into(&mut out.terms, nk, &(&c * k));
            }
        }
        Ok(out)
    }

    /// `(Id (x) .. f .. (x) Id)` for one of the standard slot maps.
    pub fn map_slot(&self, slot: usize, f: SlotMap) -> Result<TensorElement, Error> {
        self.map_slot_with(slot, &f.degree(), |e| f.apply(e))
    }

    /// Replaces slot `slot` by the two slots of `f(slot)`, raising the
    /// rank by one. `f` must have degree zero (coproducts, coactions), so
    /// no sign arises.
    pub fn expand_slot(
        &self,
        slot: usize,
        mut f: impl FnMut(&Element) -> Result<TensorElement, Error>,
    ) -> Result<TensorElement, Error> {
        if self.rank() != 2 || slot >= 2 {
            return Err(Error::Unsupported("only rank 2 tensors can be expanded".into()));
        }
        let mut out: Option<TensorElement> = None;
        let mut pieces = Vec::new();
        for (key, c) in &self.terms {
            let input = Element::from_monomial(&self.slots[slot], key[slot].clone(), QScalar::one());
            let image = f(&input)?;
            if image.rank() != 2 {
                return Err(Error::Unsupported("slot expansion needs a rank 2 image".into()));
            }
            let mut slots = self.slots.clone();
            slots.splice(slot..=slot, image.slots.iter().cloned());
            let acc = out.get_or_insert_with(|| TensorElement::zero(&slots));
            if !acc.slots.iter().zip(&slots).all(|(a, b)| a.same_as(b)) {
                return Err(Error::PresentationMismatch(acc.shape(), slots.iter().map(|p| p.name()).collect::<Vec<_>>().join(" (x) ")));
            }
            pieces.push((key, c, image));
        }
        let mut out = match out {
            Some(t) => t,
            None => {
                // zero input: shape taken from the image of zero
                let zero = Element::zero(&self.slots[slot]);
                let image = f(&zero)?;
                let mut slots = self.slots.clone();
                slots.splice(slot..=slot, image.slots.iter().cloned());
                TensorElement::zero(&slots)
            }
        };
        for (key, c, image) in pieces {
            for (ik, k) in &image.terms {
                let mut nk = key.clone();
                nk.splice(slot..=slot, ik.iter().cloned());
                add_into(&mut out.terms, nk, &(c * k));
            }
        }
        Ok(out)
    }

    /// `mu(a (x) b) = a b` for a rank 2 tensor whose slots share a presentation.
    pub fn contract(&self) -> Result<Element, Error> {
        if self.rank() != 2 {
            return Err(Error::Unsupported("contraction needs a rank 2 tensor".into()));
        }
        let p = &self.slots[0];
        if !p.same_as(&self.slots[1]) {
            return Err(Error::PresentationMismatch(
                p.name().to_string(),
                self.slots[1].name().to_string(),
            ));
        }
        let mut out = Element::zero(p);
        for (key, c) in &self.terms {
            let a = Element::from_monomial(p, key[0].clone(), c.clone());
            let b = Element::from_monomial(p, key[1].clone(), QScalar::one());
            out = out + a * b;
        }
        Ok(out)
    }

    /// `sigma(a (x) b) = (-1)^<deg a, deg b> b (x) a`.
    pub fn swap(&self) -> Result<TensorElement, Error> {
        if self.rank() != 2 {
            return Err(Error::Unsupported("swap needs a rank 2 tensor".into()));
        }
        let mut out = Self::zero(&[self.slots[1].clone(), self.slots[0].clone()]);
        for (key, c) in &self.terms {
            let sign = self.slot_degree(0, &key[0]).mixed_product(&self.slot_degree(1, &key[1]));
            let c = if sign == 1 { -c } else { c.clone() };
            add_into(&mut out.terms, vec![key[1].clone(), key[0].clone()], &c);
        }
        Ok(out)
    }

    /// Moves every slot into another presentation by generator symbol.
    pub fn transport(&self, to: &[Arc<Presentation>]) -> Result<TensorElement, Error> {
        if to.len() != self.rank() {
            return Err(Error::Unsupported("transport must keep the rank".into()));
        }
        let mut out = Self::zero(to);
        for (key, c) in &self.terms {
            let mut nk = Vec::with_capacity(key.len());
            for (i, m) in key.iter().enumerate() {
                let e = Element::from_monomial(&self.slots[i], m.clone(), QScalar::one())
                    .transport(&to[i])?;
                let (m2, _) = e.terms().next().expect("monomials transport to monomials");
                nk.push(m2.clone());
            }
            add_into(&mut out.terms, nk, c);
        }
        Ok(out)
    }

    /// The coefficient attached to a tuple of slot monomials.
    pub fn coefficient(&self, key: &[Monomial]) -> QScalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.check_shape(other).is_ok() && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-QScalar::one())
    }
}

impl Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("tensors of one shape")
    }
}

impl Sub<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_sub(rhs).expect("tensors of one shape")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<(String, &QScalar)> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let text = key
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.render(&self.slots[i]))
                    .collect::<Vec<_>>()
                    .join(" (x) ");
                (text, c)
            })
            .collect();
        f.write_str(&crate::engine::render_sum(&rendered))
    }
}
