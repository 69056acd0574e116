//! Coproduct, counit and antipode of the (extended) coordinate algebra, and
//! the Hopf axiom checks.
//!
//! `x` is group-like and `xi`, `theta`, `z` are `x`-twisted primitive:
//! `Delta(g) = x (x) g + g (x) x`. Each map is extended to words
//! multiplicatively (the antipode anti-multiplicatively with Koszul signs),
//! so applying it to an unreduced relation tests compatibility with that
//! relation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::engine::{enumerate_monomials, Element, FreeElement, Letter, Monomial, Presentation};
use crate::error::Error;
use crate::grading::Degree;
use crate::relations;
use crate::report::CheckEntry;
use crate::scalar::QScalar;
use crate::tensor::{SlotMap, TensorElement};

pub const HOPF_CHECKS: [&str; 7] = [
    "coassociativity",
    "counit-axiom",
    "algebra-morphism-compat",
    "cocommutativity",
    "antipode-axiom",
    "antipode-involutive",
    "counit-grading",
];

const GROUP_LIKE: &str = "x";

fn ensure_hopf(p: &Arc<Presentation>) -> Result<(), Error> {
    if matches!(p.name(), "dqsp" | "dqsp-ext") {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("no Hopf structure on {}", p.name())))
    }
}

fn x_power(p: &Arc<Presentation>, e: i32) -> Element {
    let mut exps = vec![0; p.num_generators()];
    exps[p.index_of(GROUP_LIKE).expect("coordinate algebras contain x")] = e;
    Element::from_monomial(p, Monomial::from_exponents(exps), QScalar::one())
}

fn letter_element(p: &Arc<Presentation>, l: Letter) -> Element {
    Element::from_word(p, &[l])
}

fn is_group_like(p: &Presentation, l: Letter) -> bool {
    p.generator(l.gen).symbol == GROUP_LIKE
}

/// Coproduct of one letter.
pub fn letter_coproduct(p: &Arc<Presentation>, l: Letter) -> TensorElement {
    let g = letter_element(p, l);
    if is_group_like(p, l) {
        TensorElement::pure(&[&g, &g])
    } else {
        let x = x_power(p, 1);
        &TensorElement::pure(&[&x, &g]) + &TensorElement::pure(&[&g, &x])
    }
}

fn word_coproduct(p: &Arc<Presentation>, word: &[Letter]) -> TensorElement {
    let one = Element::one(p);
    let mut acc = TensorElement::pure(&[&one, &one]);
    for &l in word {
        acc = acc.try_mul(&letter_coproduct(p, l)).expect("same slots");
    }
    acc
}

pub fn coproduct(e: &Element) -> Result<TensorElement, Error> {
    let p = e.presentation();
    ensure_hopf(p)?;
    let mut out = TensorElement::zero(&[p.clone(), p.clone()]);
    for (m, c) in e.terms() {
        out = &out + &word_coproduct(p, &m.word()).scale(c);
    }
    Ok(out)
}

/// The coproduct applied word by word to an unreduced combination.
pub fn coproduct_free(f: &FreeElement) -> Result<TensorElement, Error> {
    let p = f.presentation();
    ensure_hopf(p)?;
    let mut out = TensorElement::zero(&[p.clone(), p.clone()]);
    for (w, c) in f.terms() {
        out = &out + &word_coproduct(p, w).scale(c);
    }
    Ok(out)
}

fn word_counit(p: &Presentation, word: &[Letter]) -> QScalar {
    if word.iter().all(|&l| is_group_like(p, l)) {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

pub fn counit(e: &Element) -> Result<QScalar, Error> {
    let p = e.presentation();
    ensure_hopf(p)?;
    let mut out = QScalar::zero();
    for (m, c) in e.terms() {
        out += &(&word_counit(p, &m.word()) * c);
    }
    Ok(out)
}

pub fn counit_free(f: &FreeElement) -> Result<QScalar, Error> {
    let p = f.presentation();
    ensure_hopf(p)?;
    let mut out = QScalar::zero();
    for (w, c) in f.terms() {
        out += &(&word_counit(p, w) * c);
    }
    Ok(out)
}

fn extended() -> Arc<Presentation> {
    Presentation::builtin("dqsp-ext").expect("builtin")
}

fn letter_antipode(p: &Arc<Presentation>, l: Letter) -> Element {
    if is_group_like(p, l) {
        x_power(p, -(l.sign() as i32))
    } else {
        let xinv = x_power(p, -1);
        -(&(&xinv * &letter_element(p, l)) * &xinv)
    }
}

fn word_antipode(p: &Arc<Presentation>, word: &[Letter]) -> Element {
    let mut parity = 0u8;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            let (a, b) = (&p.generator(word[i].gen).degree, &p.generator(word[j].gen).degree);
            parity ^= a.scalar_product(b).expect("uniform grading");
        }
    }
    let mut acc = Element::one(p);
    for &l in word.iter().rev() {
        acc = &acc * &letter_antipode(p, l);
    }
    if parity == 1 {
        -acc
    } else {
        acc
    }
}

/// `S(x) = x^-1`, `S(g) = -x^-1 g x^-1`, extended by `S(ab) = (-1)^<a,b> S(b) S(a)`.
/// Elements of the polynomial algebra are moved into the extended one.
pub fn antipode(e: &Element) -> Result<Element, Error> {
    ensure_hopf(e.presentation())?;
    let p = extended();
    let e = e.transport(&p)?;
    let mut out = Element::zero(&p);
    for (m, c) in e.terms() {
        out = out + word_antipode(&p, &m.word()).scale(c);
    }
    Ok(out)
}

/// `(eps (x) Id)` or `(Id (x) eps)` of a rank 2 tensor.
pub fn counit_slot(t: &TensorElement, slot: usize) -> Result<Element, Error> {
    let keep = 1 - slot;
    let p = t.slots()[keep].clone();
    let mut out = Element::zero(&p);
    for (key, c) in t.terms() {
        let eps = counit(&Element::from_monomial(&t.slots()[slot], key[slot].clone(), QScalar::one()))?;
        out = out + Element::from_monomial(&p, key[keep].clone(), c * &eps);
    }
    Ok(out)
}

/// Monomials of the extended algebra with total degree at most `bound`;
/// the exponent of `x` ranges over `-bound..=bound`.
pub fn sweep_monomials(bound: u32) -> Vec<Monomial> {
    let b = bound as i32;
    enumerate_monomials(&extended(), b, bound)
}

/// Runs `f` on every monomial; one passing entry, or one failing entry per
/// counterexample.
pub(crate) fn sweep(
    id: &str,
    what: &str,
    p: &Arc<Presentation>,
    monos: &[Monomial],
    mut f: impl FnMut(&Monomial) -> Result<Option<(String, String)>, Error>,
) -> Result<Vec<CheckEntry>, Error> {
    let mut failures = Vec::new();
    for m in monos {
        if let Some((lhs, rhs)) = f(m)? {
            failures.push(CheckEntry::fail(id, format!("{what} at {}", m.render(p)), lhs, rhs));
        }
    }
    if failures.is_empty() {
        Ok(vec![CheckEntry::pass(id, format!("{what} on {} monomials", monos.len()))])
    } else {
        Ok(failures)
    }
}

fn mono(p: &Arc<Presentation>, m: &Monomial) -> Element {
    Element::from_monomial(p, m.clone(), QScalar::one())
}

fn differ<T: PartialEq + ToString>(a: &T, b: &T) -> Option<(String, String)> {
    (a != b).then(|| (a.to_string(), b.to_string()))
}

/// The value of a word after substituting `x = 1` and `xi = theta = z = 0`.
fn substitution_oracle(p: &Presentation, m: &Monomial) -> QScalar {
    let mut value = QScalar::one();
    for l in m.word() {
        let v = if p.generator(l.gen).symbol == GROUP_LIKE { QScalar::one() } else { QScalar::zero() };
        value = &value * &v;
    }
    value
}

pub fn hopf_verify(check: &str, bound: u32) -> Result<Vec<CheckEntry>, Error> {
    let p = extended();
    let monos = sweep_monomials(bound);
    match check {
        "coassociativity" => sweep(check, "(Delta (x) Id) Delta = (Id (x) Delta) Delta", &p, &monos, |m| {
            let d = coproduct(&mono(&p, m))?;
            let left = d.expand_slot(0, coproduct)?;
            let right = d.expand_slot(1, coproduct)?;
            Ok(differ(&left, &right))
        }),
        "counit-axiom" => sweep(check, "(eps (x) Id) Delta = Id = (Id (x) eps) Delta", &p, &monos, |m| {
            let e = mono(&p, m);
            let d = coproduct(&e)?;
            let left = counit_slot(&d, 0)?;
            let right = counit_slot(&d, 1)?;
            Ok(differ(&left, &e).or_else(|| differ(&right, &e)))
        }),
        "algebra-morphism-compat" => {
            let mut out = Vec::new();
            for r in relations::hopf_relations() {
                let f = r.free_in(&p)?;
                let delta = coproduct_free(&f)?;
                let eps = counit_free(&f)?;
                let label = format!("Delta and eps annihilate {}", r.label());
                out.push(CheckEntry::compare(
                    check,
                    label,
                    delta.is_zero() && eps.is_zero(),
                    || format!("Delta: {delta}; eps: {eps}"),
                    || "0".to_string(),
                ));
            }
            Ok(out)
        }
        "cocommutativity" => sweep(check, "sigma Delta = Delta", &p, &monos, |m| {
            let d = coproduct(&mono(&p, m))?;
            Ok(differ(&d.swap()?, &d))
        }),
        "antipode-axiom" => sweep(check, "mu (S (x) Id) Delta = eta eps = mu (Id (x) S) Delta", &p, &monos, |m| {
            let e = mono(&p, m);
            let d = coproduct(&e)?;
            let unit = Element::scalar(&p, counit(&e)?);
            let left = d.map_slot(0, SlotMap::Antipode)?.contract()?;
            let right = d.map_slot(1, SlotMap::Antipode)?.contract()?;
            Ok(differ(&left, &unit).or_else(|| differ(&right, &unit)))
        }),
        "antipode-involutive" => sweep(check, "S S = Id", &p, &monos, |m| {
            let e = mono(&p, m);
            Ok(differ(&antipode(&antipode(&e)?)?, &e))
        }),
        "counit-grading" => sweep(check, "eps agrees with substitution and kills nonzero degrees", &p, &monos, |m| {
            let eps = counit(&mono(&p, m))?;
            let oracle = substitution_oracle(&p, m);
            if eps != oracle {
                return Ok(Some((eps.to_string(), oracle.to_string())));
            }
            let graded = m.degree(&p).is_zero() || eps.is_zero();
            Ok((!graded).then(|| (eps.to_string(), format!("0 (degree {})", m.degree(&p)))))
        }),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

type FreeWord = Vec<u8>;
type FreeTensor = BTreeMap<(FreeWord, FreeWord), i64>;

/// In the free algebra on two homogeneous primitive generators `a`, `b`,
/// checks `Delta([a, b]) = [a, b] (x) 1 + 1 (x) [a, b]` for the graded
/// commutator `[a, b] = ab - (-1)^<deg a, deg b> ba`.
pub fn primitive_bracket_check(deg_a: &Degree, deg_b: &Degree) -> Result<bool, Error> {
    let sign = i64::from(deg_a.koszul_sign(deg_b)?);
    let degs = [*deg_a, *deg_b];
    let word_degree = |w: &FreeWord| {
        w.iter()
            .fold(Degree::zero(deg_a.len()), |acc, &g| acc.add(&degs[g as usize]).expect("same length"))
    };
    let add = |t: &mut FreeTensor, k: (FreeWord, FreeWord), c: i64| {
        let v = t.entry(k.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            t.remove(&k);
        }
    };
    let mul = |s: &FreeTensor, t: &FreeTensor| {
        let mut out = FreeTensor::new();
        for ((a1, a2), c) in s {
            for ((b1, b2), k) in t {
                let cross = word_degree(a2).scalar_product(&word_degree(b1)).expect("same length");
                let sgn = if cross == 1 { -1 } else { 1 };
                let w1 = [a1.as_slice(), b1].concat();
                let w2 = [a2.as_slice(), b2].concat();
                add(&mut out, (w1, w2), sgn * c * k);
            }
        }
        out
    };
    let primitive = |g: u8| {
        let mut t = FreeTensor::new();
        add(&mut t, (vec![g], vec![]), 1);
        add(&mut t, (vec![], vec![g]), 1);
        t
    };
    let (da, db) = (primitive(0), primitive(1));
    let mut lhs = mul(&da, &db);
    for (k, c) in mul(&db, &da) {
        add(&mut lhs, k, -sign * c);
    }
    let mut rhs = FreeTensor::new();
    for (w, c) in [(vec![0u8, 1], 1), (vec![1u8, 0], -sign)] {
        add(&mut rhs, (w.clone(), vec![]), c);
        add(&mut rhs, (vec![], w), c);
    }
    Ok(lhs == rhs)
}
