//! The de Rham differential on forms, the left and right coactions, and the
//! checks of the calculus.
//!
//! Forms live in the `dqsp-omega` presentation. `d` acts on a word by the
//! graded Leibniz rule, with sign `(-1)^p` for `p` the form degree of the
//! prefix; this equals the Koszul sign of `(1,0,0)` against the prefix's
//! `Z_2^3` degree, which presentation loading enforces.

use std::sync::Arc;

use crate::engine::{
    enumerate_monomials, Element, FreeElement, GeneratorKind, Letter, Monomial, Presentation, Strategy,
};
use crate::error::Error;
use crate::hopf;
use crate::relations::{self, Relation};
use crate::report::CheckEntry;
use crate::scalar::QScalar;
use crate::tensor::{SlotMap, TensorElement};

pub const CALCULUS_CHECKS: [&str; 7] = [
    "d-squared",
    "leibniz",
    "lemma-condiff",
    "valcom-bicovariance",
    "diff-diff-consistency",
    "no-top-forms",
    "woronowicz-compatibility",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub fn omega() -> Arc<Presentation> {
    Presentation::builtin("dqsp-omega").expect("builtin")
}

fn coordinates() -> Arc<Presentation> {
    Presentation::builtin("dqsp").expect("builtin")
}

fn to_forms(e: &Element) -> Result<Element, Error> {
    match e.presentation().name() {
        "dqsp" | "dqsp-omega" => e.transport(&omega()),
        other => Err(Error::Unsupported(format!("d is not defined on {other}"))),
    }
}

fn differential_of(p: &Presentation, l: Letter) -> Option<Letter> {
    let g = p.generator(l.gen);
    match g.kind {
        GeneratorKind::Coordinate => p.attached(GeneratorKind::Differential, l.gen).map(Letter::new),
        _ => None,
    }
}

/// `d` of one word: the Leibniz expansion, unreduced.
fn word_de_rham(p: &Presentation, w: &[Letter]) -> Vec<(Vec<Letter>, QScalar)> {
    let mut out = Vec::new();
    let mut parity = 0u32;
    for i in 0..w.len() {
        if let Some(dl) = differential_of(p, w[i]) {
            let mut nw = w.to_vec();
            nw[i] = dl;
            let sign = if parity % 2 == 1 { -QScalar::one() } else { QScalar::one() };
            out.push((nw, sign));
        }
        parity += p.generator(w[i].gen).form_degree;
    }
    out
}

/// The de Rham differential of a form (coordinate elements are read as
/// 0-forms).
pub fn de_rham(e: &Element) -> Result<Element, Error> {
    let e = to_forms(e)?;
    let p = e.presentation().clone();
    let mut out = Element::zero(&p);
    for (m, c) in e.terms() {
        for (w, s) in word_de_rham(&p, &m.word()) {
            out = out + Element::from_word(&p, &w).scale(&(c * &s));
        }
    }
    Ok(out)
}

/// `d` applied to an unreduced combination of words.
pub fn de_rham_free(f: &FreeElement) -> Result<FreeElement, Error> {
    let p = f.presentation();
    if p.name() != "dqsp-omega" {
        return Err(Error::Unsupported(format!("d is not defined on {}", p.name())));
    }
    let mut out = FreeElement::zero(p);
    for (w, c) in f.terms() {
        for (nw, s) in word_de_rham(p, w) {
            out = out.try_add(&FreeElement::word(p, nw, c * &s))?;
        }
    }
    Ok(out)
}

fn omega_slots() -> [Arc<Presentation>; 2] {
    [omega(), omega()]
}

/// `Delta(a)` of a coordinate element of the forms algebra, with both
/// slots in the forms presentation.
fn coordinate_coproduct(a: &Element) -> Result<TensorElement, Error> {
    let delta = hopf::coproduct(&a.transport(&coordinates())?)?;
    delta.transport(&omega_slots())
}

/// `(Id (x) d) Delta(b)` (left) or `(d (x) Id) Delta(b)` (right).
fn differentiated_coproduct(side: Side, b: &Element) -> Result<TensorElement, Error> {
    let delta = coordinate_coproduct(b)?;
    match side {
        Side::Left => delta.map_slot(1, SlotMap::DeRham),
        Side::Right => delta.map_slot(0, SlotMap::DeRham),
    }
}

/// `Delta_L(a db) = Delta(a) (Id (x) d) Delta(b)` and
/// `Delta_R(a db) = Delta(a) (d (x) Id) Delta(b)` on one-forms. Each
/// normalized term `a * dg` is split into its coordinate part and its
/// differential. Both slots of the result use the forms presentation.
pub fn coaction(side: Side, e: &Element) -> Result<TensorElement, Error> {
    let p = omega();
    let e = e.transport(&p)?;
    let mut out = TensorElement::zero(&omega_slots());
    for (m, c) in e.terms() {
        let diffs: Vec<usize> = (0..p.num_generators())
            .filter(|&i| p.generator(i).kind == GeneratorKind::Differential && m.exponent(i) != 0)
            .collect();
        let [j] = diffs[..] else {
            return Err(Error::Unsupported(format!(
                "{} is not of the form a*db",
                m.render(&p)
            )));
        };
        if m.exponent(j) != 1 {
            return Err(Error::Unsupported(format!("{} is not of the form a*db", m.render(&p))));
        }
        let mut a_exps = m.exponents().to_vec();
        a_exps[j] = 0;
        let a = Element::from_monomial(&p, Monomial::from_exponents(a_exps), QScalar::one());
        let base = p.generator(j).base.expect("differentials have a base");
        let b = Element::from_word(&p, &[Letter::new(base)]);
        let term = coordinate_coproduct(&a)?.try_mul(&differentiated_coproduct(side, &b)?)?;
        out = &out + &term.scale(c);
    }
    Ok(out)
}

fn letter_coaction(side: Side, p: &Arc<Presentation>, l: Letter) -> Result<TensorElement, Error> {
    let g = p.generator(l.gen);
    let e = Element::from_word(p, &[l]);
    match g.kind {
        GeneratorKind::Coordinate => coordinate_coproduct(&e),
        GeneratorKind::Differential => {
            let b = Element::from_word(p, &[Letter::new(g.base.expect("differentials have a base"))]);
            differentiated_coproduct(side, &b)
        }
        GeneratorKind::Partial => Err(Error::Unsupported("coactions on partials".into())),
    }
}

fn word_coaction(side: Side, p: &Arc<Presentation>, w: &[Letter]) -> Result<TensorElement, Error> {
    let one = Element::one(p);
    let mut acc = TensorElement::pure(&[&one, &one]);
    for &l in w {
        acc = acc.try_mul(&letter_coaction(side, p, l)?)?;
    }
    Ok(acc)
}

/// The coaction extended multiplicatively to words of coordinates and
/// differentials, applied to an unreduced combination.
pub fn coaction_free(side: Side, f: &FreeElement) -> Result<TensorElement, Error> {
    let p = f.presentation();
    let mut out = TensorElement::zero(&omega_slots());
    for (w, c) in f.terms() {
        out = &out + &word_coaction(side, p, w)?.scale(c);
    }
    Ok(out)
}

/// The multiplicative coaction on normalized forms of any degree.
pub fn coaction_multiplicative(side: Side, e: &Element) -> Result<TensorElement, Error> {
    let p = omega();
    let e = e.transport(&p)?;
    let mut out = TensorElement::zero(&omega_slots());
    for (m, c) in e.terms() {
        out = &out + &word_coaction(side, &p, &m.word())?.scale(c);
    }
    Ok(out)
}

fn one_forms(p: &Arc<Presentation>) -> Vec<Element> {
    p.generators()
        .iter()
        .filter(|g| g.kind == GeneratorKind::Differential)
        .map(|g| Element::from_word(p, &[Letter::new(g.index)]))
        .collect()
}

/// Whether `a` and `b` are nonzero multiples of each other, compared by
/// cross-multiplying leading coefficients.
fn proportional(a: &FreeElement, b: &FreeElement) -> bool {
    let (Some((_, ca)), Some((_, cb))) = (a.terms().next(), b.terms().next()) else {
        return false;
    };
    let (ca, cb) = (ca.clone(), cb.clone());
    let lhs = a.scale(&cb);
    let rhs = b.scale(&ca);
    lhs.try_sub(&rhs).map(|d| d.is_zero()).unwrap_or(false)
}

fn relation_free(r: &Relation) -> Result<FreeElement, Error> {
    r.free()
}

pub fn calculus_verify(check: &str, bound: u32) -> Result<Vec<CheckEntry>, Error> {
    let p = omega();
    match check {
        "d-squared" => {
            let monos = enumerate_monomials(&p, bound as i32, bound);
            hopf::sweep(check, "d d = 0", &p, &monos, |m| {
                let e = Element::from_monomial(&p, m.clone(), QScalar::one());
                let dd = de_rham(&de_rham(&e)?)?;
                Ok((!dd.is_zero()).then(|| (dd.to_string(), "0".to_string())))
            })
        }
        "leibniz" => {
            let monos = enumerate_monomials(&p, bound.min(2) as i32, bound.min(2));
            let mut failures = Vec::new();
            for a in &monos {
                let ea = Element::from_monomial(&p, a.clone(), QScalar::one());
                let da = de_rham(&ea)?;
                let sign = if a.form_degree(&p) % 2 == 1 { -QScalar::one() } else { QScalar::one() };
                for b in &monos {
                    let eb = Element::from_monomial(&p, b.clone(), QScalar::one());
                    let lhs = de_rham(&(&ea * &eb))?;
                    let rhs = &da * &eb + (&ea * &de_rham(&eb)?).scale(&sign);
                    if lhs != rhs {
                        failures.push(CheckEntry::fail(
                            check,
                            format!("d(ab) at a = {}, b = {}", a.render(&p), b.render(&p)),
                            lhs.to_string(),
                            rhs.to_string(),
                        ));
                    }
                }
            }
            if failures.is_empty() {
                Ok(vec![CheckEntry::pass(
                    check,
                    format!("d(ab) = (da)b + (-1)^p a(db) on {} pairs", monos.len() * monos.len()),
                )])
            } else {
                Ok(failures)
            }
        }
        "lemma-condiff" => {
            let mut out = Vec::new();
            for (r, source) in &relations::LIFTED {
                let f = relation_free(r)?;
                let nf = f.normal_form(Strategy::Leftmost);
                let coord = relations::find(source).expect("table entry").free_in(&p)?;
                let lifted = de_rham_free(&coord)?;
                let ok = nf.is_zero() && lifted.try_sub(&f)?.is_zero();
                out.push(CheckEntry::compare(
                    check,
                    format!("{} reduces to 0 and is d({})", r.lhs, relations::find(source).expect("entry").label()),
                    ok,
                    || format!("normal form {nf}"),
                    || format!("d of the relation: {lifted}"),
                ));
            }
            Ok(out)
        }
        "valcom-bicovariance" => {
            let mut out = Vec::new();
            for r in &relations::ONE_FORM {
                let f = relation_free(r)?;
                for (side, name) in [(Side::Left, "DL"), (Side::Right, "DR")] {
                    let t = coaction_free(side, &f)?;
                    out.push(CheckEntry::compare(
                        check,
                        format!("{name} annihilates {}", r.label()),
                        t.is_zero(),
                        || t.to_string(),
                        || "0".to_string(),
                    ));
                }
            }
            Ok(out)
        }
        "diff-diff-consistency" => {
            let lifted: Vec<(Relation, FreeElement)> = relations::ONE_FORM
                .iter()
                .map(|r| Ok((*r, de_rham_free(&relation_free(r)?)?)))
                .collect::<Result<_, Error>>()?;
            let table: Vec<(Relation, FreeElement)> = relations::TWO_FORM
                .iter()
                .map(|r| Ok((*r, relation_free(r)?)))
                .collect::<Result<_, Error>>()?;
            let mut out = Vec::new();
            for (r, rule) in &table {
                let nf = rule.normal_form(Strategy::Leftmost);
                let sources: Vec<&str> = lifted
                    .iter()
                    .filter(|(_, d)| proportional(d, rule))
                    .map(|(s, _)| s.id)
                    .collect();
                out.push(CheckEntry::compare(
                    check,
                    format!("{} follows from d of {}", r.label(), if sources.is_empty() { "nothing".to_string() } else { sources.join(", ") }),
                    nf.is_zero() && !sources.is_empty(),
                    || format!("normal form {nf}"),
                    || "0, and a multiple of d of a one-form relation".to_string(),
                ));
            }
            let stray: Vec<String> = lifted
                .iter()
                .filter(|(_, d)| !d.is_zero() && !table.iter().any(|(_, rule)| proportional(d, rule)))
                .map(|(s, d)| format!("{}: {d}", s.id))
                .collect();
            out.push(CheckEntry::compare(
                check,
                "d of every one-form relation is 0 or a listed two-form rule",
                stray.is_empty(),
                || stray.join("; "),
                || "none outside the table".to_string(),
            ));
            Ok(out)
        }
        "no-top-forms" => {
            let mut out = Vec::new();
            for sym in ["dxi", "dtheta"] {
                let g = Element::generator(&p, sym)?;
                let mut power = Element::one(&p);
                let mut vanished = None;
                for k in 1..=bound {
                    power = &power * &g;
                    if power.is_zero() {
                        vanished = Some(k);
                        break;
                    }
                }
                out.push(CheckEntry::compare(
                    check,
                    format!("({sym})^k != 0 for k <= {bound}"),
                    vanished.is_none(),
                    || format!("({sym})^{} = 0", vanished.unwrap_or(0)),
                    || "nonzero".to_string(),
                ));
            }
            Ok(out)
        }
        "woronowicz-compatibility" => {
            let mut out = Vec::new();
            for w in one_forms(&p) {
                let left = coaction(Side::Right, &w)?.expand_slot(0, |e| coaction(Side::Left, e))?;
                let right = coaction(Side::Left, &w)?.expand_slot(1, |e| coaction(Side::Right, e))?;
                out.push(CheckEntry::compare(
                    check,
                    format!("(DL (x) Id) DR = (Id (x) DR) DL on {w}"),
                    left == right,
                    || left.to_string(),
                    || right.to_string(),
                ));
            }
            Ok(out)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_str, Value};

    fn el(text: &str) -> Element {
        match eval_str(text, &omega()).unwrap() {
            Value::Element(e) => e,
            Value::Scalar(s) => Element::scalar(&omega(), s),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn de_rham_examples() {
        assert_eq!(de_rham(&el("x*xi")).unwrap().to_string(), "q*xi*dx + x*dxi");
        assert_eq!(de_rham(&el("x*z")).unwrap().to_string(), "z*dx + x*dz");
        assert!(de_rham(&de_rham(&el("x*xi*z")).unwrap()).unwrap().is_zero());
        assert_eq!(de_rham(&el("xi*z")).unwrap().to_string(), "-q^-1*z*dxi + xi*dz");
    }

    #[test]
    fn de_rham_raises_form_degree() {
        let p = omega();
        for m in enumerate_monomials(&p, 2, 3) {
            let d = de_rham(&Element::from_monomial(&p, m.clone(), QScalar::one())).unwrap();
            for (n, _) in d.terms() {
                assert_eq!(n.form_degree(&p), m.form_degree(&p) + 1);
            }
        }
    }

    #[test]
    fn coaction_examples() {
        assert_eq!(coaction(Side::Left, &el("dxi")).unwrap().to_string(), "xi (x) dx + x (x) dxi");
        assert_eq!(coaction(Side::Right, &el("dz")).unwrap().to_string(), "dz (x) x + dx (x) z");
        assert_eq!(coaction(Side::Left, &el("dx")).unwrap().to_string(), "x (x) dx");
        assert!(coaction(Side::Left, &el("x")).is_err());
        assert!(coaction(Side::Left, &el("dx*dz")).is_err());
    }

    #[test]
    fn coaction_routes_agree_on_one_forms() {
        let p = omega();
        for m in enumerate_monomials(&p, 2, 3) {
            if m.form_degree(&p) != 1 {
                continue;
            }
            let e = Element::from_monomial(&p, m.clone(), QScalar::one());
            for side in [Side::Left, Side::Right] {
                assert_eq!(
                    coaction(side, &e).unwrap(),
                    coaction_multiplicative(side, &e).unwrap(),
                    "{}",
                    m.render(&p)
                );
            }
        }
    }

    #[test]
    fn coactions_preserve_degree() {
        let p = omega();
        for w in one_forms(&p) {
            let deg = w.homogeneous_degree().unwrap();
            for side in [Side::Left, Side::Right] {
                assert_eq!(coaction(side, &w).unwrap().homogeneous_degree(), Some(deg));
            }
        }
    }

    #[test]
    fn bimodule_rule() {
        // DL(a dc + db b') = Delta(a) DL(dc) + DL(db) Delta(b')
        let coords = ["x", "xi", "theta", "z", "x*z", "x*xi", "theta*z"];
        let forms = ["dx", "dxi", "dtheta", "dz"];
        for a in coords {
            for b2 in coords {
                for dc in forms {
                    for db in forms {
                        let lhs_elem = &(&el(a) * &el(dc)) + &(&el(db) * &el(b2));
                        for side in [Side::Left, Side::Right] {
                            let lhs = coaction(side, &lhs_elem).unwrap();
                            let rhs = &coordinate_coproduct(&el(a))
                                .unwrap()
                                .try_mul(&coaction(side, &el(dc)).unwrap())
                                .unwrap()
                                + &coaction(side, &el(db))
                                    .unwrap()
                                    .try_mul(&coordinate_coproduct(&el(b2)).unwrap())
                                    .unwrap();
                            assert_eq!(lhs, rhs, "{a} {dc} + {db} {b2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_map_with_d() {
        let p = omega();
        let x = el("x");
        let xi = el("xi");
        let t = TensorElement::pure(&[&x, &xi]);
        assert_eq!(t.map_slot(1, SlotMap::DeRham).unwrap().to_string(), "x (x) dxi");
        let t = TensorElement::pure(&[&xi, &x]);
        assert_eq!(t.map_slot(0, SlotMap::DeRham).unwrap().to_string(), "dxi (x) x");
        // d passing a one-form picks up a sign
        let t = TensorElement::pure(&[&el("dx"), &x]);
        assert_eq!(t.map_slot(1, SlotMap::DeRham).unwrap().to_string(), "-dx (x) dx");
        let _ = p;
    }

    #[test]
    fn all_checks_pass_small() {
        for check in CALCULUS_CHECKS {
            let entries = calculus_verify(check, 3).unwrap();
            assert!(entries.iter().all(|e| e.passed()), "{check}: {entries:?}");
        }
        assert_eq!(calculus_verify("valcom-bicovariance", 0).unwrap().len(), 32);
        assert_eq!(calculus_verify("lemma-condiff", 0).unwrap().len(), 6);
    }
}
