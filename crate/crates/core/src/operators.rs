//! Partial derivatives as operators on coordinates and forms.
//!
//! `apply_partial` acts by normal ordering in `dqsp-ops`: the partial is
//! moved to the right through its argument, and whatever still carries a
//! partial is dropped since partials kill `1`. `pbw_action_oracle` gives
//! the same action in closed form on coordinate monomials.

use std::sync::Arc;

use crate::calculus::{de_rham, omega};
use crate::engine::{Element, GeneratorKind, Letter, Monomial, Presentation, Strategy};
use crate::error::Error;
use crate::relations::{self, Relation};
use crate::report::CheckEntry;
use crate::scalar::QScalar;

pub const OPERATOR_CHECKS: [&str; 5] = [
    "derham-decomposition",
    "partial-coordinate-relations",
    "partial-partial-relations",
    "partial-differential-relations",
    "oracle-equivalence",
];

pub const PARTIALS: [&str; 4] = ["Dx", "Dxi", "Dtheta", "Dz"];
const COORDS: [&str; 4] = ["x", "xi", "theta", "z"];

pub fn operators() -> Arc<Presentation> {
    Presentation::builtin("dqsp-ops").expect("builtin")
}

fn coordinates() -> Arc<Presentation> {
    Presentation::builtin("dqsp").expect("builtin")
}

fn has_partials(e: &Element) -> bool {
    let p = e.presentation();
    e.terms().any(|(m, _)| {
        m.exponents()
            .iter()
            .enumerate()
            .any(|(i, x)| *x != 0 && p.generator(i).kind == GeneratorKind::Partial)
    })
}

/// `partial(e)`: normal-order `partial * e` in `dqsp-ops` and drop every
/// term that still contains a partial. The result is returned in the
/// presentation of `e`.
pub fn apply_partial(partial: &str, e: &Element) -> Result<Element, Error> {
    let ops = operators();
    let g = ops
        .index_of(partial)
        .filter(|&g| ops.generator(g).kind == GeneratorKind::Partial)
        .ok_or_else(|| Error::UnknownGenerator(partial.to_string()))?;
    if has_partials(e) {
        return Err(Error::Unsupported(format!("{e} already contains partial derivatives")));
    }
    let home = e.presentation().clone();
    let lifted = e.transport(&ops)?;
    let product = &Element::from_word(&ops, &[Letter::new(g)]) * &lifted;
    let kept = product.filter(|m| {
        m.exponents()
            .iter()
            .enumerate()
            .all(|(i, x)| *x == 0 || ops.generator(i).kind != GeneratorKind::Partial)
    });
    kept.transport(&home)
}

/// Closed form of a partial on `x^m xi^a theta^b z^n`:
/// `Dx -> m x^(m-1) ...`, `Dxi -> a q^m x^m theta^b z^n`,
/// `Dtheta -> b q^m x^m xi^a z^n`, `Dz -> n (-q^-1)^(a+b) x^m xi^a theta^b z^(n-1)`.
/// The monomial is read in `dqsp` generator order.
pub fn pbw_action_oracle(partial: &str, m: &Monomial) -> Result<Element, Error> {
    let p = coordinates();
    m.validate(&p)?;
    let e = m.exponents();
    let (mx, a, b, n) = (e[0], e[1], e[2], e[3]);
    let mut out = e.to_vec();
    let coeff = match partial {
        "Dx" => {
            out[0] -= 1;
            QScalar::from_int(mx.into())
        }
        "Dxi" => {
            out[1] -= 1;
            QScalar::from_int(a.into()) * QScalar::q_pow(mx.into())
        }
        "Dtheta" => {
            out[2] -= 1;
            QScalar::from_int(b.into()) * QScalar::q_pow(mx.into())
        }
        "Dz" => {
            out[3] -= 1;
            let sign = if (a + b) % 2 == 1 { -1 } else { 1 };
            QScalar::from_int(i64::from(n) * sign) * QScalar::q_pow(-i64::from(a + b))
        }
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    if coeff.is_zero() {
        return Ok(Element::zero(&p));
    }
    Ok(Element::from_monomial(&p, Monomial::from_exponents(out), coeff))
}

/// Oracle action extended linearly to coordinate elements.
pub fn oracle_apply(partial: &str, e: &Element) -> Result<Element, Error> {
    let p = coordinates();
    let e = e.transport(&p)?;
    let mut out = Element::zero(&p);
    for (m, c) in e.terms() {
        out = out + pbw_action_oracle(partial, m)?.scale(c);
    }
    Ok(out)
}

/// Coordinate monomials `x^m xi^a theta^b z^n` with `m, n <= bound`.
pub fn coordinate_monomials(bound: u32) -> Vec<Monomial> {
    let b = bound as i32;
    let mut out = Vec::new();
    for m in 0..=b {
        for a in 0..=1 {
            for t in 0..=1 {
                for n in 0..=b {
                    out.push(Monomial::from_exponents(vec![m, a, t, n]));
                }
            }
        }
    }
    out.sort();
    out
}

/// How partials act when evaluating operator words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Rewriting,
    Oracle,
}

fn act_partial(action: Action, partial: &str, f: &Element) -> Result<Element, Error> {
    match action {
        Action::Rewriting => apply_partial(partial, f),
        Action::Oracle => oracle_apply(partial, f).and_then(|r| r.transport(f.presentation())),
    }
}

/// Evaluates an operator word of coordinates and partials on a coordinate
/// element, rightmost letter first. Coordinates act by left multiplication.
fn act_word(action: Action, ops: &Presentation, w: &[Letter], f: &Element) -> Result<Element, Error> {
    let mut acc = f.clone();
    for l in w.iter().rev() {
        let g = ops.generator(l.gen);
        acc = match g.kind {
            GeneratorKind::Partial => act_partial(action, &g.symbol, &acc)?,
            GeneratorKind::Coordinate => &Element::generator(acc.presentation(), &g.symbol)? * &acc,
            GeneratorKind::Differential => {
                return Err(Error::Unsupported("differentials in an operator word".into()))
            }
        };
    }
    Ok(acc)
}

fn act_relation(action: Action, r: &Relation, f: &Element) -> Result<Element, Error> {
    let ops = operators();
    let free = r.free()?;
    let mut out = Element::zero(f.presentation());
    for (w, c) in free.terms() {
        out = out + act_word(action, &ops, w, f)?.scale(c);
    }
    Ok(out)
}

/// `partial(b dg) = partial(b) dg` for a coordinate part `b`, extending
/// `partial_a(x^b dx^c) = delta_a^b dx^c` over normal forms.
fn partial_on_forms(partial: &str, e: &Element) -> Result<Element, Error> {
    let p = omega();
    let e = e.transport(&p)?;
    let coords = coordinates();
    let mut out = Element::zero(&p);
    for (m, c) in e.terms() {
        let split = m.exponents();
        let coord_part = Monomial::from_exponents(split[..4].to_vec());
        let mut form_exps = vec![0; p.num_generators()];
        form_exps[4..].copy_from_slice(&split[4..]);
        let form = Element::from_monomial(&p, Monomial::from_exponents(form_exps), QScalar::one());
        let acted = oracle_apply(partial, &Element::from_monomial(&coords, coord_part, QScalar::one()))?;
        out = out + (&acted.transport(&p)? * &form).scale(c);
    }
    Ok(out)
}

/// Evaluates a partial/differential relation on `f` through the forms
/// algebra: differentials multiply on the left, partials act on the
/// coordinate part.
fn act_relation_on_forms(r: &Relation, f: &Element) -> Result<Element, Error> {
    let ops = operators();
    let p = omega();
    let free = r.free()?;
    let mut out = Element::zero(&p);
    for (w, c) in free.terms() {
        let mut acc = f.transport(&p)?;
        for l in w.iter().rev() {
            let g = ops.generator(l.gen);
            acc = match g.kind {
                GeneratorKind::Partial => partial_on_forms(&g.symbol, &acc)?,
                _ => &Element::generator(&p, &g.symbol)? * &acc,
            };
        }
        out = out + acc.scale(c);
    }
    Ok(out)
}

fn relation_entries(
    check: &str,
    table: &[Relation],
    monos: &[Monomial],
    pointwise: impl Fn(&Relation, &Element) -> Result<Vec<(&'static str, Element)>, Error>,
) -> Result<Vec<CheckEntry>, Error> {
    let coords = coordinates();
    let mut out = Vec::new();
    for r in table {
        let nf = r.free()?.normal_form(Strategy::Leftmost);
        let mut bad = None;
        if nf.is_zero() {
            'outer: for m in monos {
                let f = Element::from_monomial(&coords, m.clone(), QScalar::one());
                for (route, value) in pointwise(r, &f)? {
                    if !value.is_zero() {
                        bad = Some(format!("{route} route on {}: {value}", m.render(&coords)));
                        break 'outer;
                    }
                }
            }
        }
        let ok = nf.is_zero() && bad.is_none();
        out.push(CheckEntry::compare(
            check,
            format!("{} as a normal form and on {} basis monomials", r.label(), monos.len()),
            ok,
            || if nf.is_zero() { bad.clone().unwrap_or_default() } else { format!("normal form {nf}") },
            || "0".to_string(),
        ));
    }
    Ok(out)
}

pub fn operator_verify(check: &str, bound: u32) -> Result<Vec<CheckEntry>, Error> {
    let coords = coordinates();
    let monos = coordinate_monomials(bound);
    match check {
        "derham-decomposition" => {
            let p = omega();
            crate::hopf::sweep(check, "d = dx Dx + dxi Dxi + dtheta Dtheta + dz Dz", &coords, &monos, |m| {
                let f = Element::from_monomial(&coords, m.clone(), QScalar::one());
                let mut sum = Element::zero(&p);
                for (partial, coord) in PARTIALS.iter().zip(COORDS) {
                    let dg = Element::generator(&p, &format!("d{coord}"))?;
                    sum = sum + &dg * &apply_partial(partial, &f)?.transport(&p)?;
                }
                let d = de_rham(&f)?;
                Ok((sum != d).then(|| (sum.to_string(), d.to_string())))
            })
        }
        "partial-coordinate-relations" => {
            relation_entries(check, &relations::PARTIAL_COORDINATE, &monos, |r, f| {
                Ok(vec![
                    ("rewriting", act_relation(Action::Rewriting, r, f)?),
                    ("oracle", act_relation(Action::Oracle, r, f)?),
                ])
            })
        }
        "partial-partial-relations" => {
            let mut out = relation_entries(check, &relations::PARTIAL_PARTIAL, &monos, |r, f| {
                Ok(vec![
                    ("rewriting", act_relation(Action::Rewriting, r, f)?),
                    ("oracle", act_relation(Action::Oracle, r, f)?),
                ])
            })?;
            // Dx Dxi (x^m xi theta^b z^n) = m q^m x^(m-1) theta^b z^n
            let mut bad = None;
            let mut count = 0;
            for m in monos.iter().filter(|m| m.exponent(1) == 1) {
                count += 1;
                let e = m.exponents();
                let f = Element::from_monomial(&coords, m.clone(), QScalar::one());
                let got = apply_partial("Dx", &apply_partial("Dxi", &f)?)?;
                let expected = if e[0] == 0 {
                    Element::zero(&coords)
                } else {
                    Element::from_monomial(
                        &coords,
                        Monomial::from_exponents(vec![e[0] - 1, 0, e[2], e[3]]),
                        QScalar::from_int(e[0].into()) * QScalar::q_pow(e[0].into()),
                    )
                };
                if got != expected && bad.is_none() {
                    bad = Some((got.to_string(), expected.to_string()));
                }
            }
            out.push(match bad {
                None => CheckEntry::pass(check, format!("Dx Dxi (x^m xi theta^b z^n) = m q^m x^(m-1) theta^b z^n on {count} monomials")),
                Some((l, r)) => CheckEntry::fail(check, "Dx Dxi (x^m xi theta^b z^n) = m q^m x^(m-1) theta^b z^n", l, r),
            });
            Ok(out)
        }
        "partial-differential-relations" => {
            relation_entries(check, &relations::PARTIAL_DIFFERENTIAL, &monos, |r, f| {
                let ops = operators();
                let free = r.free()?;
                let mut rewriting = Element::zero(&omega());
                for (w, c) in free.terms() {
                    // D dg f and dg D f, each through apply_partial on forms
                    let mut acc = f.transport(&omega())?;
                    for l in w.iter().rev() {
                        let g = ops.generator(l.gen);
                        acc = match g.kind {
                            GeneratorKind::Partial => apply_partial(&g.symbol, &acc)?,
                            _ => &Element::generator(&omega(), &g.symbol)? * &acc,
                        };
                    }
                    rewriting = rewriting + acc.scale(c);
                }
                Ok(vec![("rewriting", rewriting), ("forms", act_relation_on_forms(r, f)?)])
            })
        }
        "oracle-equivalence" => {
            let mut out = Vec::new();
            for partial in PARTIALS {
                out.extend(crate::hopf::sweep(
                    check,
                    &format!("{partial} by rewriting = {partial} in closed form"),
                    &coords,
                    &monos,
                    |m| {
                        let f = Element::from_monomial(&coords, m.clone(), QScalar::one());
                        let a = apply_partial(partial, &f)?;
                        let b = pbw_action_oracle(partial, m)?;
                        Ok((a != b).then(|| (a.to_string(), b.to_string())))
                    },
                )?);
            }
            Ok(out)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}
